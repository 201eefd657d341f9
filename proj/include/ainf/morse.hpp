#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ainf/transfer.hpp"

namespace ainf {

// Finite simplicial complex with a fixed vertex order.  Cells are sorted
// vertex tuples listed in (dimension, lexicographic) order; that order
// fixes every orientation and makes greedy matching reproducible.  Cells
// are graded by codimension, so top cells sit in degree 0.
struct SimplicialComplex {
  std::vector<std::string> vertices;
  std::vector<std::vector<int>> simplices;

  int dim() const;
  int cell_count() const { return static_cast<int>(simplices.size()); }
  int cell_dim(int i) const { return static_cast<int>(simplices.at(i).size()) - 1; }
  // "[a b c]" from the vertex names.
  std::string label(int i) const;
  // Index of a sorted vertex tuple, -1 when absent.
  int index_of(const std::vector<int>& s) const;
  // One generator per cell, degree = dim() - cell_dim.
  GradedBasis cell_basis() const;
  // Sorted tuples in canonical order, indices in range, face closure.
  void validate() const;

  // Closure of the given cells under faces; tuples are lists of vertex
  // names and may arrive unsorted.
  static SimplicialComplex from_cells(std::vector<std::string> vertices,
                                      const std::vector<std::vector<std::string>>& cells);
};

// Partial matching on the face poset pairing a cell with one of its
// cofacets; unmatched cells are critical.  Entries of pairs are
// (face, coface) cell indices.
struct GradientMatching {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> critical;

  std::optional<int> coface_of(int cell) const;
  bool is_critical(int cell) const;
  // Pair shape, disjointness, the critical complement, and acyclicity of
  // the induced flow; a closed path is reported cell by cell.
  void validate(const SimplicialComplex& K) const;
};

// Incidence operator with signs from the vertex order, globally scaled
// by (-1)^{dim}; shift +1 in the codimension grading; squares to zero.
LinearMap boundary_operator(const Field& F, const SimplicialComplex& K);

// Deterministic greedy matching: seed the smallest cell as critical,
// then repeatedly pair the smallest cell having exactly one unremoved
// face with that face, reseeding when the cascade dries up.
GradientMatching build_matching(const SimplicialComplex& K);

// Matching from explicit (face, coface) name tuples; the critical set is
// the complement.  Validates, so cyclic input is rejected here.
GradientMatching matching_from_pairs(
    const SimplicialComplex& K,
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& pairs);

// Contraction of the simplicial chain complex onto its critical cells.
// The matching gives a degree -1 map V, the flow 1 + dV + Vd is iterated
// until it stabilizes into the projection, and the accumulated homotopy
// is normalized to satisfy the side conditions.
struct MorsePackage {
  SimplicialComplex complex;
  GradedBasis cells;
  LinearMap boundary;
  GradientMatching matching;
  GradedBasis crit;
  TransferData data;
};

MorsePackage morse_flow_data(const Field& F, const SimplicialComplex& K,
                             const GradientMatching& M);

// The complex's own algebra: the scaled boundary as the arity-1
// energy-zero operation and nothing else.
FilteredAInfinity boundary_algebra(const Field& F, const SimplicialComplex& K,
                                   const GapMonoid& monoid, const Rational& energy_cutoff,
                                   int arity_cutoff);

// Transfer over the flow data.  disc_ops must live on the cell basis,
// contain the scaled boundary as its arity-1 energy-zero operation, and
// pass the relation check; anything else is rejected before any tree is
// evaluated.
CanonicalModelResult morse_transfer(const SimplicialComplex& K, const GradientMatching& M,
                                    const FilteredAInfinity& disc_ops);

// Replays one ledger tree on a word of critical cells and renders every
// stage: the included inputs, the class summed at each interior vertex,
// each homotopy applied along an interior edge, the projected output,
// and the Novikov weight of the whole configuration.  Throws when no
// ledger entry carries the id.
std::string trace_configuration(const CanonicalModelResult& R, const FilteredAInfinity& A,
                                const TransferData& T, const std::string& tree_id,
                                const std::vector<int>& inputs);

}  // namespace ainf
