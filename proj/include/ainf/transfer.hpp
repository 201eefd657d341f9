#pragma once

#include <map>
#include <string>
#include <vector>

#include "ainf/ainfty.hpp"

namespace ainf {

// Contraction of an ambient complex onto a subcomplex: inclusion iota,
// projection proj onto its image, a degree -1 homotopy hmt, and the
// coordinate map expressing projected chains in the subbasis.  The
// differential d is the arity-1 energy-zero operation of the ambient
// algebra, not the unsigned differential of a dga input.
struct TransferData {
  Field field;
  GradedBasis amb;
  GradedBasis sub;
  LinearMap d;       // shift +1, amb -> amb
  LinearMap iota;    // shift 0, sub -> amb, injective
  LinearMap proj;    // shift 0, amb -> amb, image = image of iota
  LinearMap hmt;     // shift -1, amb -> amb
  LinearMap coords;  // shift 0, amb -> sub: iota(coords(x)) = proj(x)

  // Checks proj^2 = proj, image agreement via coords, d-invariance of the
  // subcomplex, id - proj = -(d hmt + hmt d), and hmt^2 = 0; throws with
  // the failing basis element.
  void validate() const;
};

// Computes coords and validates.  Fails when proj is not a projection
// onto the embedded subcomplex or the side conditions do not hold.
TransferData make_transfer_data(const Field& F, const GradedBasis& amb, const GradedBasis& sub,
                                const LinearMap& d, const LinearMap& iota, const LinearMap& proj,
                                const LinearMap& hmt);

// Accepts a homotopy satisfying id - proj = -(d g + g d) but possibly
// g^2 != 0 and repairs it: first the side-condition replacement
// (1-proj) g (1-proj), and if that still fails square-zero, a fresh
// homotopy built degreewise on ker proj, which the homotopy identity
// makes acyclic.  Throws when the identity fails for the input, naming
// the degree and basis element.
TransferData normalize_homotopy(const Field& F, const GradedBasis& amb, const GradedBasis& sub,
                                const LinearMap& d, const LinearMap& iota, const LinearMap& proj,
                                const LinearMap& hmt_raw);

// Interior vertex of a decorated planar rooted tree.  children lists the
// outgoing edges counter-clockwise; an entry is another vertex id or -1
// for a leaf.  eta indexes the monoid energy levels and must be positive
// when the valency (children + 1) is 1 or 2.
struct TreeVertex {
  int eta = 0;
  std::vector<int> children;
};

// A tree with no vertices is the bare edge joining the single leaf to the
// root; otherwise vertex 0 is adjacent to the root and the rest follow in
// depth-first order.
struct DecoratedTree {
  std::vector<TreeVertex> vertices;
  int leaves = 0;
  Rational energy;  // sum of the level energies of all vertices

  // Canonical encoding: "e" for the bare edge, "L" for a leaf,
  // "(eta:c1c2...)" for a vertex.
  std::string id() const;
};

// All trees with k leaves, interior valencies at most arity_cutoff + 1,
// and energy below the cutoff, sorted by (energy, id).
std::vector<DecoratedTree> enumerate_trees(int k, const GapMonoid& monoid,
                                           const Rational& energy_cutoff, int arity_cutoff);

enum class TreeMode { m, f };

// Evaluates one tree on a word of subbasis letters: leaves feed iota,
// each vertex applies the sum over classes at its energy level of
// e^{mu/2} m_{l,beta}, each interior edge applies hmt, and the root edge
// applies proj (mode m) or hmt (mode f; the bare edge yields iota).  The
// result is an ambient chain whose terms all carry T^{energy}.
Chain eval_tree(const DecoratedTree& t, const Word& w, const TransferData& T,
                const FilteredAInfinity& A, TreeMode mode);

// One tree's total contribution, keyed by output class; every class of
// one tree shares lambda = energy.  m_part is written in subbasis
// coordinates, f_part in ambient ones.
struct TreeContribution {
  int k = 0;
  std::string id;
  Rational energy;
  std::map<GapClass, Tensor> m_part;
  std::map<GapClass, Tensor> f_part;
};

struct CanonicalModelResult {
  FilteredAInfinity model;  // on T.sub
  HomFamily f;              // T.sub -> T.amb
  std::vector<TreeContribution> ledger;
  Report model_report;
  Report hom_report;
};

// Sums T^{E} m_Gamma and T^{E} f_Gamma over all trees below the cutoffs,
// then verifies the quadratic relations for the model and the
// homomorphism equations for f.  A failure of either throws: the
// construction guarantees both, so a residual is an internal error, never
// data to accept.  The arity-1 energy-zero operation of the model is the
// restriction of d, so the model is canonical whenever d vanishes on the
// subcomplex.
CanonicalModelResult transfer(const FilteredAInfinity& A, const TransferData& T);

// Direct expansions of the model operations for k <= 3 on an unfiltered
// algebra, written without the tree machinery:
//   k=1: coords m_1 iota
//   k=2: coords m_2(iota, iota)
//   k=3: coords [m_3(iota,iota,iota) + m_2(hmt m_2(iota,iota), iota)
//                + m_2(iota, hmt m_2(iota,iota))].
Tensor oracle_transfer_low_arity(const FilteredAInfinity& A, const TransferData& T, int k);

}  // namespace ainf
