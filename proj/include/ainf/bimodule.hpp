#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "ainf/ainfty.hpp"

namespace ainf {

struct BimoduleOpKey {
  int k1 = 0;  // letters from the left algebra, before the module slot
  int k0 = 0;  // letters from the right algebra, after it
  GapClass beta;

  bool operator==(const BimoduleOpKey& o) const {
    return k1 == o.k1 && k0 == o.k0 && beta == o.beta;
  }
  bool operator<(const BimoduleOpKey& o) const {
    return std::tie(k1, k0, beta) < std::tie(o.k1, o.k0, o.beta);
  }
};

// Input tuple of one bimodule operation: left-algebra indices, a module
// index, right-algebra indices.
struct BimKey {
  Key xs;
  int y = 0;
  Key zs;

  bool operator==(const BimKey&) const = default;
  bool operator<(const BimKey& o) const { return std::tie(xs, y, zs) < std::tie(o.xs, o.y, o.zs); }
};

using BimTensor = std::map<BimKey, FieldChain>;

// Module over two filtered algebras, with operations indexed by the two
// word lengths and a class.  Both algebras are stored whole because the
// relations insert their operations, curvature included, into the words.
struct FilteredBimodule {
  Field field;
  FilteredAInfinity left;
  FilteredAInfinity right;
  GradedBasis basis;
  GapMonoid monoid;
  Rational energy_cutoff;
  int arity_cutoff = 2;  // bound on k1 + k0
  std::map<BimoduleOpKey, BimTensor> ops;

  const BimTensor* op(int k1, int k0, const GapClass& beta) const;
  const FieldChain* entry(int k1, int k0, const GapClass& beta, const BimKey& key) const;
  // Enforces deg'(out) = 1 - mu(beta) + sum deg' over all three parts.
  void add_entry(int k1, int k0, const GapClass& beta, const BimKey& key, const FieldChain& out);
  bool has_curvature() const;
  // Structural invariants, including that both algebras validate and
  // their classes lie in the module monoid.
  void validate() const;
};

struct BimResidualEntry {
  int k1 = 0;
  int k0 = 0;
  GapClass beta;  // total class of the residual
  BimKey key;
  FieldChain residual;
};

struct BimReport {
  std::vector<BimResidualEntry> entries;
  bool ok() const { return entries.empty(); }
  // Input tuples are named through D; residual chains through `out` when
  // given (homomorphism residuals live in the codomain module), else D.
  std::string render(const FilteredBimodule& D, const GradedBasis* out = nullptr) const;
};

// Defect of the bimodule relation at one input tuple and total class:
// the sum of the left coderivation terms (prefix signs inside the left
// word, curvature inserted at every gap), the middle insertions
// n(head, n(tail, y, head), tail) signed by the left head, and the right
// coderivation terms signed globally by the left word and the module
// letter.
FieldChain bimodule_residual(const FilteredBimodule& D, const BimKey& key, const GapClass& beta);

// Checks the relation for every input tuple and class below the cutoffs;
// curvature shortens the scanned word lengths by one so every referenced
// operation is stored.
BimReport verify_bimodule(const FilteredBimodule& D);

// The algebra as a module over itself: the operation with k1 letters on
// the left and k0 on the right is m_{k1+k0+1} with the module slot in
// the middle.  Curvature stays on the algebra sides.
FilteredBimodule bimodule_from_algebra(const FilteredAInfinity& A);

// Operations with b1 inserted into the left word and b0 into the right
// one in all possible ways; both algebras are deformed to match.  The
// elements must have strictly positive valuation and shifted degree 0.
FilteredBimodule deform_bimodule(const FilteredBimodule& D, const Chain& b0, const Chain& b1);

// Weakly filtered map of bimodules: components of possibly negative
// energy no lower than -loss, together with the algebra homomorphisms
// acting on the two words.
struct BimoduleHom {
  Field field;
  HomFamily f1;  // between the left algebras
  HomFamily f0;  // between the right algebras
  GradedBasis dom_mod, cod_mod;
  Rational loss = Rational(0);
  std::map<BimoduleOpKey, BimTensor> comps;
  Rational energy_cutoff;
  int arity_cutoff = 2;

  const BimTensor* comp(int k1, int k0, const GapClass& beta) const;
  void add_entry(int k1, int k0, const GapClass& beta, const BimKey& key, const FieldChain& out);
  // Checks loss >= 0 and that every stored class has lambda >= -loss;
  // a violation names the offending (k1, k0, class).
  void validate() const;
};

BimoduleHom identity_bimodule_hom(const FilteredBimodule& D);

// Residuals of the intertwining identity for phi: the codomain side
// applies the codomain operations to block expansions of the head words
// around a phi component, sign-free; the domain side applies phi
// components to the three coderivation groups with their signs.  Both
// attached homomorphisms must verify first; entries are reported per
// input tuple and total class.
BimReport verify_bimodule_hom(const BimoduleHom& phi, const FilteredBimodule& D,
                              const FilteredBimodule& Dp);

}  // namespace ainf
