#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ainf/complex.hpp"
#include "ainf/linalg.hpp"

namespace ainf {

struct OpKey {
  int k = 0;
  GapClass beta;
  bool operator==(const OpKey& o) const { return k == o.k && beta == o.beta; }
  bool operator<(const OpKey& o) const {
    if (k != o.k) return k < o.k;
    return beta < o.beta;
  }
};

// Multilinear operation component over the ground field: input tuples of
// basis indices mapped to output chains.  The Novikov weight T^lambda
// e^{mu/2} indexed by the OpKey is implicit; e-exponents of letters slide
// out of the operation and into coefficients, so keys carry bare indices.
using Key = std::vector<int>;
using Tensor = std::map<Key, FieldChain>;

// Nonempty tensors of one arity, in class order.
std::vector<std::pair<GapClass, const Tensor*>> ops_of_arity(const std::map<OpKey, Tensor>& m,
                                                             int k);

struct FilteredAInfinity {
  Field field;
  GradedBasis basis;
  GapMonoid monoid;
  Rational energy_cutoff;
  int arity_cutoff = 2;
  std::map<OpKey, Tensor> ops;
  // True when every index below the cutoffs is declared (absent = zero).
  // Partial collections keep only the indices they define.
  bool total = true;

  const Tensor* op(int k, const GapClass& beta) const;
  const FieldChain* entry(int k, const GapClass& beta, const Key& key) const;
  // Adds an entry, enforcing output homogeneity
  //   deg'(out) = 1 - mu(beta) + sum deg'(inputs).
  void add_entry(int k, const GapClass& beta, const Key& key, const FieldChain& out);
  int max_arity_present() const;
  bool has_arity_zero() const;
  // Structural invariants: classes in the monoid, arities within bounds,
  // no operation at (0, zero class), homogeneous entries.
  void validate() const;
};

struct ResidualEntry {
  int k = 0;
  GapClass beta;
  Key word;
  FieldChain residual;
};

struct Report {
  std::vector<ResidualEntry> entries;
  bool ok() const { return entries.empty(); }
  std::string render(const GradedBasis& basis, const Field& F) const;
};

// Defect of the quadratic relation at one word and one total class: the
// signed sum over all splittings w = u.v.t and all class splittings
// beta1 + beta2 = beta of
//   (-1)^{deg' u} m_{|u|+1+|t|, beta2}(u, m_{|v|, beta1}(v), t),
// including |v| = 0 insertions of the curvature at every gap.
FieldChain ainfty_residual(const FilteredAInfinity& A, const Key& word, const GapClass& beta);

// Checks the relation for every word and class below the cutoffs.  When
// curvature is present the word length stops one short of the arity
// cutoff so that every outer operation the relation needs is in range.
Report verify_ainfty(const FilteredAInfinity& A);

// Largest word length whose relation instance only references stored
// arities; verification runs up to this length.
int relation_arity_bound(const FilteredAInfinity& A);

// The arity-1 energy-zero operation as a plain linear map of shift +1.
LinearMap linear_differential(const FilteredAInfinity& A);

// Full differential on the bar coalgebra applied to one word; words in
// the result carry the letters' e-exponents, coefficients absorb the
// operations' Novikov weights.
BarElement bar_differential(const FilteredAInfinity& A, const Word& w);

// Coderivation extension of a single operation component.
BarElement coderivation_extend(const FilteredAInfinity& A, int k, const GapClass& beta,
                               const Word& w);

// ---------------------------------------------------------------------------
// Differential graded algebra import

struct DgaInput {
  Field field;
  GradedBasis basis;
  LinearMap d;  // shift +1
  std::map<std::pair<int, int>, FieldChain> product;
  Rational energy_cutoff;
  int arity_cutoff = 3;
};

// Builds the sign-twisted structure
//   m_1(x) = (-1)^{deg x} d x,
//   m_2(x,y) = (-1)^{deg x (deg y + 1)} x y
// after checking d^2 = 0, the Leibniz rule and associativity.
FilteredAInfinity from_dga(const DgaInput& in);

// ---------------------------------------------------------------------------
// Homomorphism families

// Filtered homomorphism: components f_{k,beta} of degree -mu(beta) on
// shifted degrees, with the same implicit weight convention as above.
// floor < 0 admits the weakly filtered case (energy loss up to -floor).
struct HomFamily {
  Field field;
  GradedBasis dom, cod;
  std::map<OpKey, Tensor> comps;
  Rational floor = Rational(0);
  Rational energy_cutoff;
  int arity_cutoff = 2;

  const Tensor* comp(int k, const GapClass& beta) const;
  void add_entry(int k, const GapClass& beta, const Key& key, const FieldChain& out);
  int max_arity_present() const;
  void validate() const;
  // The (1, 0) component as a plain linear map.
  LinearMap linear_part() const;
};

HomFamily identity_hom(const FilteredAInfinity& A);

// Coalgebra homomorphism extension of f applied to one word, including
// arity-0 insertions at every gap (their strictly positive energy keeps
// the series finite below the cutoff).
BarElement coalgebra_extend(const HomFamily& f, const Word& w);

// Residuals of  m^cod composed with \hat f  minus  f composed with the
// bar differential of dom,  reported per word and total class.
Report verify_homomorphism(const HomFamily& f, const FilteredAInfinity& dom,
                           const FilteredAInfinity& cod, int max_word_len = -1);

// Corank-one components of g after f.
HomFamily compose_homomorphisms(const HomFamily& f, const HomFamily& g);

bool hom_equal(const HomFamily& a, const HomFamily& b);

// ---------------------------------------------------------------------------
// Partial structures indexed by the norm order (ank.cpp)

// Norm of a class: -1 for the zero class; otherwise the maximal number of
// nonzero monoid summands decomposing beta, plus floor(lambda), minus 1.
int beta_norm(const GapMonoid& m, const GapClass& beta);

// (beta, k) strictly before the index (n, K): norm + k < n + K, or the
// sums agree and norm < n.  Comparing two concrete indices is the special
// case n = norm(beta_2), K = k_2.
bool ank_before(int norm, int k, int n, int K);

// Relation residuals at every index (beta, k) before (n, K).  A structure
// with total = false must declare every such index; an empty tensor
// declares a zero operation.  Missing declarations and arities beyond the
// cutoff throw.
Report verify_ank(const FilteredAInfinity& A, int n, int K);

// ---------------------------------------------------------------------------
// Maurer-Cartan theory (deform.cpp)

// Sum m_0(1) + m_1(b) + m_2(b,b) + ... for a degree-shifted-0 element b
// of strictly positive valuation.
Chain mc_residual(const FilteredAInfinity& A, const Chain& b);

// Structure with operations m^b_k obtained by inserting b into all gaps;
// the monoid grows by the classes of b's monomials.
FilteredAInfinity deform_by_b(const FilteredAInfinity& A, const Chain& b);

struct PotentialResult {
  bool defined = false;    // residual is a multiple of the unit
  NovElement value;        // coefficient of the unit
  Chain off_unit;          // residual terms away from the unit
};

PotentialResult potential(const FilteredAInfinity& A, const Chain& b, int unit_index);

// Checks deg' b = 0 and val(b) > 0; throws otherwise.
void check_deformation_element(const FilteredAInfinity& A, const Chain& b);

}  // namespace ainf
