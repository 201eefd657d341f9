#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ainf/complex.hpp"

namespace ainf {

using Matrix = std::vector<std::vector<Scalar>>;  // row major

// In-place reduced row echelon form; returns the rank.
int rref(const Field& F, Matrix& m);
int mat_rank(const Field& F, Matrix m);
// One solution of A x = b, or nullopt if inconsistent.
std::optional<std::vector<Scalar>> mat_solve(const Field& F, Matrix a, std::vector<Scalar> b);
// Basis of the right kernel of A (n = number of columns).
std::vector<std::vector<Scalar>> mat_kernel(const Field& F, Matrix a, int n);

// Degree-homogeneous linear map between graded bases, stored column-wise.
// Entries pair domain index with an image chain in the codomain; every
// image chain must be homogeneous of degree (domain degree + shift).
struct LinearMap {
  int shift = 0;
  std::map<int, FieldChain> cols;

  FieldChain apply(const Field& F, const FieldChain& v) const;
  Chain apply(const Chain& v) const;
  FieldChain column(int i) const;
  void add_entry(const Field& F, int from, int to, const Scalar& c);
  bool is_zero() const;
  bool operator==(const LinearMap& o) const;
};

LinearMap lm_identity(int n);
LinearMap lm_compose(const Field& F, const LinearMap& a, const LinearMap& b);  // a after b
LinearMap lm_add(const Field& F, const LinearMap& a, const LinearMap& b);
LinearMap lm_sub(const Field& F, const LinearMap& a, const LinearMap& b);
LinearMap lm_scaled(const Field& F, const LinearMap& a, const Scalar& c);
// Checks image homogeneity against the bases; throws on violation.
void lm_check_graded(const GradedBasis& dom, const GradedBasis& cod, const LinearMap& m,
                     const std::string& what);

// Dense block of m in a fixed domain degree: rows run over codomain
// elements of degree deg + m.shift, columns over domain elements of deg.
Matrix lm_slice(const Field& F, const GradedBasis& dom, const GradedBasis& cod,
                const LinearMap& m, int deg, std::vector<int>* row_index = nullptr,
                std::vector<int>* col_index = nullptr);

// Rank of the degree-k cohomology of (basis, d) where d has shift +1.
std::map<int, int> cohomology_ranks(const Field& F, const GradedBasis& basis,
                                    const LinearMap& d);

// True iff the degree-0 chain map f: (A, dA) -> (B, dB) induces an
// isomorphism on cohomology in every degree; on failure *bad_degree names
// a degree where it fails.
bool induces_cohomology_iso(const Field& F, const GradedBasis& a, const LinearMap& da,
                            const GradedBasis& b, const LinearMap& db, const LinearMap& f,
                            int* bad_degree = nullptr);

// Named findings from a batch of structural checks.
struct CheckReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  std::string render() const;
};

}  // namespace ainf
