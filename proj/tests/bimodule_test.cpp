#include "ainf/bimodule.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace ainf;

namespace {

NovElement tpow(const Field& F, const Rational& cutoff, const Rational& lambda,
                const Scalar& c) {
  NovElement u(F, cutoff);
  u.add_term(NovMonomial{lambda, 0}, c);
  return u;
}

// Drops empty tensors and empty chains so structurally equal bimodules
// compare equal even when one side declares zero components explicitly.
std::map<BimoduleOpKey, BimTensor> pruned(const std::map<BimoduleOpKey, BimTensor>& ops) {
  std::map<BimoduleOpKey, BimTensor> out;
  for (const auto& [key, tensor] : ops) {
    BimTensor t;
    for (const auto& [word, chain] : tensor)
      if (!chain.empty()) t[word] = chain;
    if (!t.empty()) out[key] = t;
  }
  return out;
}

std::map<OpKey, Tensor> pruned_alg(const std::map<OpKey, Tensor>& ops) {
  std::map<OpKey, Tensor> out;
  for (const auto& [key, tensor] : ops) {
    Tensor t;
    for (const auto& [word, chain] : tensor)
      if (!chain.empty()) t[word] = chain;
    if (!t.empty()) out[key] = t;
  }
  return out;
}

}  // namespace

TEST_CASE("diagonal bimodule of a dg algebra") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::heisenberg(F));
  FilteredBimodule D = bimodule_from_algebra(A);
  CHECK_NOTHROW(D.validate());
  CHECK(verify_bimodule(D).ok());
  CHECK_FALSE(D.has_curvature());
  CHECK(D.arity_cutoff == A.arity_cutoff - 1);

  // the (k1, k0) operation is the arity k1 + k0 + 1 algebra operation
  int x = A.basis.index("x"), z = A.basis.index("z");
  const FieldChain* left = D.entry(1, 0, gap_zero(), BimKey{{x}, z, {}});
  const FieldChain* flat = A.entry(2, gap_zero(), {x, z});
  REQUIRE(left != nullptr);
  REQUIRE(flat != nullptr);
  CHECK(*left == *flat);
  const FieldChain* diff = D.entry(0, 0, gap_zero(), BimKey{{}, z, {}});
  REQUIRE(diff != nullptr);
  CHECK(*diff == FieldChain{{A.basis.index("xy"), F.neg(F.one())}});
}

TEST_CASE("entry homogeneity is enforced") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::mini_heisenberg(F));
  FilteredBimodule D = bimodule_from_algebra(A);
  int z = A.basis.index("z"), x = A.basis.index("x"), w = A.basis.index("w");
  CHECK_THROWS(D.add_entry(0, 0, gap_zero(), BimKey{{}, z, {}}, {{x, F.one()}}));
  CHECK_NOTHROW(D.add_entry(0, 0, gap_zero(), BimKey{{}, z, {}}, {{w, F.one()}}));
}

TEST_CASE("deforming the diagonal matches the diagonal of the deformation") {
  Field F = Field::rationals();
  Rational cutoff(3, 2);
  FilteredAInfinity A = from_dga(fix::mini_heisenberg(F, cutoff, 3));
  Chain b;
  b[A.basis.index("z")] = tpow(F, cutoff, Rational(1, 2), F.one());

  FilteredBimodule once = deform_bimodule(bimodule_from_algebra(A), b, b);
  FilteredBimodule twice = bimodule_from_algebra(deform_by_b(A, b));
  CHECK(pruned(once.ops) == pruned(twice.ops));
  CHECK(pruned_alg(once.left.ops) == pruned_alg(twice.left.ops));
  CHECK(pruned_alg(once.right.ops) == pruned_alg(twice.right.ops));
  CHECK(once.monoid == twice.monoid);
  CHECK(verify_bimodule(once).ok());
  CHECK(once.has_curvature());
}

TEST_CASE("a pair of deformations gives a verified curved bimodule") {
  Field F = Field::rationals();
  Rational cutoff(3, 2);
  FilteredAInfinity A = from_dga(fix::mini_heisenberg(F, cutoff, 3));
  int z = A.basis.index("z");
  Chain b1, b0;
  b1[z] = tpow(F, cutoff, Rational(1, 2), F.one());
  b0[z] = tpow(F, cutoff, Rational(1, 2), Scalar(2));

  FilteredBimodule D = deform_bimodule(bimodule_from_algebra(A), b0, b1);
  CHECK(verify_bimodule(D).ok());
  CHECK(D.has_curvature());
  // b1 deforms the left algebra, b0 the right one
  CHECK(pruned_alg(D.left.ops) == pruned_alg(deform_by_b(A, b1).ops));
  CHECK(pruned_alg(D.right.ops) == pruned_alg(deform_by_b(A, b0).ops));
}

TEST_CASE("the square of the differential is the curvature sandwich") {
  Field F = Field::rationals();
  Rational cutoff(3, 2);
  FilteredAInfinity A = from_dga(fix::mini_heisenberg(F, cutoff, 3));
  int z = A.basis.index("z");
  Chain b1, b0;
  b1[z] = tpow(F, cutoff, Rational(1, 2), F.one());
  b0[z] = tpow(F, cutoff, Rational(1, 2), Scalar(3));
  FilteredBimodule D = deform_bimodule(bimodule_from_algebra(A), b0, b1);
  REQUIRE(verify_bimodule(D).ok());

  // n00 n00 (y)  +  n10(c_left, y)  +  (-1)^{deg' y} n01(y, c_right) = 0
  bool saw_nonzero = false;
  for (int y = 0; y < (int)D.basis.size(); ++y) {
    int sign_y = (D.basis.degree(y) - 1) % 2 == 0 ? 1 : -1;
    for (const GapClass& beta : D.monoid.classes()) {
      FieldChain total;
      for (const auto& [b_in, b_out] : D.monoid.splits(beta)) {
        if (const FieldChain* inner = D.entry(0, 0, b_in, BimKey{{}, y, {}})) {
          for (const auto& [mid, c] : *inner)
            if (const FieldChain* outer = D.entry(0, 0, b_out, BimKey{{}, mid, {}}))
              fc_add(F, total, *outer, c);
        }
        if (b_in.is_zero()) continue;
        const FieldChain* cl = D.left.entry(0, b_in, {});
        const FieldChain* cr = D.right.entry(0, b_in, {});
        if (cl != nullptr)
          for (const auto& [a, c] : *cl)
            if (const FieldChain* t = D.entry(1, 0, b_out, BimKey{{a}, y, {}}))
              fc_add(F, total, *t, c);
        if (cr != nullptr)
          for (const auto& [a, c] : *cr)
            if (const FieldChain* t = D.entry(0, 1, b_out, BimKey{{}, y, {a}}))
              fc_add(F, total, *t, F.mul(c, Scalar(sign_y)));
      }
      CHECK(total.empty());
      if (!beta.is_zero()) {
        if (const FieldChain* inner = D.entry(0, 0, beta, BimKey{{}, y, {}}))
          if (!inner->empty()) saw_nonzero = true;
      }
    }
  }
  CHECK(saw_nonzero);
}

TEST_CASE("identity bimodule homomorphism") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::heisenberg(F));
  FilteredBimodule D = bimodule_from_algebra(A);
  BimoduleHom phi = identity_bimodule_hom(D);
  CHECK_NOTHROW(phi.validate());
  CHECK(verify_bimodule_hom(phi, D, D).ok());

  Rational cutoff(3, 2);
  FilteredAInfinity Am = from_dga(fix::mini_heisenberg(F, cutoff, 3));
  Chain b;
  b[Am.basis.index("z")] = tpow(F, cutoff, Rational(1, 2), F.one());
  FilteredBimodule Dc = deform_bimodule(bimodule_from_algebra(Am), b, b);
  BimoduleHom psi = identity_bimodule_hom(Dc);
  CHECK(verify_bimodule_hom(psi, Dc, Dc).ok());
}

TEST_CASE("negative energy components respect the declared loss") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::mini_heisenberg(F));
  FilteredBimodule D = bimodule_from_algebra(A);
  BimoduleHom phi = identity_bimodule_hom(D);
  int z = A.basis.index("z"), w = A.basis.index("w");
  phi.comps[BimoduleOpKey{0, 1, GapClass{Rational(-1, 2), 0}}][BimKey{{}, z, {w}}] = {
      {w, F.one()}};
  CHECK_THROWS(phi.validate());
  phi.loss = Rational(1, 2);
  CHECK_NOTHROW(phi.validate());
  phi.loss = Rational(-1);
  CHECK_THROWS(phi.validate());
}
