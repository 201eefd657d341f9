#include "ainf/interval.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace ainf;

namespace {

NovElement tpow(const Field& F, const Rational& cutoff, const Rational& lambda) {
  NovElement u(F, cutoff);
  u.add_term(NovMonomial{lambda, 0}, F.one());
  return u;
}

}  // namespace

TEST_CASE("cylinder passes the model axioms") {
  Field F = Field::rationals();
  for (DgaInput in : {fix::mini_heisenberg(F), fix::dual_numbers(F)}) {
    FilteredAInfinity A = from_dga(in);
    IntervalModel M = build_interval_model(A);
    CHECK(M.algebra.basis.size() == 3 * A.basis.size());
    CHECK(verify_ainfty(M.algebra).ok());
    CHECK(verify_model_axioms(M, A).ok());
    CHECK(verify_homomorphism(M.incl, A, M.algebra).ok());
    CHECK(verify_homomorphism(M.eval0, M.algebra, A).ok());
    CHECK(verify_homomorphism(M.eval1, M.algebra, A).ok());
    CHECK(is_weak_homotopy_equivalence(M.incl, A, M.algebra));
  }
}

TEST_CASE("cylinder of a curved algebra still verifies") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::mini_heisenberg(F, Rational(3, 2), 3));
  Chain b;
  b[A.basis.index("z")] = tpow(F, Rational(3, 2), Rational(1, 2));
  FilteredAInfinity Ab = deform_by_b(A, b);
  REQUIRE(Ab.has_arity_zero());

  IntervalModel M = build_interval_model(Ab);
  CHECK(verify_ainfty(M.algebra).ok());
  CHECK(verify_model_axioms(M, Ab).ok());
}

TEST_CASE("inclusion is a homotopy from the identity to itself") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::heisenberg(F));
  IntervalModel M = build_interval_model(A);
  HomFamily id = identity_hom(A);
  CHECK(check_homotopy(id, id, M.incl, M, A).ok());

  // a family that is not eval1 of the inclusion is rejected
  HomFamily off = identity_hom(A);
  off.add_entry(2, gap_zero(), {A.basis.index("x"), A.basis.index("y")},
                {{A.basis.index("z"), F.one()}});
  CHECK_FALSE(check_homotopy(id, off, M.incl, M, A).ok());
  CHECK_FALSE(check_homotopy(off, id, M.incl, M, A).ok());
}

TEST_CASE("constant path certifies gauge equivalence") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::heisenberg(F, Rational(2), 3));
  IntervalModel M = build_interval_model(A);
  int x = A.basis.index("x"), y = A.basis.index("y");

  Chain b;
  b[x] = tpow(F, Rational(2), Rational(1));
  Chain bt;
  bt[M.i0[x]] = b.at(x);
  bt[M.i1[x]] = b.at(x);
  CHECK(check_gauge_equivalence(b, b, bt, M).ok());

  Chain bp;
  bp[y] = tpow(F, Rational(2), Rational(1));
  CHECK_FALSE(check_gauge_equivalence(b, bp, bt, M).ok());

  Chain flat;
  flat[M.i0[x]] = NovElement::scalar(F, Rational(2), F.one());
  CHECK_THROWS(check_gauge_equivalence(b, b, flat, M));
}

TEST_CASE("weak equivalence detection uses cohomology") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::heisenberg(F));
  HomFamily zero;
  zero.field = F;
  zero.dom = A.basis;
  zero.cod = A.basis;
  zero.energy_cutoff = A.energy_cutoff;
  zero.arity_cutoff = A.arity_cutoff;
  CHECK_FALSE(is_weak_homotopy_equivalence(zero, A, A));
  CHECK(is_weak_homotopy_equivalence(identity_hom(A), A, A));
}
