#include "ainf/ainfty.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace ainf;

TEST_CASE("class norms count summands and whole energies") {
  GapMonoid m = monoid_closure({{Rational(1), 0}}, Rational(3));
  CHECK(beta_norm(m, gap_zero()) == -1);
  CHECK(beta_norm(m, {Rational(1), 0}) == 1);
  CHECK(beta_norm(m, {Rational(2), 0}) == 3);

  GapMonoid half = monoid_closure({{Rational(1, 2), 0}}, Rational(3, 2));
  CHECK(beta_norm(half, {Rational(1, 2), 0}) == 0);
  CHECK(beta_norm(half, {Rational(1), 0}) == 2);

  CHECK_THROWS(beta_norm(m, {Rational(1, 3), 0}));
}

TEST_CASE("norm order is graded lexicographic") {
  // sum first, then the norm
  CHECK(ank_before(0, 1, 1, 1));
  CHECK(ank_before(0, 2, 1, 1));
  CHECK_FALSE(ank_before(1, 1, 1, 1));
  CHECK_FALSE(ank_before(2, 0, 1, 1));
  CHECK_FALSE(ank_before(1, 2, 1, 1));
  CHECK(ank_before(-1, 3, 1, 1));
}

TEST_CASE("partial structures verify up to an index") {
  Field F = Field::rationals();
  FilteredAInfinity A;
  A.field = F;
  A.basis = GradedBasis::from({{"e", 0}, {"x", 1}, {"y", 1}, {"z", 1}, {"w", 2}});
  A.monoid = monoid_closure({{Rational(1), 0}}, Rational(3));
  A.energy_cutoff = Rational(3);
  A.arity_cutoff = 3;
  A.total = false;

  int z = A.basis.index("z"), w = A.basis.index("w");
  A.ops[OpKey{1, gap_zero()}];
  A.add_entry(1, gap_zero(), {z}, {{w, F.make(-1)}});
  A.ops[OpKey{2, gap_zero()}];
  A.ops[OpKey{3, gap_zero()}];
  A.ops[OpKey{0, GapClass{Rational(1), 0}}];

  CHECK(verify_ank(A, 1, 1).ok());

  FilteredAInfinity missing = A;
  missing.ops.erase(OpKey{2, gap_zero()});
  CHECK_THROWS_WITH(verify_ank(missing, 1, 1),
                    "undeclared operations before (1, 1): ((0,0), 2)");

  FilteredAInfinity narrow = A;
  narrow.arity_cutoff = 2;
  CHECK_THROWS(verify_ank(narrow, 1, 1));

  CHECK_THROWS(verify_ank(A, -1, 0));
}

TEST_CASE("partial verification reports broken relations in range") {
  Field F = Field::rationals();
  FilteredAInfinity A;
  A.field = F;
  A.basis = GradedBasis::from({{"a0", 1}, {"a1", 2}, {"a2", 3}});
  A.monoid = GapMonoid::trivial(Rational(1));
  A.energy_cutoff = Rational(1);
  A.arity_cutoff = 2;
  A.total = false;

  A.ops[OpKey{1, gap_zero()}];
  A.add_entry(1, gap_zero(), {0}, {{1, F.one()}});
  A.add_entry(1, gap_zero(), {1}, {{2, F.one()}});
  A.ops[OpKey{2, gap_zero()}];

  Report rep = verify_ank(A, 0, 1);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.entries.front().word == Key{0});
}

TEST_CASE("total structures verify everywhere below the cutoffs") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::mini_heisenberg(F));
  CHECK(verify_ank(A, 1, 1).ok());
}
