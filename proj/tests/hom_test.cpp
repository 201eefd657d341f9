#include "ainf/ainfty.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace ainf;

TEST_CASE("identity family is a homomorphism") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::heisenberg(F));
  HomFamily id = identity_hom(A);
  id.validate();
  CHECK(id.max_arity_present() == 1);
  CHECK(verify_homomorphism(id, A, A).ok());
  CHECK(id.linear_part() == lm_identity(A.basis.size()));
  CHECK(hom_equal(id, compose_homomorphisms(id, id)));
}

TEST_CASE("homomorphism components respect degree and energy") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::mini_heisenberg(F));
  HomFamily f = identity_hom(A);
  int x = A.basis.index("x"), w = A.basis.index("w");

  // f_{k,beta} drops shifted degree by mu(beta)
  CHECK_THROWS(f.add_entry(1, gap_zero(), {x}, {{w, F.one()}}));

  HomFamily neg = identity_hom(A);
  neg.floor = Rational(-1, 2);
  neg.validate();

  // strictly filtered family rejects negative energy components
  HomFamily strict = identity_hom(A);
  CHECK_THROWS(strict.add_entry(1, GapClass{Rational(-1, 2), 0}, {x}, {{x, F.one()}}));
}

TEST_CASE("perturbed identity fails verification") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::heisenberg(F));
  HomFamily f = identity_hom(A);
  int x = A.basis.index("x"), y = A.basis.index("y"), z = A.basis.index("z");
  // add f_2(x, y) = z without the compensating terms
  f.add_entry(2, gap_zero(), {x, y}, {{z, F.one()}});
  Report rep = verify_homomorphism(f, A, A);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("coalgebra extension splits words in every way") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::heisenberg(F));
  HomFamily id = identity_hom(A);
  int x = A.basis.index("x"), y = A.basis.index("y");

  BarElement e = coalgebra_extend(id, word_of({x, y, x}));
  REQUIRE(e.size() == 1);
  CHECK(e.begin()->first == word_of({x, y, x}));
  CHECK(e.begin()->second.is_constant(F.one()));

  // with a genuine f_2 the extension produces shorter words too
  HomFamily f = id;
  f.add_entry(2, gap_zero(), {x, y}, {{A.basis.index("z"), F.one()}});
  BarElement e2 = coalgebra_extend(f, word_of({x, y, x}));
  CHECK(e2.size() == 2);  // the identity word and (f2(x y), x)
}

TEST_CASE("composition matches manual expansion at low arity") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::heisenberg(F));
  int x = A.basis.index("x"), y = A.basis.index("y"), z = A.basis.index("z");

  HomFamily f = identity_hom(A);
  f.add_entry(2, gap_zero(), {x, y}, {{z, F.one()}});
  HomFamily g = identity_hom(A);
  g.add_entry(2, gap_zero(), {y, x}, {{z, F.make(3)}});

  HomFamily gf = compose_homomorphisms(f, g);
  // (g o f)_2 = g_1 f_2 + g_2 (f_1 x f_1)
  const Tensor* c2 = gf.comp(2, gap_zero());
  REQUIRE(c2);
  CHECK(c2->at(Key{x, y}) == FieldChain{{z, F.one()}});
  CHECK(c2->at(Key{y, x}) == FieldChain{{z, F.make(3)}});
  CHECK_FALSE(hom_equal(f, g));
  CHECK(hom_equal(f, f));
}
