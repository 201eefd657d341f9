#include "ainf/ainfty.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace ainf;

TEST_CASE("dga import twists signs") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::heisenberg(F));
  CHECK(verify_ainfty(A).ok());
  CHECK(A.total);
  CHECK_FALSE(A.has_arity_zero());
  CHECK(A.max_arity_present() == 2);

  int x = A.basis.index("x"), y = A.basis.index("y"), z = A.basis.index("z");
  int xy = A.basis.index("xy"), unit = A.basis.index("1");

  // m_1 = (-1)^deg d
  const FieldChain* dz = A.entry(1, gap_zero(), {z});
  REQUIRE(dz);
  CHECK(*dz == FieldChain{{xy, F.make(-1)}});
  CHECK(A.entry(1, gap_zero(), {x}) == nullptr);

  // m_2(a, b) = (-1)^{deg a (deg b + 1)} ab
  CHECK(*A.entry(2, gap_zero(), {x, y}) == FieldChain{{xy, F.one()}});
  CHECK(*A.entry(2, gap_zero(), {y, x}) == FieldChain{{xy, F.make(-1)}});
  CHECK(*A.entry(2, gap_zero(), {unit, x}) == FieldChain{{x, F.one()}});
  CHECK(*A.entry(2, gap_zero(), {x, unit}) == FieldChain{{x, F.make(-1)}});

  LinearMap d = linear_differential(A);
  CHECK(d.shift == 1);
  CHECK(d.column(z) == FieldChain{{xy, F.make(-1)}});
}

TEST_CASE("dga import rejects broken structures") {
  Field F = Field::rationals();

  // d(x) = xy breaks the Leibniz rule on x.z
  DgaInput leib = fix::heisenberg(F);
  leib.d.add_entry(F, leib.basis.index("x"), leib.basis.index("xy"), F.one());
  CHECK_THROWS(from_dga(leib));

  // dropping x.yz = xyz breaks associativity of (x.y).z
  DgaInput assoc = fix::heisenberg(F);
  assoc.product.erase({assoc.basis.index("x"), assoc.basis.index("yz")});
  assoc.product.erase({assoc.basis.index("yz"), assoc.basis.index("x")});
  CHECK_THROWS(from_dga(assoc));

  // d(xy) = xyz makes d^2(z) nonzero
  DgaInput sq = fix::heisenberg(F);
  sq.d.add_entry(F, sq.basis.index("xy"), sq.basis.index("xyz"), F.one());
  CHECK_THROWS(from_dga(sq));

  DgaInput grading = fix::heisenberg(F);
  grading.d.add_entry(F, grading.basis.index("x"), grading.basis.index("y"), F.one());
  CHECK_THROWS(from_dga(grading));
}

TEST_CASE("entry homogeneity is enforced") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::mini_heisenberg(F));
  int x = A.basis.index("x"), w = A.basis.index("w"), e = A.basis.index("e");

  // deg'(w) = 1 = deg'(x) + deg'(x) + 1 needs two degree-1 inputs
  CHECK_THROWS(A.add_entry(2, gap_zero(), {x, e}, {{w, F.one()}}));
  A.add_entry(3, gap_zero(), {x, x, x}, {{w, F.one()}});
  CHECK(A.max_arity_present() == 3);
}

TEST_CASE("validation catches structural misuse") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::mini_heisenberg(F, Rational(1), 3));

  FilteredAInfinity off = A;
  off.ops[OpKey{1, GapClass{Rational(1, 2), 0}}] = {};
  CHECK_THROWS(off.validate());

  FilteredAInfinity curved = A;
  curved.ops[OpKey{0, gap_zero()}] = {};
  CHECK_THROWS(curved.validate());

  FilteredAInfinity wide = A;
  wide.ops[OpKey{5, gap_zero()}] = {};
  CHECK_THROWS(wide.validate());
}

TEST_CASE("residuals expose broken relations") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::heisenberg(F));
  int x = A.basis.index("x"), y = A.basis.index("y"), z = A.basis.index("z");
  int xy = A.basis.index("xy");
  CHECK(ainfty_residual(A, {x, y, z}, gap_zero()).empty());
  CHECK(ainfty_residual(A, {z, z}, gap_zero()).empty());

  // doubling one product entry unbalances associativity at (x, y, z)
  FilteredAInfinity broken = A;
  broken.ops[OpKey{2, gap_zero()}][Key{x, y}] = {{xy, F.make(2)}};
  FieldChain r = ainfty_residual(broken, {x, y, z}, gap_zero());
  CHECK_FALSE(r.empty());

  Report rep = verify_ainfty(broken);
  CHECK_FALSE(rep.ok());
  std::string text = rep.render(broken.basis, F);
  CHECK(text.find("\n") != std::string::npos);
  CHECK(text.back() == '\n');
}

TEST_CASE("bar differential squares to zero on sample words") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::heisenberg(F));
  int x = A.basis.index("x"), y = A.basis.index("y"), z = A.basis.index("z");

  for (const Word& w : {word_of({z}), word_of({x, y}), word_of({x, y, z})}) {
    BarElement first = bar_differential(A, w);
    BarElement second;
    for (const auto& [u, c] : first) {
      BarElement step = bar_differential(A, u);
      for (auto& [v, cv] : step) bar_add(second, v, cv * c);
    }
    CHECK(bar_is_zero(second));
  }
}

TEST_CASE("coderivation extension hits every slot") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::heisenberg(F));
  int x = A.basis.index("x"), y = A.basis.index("y");
  int xy = A.basis.index("xy");

  BarElement e = coderivation_extend(A, 2, gap_zero(), word_of({x, y, x, y}));
  // three adjacent pairs collapse, each to a word containing xy
  int hits = 0;
  for (const auto& [w, c] : e) {
    (void)c;
    REQUIRE(w.size() == 3);
    int count = 0;
    for (const auto& l : w) count += l.basis == xy;
    hits += count;
  }
  CHECK(hits == 3);
}

TEST_CASE("relation arity bound shrinks under curvature") {
  Field F = Field::rationals();
  FilteredAInfinity A = from_dga(fix::mini_heisenberg(F, Rational(2), 3));
  int bound = relation_arity_bound(A);

  Chain b;
  NovElement u(F, Rational(2));
  u.add_term(NovMonomial{Rational(1, 2), 0}, F.one());
  b[A.basis.index("z")] = u;
  FilteredAInfinity curved = deform_by_b(A, b);
  REQUIRE(curved.has_arity_zero());
  CHECK(relation_arity_bound(curved) == curved.arity_cutoff - 1);
  CHECK(bound >= relation_arity_bound(curved));
}
