#include "ainf/novikov.hpp"
#include "doctest.h"

using namespace ainf;

namespace {

Rational rat(const std::string& s) { return parse_rational(s); }

NovElement elem(const Field& F, const Rational& cutoff) { return NovElement(F, cutoff); }

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(rat("3/4")) == "3/4");
  CHECK(to_string(rat("-6/4")) == "-3/2");
  CHECK(to_string(rat("5")) == "5");
  CHECK(rat("10/4") == Rational(5, 2));
  CHECK_THROWS(parse_rational("0.5"));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
  CHECK(rational_floor(rat("7/2")) == 3);
  CHECK(rational_floor(rat("-7/2")) == -4);
  CHECK(rational_floor(rat("4")) == 4);
}

TEST_CASE("field arithmetic over the rationals and a prime field") {
  Field Q = Field::rationals();
  CHECK(Q.characteristic() == 0);
  CHECK(Q.to_string(Q.div(Q.make(1), Q.make(3))) == "1/3");

  Field F5 = Field::from_name("F5");
  CHECK(F5.characteristic() == 5);
  CHECK(F5.to_string(F5.make(7)) == "2");
  CHECK(F5.to_string(F5.inv(F5.make(2))) == "3");
  CHECK(Field::is_zero(F5.make(10)));
  CHECK(F5.name() == "F5");
  CHECK(Field::from_name("Q").characteristic() == 0);
  CHECK_THROWS(Field::from_name("F4"));
}

TEST_CASE("novikov elements truncate at the cutoff") {
  Field F = Field::rationals();
  NovElement u = elem(F, rat("3/2"));
  u.add_term(NovMonomial{rat("1"), 0}, F.one());
  u.add_term(NovMonomial{rat("3/2"), 0}, F.one());
  u.add_term(NovMonomial{rat("2"), 1}, F.one());
  CHECK(u.terms().size() == 1);
  CHECK(u.valuation() == rat("1"));

  NovElement v = u.shifted(rat("1"), 0);
  CHECK(v.is_zero());
  CHECK(v.valuation() == rat("3/2"));
}

TEST_CASE("novikov product adds energies and e powers") {
  Field F = Field::rationals();
  NovElement a = elem(F, rat("2"));
  a.add_term(NovMonomial{rat("1/2"), 1}, F.make(2));
  a.add_term(NovMonomial{rat("1"), 0}, F.one());
  NovElement b = elem(F, rat("2"));
  b.add_term(NovMonomial{rat("1/2"), -1}, F.make(3));

  NovElement p = a * b;
  REQUIRE(p.terms().size() == 2);
  auto it = p.terms().begin();
  CHECK(it->first == NovMonomial{rat("1"), 0});
  CHECK(it->second == F.make(6));
  ++it;
  CHECK(it->first == NovMonomial{rat("3/2"), -1});
  CHECK(it->second == F.make(3));
}

TEST_CASE("novikov addition cancels and respects the floor") {
  Field F = Field::rationals();
  NovElement a = elem(F, rat("2"));
  a.add_term(NovMonomial{rat("1"), 0}, F.one());
  NovElement b = -a;
  CHECK((a + b).is_zero());

  CHECK_THROWS_WITH(NovElement(F, rat("2"), rat("1/2")), "Novikov floor must be <= 0");
  NovElement w(F, rat("2"), rat("-1/2"));
  w.add_term(NovMonomial{rat("-1/2"), 0}, F.one());
  CHECK(w.terms().size() == 1);
  w.add_term(NovMonomial{rat("-1"), 0}, F.one());
  CHECK(w.terms().size() == 1);

  NovElement s = NovElement::scalar(F, rat("2"), F.make(5));
  CHECK(s.is_constant(F.make(5)));
  CHECK_FALSE(s.is_constant(F.make(4)));
  CHECK(s.truncated(rat("0")).is_zero());
}

TEST_CASE("monoid discreteness and ordering") {
  GapMonoid m({{rat("1/2"), 2}, {rat("1"), 0}}, rat("3/2"));
  CHECK(m.classes().size() == 3);
  CHECK(m.classes()[0].is_zero());
  CHECK(m.contains(GapClass{rat("1/2"), 2}));
  CHECK_FALSE(m.contains(GapClass{rat("1/2"), 0}));
  CHECK(m.levels() == std::vector<Rational>{rat("0"), rat("1/2"), rat("1")});

  CHECK_THROWS(GapMonoid({{rat("0"), 2}}, rat("1")));
  CHECK_THROWS(GapMonoid({{rat("-1"), 0}}, rat("1")));

  GapMonoid dup({{rat("1/2"), 2}, {rat("1/2"), 2}}, rat("1"));
  CHECK(dup.classes().size() == 2);
}

TEST_CASE("monoid closure under addition") {
  GapMonoid m = monoid_closure({{rat("1/2"), 0}}, rat("3/2"));
  CHECK(m.classes().size() == 3);
  CHECK(m.contains(GapClass{rat("1"), 0}));
  CHECK_FALSE(m.contains(GapClass{rat("3/2"), 0}));

  GapMonoid mixed = monoid_closure({{rat("1"), 2}, {rat("3/2"), 0}}, rat("3"));
  CHECK(mixed.contains(GapClass{rat("2"), 4}));
  CHECK(mixed.contains(GapClass{rat("5/2"), 2}));
  CHECK_FALSE(mixed.contains(GapClass{rat("3"), 0}));

  CHECK_THROWS(monoid_closure({{rat("0"), 0}}, rat("1")));
  CHECK_THROWS(monoid_closure({{rat("1"), 1}}, rat("2")));

  GapMonoid ext = monoid_extend(m, {{rat("1/3"), 0}});
  CHECK(ext.contains(GapClass{rat("5/6"), 0}));
  CHECK(ext.cutoff() == m.cutoff());
}

TEST_CASE("splits enumerate ordered decompositions") {
  GapMonoid m = monoid_closure({{rat("1/2"), 0}}, rat("3/2"));
  auto s = m.splits(GapClass{rat("1"), 0});
  REQUIRE(s.size() == 3);
  CHECK(s[0].first.is_zero());
  CHECK(s[1] == std::pair<GapClass, GapClass>{{rat("1/2"), 0}, {rat("1/2"), 0}});
  CHECK(s[2].second.is_zero());

  CHECK(to_string(GapClass{rat("1/2"), -2}) == "(1/2,-2)");
  CHECK(m.at_level(rat("1/2")).size() == 1);
}
