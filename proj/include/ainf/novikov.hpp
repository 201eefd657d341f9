#pragma once

#include <compare>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ainf/field.hpp"

namespace ainf {

// One monomial T^lambda e^n of the universal coefficient ring.  T carries
// degree 0 and the energy lambda; e carries degree 2.  Elements are always
// truncated below an energy cutoff, so lambda ranges over a finite set.
struct NovMonomial {
  Rational lambda;
  int e = 0;

  int degree() const { return 2 * e; }
  bool operator==(const NovMonomial& o) const { return lambda == o.lambda && e == o.e; }
  bool operator<(const NovMonomial& o) const {
    if (lambda != o.lambda) return lambda < o.lambda;
    return e < o.e;
  }
};

// Finite sum of monomials with scalar coefficients, truncated to
// floor <= lambda < cutoff.  The floor is 0 for algebra-side elements;
// weakly filtered morphisms lower it to -c for their energy loss c.
class NovElement {
 public:
  NovElement() : field_(Field::rationals()), cutoff_(0), floor_(0) {}
  NovElement(Field field, Rational cutoff, Rational floor = Rational(0))
      : field_(std::move(field)), cutoff_(std::move(cutoff)), floor_(std::move(floor)) {
    if (floor_ > 0) throw error("Novikov floor must be <= 0");
  }

  static NovElement scalar(Field field, Rational cutoff, const Scalar& c);

  const Field& field() const { return field_; }
  const Rational& cutoff() const { return cutoff_; }
  const Rational& floor() const { return floor_; }
  const std::map<NovMonomial, Scalar>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  // Valuation: least energy of a term; cutoff for the zero element.
  Rational valuation() const;

  // Adds c * T^lambda e^n, dropping the term if it truncates or cancels.
  void add_term(const NovMonomial& m, const Scalar& c);

  NovElement operator+(const NovElement& o) const;
  NovElement operator-(const NovElement& o) const;
  NovElement operator*(const NovElement& o) const;
  NovElement operator-() const;
  bool operator==(const NovElement& o) const;

  NovElement scaled(const Scalar& c) const;
  // Multiply by T^lambda e^n.
  NovElement shifted(const Rational& lambda, int e) const;
  NovElement truncated(const Rational& new_cutoff) const;

  // True iff the element is c * T^0 e^0 for the given scalar.
  bool is_constant(const Scalar& c) const;

 private:
  Field field_;
  Rational cutoff_;
  Rational floor_;
  std::map<NovMonomial, Scalar> terms_;
};

// An exponent class beta = (lambda, mu) of the gap monoid: energy paired
// with an even integer (twice the e-exponent it contributes).
struct GapClass {
  Rational lambda;
  int mu = 0;

  bool is_zero() const { return lambda.is_zero() && mu == 0; }
  GapClass operator+(const GapClass& o) const { return {lambda + o.lambda, mu + o.mu}; }
  bool operator==(const GapClass& o) const { return lambda == o.lambda && mu == o.mu; }
  bool operator<(const GapClass& o) const {
    if (lambda != o.lambda) return lambda < o.lambda;
    return mu < o.mu;
  }
};

GapClass gap_zero();

// The finite truncation of a gapped submonoid of R_{>=0} x 2Z: all classes,
// sorted, with (0,0) first and every other class of strictly positive
// energy below the cutoff.
class GapMonoid {
 public:
  GapMonoid() : cutoff_(0) {}
  GapMonoid(std::vector<GapClass> classes, Rational cutoff);

  static GapMonoid trivial(Rational cutoff);

  const std::vector<GapClass>& classes() const { return classes_; }
  const Rational& cutoff() const { return cutoff_; }
  bool contains(const GapClass& b) const;
  // Distinct energies 0 = lambda_(0) < lambda_(1) < ... below the cutoff.
  const std::vector<Rational>& levels() const { return levels_; }
  // Classes with a given energy.
  std::vector<GapClass> at_level(const Rational& lambda) const;
  // All ordered pairs (b1, b2) of classes with b1 + b2 = b.
  std::vector<std::pair<GapClass, GapClass>> splits(const GapClass& b) const;

  bool operator==(const GapMonoid& o) const {
    return classes_ == o.classes_ && cutoff_ == o.cutoff_;
  }

 private:
  std::vector<GapClass> classes_;
  std::vector<Rational> levels_;
  Rational cutoff_;
};

// Closure of a generating set under addition, truncated below the cutoff.
// Generators must have strictly positive energy and even mu; a zero
// generator is rejected (the zero class is always present implicitly).
GapMonoid monoid_closure(const std::vector<GapClass>& generators, const Rational& cutoff);

// Closure of the union of the classes of m and extra generators.
GapMonoid monoid_extend(const GapMonoid& m, const std::vector<GapClass>& extra);

std::string to_string(const GapClass& b);

}  // namespace ainf
