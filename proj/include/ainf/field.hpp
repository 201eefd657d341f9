#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace ainf {

// All coefficient arithmetic in the library is exact.  Rational doubles as
// the energy type (exponents of the formal parameter T) and as the scalar
// value type; scalars are interpreted through a Field below.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Parse "p", "-p" or "p/q" with nonzero q.  Anything else (decimals,
// floating point, whitespace) is rejected: only exact rationals enter.
Rational parse_rational(const std::string& s);

std::string to_string(const Rational& r);

// Largest integer <= r.
Integer rational_floor(const Rational& r);

// A scalar is a Rational reduced by a Field.  Over Q the value is the
// rational itself; over F_p it is an integer residue in [0, p).  All
// arithmetic goes through the Field so reduction is never skipped.
using Scalar = Rational;

class Field {
 public:
  Field() : p_(0) {}
  static Field rationals() { return Field(); }
  static Field prime(long long p);

  bool is_rational() const { return p_ == 0; }
  long long characteristic() const { return p_; }
  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

  // Bring an arbitrary rational into canonical form for this field.
  // Over F_p the denominator is inverted mod p; a denominator divisible
  // by p is an error.
  Scalar make(const Rational& raw) const;
  Scalar make(long long n) const { return make(Rational(n)); }

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  static bool is_zero(const Scalar& a) { return a.is_zero(); }

  // Scalar serialization: "a/b" over Q, residue string over F_p.
  std::string to_string(const Scalar& a) const { return ainf::to_string(a); }
  Scalar parse(const std::string& s) const { return make(parse_rational(s)); }

  std::string name() const;
  static Field from_name(const std::string& s);

 private:
  long long p_;  // 0 means Q, otherwise an odd or even prime modulus
};

}  // namespace ainf
