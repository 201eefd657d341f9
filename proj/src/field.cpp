#include "ainf/field.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace ainf {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw error("empty rational literal");
  auto digits = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!digits(s)) throw error("bad rational literal '" + s + "'");
    return Rational(Integer(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!digits(num) || !digits(den)) throw error("bad rational literal '" + s + "'");
  Integer d(den);
  if (d == 0) throw error("zero denominator in '" + s + "'");
  return Rational(Integer(num), d);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Integer rational_floor(const Rational& r) {
  Integer n = numerator(r), d = denominator(r);  // d > 0 canonical
  Integer q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

namespace {

bool probably_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Residue of an Integer mod p, in [0, p).
long long residue(const Integer& n, long long p) {
  Integer r = n % p;
  if (r < 0) r += p;
  return r.convert_to<long long>();
}

long long inv_mod(long long a, long long p) {
  long long t = 0, newt = 1, r = p, newr = a % p;
  if (newr < 0) newr += p;
  if (newr == 0) throw error("division by zero in F_" + std::to_string(p));
  while (newr != 0) {
    long long q = r / newr;
    long long tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw error("non-invertible residue in F_" + std::to_string(p));
  return t < 0 ? t + p : t;
}

}  // namespace

Field Field::prime(long long p) {
  if (!probably_prime(p)) throw error("field modulus " + std::to_string(p) + " is not prime");
  Field f;
  f.p_ = p;
  return f;
}

Scalar Field::make(const Rational& raw) const {
  if (p_ == 0) return raw;
  long long num = residue(numerator(raw), p_);
  long long den = residue(denominator(raw), p_);
  if (den == 0) throw error("denominator divisible by " + std::to_string(p_));
  long long v = static_cast<long long>((__int128)num * inv_mod(den, p_) % p_);
  return Scalar(v);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  Scalar r = a + b;
  return p_ == 0 ? r : make(r);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  Scalar r = a - b;
  return p_ == 0 ? r : make(r);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  Scalar r = a * b;
  return p_ == 0 ? r : make(r);
}

Scalar Field::neg(const Scalar& a) const {
  Scalar r = -a;
  return p_ == 0 ? r : make(r);
}

Scalar Field::inv(const Scalar& a) const {
  if (a.is_zero()) throw error("division by zero");
  if (p_ == 0) return Scalar(1) / a;
  return Scalar(inv_mod(numerator(a).convert_to<long long>(), p_));
}

std::string Field::name() const {
  return p_ == 0 ? "Q" : "F" + std::to_string(p_);
}

Field Field::from_name(const std::string& s) {
  if (s == "Q" || s == "q") return rationals();
  if (s.size() > 1 && (s[0] == 'F' || s[0] == 'f')) {
    try {
      return prime(std::stoll(s.substr(1)));
    } catch (const std::invalid_argument&) {
      throw error("bad field name '" + s + "'");
    }
  }
  throw error("bad field name '" + s + "' (expected Q or F<p>)");
}

}  // namespace ainf
