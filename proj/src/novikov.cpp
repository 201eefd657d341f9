#include "ainf/novikov.hpp"

#include <algorithm>
#include <set>

namespace ainf {

NovElement NovElement::scalar(Field field, Rational cutoff, const Scalar& c) {
  NovElement r(std::move(field), std::move(cutoff));
  r.add_term({Rational(0), 0}, c);
  return r;
}

Rational NovElement::valuation() const {
  if (terms_.empty()) return cutoff_;
  return terms_.begin()->first.lambda;
}

void NovElement::add_term(const NovMonomial& m, const Scalar& c) {
  if (Field::is_zero(c)) return;
  if (m.lambda < floor_) throw error("Novikov term below floor " + ainf::to_string(floor_));
  if (m.lambda >= cutoff_) return;  // truncated
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, field_.make(c));
    return;
  }
  it->second = field_.add(it->second, c);
  if (Field::is_zero(it->second)) terms_.erase(it);
}

NovElement NovElement::operator+(const NovElement& o) const {
  if (field_ != o.field_) throw error("Novikov field mismatch");
  NovElement r(field_, std::min(cutoff_, o.cutoff_), std::min(floor_, o.floor_));
  for (const auto& [m, c] : terms_) r.add_term(m, c);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

NovElement NovElement::operator-(const NovElement& o) const { return *this + (-o); }

NovElement NovElement::operator*(const NovElement& o) const {
  if (field_ != o.field_) throw error("Novikov field mismatch");
  NovElement r(field_, std::min(cutoff_, o.cutoff_), floor_ + o.floor_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_)
      r.add_term({m1.lambda + m2.lambda, m1.e + m2.e}, field_.mul(c1, c2));
  return r;
}

NovElement NovElement::operator-() const {
  NovElement r(field_, cutoff_, floor_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, field_.neg(c));
  return r;
}

bool NovElement::operator==(const NovElement& o) const {
  return field_ == o.field_ && terms_ == o.terms_;
}

NovElement NovElement::scaled(const Scalar& c) const {
  NovElement r(field_, cutoff_, floor_);
  if (Field::is_zero(c)) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, field_.mul(v, c));
  return r;
}

NovElement NovElement::shifted(const Rational& lambda, int e) const {
  NovElement r(field_, cutoff_, floor_ + std::min(lambda, Rational(0)));
  for (const auto& [m, c] : terms_) r.add_term({m.lambda + lambda, m.e + e}, c);
  return r;
}

NovElement NovElement::truncated(const Rational& new_cutoff) const {
  NovElement r(field_, new_cutoff, floor_);
  for (const auto& [m, c] : terms_) r.add_term(m, c);
  return r;
}

bool NovElement::is_constant(const Scalar& c) const {
  if (Field::is_zero(c)) return is_zero();
  if (terms_.size() != 1) return false;
  const auto& [m, v] = *terms_.begin();
  return m.lambda.is_zero() && m.e == 0 && v == field_.make(c);
}

GapClass gap_zero() { return GapClass{Rational(0), 0}; }

GapMonoid::GapMonoid(std::vector<GapClass> classes, Rational cutoff)
    : classes_(std::move(classes)), cutoff_(std::move(cutoff)) {
  std::sort(classes_.begin(), classes_.end());
  classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
  if (classes_.empty() || !classes_.front().is_zero())
    classes_.insert(classes_.begin(), gap_zero());
  std::set<Rational> seen;
  for (const auto& b : classes_) {
    if (b.lambda < 0) throw error("gap class with negative energy");
    if (b.lambda.is_zero() && b.mu != 0)
      throw error("gap class of zero energy with nonzero mu breaks discreteness");
    if (b.mu % 2 != 0) throw error("gap class with odd mu");
    if (b.lambda >= cutoff_ && !b.lambda.is_zero())
      throw error("gap class at or above the energy cutoff");
    seen.insert(b.lambda);
  }
  levels_.assign(seen.begin(), seen.end());
}

GapMonoid GapMonoid::trivial(Rational cutoff) { return GapMonoid({}, std::move(cutoff)); }

bool GapMonoid::contains(const GapClass& b) const {
  return std::binary_search(classes_.begin(), classes_.end(), b);
}

std::vector<GapClass> GapMonoid::at_level(const Rational& lambda) const {
  std::vector<GapClass> r;
  for (const auto& b : classes_)
    if (b.lambda == lambda) r.push_back(b);
  return r;
}

std::vector<std::pair<GapClass, GapClass>> GapMonoid::splits(const GapClass& b) const {
  std::vector<std::pair<GapClass, GapClass>> r;
  for (const auto& b1 : classes_) {
    if (b1.lambda > b.lambda) break;
    GapClass b2{b.lambda - b1.lambda, b.mu - b1.mu};
    if (contains(b2)) r.emplace_back(b1, b2);
  }
  return r;
}

GapMonoid monoid_closure(const std::vector<GapClass>& generators, const Rational& cutoff) {
  for (const auto& g : generators) {
    if (g.lambda <= 0) throw error("monoid generator must have positive energy");
    if (g.mu % 2 != 0) throw error("monoid generator with odd mu");
  }
  std::set<GapClass> closed{gap_zero()};
  std::vector<GapClass> frontier{gap_zero()};
  while (!frontier.empty()) {
    std::vector<GapClass> next;
    for (const auto& s : frontier)
      for (const auto& g : generators) {
        GapClass t = s + g;
        if (t.lambda >= cutoff) continue;
        if (closed.insert(t).second) next.push_back(t);
      }
    frontier = std::move(next);
  }
  return GapMonoid(std::vector<GapClass>(closed.begin(), closed.end()), cutoff);
}

GapMonoid monoid_extend(const GapMonoid& m, const std::vector<GapClass>& extra) {
  std::vector<GapClass> gens;
  for (const auto& b : m.classes())
    if (!b.is_zero()) gens.push_back(b);
  for (const auto& b : extra)
    if (!b.is_zero()) gens.push_back(b);
  return monoid_closure(gens, m.cutoff());
}

std::string to_string(const GapClass& b) {
  return "(" + to_string(b.lambda) + "," + std::to_string(b.mu) + ")";
}

}  // namespace ainf
