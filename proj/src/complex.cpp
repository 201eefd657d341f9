#include "ainf/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ainf {

int GradedBasis::add(const std::string& name, int degree) {
  if (name.empty()) throw error("empty basis name");
  if (degree < 0) throw error("negative degree for basis element '" + name + "'");
  if (index_.count(name)) throw error("duplicate basis name '" + name + "'");
  int i = size();
  names_.push_back(name);
  degrees_.push_back(degree);
  index_.emplace(name, i);
  return i;
}

GradedBasis GradedBasis::from(const std::vector<std::pair<std::string, int>>& gens) {
  GradedBasis b;
  for (const auto& [n, d] : gens) b.add(n, d);
  return b;
}

int GradedBasis::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw error("unknown basis element '" + name + "'");
  return it->second;
}

std::optional<int> GradedBasis::try_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> GradedBasis::degrees_present() const {
  std::set<int> s(degrees_.begin(), degrees_.end());
  return std::vector<int>(s.begin(), s.end());
}

void fc_add(const Field& F, FieldChain& dst, const FieldChain& src, const Scalar& coeff) {
  if (Field::is_zero(coeff)) return;
  for (const auto& [i, c] : src) {
    auto it = dst.find(i);
    if (it == dst.end()) {
      Scalar v = F.mul(c, coeff);
      if (!Field::is_zero(v)) dst.emplace(i, v);
      continue;
    }
    it->second = F.add(it->second, F.mul(c, coeff));
    if (Field::is_zero(it->second)) dst.erase(it);
  }
}

FieldChain fc_scaled(const Field& F, const FieldChain& c, const Scalar& coeff) {
  FieldChain r;
  fc_add(F, r, c, coeff);
  return r;
}

FieldChain fc_neg(const Field& F, const FieldChain& c) {
  return fc_scaled(F, c, F.make(-1));
}

bool fc_equal(const FieldChain& a, const FieldChain& b) { return a == b; }

std::optional<int> fc_degree(const GradedBasis& basis, const FieldChain& c) {
  std::optional<int> d;
  for (const auto& [i, v] : c) {
    (void)v;
    if (!d) {
      d = basis.degree(i);
    } else if (*d != basis.degree(i)) {
      return std::nullopt;
    }
  }
  return d;
}

std::string fc_to_string(const GradedBasis& basis, const Field& F, const FieldChain& c) {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, v] : c) {
    if (!first) os << " + ";
    os << F.to_string(v) << "*" << basis.name(i);
    first = false;
  }
  return os.str();
}

void chain_add(Chain& dst, const Chain& src) {
  for (const auto& [i, c] : src) chain_add_term(dst, i, c);
}

void chain_add_term(Chain& dst, int basis, const NovElement& coeff) {
  if (coeff.is_zero()) return;
  auto it = dst.find(basis);
  if (it == dst.end()) {
    dst.emplace(basis, coeff);
    return;
  }
  it->second = it->second + coeff;
  if (it->second.is_zero()) dst.erase(it);
}

bool chain_is_zero(const Chain& c) { return c.empty(); }

Chain chain_neg(const Chain& c) {
  Chain r;
  for (const auto& [i, v] : c) r.emplace(i, -v);
  return r;
}

bool chain_positive_valuation(const Chain& c) {
  for (const auto& [i, v] : c) {
    (void)i;
    if (!(v.valuation() > 0)) return false;
  }
  return true;
}

std::optional<int> chain_shifted_degree(const GradedBasis& basis, const Chain& c) {
  std::optional<int> d;
  for (const auto& [i, v] : c) {
    for (const auto& [m, s] : v.terms()) {
      (void)s;
      int t = basis.degree(i) - 1 + m.degree();
      if (!d) {
        d = t;
      } else if (*d != t) {
        return std::nullopt;
      }
    }
  }
  return d;
}

std::string chain_to_string(const GradedBasis& basis, const Chain& c) {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, v] : c) {
    if (!first) os << " + ";
    os << "(";
    bool f2 = true;
    for (const auto& [m, s] : v.terms()) {
      if (!f2) os << " + ";
      os << to_string(s);
      if (!m.lambda.is_zero()) os << "*T^" << to_string(m.lambda);
      if (m.e != 0) os << "*e^" << m.e;
      f2 = false;
    }
    os << ")*" << basis.name(i);
    first = false;
  }
  return os.str();
}

Word word_of(const std::vector<int>& bases) {
  Word w;
  w.reserve(bases.size());
  for (int b : bases) w.push_back({b, 0});
  return w;
}

std::vector<int> word_bases(const Word& w) {
  std::vector<int> r;
  r.reserve(w.size());
  for (const auto& l : w) r.push_back(l.basis);
  return r;
}

int word_e_total(const Word& w) {
  int e = 0;
  for (const auto& l : w) e += l.e;
  return e;
}

std::string word_to_string(const GradedBasis& basis, const Word& w) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ",";
    os << basis.name(w[i].basis);
    if (w[i].e != 0) os << "*e^" << w[i].e;
  }
  os << ")";
  return os.str();
}

int shifted_degree(const GradedBasis& basis, const Letter& l) {
  return basis.degree(l.basis) - 1 + 2 * l.e;
}

int shifted_degree(const GradedBasis& basis, const Word& w) {
  int d = 0;
  for (const auto& l : w) d += shifted_degree(basis, l);
  return d;
}

int koszul_sign(const GradedBasis& basis, const Word& w, size_t i) {
  int d = 0;
  for (size_t j = 0; j < i && j < w.size(); ++j) d += shifted_degree(basis, w[j]);
  return (d % 2 == 0) ? 1 : -1;
}

void bar_add(BarElement& dst, const Word& w, const NovElement& coeff) {
  if (coeff.is_zero()) return;
  auto it = dst.find(w);
  if (it == dst.end()) {
    dst.emplace(w, coeff);
    return;
  }
  it->second = it->second + coeff;
  if (it->second.is_zero()) dst.erase(it);
}

void bar_add(BarElement& dst, const BarElement& src) {
  for (const auto& [w, c] : src) bar_add(dst, w, c);
}

bool bar_is_zero(const BarElement& b) { return b.empty(); }

BarElement bar_scaled(const BarElement& b, const NovElement& coeff) {
  BarElement r;
  for (const auto& [w, c] : b) bar_add(r, w, c * coeff);
  return r;
}

std::string bar_to_string(const GradedBasis& basis, const BarElement& b) {
  if (b.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : b) {
    if (!first) os << " + ";
    os << "[" << word_to_string(basis, w) << "]";
    Chain tmp{{0, c}};
    os << "{";
    bool f2 = true;
    for (const auto& [m, s] : c.terms()) {
      if (!f2) os << "+";
      os << to_string(s) << "T^" << to_string(m.lambda) << "e^" << m.e;
      f2 = false;
    }
    os << "}";
    first = false;
  }
  return os.str();
}

namespace {

void split_rec(const Word& w, size_t from, int parts, std::vector<Word>& acc,
               std::vector<std::vector<Word>>& out) {
  if (parts == 1) {
    acc.push_back(Word(w.begin() + from, w.end()));
    out.push_back(acc);
    acc.pop_back();
    return;
  }
  for (size_t cut = from; cut <= w.size(); ++cut) {
    acc.push_back(Word(w.begin() + from, w.begin() + cut));
    split_rec(w, cut, parts - 1, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<std::vector<Word>> coproduct_split(const Word& w, int parts) {
  if (parts < 1) throw error("coproduct split needs at least one block");
  std::vector<std::vector<Word>> out;
  std::vector<Word> acc;
  split_rec(w, 0, parts, acc, out);
  return out;
}

}  // namespace ainf
