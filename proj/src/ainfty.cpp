#include "ainf/ainfty.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ainf {

const Tensor* FilteredAInfinity::op(int k, const GapClass& beta) const {
  auto it = ops.find(OpKey{k, beta});
  return it == ops.end() ? nullptr : &it->second;
}

std::vector<std::pair<GapClass, const Tensor*>> ops_of_arity(const std::map<OpKey, Tensor>& m,
                                                             int k) {
  std::vector<std::pair<GapClass, const Tensor*>> r;
  auto it = m.lower_bound(OpKey{k, GapClass{Rational(-1), std::numeric_limits<int>::min()}});
  for (; it != m.end() && it->first.k == k; ++it)
    if (!it->second.empty()) r.emplace_back(it->first.beta, &it->second);
  return r;
}

const FieldChain* FilteredAInfinity::entry(int k, const GapClass& beta, const Key& key) const {
  const Tensor* t = op(k, beta);
  if (!t) return nullptr;
  auto it = t->find(key);
  return it == t->end() ? nullptr : &it->second;
}

void FilteredAInfinity::add_entry(int k, const GapClass& beta, const Key& key,
                                  const FieldChain& out) {
  if (out.empty()) return;
  if (static_cast<int>(key.size()) != k) throw error("operation key length != arity");
  if (!monoid.contains(beta))
    throw error("operation class " + to_string(beta) + " outside the monoid");
  if (k == 0 && beta.is_zero()) throw error("curvature at the zero class must vanish");
  int need = 1 - beta.mu;
  for (int i : key) need += basis.degree(i) - 1;
  for (const auto& [j, c] : out) {
    (void)c;
    if (basis.degree(j) - 1 != need)
      throw error("inhomogeneous operation entry: output " + basis.name(j) +
                  " expects deg' " + std::to_string(need));
  }
  Field F = field;
  Tensor& t = ops[OpKey{k, beta}];
  fc_add(F, t[key], out, F.one());
  if (t[key].empty()) t.erase(key);
}

int FilteredAInfinity::max_arity_present() const {
  int m = 0;
  for (const auto& [key, t] : ops)
    if (!t.empty()) m = std::max(m, key.k);
  return m;
}

bool FilteredAInfinity::has_arity_zero() const {
  for (const auto& [key, t] : ops)
    if (key.k == 0 && !t.empty()) return true;
  return false;
}

void FilteredAInfinity::validate() const {
  if (monoid.cutoff() != energy_cutoff)
    throw error("monoid truncation disagrees with the energy cutoff");
  for (const auto& [key, t] : ops) {
    if (key.k < 0 || key.k > arity_cutoff)
      throw error("operation arity " + std::to_string(key.k) + " outside the cutoff");
    if (!monoid.contains(key.beta))
      throw error("operation class " + to_string(key.beta) + " outside the monoid");
    if (key.k == 0 && key.beta.is_zero() && !t.empty())
      throw error("curvature at the zero class must vanish");
    int base = 1 - key.beta.mu;
    for (const auto& [w, out] : t) {
      if (static_cast<int>(w.size()) != key.k) throw error("operation key length != arity");
      int need = base;
      for (int i : w) {
        if (i < 0 || i >= basis.size()) throw error("operation key index out of range");
        need += basis.degree(i) - 1;
      }
      for (const auto& [j, c] : out) {
        if (Field::is_zero(c)) throw error("stored zero coefficient");
        if (basis.degree(j) - 1 != need)
          throw error("inhomogeneous operation entry at arity " + std::to_string(key.k));
      }
    }
  }
}

std::string Report::render(const GradedBasis& basis, const Field& F) const {
  if (entries.empty()) return "all relations hold below the cutoffs\n";
  std::ostringstream os;
  for (const auto& e : entries) {
    os << "residual at arity " << e.k << ", class " << to_string(e.beta) << ", word (";
    for (size_t i = 0; i < e.word.size(); ++i) {
      if (i) os << ",";
      os << basis.name(e.word[i]);
    }
    os << "): " << fc_to_string(basis, F, e.residual) << "\n";
  }
  return os.str();
}

FieldChain ainfty_residual(const FilteredAInfinity& A, const Key& word, const GapClass& beta) {
  const Field& F = A.field;
  FieldChain res;
  int k = static_cast<int>(word.size());
  for (const auto& [b1, b2] : A.monoid.splits(beta)) {
    for (int k2 = 0; k2 <= k; ++k2) {
      if (k2 == 0 && b1.is_zero()) continue;  // m_{0,0} = 0
      const Tensor* inner = A.op(k2, b1);
      if (!inner) continue;
      int k1 = k - k2 + 1;
      for (int i = 0; i + k2 <= k; ++i) {
        Key v(word.begin() + i, word.begin() + i + k2);
        auto vit = inner->find(v);
        if (vit == inner->end()) continue;
        int sd = 0;
        for (int j = 0; j < i; ++j) sd += A.basis.degree(word[j]) - 1;
        Scalar sign = F.make(sd % 2 == 0 ? 1 : -1);
        Key outer(word.begin(), word.begin() + i);
        outer.push_back(0);  // placeholder for the inner output letter
        outer.insert(outer.end(), word.begin() + i + k2, word.end());
        for (const auto& [mid, c] : vit->second) {
          outer[i] = mid;
          const FieldChain* out = A.entry(k1, b2, outer);
          if (!out) continue;
          fc_add(F, res, *out, F.mul(sign, c));
        }
      }
    }
  }
  return res;
}

int relation_arity_bound(const FilteredAInfinity& A) {
  int k = A.arity_cutoff - (A.has_arity_zero() ? 1 : 0);
  int reach = 2 * A.max_arity_present() - 1;
  return std::max(0, std::min(k, reach));
}

LinearMap linear_differential(const FilteredAInfinity& A) {
  LinearMap m;
  m.shift = 1;
  if (const Tensor* t = A.op(1, gap_zero()))
    for (const auto& [key, chain] : *t) m.cols[key[0]] = chain;
  return m;
}

namespace {

// Calls fn on every index tuple of the given length.
void for_words(int dim, int len, const std::function<void(const Key&)>& fn) {
  Key w(len, 0);
  if (len == 0) {
    fn(w);
    return;
  }
  while (true) {
    fn(w);
    int pos = len - 1;
    while (pos >= 0 && ++w[pos] == dim) w[pos--] = 0;
    if (pos < 0) break;
  }
}

}  // namespace

Report verify_ainfty(const FilteredAInfinity& A) {
  A.validate();
  Report rep;
  int kmax = relation_arity_bound(A);
  for (int k = 0; k <= kmax; ++k) {
    for_words(A.basis.size(), k, [&](const Key& w) {
      for (const auto& beta : A.monoid.classes()) {
        FieldChain r = ainfty_residual(A, w, beta);
        if (!r.empty()) rep.entries.push_back({k, beta, w, std::move(r)});
      }
    });
  }
  return rep;
}

BarElement coderivation_extend(const FilteredAInfinity& A, int k, const GapClass& beta,
                               const Word& w) {
  const Field& F = A.field;
  BarElement out;
  const Tensor* t = A.op(k, beta);
  if (!t) return out;
  int n = static_cast<int>(w.size());
  if (k > n) return out;
  NovElement weight(F, A.energy_cutoff);
  weight.add_term({beta.lambda, beta.mu / 2}, F.one());
  for (int i = 0; i + k <= n; ++i) {
    Key v;
    int e_in = 0;
    for (int j = i; j < i + k; ++j) {
      v.push_back(w[j].basis);
      e_in += w[j].e;
    }
    auto vit = t->find(v);
    if (vit == t->end()) continue;
    int sd = 0;
    for (int j = 0; j < i; ++j) sd += shifted_degree(A.basis, w[j]);
    Scalar sign = F.make(sd % 2 == 0 ? 1 : -1);
    for (const auto& [mid, c] : vit->second) {
      Word nw(w.begin(), w.begin() + i);
      nw.push_back({mid, e_in});
      nw.insert(nw.end(), w.begin() + i + k, w.end());
      bar_add(out, nw, weight.scaled(F.mul(sign, c)));
    }
  }
  return out;
}

BarElement bar_differential(const FilteredAInfinity& A, const Word& w) {
  BarElement out;
  for (const auto& [key, t] : A.ops) {
    (void)t;
    bar_add(out, coderivation_extend(A, key.k, key.beta, w));
  }
  return out;
}

namespace {

FieldChain apply_product(const Field& F, const std::map<std::pair<int, int>, FieldChain>& prod,
                         const FieldChain& a, const FieldChain& b) {
  FieldChain r;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b) {
      auto it = prod.find({i, j});
      if (it == prod.end()) continue;
      fc_add(F, r, it->second, F.mul(ci, cj));
    }
  return r;
}

}  // namespace

FilteredAInfinity from_dga(const DgaInput& in) {
  const Field& F = in.field;
  const GradedBasis& B = in.basis;
  if (in.d.shift != 1) throw error("differential must have degree +1");
  lm_check_graded(B, B, in.d, "differential");
  for (int i = 0; i < B.size(); ++i) {
    FieldChain dd = in.d.apply(F, in.d.apply(F, FieldChain{{i, F.one()}}));
    if (!dd.empty())
      throw error("d^2 != 0 at " + B.name(i) + ": " + fc_to_string(B, F, dd));
  }
  for (const auto& [ij, out] : in.product) {
    auto deg = fc_degree(B, out);
    if (deg && *deg != B.degree(ij.first) + B.degree(ij.second))
      throw error("product " + B.name(ij.first) + "*" + B.name(ij.second) +
                  " is not degree additive");
  }
  auto unit = [&](int i) { return FieldChain{{i, F.one()}}; };
  for (int i = 0; i < B.size(); ++i)
    for (int j = 0; j < B.size(); ++j) {
      auto it = in.product.find({i, j});
      FieldChain ij = it == in.product.end() ? FieldChain{} : it->second;
      // Leibniz: d(xy) = dx y + (-1)^{deg x} x dy
      FieldChain lhs = in.d.apply(F, ij);
      FieldChain rhs = apply_product(F, in.product, in.d.apply(F, unit(i)), unit(j));
      Scalar sgn = F.make(B.degree(i) % 2 == 0 ? 1 : -1);
      fc_add(F, rhs, apply_product(F, in.product, unit(i), in.d.apply(F, unit(j))), sgn);
      fc_add(F, lhs, rhs, F.make(-1));
      if (!lhs.empty())
        throw error("Leibniz fails at (" + B.name(i) + "," + B.name(j) + "): " +
                    fc_to_string(B, F, lhs));
      for (int l = 0; l < B.size(); ++l) {
        FieldChain left = apply_product(F, in.product, ij, unit(l));
        FieldChain right = apply_product(F, in.product, unit(i),
                                         apply_product(F, in.product, unit(j), unit(l)));
        fc_add(F, left, right, F.make(-1));
        if (!left.empty())
          throw error("associativity fails at (" + B.name(i) + "," + B.name(j) + "," +
                      B.name(l) + "): " + fc_to_string(B, F, left));
      }
    }
  FilteredAInfinity A;
  A.field = F;
  A.basis = B;
  A.monoid = GapMonoid::trivial(in.energy_cutoff);
  A.energy_cutoff = in.energy_cutoff;
  A.arity_cutoff = std::max(2, in.arity_cutoff);
  GapClass zero = gap_zero();
  for (int i = 0; i < B.size(); ++i) {
    FieldChain di = in.d.apply(F, unit(i));
    Scalar tw = F.make(B.degree(i) % 2 == 0 ? 1 : -1);
    A.add_entry(1, zero, {i}, fc_scaled(F, di, tw));
  }
  for (const auto& [ij, out] : in.product) {
    int dx = B.degree(ij.first), dy = B.degree(ij.second);
    Scalar tw = F.make((dx * (dy + 1)) % 2 == 0 ? 1 : -1);
    A.add_entry(2, zero, {ij.first, ij.second}, fc_scaled(F, out, tw));
  }
  A.validate();
  return A;
}

}  // namespace ainf
