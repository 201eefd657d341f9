#include <algorithm>
#include <sstream>

#include "ainf/ainfty.hpp"

namespace ainf {

const Tensor* HomFamily::comp(int k, const GapClass& beta) const {
  auto it = comps.find(OpKey{k, beta});
  return it == comps.end() ? nullptr : &it->second;
}

void HomFamily::add_entry(int k, const GapClass& beta, const Key& key, const FieldChain& out) {
  if (out.empty()) return;
  if (static_cast<int>(key.size()) != k) throw error("homomorphism key length != arity");
  if (beta.lambda < floor)
    throw error("homomorphism class " + to_string(beta) + " below the energy floor");
  if (k == 0 && !(beta.lambda > 0))
    throw error("arity-0 homomorphism term of non-positive energy (divergent series)");
  int need = -beta.mu;
  for (int i : key) need += dom.degree(i) - 1;
  for (const auto& [j, c] : out) {
    (void)c;
    if (cod.degree(j) - 1 != need)
      throw error("inhomogeneous homomorphism entry: output " + cod.name(j) +
                  " expects deg' " + std::to_string(need));
  }
  Tensor& t = comps[OpKey{k, beta}];
  fc_add(field, t[key], out, field.one());
  if (t[key].empty()) t.erase(key);
}

int HomFamily::max_arity_present() const {
  int m = 0;
  for (const auto& [key, t] : comps)
    if (!t.empty()) m = std::max(m, key.k);
  return m;
}

void HomFamily::validate() const {
  for (const auto& [key, t] : comps) {
    if (key.k < 0 || key.k > arity_cutoff + 1)
      throw error("homomorphism arity " + std::to_string(key.k) + " outside the cutoff");
    if (key.beta.lambda < floor || key.beta.lambda >= energy_cutoff)
      throw error("homomorphism class " + to_string(key.beta) + " outside [floor, cutoff)");
    if (key.beta.mu % 2 != 0) throw error("homomorphism class with odd mu");
    if (key.k == 0 && !(key.beta.lambda > 0) && !t.empty())
      throw error("arity-0 homomorphism term of non-positive energy");
    int base = -key.beta.mu;
    for (const auto& [w, out] : t) {
      if (static_cast<int>(w.size()) != key.k) throw error("homomorphism key length != arity");
      int need = base;
      for (int i : w) {
        if (i < 0 || i >= dom.size()) throw error("homomorphism key index out of range");
        need += dom.degree(i) - 1;
      }
      for (const auto& [j, c] : out) {
        if (Field::is_zero(c)) throw error("stored zero coefficient");
        if (j < 0 || j >= cod.size()) throw error("homomorphism output index out of range");
        if (cod.degree(j) - 1 != need) throw error("inhomogeneous homomorphism entry");
      }
    }
  }
}

LinearMap HomFamily::linear_part() const {
  LinearMap m;
  m.shift = 0;
  const Tensor* t = comp(1, gap_zero());
  if (!t) return m;
  for (const auto& [w, out] : *t) m.cols[w[0]] = out;
  return m;
}

HomFamily identity_hom(const FilteredAInfinity& A) {
  HomFamily f;
  f.field = A.field;
  f.dom = A.basis;
  f.cod = A.basis;
  f.energy_cutoff = A.energy_cutoff;
  f.arity_cutoff = A.arity_cutoff;
  for (int i = 0; i < A.basis.size(); ++i)
    f.add_entry(1, gap_zero(), {i}, FieldChain{{i, A.field.one()}});
  return f;
}

namespace {

// Expands the corank-one coalgebra image of f on `word`: every way to cut
// the word into blocks (arity-0 blocks inserted at any gap) and push each
// block through a component of f.  Calls sink(block_count, codomain_key,
// class_sum, coefficient) for every expansion with energy below cutoff.
struct BlockExpander {
  const HomFamily& f;
  Rational cutoff;
  int max_blocks;
  std::function<void(int, const Key&, const GapClass&, const Scalar&)> sink;

  void run(const Key& word) {
    Key acc;
    step(word, 0, 0, acc, GapClass{Rational(0), 0}, f.field.one());
  }

  void step(const Key& word, size_t pos, int blocks, Key& acc, GapClass cls, Scalar coeff) {
    if (pos == word.size()) sink(blocks, acc, cls, coeff);
    if (blocks >= max_blocks) return;
    // arity-0 block at this gap
    for (const auto& [b, t] : ops_of_arity(f.comps, 0)) {
      if (cls.lambda + b.lambda >= cutoff) continue;
      auto it = t->find(Key{});
      if (it == t->end()) continue;
      for (const auto& [j, c] : it->second) {
        acc.push_back(j);
        step(word, pos, blocks + 1, acc, cls + b, f.field.mul(coeff, c));
        acc.pop_back();
      }
    }
    // block of j >= 1 letters
    for (size_t j = 1; pos + j <= word.size(); ++j) {
      Key v(word.begin() + pos, word.begin() + pos + j);
      for (const auto& [b, t] : ops_of_arity(f.comps, static_cast<int>(j))) {
        if (cls.lambda + b.lambda >= cutoff) continue;
        auto it = t->find(v);
        if (it == t->end()) continue;
        for (const auto& [out, c] : it->second) {
          acc.push_back(out);
          step(word, pos + j, blocks + 1, acc, cls + b, f.field.mul(coeff, c));
          acc.pop_back();
        }
      }
    }
  }
};

void residual_accumulate(const Field& F, std::map<GapClass, FieldChain>& acc,
                         const GapClass& cls, const FieldChain& c, const Scalar& coeff) {
  fc_add(F, acc[cls], c, coeff);
  if (acc[cls].empty()) acc.erase(cls);
}

}  // namespace

BarElement coalgebra_extend(const HomFamily& f, const Word& w) {
  BarElement out;
  const Field& F = f.field;
  // e-exponents of consumed letters slide into the coefficient; block
  // outputs keep e = 0 letters.
  std::map<size_t, int> prefix_e;
  int e_total = word_e_total(w);
  BlockExpander ex{f, f.energy_cutoff, f.arity_cutoff + 4, nullptr};
  ex.sink = [&](int blocks, const Key& key, const GapClass& cls, const Scalar& coeff) {
    (void)blocks;
    NovElement nv(F, f.energy_cutoff, f.floor);
    nv.add_term({cls.lambda, cls.mu / 2 + e_total}, coeff);
    bar_add(out, word_of(key), nv);
  };
  ex.run(word_bases(w));
  return out;
}

Report verify_homomorphism(const HomFamily& f, const FilteredAInfinity& dom,
                           const FilteredAInfinity& cod, int max_word_len) {
  f.validate();
  if (!(f.dom == dom.basis) || !(f.cod == cod.basis))
    throw error("homomorphism endpoints disagree with the given structures");
  const Field& F = f.field;
  Report rep;
  int kmax = max_word_len;
  if (kmax < 0) {
    kmax = std::min({f.arity_cutoff, dom.arity_cutoff, cod.arity_cutoff});
    if (dom.has_arity_zero()) kmax -= 1;
    kmax = std::max(kmax, 0);
  }
  Key w;
  std::function<void(int)> walk = [&](int len) {
    if (len == 0) {
      std::map<GapClass, FieldChain> acc;
      // codomain operations after the coalgebra image of f
      BlockExpander ex{f, f.energy_cutoff, std::max(cod.max_arity_present(), 1), nullptr};
      ex.sink = [&](int blocks, const Key& key, const GapClass& cls, const Scalar& coeff) {
        for (const auto& [bm, t] : ops_of_arity(cod.ops, blocks)) {
          if (cls.lambda + bm.lambda >= cod.energy_cutoff) continue;
          auto it = t->find(key);
          if (it == t->end()) continue;
          residual_accumulate(F, acc, cls + bm, it->second, coeff);
        }
      };
      ex.run(w);
      // minus f after the bar differential of the domain
      int k = static_cast<int>(w.size());
      for (int k2 = 0; k2 <= k; ++k2) {
        for (const auto& [b1, inner] : ops_of_arity(dom.ops, k2)) {
          if (k2 == 0 && b1.is_zero()) continue;
          for (int i = 0; i + k2 <= k; ++i) {
            Key v(w.begin() + i, w.begin() + i + k2);
            auto vit = inner->find(v);
            if (vit == inner->end()) continue;
            int sd = 0;
            for (int j = 0; j < i; ++j) sd += dom.basis.degree(w[j]) - 1;
            Scalar sign = F.make(sd % 2 == 0 ? 1 : -1);
            Key outer(w.begin(), w.begin() + i);
            outer.push_back(0);
            outer.insert(outer.end(), w.begin() + i + k2, w.end());
            for (const auto& [mid, c] : vit->second) {
              outer[i] = mid;
              for (const auto& [bf, ft] : ops_of_arity(f.comps, k - k2 + 1)) {
                if (b1.lambda + bf.lambda >= f.energy_cutoff) continue;
                auto oit = ft->find(outer);
                if (oit == ft->end()) continue;
                residual_accumulate(F, acc, b1 + bf, oit->second,
                                    F.mul(sign, F.mul(c, F.neg(F.one()))));
              }
            }
          }
        }
      }
      for (auto& [cls, r] : acc)
        if (!r.empty()) rep.entries.push_back({k, cls, w, std::move(r)});
      return;
    }
    for (int i = 0; i < dom.basis.size(); ++i) {
      w.push_back(i);
      walk(len - 1);
      w.pop_back();
    }
  };
  for (int len = 0; len <= kmax; ++len) walk(len);
  std::sort(rep.entries.begin(), rep.entries.end(), [](const auto& a, const auto& b) {
    return std::tie(a.k, a.beta, a.word) < std::tie(b.k, b.beta, b.word);
  });
  return rep;
}

HomFamily compose_homomorphisms(const HomFamily& f, const HomFamily& g) {
  if (!(f.cod == g.dom)) throw error("composition endpoints do not match");
  if (f.field != g.field) throw error("composition field mismatch");
  HomFamily r;
  r.field = f.field;
  r.dom = f.dom;
  r.cod = g.cod;
  r.floor = f.floor + g.floor;
  r.energy_cutoff = std::min(f.energy_cutoff, g.energy_cutoff);
  r.arity_cutoff = std::min(f.arity_cutoff, g.arity_cutoff);
  const Field& F = f.field;
  Key w;
  std::function<void(int)> walk = [&](int len) {
    if (len == 0) {
      BlockExpander ex{f, r.energy_cutoff, std::max(g.max_arity_present(), 1), nullptr};
      ex.sink = [&](int blocks, const Key& key, const GapClass& cls, const Scalar& coeff) {
        if (blocks == 0) return;  // corank-one part needs at least one block
        for (const auto& [bg, t] : ops_of_arity(g.comps, blocks)) {
          if (cls.lambda + bg.lambda >= r.energy_cutoff) continue;
          auto it = t->find(key);
          if (it == t->end()) continue;
          r.add_entry(static_cast<int>(w.size()), cls + bg, w,
                      fc_scaled(F, it->second, coeff));
        }
      };
      ex.run(w);
      return;
    }
    for (int i = 0; i < f.dom.size(); ++i) {
      w.push_back(i);
      walk(len - 1);
      w.pop_back();
    }
  };
  for (int len = 0; len <= r.arity_cutoff; ++len) walk(len);
  return r;
}

bool hom_equal(const HomFamily& a, const HomFamily& b) {
  if (a.field != b.field || !(a.dom == b.dom) || !(a.cod == b.cod)) return false;
  auto clean = [](const std::map<OpKey, Tensor>& m) {
    std::map<OpKey, Tensor> r;
    for (const auto& [k, t] : m) {
      Tensor tt;
      for (const auto& [w, c] : t)
        if (!c.empty()) tt.emplace(w, c);
      if (!tt.empty()) r.emplace(k, std::move(tt));
    }
    return r;
  };
  return clean(a.comps) == clean(b.comps);
}

}  // namespace ainf
