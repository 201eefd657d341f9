#include "ainf/bimodule.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ainf {

const BimTensor* FilteredBimodule::op(int k1, int k0, const GapClass& beta) const {
  auto it = ops.find(BimoduleOpKey{k1, k0, beta});
  return it == ops.end() ? nullptr : &it->second;
}

const FieldChain* FilteredBimodule::entry(int k1, int k0, const GapClass& beta,
                                          const BimKey& key) const {
  const BimTensor* t = op(k1, k0, beta);
  if (!t) return nullptr;
  auto it = t->find(key);
  return it == t->end() ? nullptr : &it->second;
}

void FilteredBimodule::add_entry(int k1, int k0, const GapClass& beta, const BimKey& key,
                                 const FieldChain& out) {
  if (out.empty()) return;
  if (static_cast<int>(key.xs.size()) != k1 || static_cast<int>(key.zs.size()) != k0)
    throw error("bimodule operation key lengths != arities");
  if (!monoid.contains(beta))
    throw error("bimodule operation class " + to_string(beta) + " outside the monoid");
  int need = 1 - beta.mu + basis.degree(key.y) - 1;
  for (int i : key.xs) need += left.basis.degree(i) - 1;
  for (int i : key.zs) need += right.basis.degree(i) - 1;
  for (const auto& [j, c] : out) {
    (void)c;
    if (basis.degree(j) - 1 != need)
      throw error("inhomogeneous bimodule entry: output " + basis.name(j) + " expects deg' " +
                  std::to_string(need));
  }
  Field F = field;
  BimTensor& t = ops[BimoduleOpKey{k1, k0, beta}];
  fc_add(F, t[key], out, F.one());
  if (t[key].empty()) t.erase(key);
}

bool FilteredBimodule::has_curvature() const {
  return left.has_arity_zero() || right.has_arity_zero();
}

void FilteredBimodule::validate() const {
  if (field != left.field || field != right.field)
    throw error("bimodule field disagrees with an acting algebra");
  if (monoid.cutoff() != energy_cutoff)
    throw error("monoid truncation disagrees with the energy cutoff");
  if (left.energy_cutoff != energy_cutoff || right.energy_cutoff != energy_cutoff)
    throw error("acting algebra energy cutoff disagrees with the module's");
  if (left.arity_cutoff < arity_cutoff || right.arity_cutoff < arity_cutoff)
    throw error("acting algebra arity cutoff below the module's");
  left.validate();
  right.validate();
  for (const auto& cls : left.monoid.classes())
    if (!monoid.contains(cls))
      throw error("left algebra class " + to_string(cls) + " missing from the module monoid");
  for (const auto& cls : right.monoid.classes())
    if (!monoid.contains(cls))
      throw error("right algebra class " + to_string(cls) + " missing from the module monoid");
  for (const auto& [key, t] : ops) {
    if (key.k1 < 0 || key.k0 < 0 || key.k1 + key.k0 > arity_cutoff)
      throw error("bimodule operation arity (" + std::to_string(key.k1) + "," +
                  std::to_string(key.k0) + ") outside the cutoff");
    if (!monoid.contains(key.beta))
      throw error("bimodule operation class " + to_string(key.beta) + " outside the monoid");
    for (const auto& [w, out] : t) {
      if (static_cast<int>(w.xs.size()) != key.k1 || static_cast<int>(w.zs.size()) != key.k0)
        throw error("bimodule operation key lengths != arities");
      if (w.y < 0 || w.y >= basis.size()) throw error("bimodule key module index out of range");
      int need = 1 - key.beta.mu + basis.degree(w.y) - 1;
      for (int i : w.xs) {
        if (i < 0 || i >= left.basis.size())
          throw error("bimodule key left index out of range");
        need += left.basis.degree(i) - 1;
      }
      for (int i : w.zs) {
        if (i < 0 || i >= right.basis.size())
          throw error("bimodule key right index out of range");
        need += right.basis.degree(i) - 1;
      }
      for (const auto& [j, c] : out) {
        if (Field::is_zero(c)) throw error("stored zero coefficient");
        if (basis.degree(j) - 1 != need)
          throw error("inhomogeneous bimodule entry at arity (" + std::to_string(key.k1) + "," +
                      std::to_string(key.k0) + ")");
      }
    }
  }
}

std::string BimReport::render(const FilteredBimodule& D, const GradedBasis* out) const {
  if (entries.empty()) return "all relations hold below the cutoffs\n";
  const GradedBasis& ob = out ? *out : D.basis;
  std::ostringstream os;
  for (const auto& e : entries) {
    os << "residual at arity (" << e.k1 << "," << e.k0 << "), class " << to_string(e.beta)
       << ", x=(";
    for (size_t i = 0; i < e.key.xs.size(); ++i) {
      if (i) os << ",";
      os << D.left.basis.name(e.key.xs[i]);
    }
    os << ") y=" << D.basis.name(e.key.y) << " z=(";
    for (size_t i = 0; i < e.key.zs.size(); ++i) {
      if (i) os << ",";
      os << D.right.basis.name(e.key.zs[i]);
    }
    os << "): " << fc_to_string(ob, D.field, e.residual) << "\n";
  }
  return os.str();
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

std::vector<std::pair<GapClass, const BimTensor*>> bim_ops_of_arity(
    const std::map<BimoduleOpKey, BimTensor>& m, int k1, int k0) {
  std::vector<std::pair<GapClass, const BimTensor*>> r;
  for (const auto& [key, t] : m)
    if (key.k1 == k1 && key.k0 == k0 && !t.empty()) r.emplace_back(key.beta, &t);
  return r;
}

}  // namespace

FieldChain bimodule_residual(const FilteredBimodule& D, const BimKey& key, const GapClass& beta) {
  const Field& F = D.field;
  FieldChain res;
  const Key& xs = key.xs;
  const Key& zs = key.zs;
  int k1 = static_cast<int>(xs.size());
  int k0 = static_cast<int>(zs.size());
  for (const auto& [b1, b2] : D.monoid.splits(beta)) {
    // left coderivation: replace a block of the left word, curvature at
    // every gap, signed by the prefix
    for (int j = 0; j <= k1; ++j) {
      if (j == 0 && b1.is_zero()) continue;
      const Tensor* tin = D.left.op(j, b1);
      if (!tin) continue;
      for (int i = 0; i + j <= k1; ++i) {
        Key v(xs.begin() + i, xs.begin() + i + j);
        auto vit = tin->find(v);
        if (vit == tin->end()) continue;
        int sd = 0;
        for (int t = 0; t < i; ++t) sd += D.left.basis.degree(xs[t]) - 1;
        Scalar sign = F.make(sd % 2 == 0 ? 1 : -1);
        Key nxs(xs.begin(), xs.begin() + i);
        nxs.push_back(0);
        nxs.insert(nxs.end(), xs.begin() + i + j, xs.end());
        for (const auto& [mid, c] : vit->second) {
          nxs[i] = mid;
          const FieldChain* out = D.entry(k1 - j + 1, k0, b2, BimKey{nxs, key.y, zs});
          if (out) fc_add(F, res, *out, F.mul(sign, c));
        }
      }
    }
    // middle insertions: the inner operation eats the left tail, the
    // module letter and the right head, signed by the left head
    for (int kp1 = 0; kp1 <= k1; ++kp1) {
      for (int kp0 = 0; kp0 <= k0; ++kp0) {
        for (const auto& [bin, tin] : bim_ops_of_arity(D.ops, kp1, kp0)) {
          if (!(bin == b1)) continue;
          BimKey inner{Key(xs.begin() + (k1 - kp1), xs.end()), key.y,
                       Key(zs.begin(), zs.begin() + kp0)};
          auto vit = tin->find(inner);
          if (vit == tin->end()) continue;
          int sd = 0;
          for (int t = 0; t < k1 - kp1; ++t) sd += D.left.basis.degree(xs[t]) - 1;
          Scalar sign = F.make(sd % 2 == 0 ? 1 : -1);
          Key hx(xs.begin(), xs.begin() + (k1 - kp1));
          Key tz(zs.begin() + kp0, zs.end());
          for (const auto& [mid, c] : vit->second) {
            const FieldChain* out = D.entry(k1 - kp1, k0 - kp0, b2, BimKey{hx, mid, tz});
            if (out) fc_add(F, res, *out, F.mul(sign, c));
          }
        }
      }
    }
    // right coderivation: same as the left one but everything before the
    // block now includes the whole left word and the module letter
    int gs = D.basis.degree(key.y) - 1;
    for (int t = 0; t < k1; ++t) gs += D.left.basis.degree(xs[t]) - 1;
    for (int j = 0; j <= k0; ++j) {
      if (j == 0 && b1.is_zero()) continue;
      const Tensor* tin = D.right.op(j, b1);
      if (!tin) continue;
      for (int i = 0; i + j <= k0; ++i) {
        Key v(zs.begin() + i, zs.begin() + i + j);
        auto vit = tin->find(v);
        if (vit == tin->end()) continue;
        int sd = gs;
        for (int t = 0; t < i; ++t) sd += D.right.basis.degree(zs[t]) - 1;
        Scalar sign = F.make(sd % 2 == 0 ? 1 : -1);
        Key nzs(zs.begin(), zs.begin() + i);
        nzs.push_back(0);
        nzs.insert(nzs.end(), zs.begin() + i + j, zs.end());
        for (const auto& [mid, c] : vit->second) {
          nzs[i] = mid;
          const FieldChain* out = D.entry(k1, k0 - j + 1, b2, BimKey{xs, key.y, nzs});
          if (out) fc_add(F, res, *out, F.mul(sign, c));
        }
      }
    }
  }
  return res;
}

BimReport verify_bimodule(const FilteredBimodule& D) {
  D.validate();
  BimReport rep;
  int bound = std::max(0, D.arity_cutoff - (D.has_curvature() ? 1 : 0));
  for (int k1 = 0; k1 <= bound; ++k1) {
    for (int k0 = 0; k1 + k0 <= bound; ++k0) {
      for_words(D.left.basis.size(), k1, [&](const Key& xs) {
        for (int y = 0; y < D.basis.size(); ++y) {
          for_words(D.right.basis.size(), k0, [&](const Key& zs) {
            BimKey key{xs, y, zs};
            for (const auto& beta : D.monoid.classes()) {
              FieldChain r = bimodule_residual(D, key, beta);
              if (!r.empty()) rep.entries.push_back({k1, k0, beta, key, std::move(r)});
            }
          });
        }
      });
    }
  }
  return rep;
}

FilteredBimodule bimodule_from_algebra(const FilteredAInfinity& A) {
  A.validate();
  FilteredBimodule D;
  D.field = A.field;
  D.left = A;
  D.right = A;
  D.basis = A.basis;
  D.monoid = A.monoid;
  D.energy_cutoff = A.energy_cutoff;
  D.arity_cutoff = std::max(0, A.arity_cutoff - 1);
  for (const auto& [ok, t] : A.ops) {
    if (ok.k == 0) continue;  // curvature stays on the algebra sides
    for (const auto& [w, chain] : t) {
      for (int k1 = 0; k1 < ok.k; ++k1) {
        BimKey key{Key(w.begin(), w.begin() + k1), w[k1], Key(w.begin() + k1 + 1, w.end())};
        D.add_entry(k1, ok.k - 1 - k1, ok.beta, key, chain);
      }
    }
  }
  D.validate();
  return D;
}

FilteredBimodule deform_bimodule(const FilteredBimodule& D, const Chain& b0, const Chain& b1) {
  check_deformation_element(D.right, b0);
  check_deformation_element(D.left, b1);
  const Field& F = D.field;
  const Rational& cut = D.energy_cutoff;

  std::vector<GapClass> extra;
  for (const Chain* b : {&b0, &b1})
    for (const auto& [i, nv] : *b) {
      (void)i;
      for (const auto& [m, c] : nv.terms()) {
        (void)c;
        if (m.lambda < cut) extra.push_back({m.lambda, 2 * m.e});
      }
    }

  FilteredBimodule R;
  R.field = F;
  R.left = deform_by_b(D.left, b1);
  R.right = deform_by_b(D.right, b0);
  R.basis = D.basis;
  R.monoid = monoid_extend(D.monoid, extra);
  R.energy_cutoff = cut;
  R.arity_cutoff = D.arity_cutoff;

  for (const auto& [ok, t] : D.ops) {
    const int K1 = ok.k1, K0 = ok.k0;
    for (const auto& [w, chain] : t) {
      for (unsigned m1 = 0; m1 < (1u << K1); ++m1) {
        for (unsigned m0 = 0; m0 < (1u << K0); ++m0) {
          // masked slots are fed by the matching element; the rest survive
          NovElement p = NovElement::scalar(F, cut - ok.beta.lambda, F.one());
          Key restx, restz;
          bool dead = false;
          for (int s = 0; s < K1 && !dead; ++s) {
            if (m1 & (1u << s)) {
              auto it = b1.find(w.xs[s]);
              if (it == b1.end()) {
                dead = true;
                break;
              }
              p = p * it->second;
              if (p.is_zero()) dead = true;
            } else {
              restx.push_back(w.xs[s]);
            }
          }
          for (int s = 0; s < K0 && !dead; ++s) {
            if (m0 & (1u << s)) {
              auto it = b0.find(w.zs[s]);
              if (it == b0.end()) {
                dead = true;
                break;
              }
              p = p * it->second;
              if (p.is_zero()) dead = true;
            } else {
              restz.push_back(w.zs[s]);
            }
          }
          if (dead) continue;
          for (const auto& [m, c] : p.terms()) {
            GapClass cls{ok.beta.lambda + m.lambda, ok.beta.mu + 2 * m.e};
            R.add_entry(static_cast<int>(restx.size()), static_cast<int>(restz.size()), cls,
                        BimKey{restx, w.y, restz}, fc_scaled(F, chain, c));
          }
        }
      }
    }
  }
  // insertions can cancel an entire tensor; drop the leftover keys
  for (auto it = R.ops.begin(); it != R.ops.end();)
    it = it->second.empty() ? R.ops.erase(it) : std::next(it);
  R.validate();
  return R;
}

const BimTensor* BimoduleHom::comp(int k1, int k0, const GapClass& beta) const {
  auto it = comps.find(BimoduleOpKey{k1, k0, beta});
  return it == comps.end() ? nullptr : &it->second;
}

void BimoduleHom::add_entry(int k1, int k0, const GapClass& beta, const BimKey& key,
                            const FieldChain& out) {
  if (out.empty()) return;
  if (static_cast<int>(key.xs.size()) != k1 || static_cast<int>(key.zs.size()) != k0)
    throw error("bimodule homomorphism key lengths != arities");
  if (beta.lambda < -loss)
    throw error("bimodule homomorphism component (" + std::to_string(k1) + "," +
                std::to_string(k0) + ") at class " + to_string(beta) +
                " exceeds the declared energy loss");
  int need = -beta.mu + dom_mod.degree(key.y) - 1;
  for (int i : key.xs) need += f1.dom.degree(i) - 1;
  for (int i : key.zs) need += f0.dom.degree(i) - 1;
  for (const auto& [j, c] : out) {
    (void)c;
    if (cod_mod.degree(j) - 1 != need)
      throw error("inhomogeneous bimodule homomorphism entry: output " + cod_mod.name(j) +
                  " expects deg' " + std::to_string(need));
  }
  BimTensor& t = comps[BimoduleOpKey{k1, k0, beta}];
  fc_add(field, t[key], out, field.one());
  if (t[key].empty()) t.erase(key);
}

void BimoduleHom::validate() const {
  if (loss < 0) throw error("energy loss must be >= 0");
  if (field != f1.field || field != f0.field)
    throw error("bimodule homomorphism field disagrees with an attached homomorphism");
  f1.validate();
  f0.validate();
  for (const auto& [key, t] : comps) {
    if (key.k1 < 0 || key.k0 < 0 || key.k1 + key.k0 > arity_cutoff + 1)
      throw error("bimodule homomorphism arity (" + std::to_string(key.k1) + "," +
                  std::to_string(key.k0) + ") outside the cutoff");
    if (key.beta.lambda < -loss)
      throw error("bimodule homomorphism component (" + std::to_string(key.k1) + "," +
                  std::to_string(key.k0) + ") at class " + to_string(key.beta) +
                  " exceeds the declared energy loss");
    if (key.beta.lambda >= energy_cutoff)
      throw error("bimodule homomorphism class " + to_string(key.beta) + " beyond the cutoff");
    if (key.beta.mu % 2 != 0) throw error("bimodule homomorphism class with odd mu");
    int base = -key.beta.mu;
    for (const auto& [w, out] : t) {
      if (static_cast<int>(w.xs.size()) != key.k1 || static_cast<int>(w.zs.size()) != key.k0)
        throw error("bimodule homomorphism key lengths != arities");
      if (w.y < 0 || w.y >= dom_mod.size())
        throw error("bimodule homomorphism module index out of range");
      int need = base + dom_mod.degree(w.y) - 1;
      for (int i : w.xs) {
        if (i < 0 || i >= f1.dom.size())
          throw error("bimodule homomorphism left index out of range");
        need += f1.dom.degree(i) - 1;
      }
      for (int i : w.zs) {
        if (i < 0 || i >= f0.dom.size())
          throw error("bimodule homomorphism right index out of range");
        need += f0.dom.degree(i) - 1;
      }
      for (const auto& [j, c] : out) {
        if (Field::is_zero(c)) throw error("stored zero coefficient");
        if (j < 0 || j >= cod_mod.size())
          throw error("bimodule homomorphism output index out of range");
        if (cod_mod.degree(j) - 1 != need)
          throw error("inhomogeneous bimodule homomorphism entry");
      }
    }
  }
}

BimoduleHom identity_bimodule_hom(const FilteredBimodule& D) {
  BimoduleHom phi;
  phi.field = D.field;
  phi.f1 = identity_hom(D.left);
  phi.f0 = identity_hom(D.right);
  phi.dom_mod = D.basis;
  phi.cod_mod = D.basis;
  phi.energy_cutoff = D.energy_cutoff;
  phi.arity_cutoff = D.arity_cutoff;
  for (int y = 0; y < D.basis.size(); ++y)
    phi.add_entry(0, 0, gap_zero(), BimKey{{}, y, {}}, FieldChain{{y, D.field.one()}});
  return phi;
}

BimReport verify_bimodule_hom(const BimoduleHom& phi, const FilteredBimodule& D,
                              const FilteredBimodule& Dp) {
  phi.validate();
  if (!(phi.f1.dom == D.left.basis) || !(phi.f0.dom == D.right.basis) ||
      !(phi.dom_mod == D.basis) || !(phi.f1.cod == Dp.left.basis) ||
      !(phi.f0.cod == Dp.right.basis) || !(phi.cod_mod == Dp.basis))
    throw error("bimodule homomorphism endpoints disagree with the given structures");
  if (!verify_homomorphism(phi.f1, D.left, Dp.left).ok())
    throw error("attached left algebra homomorphism fails its identity");
  if (!verify_homomorphism(phi.f0, D.right, Dp.right).ok())
    throw error("attached right algebra homomorphism fails its identity");
  const Field& F = phi.field;
  Rational cut = std::min({phi.energy_cutoff, D.energy_cutoff, Dp.energy_cutoff});
  int kmax = std::min({phi.arity_cutoff, D.arity_cutoff, Dp.arity_cutoff});
  if (D.has_curvature()) kmax -= 1;
  kmax = std::max(kmax, 0);

  BimReport rep;
  auto scan = [&](const Key& xs, int y, const Key& zs) {
    int k1 = static_cast<int>(xs.size());
    int k0 = static_cast<int>(zs.size());
    std::map<GapClass, FieldChain> acc;
    auto put = [&](const GapClass& cls, const FieldChain& c, const Scalar& coeff) {
      if (cls.lambda >= cut) return;
      fc_add(F, acc[cls], c, coeff);
      if (acc[cls].empty()) acc.erase(cls);
    };
    // codomain side: codomain operations around one phi component, the
    // outer words pushed through the attached homomorphisms, sign-free
    for (int kp1 = 0; kp1 <= k1; ++kp1) {
      for (int kp0 = 0; kp0 <= k0; ++kp0) {
        BimKey inner{Key(xs.begin() + (k1 - kp1), xs.end()), y, Key(zs.begin(), zs.begin() + kp0)};
        BarElement U = coalgebra_extend(phi.f1, word_of(Key(xs.begin(), xs.begin() + (k1 - kp1))));
        BarElement W = coalgebra_extend(phi.f0, word_of(Key(zs.begin() + kp0, zs.end())));
        for (const auto& [bphi, tphi] : bim_ops_of_arity(phi.comps, kp1, kp0)) {
          auto pit = tphi->find(inner);
          if (pit == tphi->end()) continue;
          for (const auto& [wu, nu] : U) {
            for (const auto& [ww, nw] : W) {
              NovElement prod = nu * nw;
              if (prod.is_zero()) continue;
              for (const auto& [b2, t2] : bim_ops_of_arity(
                       Dp.ops, static_cast<int>(wu.size()), static_cast<int>(ww.size()))) {
                for (const auto& [mid, cphi] : pit->second) {
                  auto oit = t2->find(BimKey{word_bases(wu), mid, word_bases(ww)});
                  if (oit == t2->end()) continue;
                  for (const auto& [m, cuw] : prod.terms()) {
                    GapClass tot{bphi.lambda + b2.lambda + m.lambda,
                                 bphi.mu + b2.mu + 2 * m.e};
                    put(tot, oit->second, F.mul(cphi, cuw));
                  }
                }
              }
            }
          }
        }
      }
    }
    // domain side, subtracted: phi components after the three
    // coderivation groups with their prefix signs
    auto phi_after = [&](int a1, int a0, const BimKey& key, const GapClass& bin,
                         const Scalar& coeff) {
      for (const auto& [bphi, tphi] : bim_ops_of_arity(phi.comps, a1, a0)) {
        auto it = tphi->find(key);
        if (it == tphi->end()) continue;
        put(bin + bphi, it->second, F.neg(coeff));
      }
    };
    for (int j = 0; j <= k1; ++j) {
      for (const auto& [bin, tin] : ops_of_arity(D.left.ops, j)) {
        if (j == 0 && bin.is_zero()) continue;
        for (int i = 0; i + j <= k1; ++i) {
          Key v(xs.begin() + i, xs.begin() + i + j);
          auto vit = tin->find(v);
          if (vit == tin->end()) continue;
          int sd = 0;
          for (int t = 0; t < i; ++t) sd += D.left.basis.degree(xs[t]) - 1;
          Scalar sign = F.make(sd % 2 == 0 ? 1 : -1);
          Key nxs(xs.begin(), xs.begin() + i);
          nxs.push_back(0);
          nxs.insert(nxs.end(), xs.begin() + i + j, xs.end());
          for (const auto& [mid, c] : vit->second) {
            nxs[i] = mid;
            phi_after(k1 - j + 1, k0, BimKey{nxs, y, zs}, bin, F.mul(sign, c));
          }
        }
      }
    }
    for (int kp1 = 0; kp1 <= k1; ++kp1) {
      for (int kp0 = 0; kp0 <= k0; ++kp0) {
        for (const auto& [bin, tin] : bim_ops_of_arity(D.ops, kp1, kp0)) {
          BimKey inner{Key(xs.begin() + (k1 - kp1), xs.end()), y,
                       Key(zs.begin(), zs.begin() + kp0)};
          auto vit = tin->find(inner);
          if (vit == tin->end()) continue;
          int sd = 0;
          for (int t = 0; t < k1 - kp1; ++t) sd += D.left.basis.degree(xs[t]) - 1;
          Scalar sign = F.make(sd % 2 == 0 ? 1 : -1);
          Key hx(xs.begin(), xs.begin() + (k1 - kp1));
          Key tz(zs.begin() + kp0, zs.end());
          for (const auto& [mid, c] : vit->second)
            phi_after(k1 - kp1, k0 - kp0, BimKey{hx, mid, tz}, bin, F.mul(sign, c));
        }
      }
    }
    int gs = D.basis.degree(y) - 1;
    for (int t = 0; t < k1; ++t) gs += D.left.basis.degree(xs[t]) - 1;
    for (int j = 0; j <= k0; ++j) {
      for (const auto& [bin, tin] : ops_of_arity(D.right.ops, j)) {
        if (j == 0 && bin.is_zero()) continue;
        for (int i = 0; i + j <= k0; ++i) {
          Key v(zs.begin() + i, zs.begin() + i + j);
          auto vit = tin->find(v);
          if (vit == tin->end()) continue;
          int sd = gs;
          for (int t = 0; t < i; ++t) sd += D.right.basis.degree(zs[t]) - 1;
          Scalar sign = F.make(sd % 2 == 0 ? 1 : -1);
          Key nzs(zs.begin(), zs.begin() + i);
          nzs.push_back(0);
          nzs.insert(nzs.end(), zs.begin() + i + j, zs.end());
          for (const auto& [mid, c] : vit->second) {
            nzs[i] = mid;
            phi_after(k1, k0 - j + 1, BimKey{xs, y, nzs}, bin, F.mul(sign, c));
          }
        }
      }
    }
    for (auto& [cls, r] : acc)
      if (!r.empty()) rep.entries.push_back({k1, k0, cls, BimKey{xs, y, zs}, std::move(r)});
  };
  for (int k1 = 0; k1 <= kmax; ++k1) {
    for (int k0 = 0; k1 + k0 <= kmax; ++k0) {
      for_words(D.left.basis.size(), k1, [&](const Key& xs) {
        for (int y = 0; y < D.basis.size(); ++y) {
          for_words(D.right.basis.size(), k0, [&](const Key& zs) { scan(xs, y, zs); });
        }
      });
    }
  }
  return rep;
}

}  // namespace ainf
