#include "ainf/transfer.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>

namespace ainf {

namespace {

// Tree values before their energy weight: field chains graded by the
// accumulated e-exponent.
using LaurentChain = std::map<int, FieldChain>;

void lc_add(const Field& F, LaurentChain& dst, int e, const FieldChain& src, const Scalar& c) {
  FieldChain& slot = dst[e];
  fc_add(F, slot, src, c);
  if (slot.empty()) dst.erase(e);
}

LaurentChain lc_apply(const Field& F, const LinearMap& m, const LaurentChain& v) {
  LaurentChain out;
  for (const auto& [e, fc] : v) {
    FieldChain w = m.apply(F, fc);
    if (!w.empty()) out.emplace(e, std::move(w));
  }
  return out;
}

FieldChain unit_chain(const Field& F, int i) { return FieldChain{{i, F.one()}}; }

std::vector<int> slice_indices(const GradedBasis& basis, int deg) {
  std::vector<int> out;
  for (int i = 0; i < basis.size(); ++i)
    if (basis.degree(i) == deg) out.push_back(i);
  return out;
}

std::vector<Scalar> to_slice(const Field& F, const FieldChain& c, const std::vector<int>& idx) {
  std::vector<Scalar> out(idx.size(), F.zero());
  for (const auto& [b, s] : c) {
    auto it = std::find(idx.begin(), idx.end(), b);
    if (it == idx.end()) throw error("chain leaves its degree slice");
    out[it - idx.begin()] = s;
  }
  return out;
}

Matrix column_matrix(const Field& F, const std::vector<std::vector<Scalar>>& cols, size_t dim) {
  Matrix m(dim, std::vector<Scalar>(cols.size(), F.zero()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t r = 0; r < dim; ++r) m[r][j] = cols[j][r];
  return m;
}

}  // namespace

void TransferData::validate() const {
  if (d.shift != 1) throw error("transfer differential must have shift +1");
  if (iota.shift != 0 || proj.shift != 0 || coords.shift != 0)
    throw error("inclusion, projection and coords must preserve degree");
  if (hmt.shift != -1) throw error("homotopy must have shift -1");
  lm_check_graded(amb, amb, d, "transfer differential");
  lm_check_graded(sub, amb, iota, "inclusion");
  lm_check_graded(amb, amb, proj, "projection");
  lm_check_graded(amb, amb, hmt, "homotopy");
  lm_check_graded(amb, sub, coords, "coordinate map");
  const Field& F = field;
  for (int i = 0; i < amb.size(); ++i) {
    FieldChain ei = unit_chain(F, i);
    FieldChain p = proj.apply(F, ei);
    if (!fc_equal(proj.apply(F, p), p))
      throw error("projection is not idempotent at " + amb.name(i));
    if (!fc_equal(iota.apply(F, coords.apply(F, ei)), p))
      throw error("projection image escapes the subcomplex at " + amb.name(i));
    // id - proj = -(d hmt + hmt d)
    FieldChain r = ei;
    fc_add(F, r, p, F.neg(F.one()));
    fc_add(F, r, d.apply(F, hmt.apply(F, ei)), F.one());
    fc_add(F, r, hmt.apply(F, d.apply(F, ei)), F.one());
    if (!r.empty())
      throw error("homotopy identity fails in degree " + std::to_string(amb.degree(i)) + " at " +
                  amb.name(i));
    if (!hmt.apply(F, hmt.apply(F, ei)).empty())
      throw error("homotopy does not square to zero at " + amb.name(i));
    if (!proj.apply(F, hmt.apply(F, ei)).empty())
      throw error("projection does not annihilate the homotopy image at " + amb.name(i));
  }
  for (int q = 0; q < sub.size(); ++q) {
    FieldChain img = iota.apply(F, unit_chain(F, q));
    if (!fc_equal(coords.apply(F, img), unit_chain(F, q)))
      throw error("coords is not a left inverse of the inclusion at " + sub.name(q));
    if (!hmt.apply(F, img).empty())
      throw error("homotopy does not annihilate the subcomplex at " + sub.name(q));
    FieldChain di = d.apply(F, img);
    if (!fc_equal(proj.apply(F, di), di))
      throw error("differential leaves the subcomplex at " + sub.name(q));
  }
}

TransferData make_transfer_data(const Field& F, const GradedBasis& amb, const GradedBasis& sub,
                                const LinearMap& d, const LinearMap& iota, const LinearMap& proj,
                                const LinearMap& hmt) {
  TransferData T;
  T.field = F;
  T.amb = amb;
  T.sub = sub;
  T.d = d;
  T.iota = iota;
  T.proj = proj;
  T.hmt = hmt;
  T.coords.shift = 0;
  for (int deg : amb.degrees_present()) {
    std::vector<int> rows, cols;
    Matrix im = lm_slice(F, sub, amb, iota, deg, &rows, &cols);
    if (!cols.empty() && mat_rank(F, im) != static_cast<int>(cols.size()))
      throw error("inclusion is not injective in degree " + std::to_string(deg));
    for (int i : rows) {
      FieldChain p = proj.apply(F, unit_chain(F, i));
      auto sol = mat_solve(F, im, to_slice(F, p, rows));
      if (!sol) throw error("projection image escapes the subcomplex at " + amb.name(i));
      for (size_t j = 0; j < cols.size(); ++j)
        if (!Field::is_zero((*sol)[j])) T.coords.add_entry(F, i, cols[j], (*sol)[j]);
    }
  }
  T.validate();
  return T;
}

namespace {

bool side_conditions_hold(const Field& F, const GradedBasis& amb, const LinearMap& iota,
                          const LinearMap& proj, const LinearMap& g) {
  for (int i = 0; i < amb.size(); ++i) {
    FieldChain gi = g.apply(F, unit_chain(F, i));
    if (!g.apply(F, gi).empty()) return false;
    if (!proj.apply(F, gi).empty()) return false;
  }
  for (const auto& [q, img] : iota.cols) {
    (void)q;
    if (!g.apply(F, img).empty()) return false;
  }
  return true;
}

// Fresh homotopy on ker proj: pick kernel vectors whose d-images stay
// linearly independent; those images span ker(d) on the kernel of the
// next degree, so inverting d on them and extending by zero defines the
// homotopy.  Acyclicity of ker proj follows from the homotopy identity
// for the raw input, so the decomposition below always succeeds.
LinearMap rebuild_homotopy(const Field& F, const GradedBasis& amb, const LinearMap& d,
                           const LinearMap& proj) {
  std::map<int, std::vector<FieldChain>> acols;   // complement of ker d inside ker proj
  std::map<int, std::vector<FieldChain>> dacols;  // their d-images, one degree up
  for (int deg : amb.degrees_present()) {
    std::vector<int> rows;
    Matrix p = lm_slice(F, amb, amb, proj, deg, &rows, nullptr);
    std::vector<int> up = slice_indices(amb, deg + 1);
    std::vector<std::vector<Scalar>> picked;
    for (const auto& vec : mat_kernel(F, p, static_cast<int>(rows.size()))) {
      FieldChain v;
      for (size_t j = 0; j < rows.size(); ++j)
        if (!Field::is_zero(vec[j])) v[rows[j]] = vec[j];
      FieldChain dv = d.apply(F, v);
      if (dv.empty()) continue;
      picked.push_back(to_slice(F, dv, up));
      if (mat_rank(F, column_matrix(F, picked, up.size())) < static_cast<int>(picked.size())) {
        picked.pop_back();
        continue;
      }
      acols[deg].push_back(std::move(v));
      dacols[deg + 1].push_back(std::move(dv));
    }
  }
  LinearMap g;
  g.shift = -1;
  for (int i = 0; i < amb.size(); ++i) {
    int deg = amb.degree(i);
    FieldChain v = unit_chain(F, i);
    fc_add(F, v, proj.apply(F, unit_chain(F, i)), F.neg(F.one()));
    if (v.empty()) continue;
    std::vector<int> idx = slice_indices(amb, deg);
    std::vector<std::vector<Scalar>> cols;
    for (const FieldChain& c : dacols[deg]) cols.push_back(to_slice(F, c, idx));
    for (const FieldChain& c : acols[deg]) cols.push_back(to_slice(F, c, idx));
    auto sol = mat_solve(F, column_matrix(F, cols, idx.size()), to_slice(F, v, idx));
    if (!sol)
      throw error("homotopy rebuild failed: complement of the subcomplex is not acyclic in degree " +
                  std::to_string(deg));
    FieldChain gi;
    const std::vector<FieldChain>& below = acols[deg - 1];
    for (size_t j = 0; j < dacols[deg].size(); ++j)
      fc_add(F, gi, below[j], F.neg((*sol)[j]));
    for (const auto& [b, c] : gi) g.add_entry(F, i, b, c);
  }
  return g;
}

}  // namespace

TransferData normalize_homotopy(const Field& F, const GradedBasis& amb, const GradedBasis& sub,
                                const LinearMap& d, const LinearMap& iota, const LinearMap& proj,
                                const LinearMap& hmt_raw) {
  for (int i = 0; i < amb.size(); ++i) {
    FieldChain r = unit_chain(F, i);
    fc_add(F, r, proj.apply(F, unit_chain(F, i)), F.neg(F.one()));
    fc_add(F, r, d.apply(F, hmt_raw.apply(F, unit_chain(F, i))), F.one());
    fc_add(F, r, hmt_raw.apply(F, d.apply(F, unit_chain(F, i))), F.one());
    if (!r.empty())
      throw error("homotopy identity fails in degree " + std::to_string(amb.degree(i)) + " at " +
                  amb.name(i));
  }
  LinearMap g = hmt_raw;
  if (!side_conditions_hold(F, amb, iota, proj, g)) {
    // Side-condition replacement (1 - proj) g (1 - proj); it preserves the
    // homotopy identity because proj is a chain map.
    LinearMap one_minus = lm_sub(F, lm_identity(amb.size()), proj);
    g = lm_compose(F, one_minus, lm_compose(F, g, one_minus));
  }
  if (!side_conditions_hold(F, amb, iota, proj, g)) g = rebuild_homotopy(F, amb, d, proj);
  return make_transfer_data(F, amb, sub, d, iota, proj, g);
}

// ---------------------------------------------------------------------------
// Tree enumeration

namespace {

// Root vertex eta with the given edge subtrees; nullopt marks a leaf edge.
DecoratedTree compose_tree(int eta, const Rational& eta_energy,
                           const std::vector<std::optional<DecoratedTree>>& kids) {
  DecoratedTree t;
  t.vertices.push_back({eta, {}});
  t.energy = eta_energy;
  for (const auto& kid : kids) {
    if (!kid) {
      t.vertices[0].children.push_back(-1);
      t.leaves += 1;
      continue;
    }
    int base = static_cast<int>(t.vertices.size());
    t.vertices[0].children.push_back(base);
    for (const TreeVertex& v : kid->vertices) {
      TreeVertex moved = v;
      for (int& c : moved.children)
        if (c >= 0) c += base;
      t.vertices.push_back(std::move(moved));
    }
    t.leaves += kid->leaves;
    t.energy += kid->energy;
  }
  return t;
}

// All vertex-rooted decorated subtrees with j leaves and energy < budget.
std::vector<DecoratedTree> vertex_subtrees(int j, const GapMonoid& monoid, const Rational& budget,
                                           int arity_cutoff) {
  std::vector<DecoratedTree> out;
  if (budget <= 0) return out;
  const std::vector<Rational>& levels = monoid.levels();
  // Every zero-leaf subtree bottoms out in tadpoles, so it costs at least
  // the first positive level; reserving that for sibling slots without
  // leaves keeps the recursion finite.
  const bool has_energy = levels.size() > 1;
  for (int l = 0; l <= arity_cutoff; ++l) {
    // valency l + 1; tadpoles and straight-line vertices need energy
    int eta_min = (l <= 1) ? 1 : 0;
    for (int eta = eta_min; eta < static_cast<int>(levels.size()); ++eta) {
      if (levels[eta] >= budget) break;
      Rational rest = budget - levels[eta];
      std::vector<std::optional<DecoratedTree>> kids;
      std::function<void(int, int, const Rational&)> rec = [&](int slot, int leaves_left,
                                                               const Rational& room) {
        if (slot == l) {
          if (leaves_left == 0) out.push_back(compose_tree(eta, levels[eta], kids));
          return;
        }
        if (leaves_left >= 1) {
          kids.push_back(std::nullopt);
          rec(slot + 1, leaves_left - 1, room);
          kids.pop_back();
        }
        for (int j2 = 0; j2 <= leaves_left; ++j2) {
          int forced_empty = (l - slot - 1) - (leaves_left - j2);
          if (forced_empty > 0 && !has_energy) continue;
          Rational reserve = forced_empty > 0 ? levels[1] * forced_empty : Rational(0);
          for (DecoratedTree& sub : vertex_subtrees(j2, monoid, room - reserve, arity_cutoff)) {
            kids.push_back(std::move(sub));
            rec(slot + 1, leaves_left - j2, room - kids.back()->energy);
            kids.pop_back();
          }
        }
      };
      rec(0, j, rest);
    }
  }
  return out;
}

std::string encode_vertex(const DecoratedTree& t, int v) {
  std::string s = "(" + std::to_string(t.vertices[v].eta) + ":";
  for (int c : t.vertices[v].children) s += (c < 0) ? "L" : encode_vertex(t, c);
  return s + ")";
}

}  // namespace

std::string DecoratedTree::id() const {
  if (vertices.empty()) return "e";
  return encode_vertex(*this, 0);
}

std::vector<DecoratedTree> enumerate_trees(int k, const GapMonoid& monoid,
                                           const Rational& energy_cutoff, int arity_cutoff) {
  if (k < 0) throw error("tree enumeration needs a non-negative leaf count");
  std::vector<DecoratedTree> out;
  if (k == 1) out.push_back(DecoratedTree{{}, 1, Rational(0)});
  for (DecoratedTree& t : vertex_subtrees(k, monoid, energy_cutoff, arity_cutoff))
    out.push_back(std::move(t));
  std::sort(out.begin(), out.end(), [](const DecoratedTree& a, const DecoratedTree& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.id() < b.id();
  });
  return out;
}

// ---------------------------------------------------------------------------
// Tree evaluation

namespace {

struct TreeEvaluator {
  const TransferData& T;
  const FilteredAInfinity& A;
  // Word-to-value tables per subtree encoding.  Tables are independent of
  // the enclosing tree, so every distinct subtree is evaluated once.
  using Table = std::map<Key, LaurentChain>;
  std::map<std::string, Table> pre_memo;   // value at the vertex
  std::map<std::string, Table> post_memo;  // after the homotopy edge
  Table leaves;

  const Table& leaf_table() {
    if (leaves.empty())
      for (int i = 0; i < T.sub.size(); ++i) {
        FieldChain x = T.iota.column(i);
        if (!x.empty()) leaves[{i}] = LaurentChain{{0, std::move(x)}};
      }
    return leaves;
  }

  // m_{l, level} applied to already evaluated arguments; e-exponents of
  // the classes at the level slide into the result grading.
  LaurentChain apply_vertex(int l, int eta, const std::vector<const LaurentChain*>& args) {
    LaurentChain out;
    const Field& F = A.field;
    std::vector<std::pair<int, const Tensor*>> ops;
    for (const GapClass& b : A.monoid.at_level(A.monoid.levels().at(eta)))
      if (const Tensor* t = A.op(l, b)) ops.push_back({b.mu / 2, t});
    if (ops.empty()) return out;
    Key key(l, 0);
    std::function<void(int, int, const Scalar&)> rec = [&](int slot, int e_acc, const Scalar& c) {
      if (slot == l) {
        for (const auto& [eshift, tensor] : ops) {
          auto it = tensor->find(key);
          if (it != tensor->end()) lc_add(F, out, e_acc + eshift, it->second, c);
        }
        return;
      }
      for (const auto& [e, fc] : *args[slot])
        for (const auto& [b, s] : fc) {
          key[slot] = b;
          rec(slot + 1, e_acc + e, F.mul(c, s));
        }
    };
    rec(0, 0, F.one());
    return out;
  }

  const Table& pre_table(const DecoratedTree& t, int v) {
    std::string enc = encode_vertex(t, v);
    auto hit = pre_memo.find(enc);
    if (hit != pre_memo.end()) return hit->second;
    const std::vector<int>& ch = t.vertices[v].children;
    const int l = static_cast<int>(ch.size());
    Table out;
    // skip the whole combination walk when no operation can fire here
    bool live = false;
    for (const GapClass& b : A.monoid.at_level(A.monoid.levels().at(t.vertices[v].eta)))
      if (A.op(l, b)) live = true;
    if (live) {
      std::vector<const Table*> slots;
      for (int c : ch) slots.push_back(c < 0 ? &leaf_table() : &post_table(t, c));
      std::vector<const LaurentChain*> args(l, nullptr);
      Key word;
      std::function<void(int)> rec = [&](int s) {
        if (s == l) {
          LaurentChain val = apply_vertex(l, t.vertices[v].eta, args);
          if (!val.empty()) out.emplace(word, std::move(val));
          return;
        }
        for (const auto& [kw, kv] : *slots[s]) {
          size_t n0 = word.size();
          word.insert(word.end(), kw.begin(), kw.end());
          args[s] = &kv;
          rec(s + 1);
          word.resize(n0);
        }
      };
      rec(0);
    }
    return pre_memo.emplace(std::move(enc), std::move(out)).first->second;
  }

  const Table& post_table(const DecoratedTree& t, int v) {
    std::string enc = encode_vertex(t, v);
    auto hit = post_memo.find(enc);
    if (hit != post_memo.end()) return hit->second;
    Table out;
    for (const auto& [w, lc] : pre_table(t, v)) {
      LaurentChain val = lc_apply(A.field, T.hmt, lc);
      if (!val.empty()) out.emplace(w, std::move(val));
    }
    return post_memo.emplace(std::move(enc), std::move(out)).first->second;
  }
};

}  // namespace

Chain eval_tree(const DecoratedTree& t, const Word& w, const TransferData& T,
                const FilteredAInfinity& A, TreeMode mode) {
  if (static_cast<int>(w.size()) != t.leaves)
    throw error("tree evaluation word length does not match the leaf count");
  const Field& F = A.field;
  Key key = word_bases(w);
  int eshift = word_e_total(w);
  LaurentChain u;
  if (t.vertices.empty()) {
    FieldChain x = T.iota.column(key[0]);
    if (mode == TreeMode::m) x = T.proj.apply(F, T.d.apply(F, x));
    if (!x.empty()) u[0] = std::move(x);
  } else {
    TreeEvaluator ev{T, A, {}, {}, {}};
    const auto& table = ev.pre_table(t, 0);
    auto it = table.find(key);
    if (it != table.end()) u = lc_apply(F, mode == TreeMode::m ? T.proj : T.hmt, it->second);
  }
  Chain out;
  for (const auto& [e, fc] : u)
    for (const auto& [b, c] : fc) {
      NovElement nv(F, A.energy_cutoff);
      nv.add_term({t.energy, e + eshift}, c);
      chain_add_term(out, b, nv);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Assembly

namespace {

void for_each_key(int size, int k, const std::function<void(const Key&)>& fn) {
  Key key(k, 0);
  std::function<void(int)> rec = [&](int slot) {
    if (slot == k) {
      fn(key);
      return;
    }
    for (int i = 0; i < size; ++i) {
      key[slot] = i;
      rec(slot + 1);
    }
  };
  rec(0);
}

}  // namespace

CanonicalModelResult transfer(const FilteredAInfinity& A, const TransferData& T) {
  A.validate();
  T.validate();
  if (A.field != T.field) throw error("transfer field mismatch");
  if (!(A.basis == T.amb)) throw error("transfer data is over a different ambient basis");
  if (!(linear_differential(A) == T.d))
    throw error("contraction differential disagrees with the arity-1 energy-zero operation");
  const Field& F = A.field;

  CanonicalModelResult R;
  std::vector<GapClass> observed;
  TreeEvaluator ev{T, A, {}, {}, {}};
  for (int k = 0; k <= A.arity_cutoff; ++k) {
    for (const DecoratedTree& t : enumerate_trees(k, A.monoid, A.energy_cutoff, A.arity_cutoff)) {
      TreeContribution tc{k, t.id(), t.energy, {}, {}};
      auto record = [&](const Key& key, const LaurentChain& m_val, const LaurentChain& f_val) {
        for (const auto& [e, fc] : m_val) tc.m_part[{t.energy, 2 * e}][key] = fc;
        for (const auto& [e, fc] : f_val) tc.f_part[{t.energy, 2 * e}][key] = fc;
      };
      if (t.vertices.empty()) {
        for_each_key(T.sub.size(), k, [&](const Key& key) {
          LaurentChain m_val, f_val;
          FieldChain x = T.iota.column(key[0]);
          FieldChain dx = T.d.apply(F, x);
          if (!dx.empty()) m_val[0] = T.coords.apply(F, dx);
          f_val[0] = std::move(x);
          record(key, m_val, f_val);
        });
      } else {
        for (const auto& [key, pre] : ev.pre_table(t, 0))
          record(key, lc_apply(F, T.coords, pre), lc_apply(F, T.hmt, pre));
      }
      if (tc.m_part.empty() && tc.f_part.empty()) continue;
      for (const auto& [cls, tensor] : tc.m_part) {
        (void)tensor;
        if (!cls.is_zero()) observed.push_back(cls);
      }
      for (const auto& [cls, tensor] : tc.f_part) {
        (void)tensor;
        if (!cls.is_zero()) observed.push_back(cls);
      }
      R.ledger.push_back(std::move(tc));
    }
  }

  R.model.field = F;
  R.model.basis = T.sub;
  R.model.monoid = monoid_extend(A.monoid, observed);
  R.model.energy_cutoff = A.energy_cutoff;
  R.model.arity_cutoff = A.arity_cutoff;
  R.f.field = F;
  R.f.dom = T.sub;
  R.f.cod = T.amb;
  R.f.energy_cutoff = A.energy_cutoff;
  R.f.arity_cutoff = A.arity_cutoff;
  for (const TreeContribution& tc : R.ledger) {
    for (const auto& [cls, tensor] : tc.m_part)
      for (const auto& [key, fc] : tensor) R.model.add_entry(tc.k, cls, key, fc);
    for (const auto& [cls, tensor] : tc.f_part)
      for (const auto& [key, fc] : tensor) R.f.add_entry(tc.k, cls, key, fc);
  }
  // Cross-tree cancellation can leave a declared-zero tensor behind.
  for (auto it = R.model.ops.begin(); it != R.model.ops.end();)
    it = it->second.empty() ? R.model.ops.erase(it) : std::next(it);
  for (auto it = R.f.comps.begin(); it != R.f.comps.end();)
    it = it->second.empty() ? R.f.comps.erase(it) : std::next(it);
  R.model.validate();

  R.model_report = verify_ainfty(R.model);
  if (!R.model_report.ok())
    throw error("transferred structure fails its quadratic relations (internal sign error):\n" +
                R.model_report.render(T.sub, F));
  R.hom_report = verify_homomorphism(R.f, R.model, A);
  if (!R.hom_report.ok())
    throw error("transferred homomorphism fails its equations (internal sign error):\n" +
                R.hom_report.render(T.sub, F));
  return R;
}

// ---------------------------------------------------------------------------
// Low-arity oracle

namespace {

// Plain multilinear expansion of one unfiltered operation.
FieldChain apply_unfiltered(const FilteredAInfinity& A, int l, const std::vector<FieldChain>& args) {
  FieldChain out;
  const Tensor* t = A.op(l, gap_zero());
  if (!t) return out;
  const Field& F = A.field;
  Key key(l, 0);
  std::function<void(int, const Scalar&)> rec = [&](int slot, const Scalar& c) {
    if (slot == l) {
      auto it = t->find(key);
      if (it != t->end()) fc_add(F, out, it->second, c);
      return;
    }
    for (const auto& [b, s] : args[slot]) {
      key[slot] = b;
      rec(slot + 1, F.mul(c, s));
    }
  };
  rec(0, F.one());
  return out;
}

}  // namespace

Tensor oracle_transfer_low_arity(const FilteredAInfinity& A, const TransferData& T, int k) {
  if (k < 1 || k > 3) throw error("low-arity oracle covers arities 1 to 3 only");
  if (A.monoid.classes().size() != 1)
    throw error("low-arity oracle requires an unfiltered algebra");
  const Field& F = A.field;
  Tensor out;
  for_each_key(T.sub.size(), k, [&](const Key& key) {
    std::vector<FieldChain> x;
    for (int i : key) x.push_back(T.iota.column(i));
    FieldChain val;
    if (k == 1) {
      val = apply_unfiltered(A, 1, {x[0]});
    } else if (k == 2) {
      val = apply_unfiltered(A, 2, {x[0], x[1]});
    } else {
      val = apply_unfiltered(A, 3, {x[0], x[1], x[2]});
      FieldChain left = T.hmt.apply(F, apply_unfiltered(A, 2, {x[0], x[1]}));
      FieldChain right = T.hmt.apply(F, apply_unfiltered(A, 2, {x[1], x[2]}));
      fc_add(F, val, apply_unfiltered(A, 2, {left, x[2]}), F.one());
      fc_add(F, val, apply_unfiltered(A, 2, {x[0], right}), F.one());
    }
    FieldChain res = T.coords.apply(F, val);
    if (!res.empty()) out[key] = std::move(res);
  });
  return out;
}

}  // namespace ainf
