#pragma once

// Random fixtures shared by the unit and acceptance suites.  All
// randomness flows through a caller-supplied engine so any failure
// reproduces from the reported seed.

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "ainf/transfer.hpp"

namespace gen {

using namespace ainf;
using Rng = std::mt19937_64;

inline int rint(Rng& g, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline Scalar rscalar_nonzero(const Field& F, Rng& g) {
  int v = 0;
  while (v == 0) v = rint(g, -3, 3);
  return F.make(v);
}

// ---------------------------------------------------------------------------
// Exterior differential graded algebras
//
// Generators x1..xn of degree 1; the basis is all square-free monomials
// of length <= top (truncation kills longer products, which is a dga
// quotient).  A chosen suffix of the generators receives a quadratic
// differential built from the closed prefix, so d^2 = 0 by construction
// and everything else follows from the Leibniz rule.

struct ExteriorDga {
  int n = 0;
  int top = 0;
  std::vector<int> masks;                  // basis monomials as bit sets
  std::vector<int> index_of_mask;          // mask -> basis index, -1 outside
  std::vector<FieldChain> dgen;            // differential of each generator

  static int merge_sign(int a, int b) {
    if (a & b) return 0;
    int sign = 1;
    for (int j = 0; j < 16; ++j)
      if (b & (1 << j)) {
        int higher = a >> (j + 1);
        if (__builtin_popcount(higher) % 2) sign = -sign;
      }
    return sign;
  }

  std::string mono_name(int mask) const {
    if (!mask) return "1";
    std::string s;
    for (int j = 0; j < n; ++j)
      if (mask & (1 << j)) s += "x" + std::to_string(j + 1);
    return s;
  }
};

inline DgaInput exterior_dga(const Field& F, Rng& g, int n, int top, int closed,
                             const Rational& energy_cutoff, int arity_cutoff) {
  ExteriorDga E;
  E.n = n;
  E.top = top;
  for (int size = 0; size <= top; ++size)
    for (int mask = 0; mask < (1 << n); ++mask)
      if (__builtin_popcount(mask) == size) E.masks.push_back(mask);
  E.index_of_mask.assign(1 << n, -1);
  for (size_t i = 0; i < E.masks.size(); ++i) E.index_of_mask[E.masks[i]] = static_cast<int>(i);

  if (top < 2 || closed < 2 || closed >= n)
    throw error("exterior dga needs top >= 2 and 2 <= closed < n");

  // quadratic differentials on the non-closed tail, built from closed pairs
  E.dgen.assign(n, {});
  for (int z = closed; z < n; ++z) {
    int terms = rint(g, 1, 2);
    for (int t = 0; t < terms; ++t) {
      int a = rint(g, 0, closed - 1);
      int b = rint(g, 0, closed - 2);
      if (b >= a) ++b;
      if (a > b) std::swap(a, b);
      int mask = (1 << a) | (1 << b);
      int idx = E.index_of_mask[mask];
      if (idx < 0) continue;
      Scalar c = F.add(E.dgen[z].count(idx) ? E.dgen[z][idx] : F.zero(), rscalar_nonzero(F, g));
      if (Field::is_zero(c)) E.dgen[z].erase(idx);
      else E.dgen[z][idx] = c;
    }
  }

  DgaInput in;
  in.field = F;
  in.energy_cutoff = energy_cutoff;
  in.arity_cutoff = arity_cutoff;
  for (int mask : E.masks) in.basis.add(E.mono_name(mask), __builtin_popcount(mask));

  // Leibniz extension of d to monomials, truncated with the basis
  for (size_t i = 0; i < E.masks.size(); ++i) {
    int mask = E.masks[i];
    FieldChain dm;
    int seen = 0;
    for (int j = 0; j < n; ++j) {
      if (!(mask & (1 << j))) continue;
      int rest = mask & ~(1 << j);
      Scalar lead = F.make(seen % 2 == 0 ? 1 : -1);
      for (const auto& [qidx, c] : E.dgen[j]) {
        int qmask = E.masks[qidx];
        // move dx_j to the front of rest, then fold the quadratic in
        int s = ExteriorDga::merge_sign(qmask, rest);
        if (s == 0) continue;
        int out = qmask | rest;
        int oidx = out < static_cast<int>(E.index_of_mask.size()) ? E.index_of_mask[out] : -1;
        if (oidx < 0) continue;
        Scalar add = F.mul(lead, F.mul(c, F.make(s)));
        Scalar acc = F.add(dm.count(oidx) ? dm[oidx] : F.zero(), add);
        if (Field::is_zero(acc)) dm.erase(oidx);
        else dm[oidx] = acc;
      }
      ++seen;
    }
    for (const auto& [to, c] : dm) in.d.add_entry(F, static_cast<int>(i), to, c);
  }
  in.d.shift = 1;

  for (size_t i = 0; i < E.masks.size(); ++i)
    for (size_t j = 0; j < E.masks.size(); ++j) {
      int s = ExteriorDga::merge_sign(E.masks[i], E.masks[j]);
      if (s == 0) continue;
      int out = E.masks[i] | E.masks[j];
      int oidx = E.index_of_mask[out];
      if (oidx < 0) continue;
      in.product[{static_cast<int>(i), static_cast<int>(j)}] = {{oidx, F.make(s)}};
    }
  return in;
}

// Random degree-preserving change of basis applied to a dga: the new
// differential and product are the old ones conjugated, so every
// structural identity survives while the tables lose their sparsity.
inline DgaInput conjugate_dga(const DgaInput& in, Rng& g) {
  const Field& F = in.field;
  int n = in.basis.size();
  LinearMap phi, phi_inv;
  for (int deg : in.basis.degrees_present()) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (in.basis.degree(i) == deg) idx.push_back(i);
    int m = static_cast<int>(idx.size());
    Matrix block;
    while (true) {
      block.assign(m, std::vector<Scalar>(m, F.zero()));
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) block[r][c] = F.make(rint(g, -2, 2));
      for (int r = 0; r < m; ++r)
        if (Field::is_zero(block[r][r])) block[r][r] = F.one();
      if (mat_rank(F, block) == m) break;
    }
    for (int c = 0; c < m; ++c) {
      for (int r = 0; r < m; ++r)
        if (!Field::is_zero(block[r][c])) phi.add_entry(F, idx[c], idx[r], block[r][c]);
      std::vector<Scalar> unit(m, F.zero());
      unit[c] = F.one();
      auto sol = mat_solve(F, block, unit);
      for (int r = 0; r < m; ++r)
        if (!Field::is_zero((*sol)[r])) phi_inv.add_entry(F, idx[c], idx[r], (*sol)[r]);
    }
  }

  DgaInput out;
  out.field = F;
  out.basis = in.basis;
  out.energy_cutoff = in.energy_cutoff;
  out.arity_cutoff = in.arity_cutoff;
  out.d = lm_compose(F, phi_inv, lm_compose(F, in.d, phi));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      FieldChain a = phi.column(i), b = phi.column(j);
      FieldChain prod;
      for (const auto& [ia, ca] : a)
        for (const auto& [ib, cb] : b) {
          auto it = in.product.find({ia, ib});
          if (it == in.product.end()) continue;
          fc_add(F, prod, it->second, F.mul(ca, cb));
        }
      FieldChain back = phi_inv.apply(F, prod);
      if (!back.empty()) out.product[{i, j}] = back;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Random contractions
//
// Greedy pairing on the linear differential with an explicit acyclicity
// guard, stopped early at random, then the same flow construction the
// simplicial front end uses: phi = 1 + dV + Vd iterated to a projection,
// with the accumulated homotopy normalized at the end.

inline TransferData random_contraction(const Field& F, const GradedBasis& basis,
                                       const LinearMap& d, Rng& g) {
  int n = basis.size();
  std::vector<std::pair<int, int>> candidates;  // (a, b): b appears in d a
  for (const auto& [a, col] : d.cols)
    for (const auto& [b, c] : col) {
      (void)c;
      candidates.emplace_back(a, b);
    }
  std::shuffle(candidates.begin(), candidates.end(), g);

  std::vector<int> match_of(n, -1);  // b -> a over matched pairs
  std::vector<std::pair<int, int>> pairs;
  std::vector<char> used(n, 0);
  auto acyclic_with = [&](int na, int nb) {
    // pair -> pair edge when d(a) meets the other pair's b
    std::vector<std::pair<int, int>> all = pairs;
    all.emplace_back(na, nb);
    std::map<int, std::vector<int>> adj;
    for (const auto& [a, b] : all) {
      FieldChain col = d.column(a);
      for (const auto& [a2, b2] : all) {
        (void)a2;
        if (b2 != b && col.count(b2)) adj[b].push_back(b2);
      }
    }
    std::map<int, int> state;
    std::function<bool(int)> dfs = [&](int x) {
      state[x] = 1;
      for (int y : adj[x]) {
        if (state[y] == 1) return false;
        if (state[y] == 0 && !dfs(y)) return false;
      }
      state[x] = 2;
      return true;
    };
    for (const auto& [a, b] : all) {
      (void)a;
      if (state[b] == 0 && !dfs(b)) return false;
    }
    return true;
  };

  for (const auto& [a, b] : candidates) {
    if (used[a] || used[b]) continue;
    if (!acyclic_with(a, b)) continue;
    used[a] = used[b] = 1;
    match_of[b] = a;
    pairs.emplace_back(a, b);
    if (rint(g, 0, 3) == 0) break;  // random early stop
  }

  LinearMap V;
  V.shift = -1;
  for (const auto& [a, b] : pairs) V.add_entry(F, b, a, F.neg(F.inv(d.column(a).at(b))));

  LinearMap id = lm_identity(n);
  LinearMap phi = lm_add(F, id, lm_add(F, lm_compose(F, d, V), lm_compose(F, V, d)));
  LinearMap P = id, S;
  for (int iter = 0;; ++iter) {
    if (iter > n + 1) throw error("random contraction failed to stabilize");
    LinearMap next = lm_compose(F, P, phi);
    if (next == P) break;
    S = lm_add(F, S, P);
    P = next;
  }
  LinearMap G_raw = lm_compose(F, V, S);

  GradedBasis sub;
  LinearMap iota;
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    int q = sub.add(basis.name(i), basis.degree(i));
    for (const auto& [to, c] : P.column(i)) iota.add_entry(F, q, to, c);
  }
  return normalize_homotopy(F, basis, sub, d, iota, P, G_raw);
}

// ---------------------------------------------------------------------------
// Random deformation elements: letters of degree 1 - mu for each class,
// always of strictly positive valuation.

inline Chain random_b(const FilteredAInfinity& A, const std::vector<GapClass>& classes, Rng& g,
                      bool force_all = true) {
  const Field& F = A.field;
  Chain b;
  for (const auto& beta : classes) {
    std::vector<int> letters;
    for (int i = 0; i < A.basis.size(); ++i)
      if (A.basis.degree(i) == 1 - beta.mu) letters.push_back(i);
    if (letters.empty()) {
      if (force_all) throw error("no letter of degree " + std::to_string(1 - beta.mu));
      continue;
    }
    int count = force_all ? rint(g, 1, static_cast<int>(letters.size()))
                          : rint(g, 0, static_cast<int>(letters.size()));
    std::shuffle(letters.begin(), letters.end(), g);
    for (int t = 0; t < count; ++t) {
      NovElement u(F, A.energy_cutoff);
      u.add_term(NovMonomial{beta.lambda, beta.mu / 2}, rscalar_nonzero(F, g));
      auto it = b.find(letters[t]);
      if (it == b.end()) b[letters[t]] = u;
      else it->second = it->second + u;
    }
  }
  return b;
}

}  // namespace gen
