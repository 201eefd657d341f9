#include <algorithm>

#include "ainf/ainfty.hpp"

namespace ainf {

namespace {

struct Atom {
  int basis = 0;
  NovMonomial mono;
  Scalar c;
};

std::vector<Atom> atoms_of(const Chain& b) {
  std::vector<Atom> r;
  for (const auto& [i, nv] : b)
    for (const auto& [m, c] : nv.terms()) r.push_back({i, m, c});
  return r;
}

}  // namespace

void check_deformation_element(const FilteredAInfinity& A, const Chain& b) {
  for (const auto& [i, nv] : b) {
    if (i < 0 || i >= A.basis.size())
      throw error("deformation element index out of range");
    if (nv.field() != A.field) throw error("deformation element field mismatch");
    for (const auto& [m, c] : nv.terms()) {
      (void)c;
      if (!(m.lambda > 0))
        throw error("deformation element needs strictly positive valuation, found T^" +
                    to_string(m.lambda) + " at " + A.basis.name(i));
      if (A.basis.degree(i) - 1 + m.degree() != 0)
        throw error("deformation element must sit in shifted degree 0, found " +
                    A.basis.name(i) + " with e^" + std::to_string(m.e));
    }
  }
}

Chain mc_residual(const FilteredAInfinity& A, const Chain& b) {
  check_deformation_element(A, b);
  const Field& F = A.field;
  const Rational& cut = A.energy_cutoff;
  std::vector<Atom> atoms = atoms_of(b);
  Chain out;

  auto emit = [&](const Key& key, const Rational& lam, int e, const Scalar& coeff) {
    for (const auto& [beta, t] : ops_of_arity(A.ops, static_cast<int>(key.size()))) {
      if (lam + beta.lambda >= cut) continue;
      auto it = t->find(key);
      if (it == t->end()) continue;
      for (const auto& [j, c] : it->second) {
        NovElement nv(F, cut);
        nv.add_term({lam + beta.lambda, e + beta.mu / 2}, F.mul(coeff, c));
        chain_add_term(out, j, nv);
      }
    }
  };

  Key key;
  std::function<void(Rational, int, Scalar)> rec = [&](Rational lam, int e, Scalar coeff) {
    emit(key, lam, e, coeff);
    if (static_cast<int>(key.size()) >= A.arity_cutoff) return;
    for (const Atom& a : atoms) {
      Rational nl = lam + a.mono.lambda;
      if (nl >= cut) continue;
      key.push_back(a.basis);
      rec(nl, e + a.mono.e, F.mul(coeff, a.c));
      key.pop_back();
    }
  };
  rec(Rational(0), 0, F.one());
  return out;
}

FilteredAInfinity deform_by_b(const FilteredAInfinity& A, const Chain& b) {
  check_deformation_element(A, b);
  const Field& F = A.field;
  const Rational& cut = A.energy_cutoff;

  std::vector<GapClass> extra;
  for (const auto& [i, nv] : b) {
    (void)i;
    for (const auto& [m, c] : nv.terms()) {
      (void)c;
      if (m.lambda < cut) extra.push_back({m.lambda, 2 * m.e});
    }
  }

  FilteredAInfinity B;
  B.field = F;
  B.basis = A.basis;
  B.monoid = monoid_extend(A.monoid, extra);
  B.energy_cutoff = cut;
  B.arity_cutoff = A.arity_cutoff;
  B.total = A.total;

  for (const auto& [ok, t] : A.ops) {
    const int K = ok.k;
    for (const auto& [w, chain] : t) {
      for (unsigned mask = 0; mask < (1u << K); ++mask) {
        // slots in the mask are fed by b; the rest survive as inputs
        NovElement p = NovElement::scalar(F, cut - ok.beta.lambda, F.one());
        Key rest;
        bool dead = false;
        for (int s = 0; s < K && !dead; ++s) {
          if (mask & (1u << s)) {
            auto it = b.find(w[s]);
            if (it == b.end()) {
              dead = true;
              break;
            }
            p = p * it->second;
            if (p.is_zero()) dead = true;
          } else {
            rest.push_back(w[s]);
          }
        }
        if (dead) continue;
        for (const auto& [m, c] : p.terms()) {
          GapClass cls{ok.beta.lambda + m.lambda, ok.beta.mu + 2 * m.e};
          B.add_entry(static_cast<int>(rest.size()), cls, rest, fc_scaled(F, chain, c));
        }
      }
    }
  }
  // insertions can cancel an entire tensor; drop the leftover keys
  for (auto it = B.ops.begin(); it != B.ops.end();)
    it = it->second.empty() ? B.ops.erase(it) : std::next(it);
  B.validate();
  return B;
}

PotentialResult potential(const FilteredAInfinity& A, const Chain& b, int unit_index) {
  if (unit_index < 0 || unit_index >= A.basis.size())
    throw error("unit index out of range");
  Chain r = mc_residual(A, b);
  PotentialResult p;
  p.value = NovElement(A.field, A.energy_cutoff);
  for (const auto& [i, nv] : r) {
    if (i == unit_index)
      p.value = nv;
    else
      chain_add_term(p.off_unit, i, nv);
  }
  p.defined = chain_is_zero(p.off_unit);
  return p;
}

}  // namespace ainf
