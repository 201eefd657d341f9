#include "ainf/interval.hpp"

#include <string>
#include <utility>

namespace ainf {

namespace {

FieldChain retag_chain(const FieldChain& c, const std::vector<int>& tag) {
  FieldChain out;
  for (const auto& [b, s] : c) out[tag[b]] = s;
  return out;
}

Key retag_key(const Key& key, const std::vector<int>& tag) {
  Key out;
  out.reserve(key.size());
  for (int b : key) out.push_back(tag[b]);
  return out;
}

HomFamily empty_family(const FilteredAInfinity& A, const GradedBasis& dom,
                       const GradedBasis& cod) {
  HomFamily h;
  h.field = A.field;
  h.dom = dom;
  h.cod = cod;
  h.energy_cutoff = A.energy_cutoff;
  h.arity_cutoff = A.arity_cutoff;
  return h;
}

Scalar parity_sign(const Field& F, int n) { return n % 2 == 0 ? F.one() : F.neg(F.one()); }

}  // namespace

IntervalModel build_interval_model(const FilteredAInfinity& A) {
  A.validate();
  const Field& F = A.field;
  IntervalModel M;
  int n = A.basis.size();
  GradedBasis cyl;
  for (int i = 0; i < n; ++i) M.i0.push_back(cyl.add("I0:" + A.basis.name(i), A.basis.degree(i)));
  for (int i = 0; i < n; ++i)
    M.imid.push_back(cyl.add("I:" + A.basis.name(i), A.basis.degree(i) + 1));
  for (int i = 0; i < n; ++i) M.i1.push_back(cyl.add("I1:" + A.basis.name(i), A.basis.degree(i)));

  M.algebra.field = F;
  M.algebra.basis = cyl;
  M.algebra.monoid = A.monoid;
  M.algebra.energy_cutoff = A.energy_cutoff;
  M.algebra.arity_cutoff = A.arity_cutoff;

  for (const auto& [op, tensor] : A.ops) {
    for (const auto& [key, chain] : tensor) {
      if (op.k == 0) {
        // curvature includes into both end copies
        M.algebra.add_entry(0, op.beta, key, retag_chain(chain, M.i0));
        M.algebra.add_entry(0, op.beta, key, retag_chain(chain, M.i1));
        continue;
      }
      M.algebra.add_entry(op.k, op.beta, retag_key(key, M.i0), retag_chain(chain, M.i0));
      M.algebra.add_entry(op.k, op.beta, retag_key(key, M.i1), retag_chain(chain, M.i1));
      // one middle letter, head in I0, tail in I1; sign from the tail
      for (int p = 0; p < op.k; ++p) {
        Key mkey;
        int tail = 0;
        for (int j = 0; j < op.k; ++j) {
          if (j < p) {
            mkey.push_back(M.i0[key[j]]);
          } else if (j == p) {
            mkey.push_back(M.imid[key[j]]);
          } else {
            mkey.push_back(M.i1[key[j]]);
            tail += A.basis.degree(key[j]) - 1;
          }
        }
        M.algebra.add_entry(op.k, op.beta, mkey,
                            fc_scaled(F, retag_chain(chain, M.imid), parity_sign(F, tail)));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    Scalar s = parity_sign(F, A.basis.degree(i) - 1);
    M.algebra.add_entry(1, gap_zero(), {M.i0[i]}, FieldChain{{M.imid[i], s}});
    M.algebra.add_entry(1, gap_zero(), {M.i1[i]}, FieldChain{{M.imid[i], F.neg(s)}});
  }
  M.algebra.validate();

  M.incl = empty_family(A, A.basis, cyl);
  M.eval0 = empty_family(A, cyl, A.basis);
  M.eval1 = empty_family(A, cyl, A.basis);
  for (int i = 0; i < n; ++i) {
    M.incl.add_entry(1, gap_zero(), {i}, FieldChain{{M.i0[i], F.one()}});
    M.incl.add_entry(1, gap_zero(), {i}, FieldChain{{M.i1[i], F.one()}});
    M.eval0.add_entry(1, gap_zero(), {M.i0[i]}, FieldChain{{i, F.one()}});
    M.eval1.add_entry(1, gap_zero(), {M.i1[i]}, FieldChain{{i, F.one()}});
  }
  return M;
}

namespace {

// First component where two families disagree, for failure messages.
std::string first_family_mismatch(const HomFamily& a, const HomFamily& b) {
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
  std::map<OpKey, Tensor> ca = clean(a.comps), cb = clean(b.comps);
  for (const auto& [k, t] : ca) {
    auto it = cb.find(k);
    if (it == cb.end() || !(it->second == t))
      return "arity " + std::to_string(k.k) + ", class " + to_string(k.beta);
  }
  for (const auto& [k, t] : cb) {
    (void)t;
    if (ca.find(k) == ca.end())
      return "arity " + std::to_string(k.k) + ", class " + to_string(k.beta);
  }
  return "endpoint data";
}

}  // namespace

CheckReport verify_model_axioms(const IntervalModel& M, const FilteredAInfinity& A) {
  CheckReport rep;
  const Field& F = A.field;
  auto concentrated = [&](const HomFamily& h, const std::string& what) {
    for (const auto& [k, t] : h.comps) {
      bool nonzero = false;
      for (const auto& [w, c] : t) {
        (void)w;
        if (!c.empty()) nonzero = true;
      }
      if (nonzero && !(k.k == 1 && k.beta.is_zero()))
        rep.failures.push_back(what + " has a component at arity " + std::to_string(k.k) +
                               ", class " + to_string(k.beta) + " (must vanish away from (1,(0,0)))");
    }
  };
  concentrated(M.incl, "inclusion");
  concentrated(M.eval0, "evaluation at 0");
  concentrated(M.eval1, "evaluation at 1");

  LinearMap da = linear_differential(A);
  LinearMap dm = linear_differential(M.algebra);
  int bad = 0;
  if (!induces_cohomology_iso(F, A.basis, da, M.algebra.basis, dm, M.incl.linear_part(), &bad))
    rep.failures.push_back("inclusion is not a quasi-isomorphism in degree " + std::to_string(bad));
  if (!induces_cohomology_iso(F, M.algebra.basis, dm, A.basis, da, M.eval0.linear_part(), &bad))
    rep.failures.push_back("evaluation at 0 is not a quasi-isomorphism in degree " +
                           std::to_string(bad));

  HomFamily id = identity_hom(A);
  if (!hom_equal(compose_homomorphisms(M.incl, M.eval0), id))
    rep.failures.push_back("evaluation at 0 after inclusion is not the identity");
  if (!hom_equal(compose_homomorphisms(M.incl, M.eval1), id))
    rep.failures.push_back("evaluation at 1 after inclusion is not the identity");

  LinearMap e0 = M.eval0.linear_part();
  LinearMap e1 = M.eval1.linear_part();
  for (int deg : A.basis.degrees_present()) {
    std::vector<int> rows, cols;
    Matrix m0 = lm_slice(F, M.algebra.basis, A.basis, e0, deg, &rows, &cols);
    Matrix m1 = lm_slice(F, M.algebra.basis, A.basis, e1, deg, nullptr, nullptr);
    Matrix stacked = m0;
    stacked.insert(stacked.end(), m1.begin(), m1.end());
    if (mat_rank(F, stacked) != 2 * static_cast<int>(rows.size()))
      rep.failures.push_back("paired evaluations are not jointly surjective in degree " +
                             std::to_string(deg));
  }
  return rep;
}

CheckReport check_homotopy(const HomFamily& f0, const HomFamily& f1, const HomFamily& F,
                           const IntervalModel& M, const FilteredAInfinity& dom) {
  CheckReport rep;
  Report hom = verify_homomorphism(F, dom, M.algebra);
  if (!hom.ok())
    rep.failures.push_back("homotopy witness fails the homomorphism equations:\n" +
                           hom.render(dom.basis, F.field));
  HomFamily at0 = compose_homomorphisms(F, M.eval0);
  if (!hom_equal(at0, f0))
    rep.failures.push_back("evaluation at 0 differs from the first homomorphism at " +
                           first_family_mismatch(at0, f0));
  HomFamily at1 = compose_homomorphisms(F, M.eval1);
  if (!hom_equal(at1, f1))
    rep.failures.push_back("evaluation at 1 differs from the second homomorphism at " +
                           first_family_mismatch(at1, f1));
  return rep;
}

CheckReport check_gauge_equivalence(const Chain& b, const Chain& bp, const Chain& bt,
                                    const IntervalModel& M) {
  CheckReport rep;
  check_deformation_element(M.algebra, bt);
  Chain r = mc_residual(M.algebra, bt);
  if (!chain_is_zero(r))
    rep.failures.push_back("cylinder Maurer-Cartan residual is nonzero: " +
                           chain_to_string(M.algebra.basis, r));
  auto side = [&](const HomFamily& ev, const Chain& want, const std::string& what) {
    Chain got = ev.linear_part().apply(bt);
    chain_add(got, chain_neg(want));
    if (!chain_is_zero(got))
      rep.failures.push_back("evaluation at " + what +
                             " does not reach the stated bounding cochain, difference " +
                             chain_to_string(ev.cod, got));
  };
  side(M.eval0, b, "0");
  side(M.eval1, bp, "1");
  return rep;
}

bool is_weak_homotopy_equivalence(const HomFamily& f, const FilteredAInfinity& A,
                                  const FilteredAInfinity& B) {
  return induces_cohomology_iso(f.field, A.basis, linear_differential(A), B.basis,
                                linear_differential(B), f.linear_part());
}

}  // namespace ainf
