// Command line front end: file loading, session flags, report rendering.
// Exit codes: 0 all checks pass, 1 a verification fails and its report is
// printed, 2 unusable input (parse error, invariant violation, bad flags).

#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ainf/interval.hpp"
#include "ainf/io.hpp"

using namespace ainf;

namespace {

struct Session {
  std::string field = "Q";
  std::string energy_cutoff = "1";
  int arity_cutoff = 2;
  unsigned long long seed = 0;
  std::string check_level = "full";
};

void session_flags(CLI::App* cmd, Session& s) {
  cmd->add_option("--field", s.field, "ground field, Q or F<p>");
  cmd->add_option("--energy-cutoff", s.energy_cutoff, "work modulo T^cutoff");
  cmd->add_option("--arity-cutoff", s.arity_cutoff, "highest operation arity");
  cmd->add_option("--seed", s.seed, "seed for sampled checks");
  cmd->add_option("--check-level", s.check_level, "full enumerates, fast samples words")
      ->check(CLI::IsMember({"fast", "full"}));
}

FilteredAInfinity load_algebra(const std::string& path) {
  return algebra_load(read_json_file(path));
}

int emit_report(const std::string& rendered, bool ok) {
  std::cout << rendered;
  return ok ? 0 : 1;
}

// Sampled relation check: a fixed number of uniformly drawn words per
// arity and class, through the public residual evaluator.
Report sampled_verify(const FilteredAInfinity& A, unsigned long long seed) {
  Report rep;
  int n = A.basis.size();
  if (n == 0) return rep;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  int bound = relation_arity_bound(A);
  for (int k = 0; k <= bound; ++k) {
    for (int s = 0; s < 25; ++s) {
      Key w(k);
      for (int& x : w) x = pick(rng);
      for (const auto& beta : A.monoid.classes()) {
        FieldChain r = ainfty_residual(A, w, beta);
        if (!r.empty()) rep.entries.push_back({k, beta, w, r});
      }
      if (k == 0) break;  // only one empty word
    }
  }
  return rep;
}

BimReport sampled_verify_bimodule(const FilteredBimodule& D, unsigned long long seed) {
  BimReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> px(0, std::max(1, D.left.basis.size()) - 1);
  std::uniform_int_distribution<int> py(0, std::max(1, D.basis.size()) - 1);
  std::uniform_int_distribution<int> pz(0, std::max(1, D.right.basis.size()) - 1);
  int bound = std::max(0, D.arity_cutoff - (D.has_curvature() ? 1 : 0));
  for (int k1 = 0; k1 <= bound; ++k1)
    for (int k0 = 0; k1 + k0 <= bound; ++k0)
      for (int s = 0; s < 12; ++s) {
        BimKey key;
        key.xs.resize(k1);
        for (int& x : key.xs) x = px(rng);
        key.y = py(rng);
        key.zs.resize(k0);
        for (int& z : key.zs) z = pz(rng);
        for (const auto& beta : D.monoid.classes()) {
          FieldChain r = bimodule_residual(D, key, beta);
          if (!r.empty()) rep.entries.push_back({k1, k0, beta, key, r});
        }
        if (k1 == 0 && k0 == 0 && D.basis.size() <= 1) break;
      }
  return rep;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

struct MorseSetup {
  SimplicialComplex K;
  GradientMatching M;
  FilteredAInfinity A;
};

MorseSetup load_morse(const std::string& complex_path, const std::string& matching_path,
                      const std::string& ops_path, const Session& s) {
  MorseSetup m;
  m.K = simplicial_load(read_json_file(complex_path));
  m.M = matching_path.empty() ? build_matching(m.K)
                              : matching_load(m.K, read_json_file(matching_path));
  if (ops_path.empty()) {
    Rational cut = parse_rational(s.energy_cutoff);
    if (cut <= 0) throw error("energy cutoff must be positive");
    if (s.arity_cutoff < 1) throw error("arity cutoff must be positive");
    m.A = boundary_algebra(Field::from_name(s.field), m.K, GapMonoid::trivial(cut), cut,
                           s.arity_cutoff);
  } else {
    m.A = load_algebra(ops_path);
  }
  return m;
}

void print_morse_summary(const MorseSetup& in, const MorsePackage& P,
                         const CanonicalModelResult& R) {
  std::cout << "critical cells:";
  for (int c : in.M.critical) std::cout << " " << in.K.label(c);
  std::cout << "\n";
  const Field& F = in.A.field;
  LinearMap dm = lm_compose(F, P.data.coords, lm_compose(F, P.boundary, P.data.iota));
  auto ranks = cohomology_ranks(F, P.crit, dm);
  std::cout << "homology ranks by dimension:";
  for (int dim = in.K.dim(); dim >= 0; --dim)
    std::cout << " " << (ranks.count(in.K.dim() - dim) ? ranks[in.K.dim() - dim] : 0);
  std::cout << "\n";
  std::cout << "model operations: " << R.model.ops.size() << " tensors over " << R.ledger.size()
            << " contributing trees; relations and homomorphism verified\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact filtered A-infinity structures: verification, transfer, deformation"};
  app.require_subcommand(1);
  int rc = 0;

  Session ses;

  // verify
  auto* c_verify = app.add_subcommand("verify", "check the quadratic relations of an algebra");
  std::string verify_ops;
  c_verify->add_option("--ops", verify_ops, "algebra file")->required();
  session_flags(c_verify, ses);
  c_verify->callback([&]() {
    FilteredAInfinity A = load_algebra(verify_ops);
    Report rep = ses.check_level == "fast" ? sampled_verify(A, ses.seed) : verify_ainfty(A);
    rc = emit_report(rep.render(A.basis, A.field), rep.ok());
  });

  // verify-ank
  auto* c_ank = app.add_subcommand("verify-ank", "check the relations below a partial index");
  std::string ank_ops;
  int ank_n = 0, ank_K = 0;
  c_ank->add_option("--ops", ank_ops, "algebra file, possibly partial")->required();
  c_ank->add_option("--n", ank_n, "norm bound")->required();
  c_ank->add_option("--K", ank_K, "arity bound")->required();
  c_ank->callback([&]() {
    FilteredAInfinity A = load_algebra(ank_ops);
    Report rep = verify_ank(A, ank_n, ank_K);
    rc = emit_report(rep.render(A.basis, A.field), rep.ok());
  });

  // transfer
  auto* c_transfer = app.add_subcommand("transfer", "canonical model over contraction data");
  std::string tr_ops, tr_sub, tr_proj, tr_hmt, tr_emit, tr_ledger;
  c_transfer->add_option("--ops", tr_ops, "ambient algebra file")->required();
  c_transfer->add_option("--subspace", tr_sub, "subbasis with inclusion")->required();
  c_transfer->add_option("--proj", tr_proj, "projection onto the subcomplex")->required();
  c_transfer->add_option("--homotopy", tr_hmt, "homotopy between identity and projection")
      ->required();
  c_transfer->add_option("--emit", tr_emit, "write the model algebra here");
  c_transfer->add_option("--ledger", tr_ledger, "write per-tree contributions here");
  c_transfer->callback([&]() {
    FilteredAInfinity A = load_algebra(tr_ops);
    const Field& F = A.field;
    auto [sub, iota] = subspace_load(F, A.basis, read_json_file(tr_sub));
    LinearMap proj = linmap_load(F, A.basis, A.basis, read_json_file(tr_proj));
    LinearMap hmt = linmap_load(F, A.basis, A.basis, read_json_file(tr_hmt));
    if (proj.shift != 0) throw error("projection must have shift 0");
    if (hmt.shift != -1) throw error("homotopy must have shift -1");
    TransferData T =
        normalize_homotopy(F, A.basis, sub, linear_differential(A), iota, proj, hmt);
    CanonicalModelResult R = transfer(A, T);
    std::cout << "model operations: " << R.model.ops.size() << " tensors over "
              << R.ledger.size() << " contributing trees; relations and homomorphism verified\n";
    if (!tr_emit.empty()) write_json_file(tr_emit, algebra_save(R.model));
    if (!tr_ledger.empty()) write_json_file(tr_ledger, ledger_save(F, T.sub, T.amb, R.ledger));
  });

  // interval-model
  auto* c_interval = app.add_subcommand("interval-model", "cylinder algebra of an algebra");
  std::string iv_ops, iv_emit;
  c_interval->add_option("--ops", iv_ops, "base algebra file")->required();
  c_interval->add_option("--emit", iv_emit, "write the cylinder algebra here");
  session_flags(c_interval, ses);
  c_interval->callback([&]() {
    FilteredAInfinity A = load_algebra(iv_ops);
    IntervalModel M = build_interval_model(A);
    CheckReport axioms = verify_model_axioms(M, A);
    std::string out = axioms.render();
    bool ok = axioms.ok();
    if (ses.check_level == "full") {
      Report ra = verify_ainfty(M.algebra);
      if (!ra.ok()) {
        out += ra.render(M.algebra.basis, A.field);
        ok = false;
      }
      for (const auto* f : {&M.incl}) {
        Report rf = verify_homomorphism(*f, A, M.algebra);
        if (!rf.ok()) {
          out += rf.render(A.basis, A.field);
          ok = false;
        }
      }
      for (const auto* f : {&M.eval0, &M.eval1}) {
        Report rf = verify_homomorphism(*f, M.algebra, A);
        if (!rf.ok()) {
          out += rf.render(M.algebra.basis, A.field);
          ok = false;
        }
      }
    }
    if (!iv_emit.empty()) write_json_file(iv_emit, algebra_save(M.algebra));
    rc = emit_report(out, ok);
  });

  // check-homotopy
  auto* c_hmtp = app.add_subcommand("check-homotopy", "certify a homotopy between homomorphisms");
  std::string ch_dom, ch_cod, ch_f0, ch_f1, ch_via;
  c_hmtp->add_option("--dom", ch_dom, "domain algebra")->required();
  c_hmtp->add_option("--cod", ch_cod, "codomain algebra")->required();
  c_hmtp->add_option("--f0", ch_f0, "first homomorphism")->required();
  c_hmtp->add_option("--f1", ch_f1, "second homomorphism")->required();
  c_hmtp->add_option("--via", ch_via, "candidate homotopy into the cylinder")->required();
  c_hmtp->callback([&]() {
    FilteredAInfinity dom = load_algebra(ch_dom);
    FilteredAInfinity cod = load_algebra(ch_cod);
    IntervalModel M = build_interval_model(cod);
    HomFamily f0 = hom_load(read_json_file(ch_f0));
    HomFamily f1 = hom_load(read_json_file(ch_f1));
    HomFamily via = hom_load(read_json_file(ch_via));
    CheckReport cr = check_homotopy(f0, f1, via, M, dom);
    if (cr.ok()) std::cout << "homotopic through the given family\n";
    rc = emit_report(cr.ok() ? "" : cr.render(), cr.ok());
  });

  // check-gauge
  auto* c_gauge = app.add_subcommand("check-gauge", "certify a gauge equivalence of solutions");
  std::string cg_ops, cg_b, cg_bp, cg_bt;
  c_gauge->add_option("--ops", cg_ops, "base algebra")->required();
  c_gauge->add_option("--b", cg_b, "first deformation element")->required();
  c_gauge->add_option("--bp", cg_bp, "second deformation element")->required();
  c_gauge->add_option("--bt", cg_bt, "candidate witness in the cylinder")->required();
  c_gauge->callback([&]() {
    FilteredAInfinity A = load_algebra(cg_ops);
    IntervalModel M = build_interval_model(A);
    Chain b = chain_load(A.field, A.basis, read_json_file(cg_b));
    Chain bp = chain_load(A.field, A.basis, read_json_file(cg_bp));
    Chain bt = chain_load(A.field, M.algebra.basis, read_json_file(cg_bt));
    CheckReport cr = check_gauge_equivalence(b, bp, bt, M);
    if (cr.ok()) std::cout << "gauge equivalent through the given element\n";
    rc = emit_report(cr.ok() ? "" : cr.render(), cr.ok());
  });

  // mc-check
  auto* c_mc = app.add_subcommand("mc-check", "Maurer-Cartan equation for a deformation element");
  std::string mc_ops, mc_b;
  c_mc->add_option("--ops", mc_ops, "algebra file")->required();
  c_mc->add_option("--b", mc_b, "deformation element")->required();
  c_mc->callback([&]() {
    FilteredAInfinity A = load_algebra(mc_ops);
    Chain b = chain_load(A.field, A.basis, read_json_file(mc_b));
    check_deformation_element(A, b);
    Chain r = mc_residual(A, b);
    if (chain_is_zero(r)) {
      std::cout << "Maurer-Cartan equation holds below the cutoff\n";
      rc = 0;
    } else {
      std::cout << "Maurer-Cartan residual: " << chain_to_string(A.basis, r) << "\n";
      rc = 1;
    }
  });

  // deform
  auto* c_deform = app.add_subcommand("deform", "twist the operations by a deformation element");
  std::string df_ops, df_b, df_emit;
  c_deform->add_option("--ops", df_ops, "algebra file")->required();
  c_deform->add_option("--b", df_b, "deformation element")->required();
  c_deform->add_option("--emit", df_emit, "write the deformed algebra here");
  c_deform->callback([&]() {
    FilteredAInfinity A = load_algebra(df_ops);
    Chain b = chain_load(A.field, A.basis, read_json_file(df_b));
    FilteredAInfinity B = deform_by_b(A, b);
    std::cout << "deformed operations: " << B.ops.size() << " tensors\n";
    if (!df_emit.empty()) write_json_file(df_emit, algebra_save(B));
  });

  // potential
  auto* c_pot = app.add_subcommand("potential", "unit multiple left by a weak solution");
  std::string pt_ops, pt_b, pt_unit;
  c_pot->add_option("--ops", pt_ops, "algebra file")->required();
  c_pot->add_option("--b", pt_b, "deformation element")->required();
  c_pot->add_option("--unit", pt_unit, "name of the unit generator")->required();
  c_pot->callback([&]() {
    FilteredAInfinity A = load_algebra(pt_ops);
    Chain b = chain_load(A.field, A.basis, read_json_file(pt_b));
    int unit = A.basis.index(pt_unit);
    PotentialResult pr = potential(A, b, unit);
    if (!pr.defined) {
      std::cout << "residual is not a unit multiple; off-unit part: "
                << chain_to_string(A.basis, pr.off_unit) << "\n";
      rc = 1;
    } else {
      Chain shown;
      if (!pr.value.is_zero()) shown[unit] = pr.value;
      std::cout << "potential: " << chain_to_string(A.basis, shown) << "\n";
    }
  });

  // bimodule-verify
  auto* c_bim = app.add_subcommand("bimodule-verify", "check the bimodule relations");
  std::string bm_file;
  c_bim->add_option("--bimodule", bm_file, "bimodule file")->required();
  session_flags(c_bim, ses);
  c_bim->callback([&]() {
    FilteredBimodule D = bimodule_load(read_json_file(bm_file));
    BimReport rep =
        ses.check_level == "fast" ? sampled_verify_bimodule(D, ses.seed) : verify_bimodule(D);
    if (rep.ok()) std::cout << "bimodule relations hold below the cutoffs\n";
    rc = emit_report(rep.ok() ? "" : rep.render(D), rep.ok());
  });

  // bimodule-deform
  auto* c_bdef = app.add_subcommand("bimodule-deform", "twist a bimodule by two elements");
  std::string bd_file, bd_b0, bd_b1, bd_emit;
  c_bdef->add_option("--bimodule", bd_file, "bimodule file")->required();
  c_bdef->add_option("--b0", bd_b0, "right-side deformation element")->required();
  c_bdef->add_option("--b1", bd_b1, "left-side deformation element")->required();
  c_bdef->add_option("--emit", bd_emit, "write the deformed bimodule here");
  c_bdef->callback([&]() {
    FilteredBimodule D = bimodule_load(read_json_file(bd_file));
    Chain b0 = chain_load(D.field, D.right.basis, read_json_file(bd_b0));
    Chain b1 = chain_load(D.field, D.left.basis, read_json_file(bd_b1));
    FilteredBimodule Dp = deform_bimodule(D, b0, b1);
    std::cout << "deformed bimodule operations: " << Dp.ops.size() << " tensors\n";
    if (!bd_emit.empty()) write_json_file(bd_emit, bimodule_save(Dp));
  });

  // morse
  auto* c_morse = app.add_subcommand("morse", "transfer onto the critical cells of a complex");
  std::string mo_complex, mo_matching, mo_ops, mo_emit, mo_ledger, mo_trace, mo_inputs;
  c_morse->add_option("--complex", mo_complex, "simplicial complex file")->required();
  c_morse->add_option("--matching", mo_matching, "matching file; greedy when absent");
  c_morse->add_option("--disc-ops", mo_ops, "operations on the cells; boundary only when absent");
  c_morse->add_option("--emit", mo_emit, "write the model algebra here");
  c_morse->add_option("--ledger", mo_ledger, "write per-tree contributions here");
  c_morse->add_option("--trace", mo_trace, "render this ledger tree");
  c_morse->add_option("--inputs", mo_inputs, "comma-separated critical cells for --trace");
  session_flags(c_morse, ses);
  c_morse->callback([&]() {
    MorseSetup in = load_morse(mo_complex, mo_matching, mo_ops, ses);
    MorsePackage P = morse_flow_data(in.A.field, in.K, in.M);
    CanonicalModelResult R = morse_transfer(in.K, in.M, in.A);
    print_morse_summary(in, P, R);
    if (!mo_emit.empty()) write_json_file(mo_emit, algebra_save(R.model));
    if (!mo_ledger.empty())
      write_json_file(mo_ledger, ledger_save(in.A.field, P.crit, P.cells, R.ledger));
    if (!mo_trace.empty()) {
      std::vector<int> idx;
      for (const auto& name : split_csv(mo_inputs)) idx.push_back(P.crit.index(name));
      std::cout << trace_configuration(R, in.A, P.data, mo_trace, idx);
    }
  });

  // trace
  auto* c_trace = app.add_subcommand("trace", "replay one tree of a transfer ledger");
  std::string tc_complex, tc_matching, tc_ops, tc_tree, tc_inputs;
  c_trace->add_option("--complex", tc_complex, "simplicial complex file")->required();
  c_trace->add_option("--matching", tc_matching, "matching file; greedy when absent");
  c_trace->add_option("--disc-ops", tc_ops, "operations on the cells; boundary only when absent");
  c_trace->add_option("--tree", tc_tree, "ledger id of the configuration")->required();
  c_trace->add_option("--inputs", tc_inputs, "comma-separated critical cells");
  session_flags(c_trace, ses);
  c_trace->callback([&]() {
    MorseSetup in = load_morse(tc_complex, tc_matching, tc_ops, ses);
    MorsePackage P = morse_flow_data(in.A.field, in.K, in.M);
    CanonicalModelResult R = morse_transfer(in.K, in.M, in.A);
    std::vector<int> idx;
    for (const auto& name : split_csv(tc_inputs)) idx.push_back(P.crit.index(name));
    std::cout << trace_configuration(R, in.A, P.data, tc_tree, idx);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
