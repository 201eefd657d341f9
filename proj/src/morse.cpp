#include "ainf/morse.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ainf {

namespace {

// Canonical cell order: dimension first, then lexicographic on the tuple.
bool cell_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<std::vector<int>> facets_of(const std::vector<int>& s) {
  std::vector<std::vector<int>> out;
  if (s.size() < 2) return out;
  for (size_t j = 0; j < s.size(); ++j) {
    std::vector<int> f;
    for (size_t i = 0; i < s.size(); ++i)
      if (i != j) f.push_back(s[i]);
    out.push_back(f);
  }
  return out;
}

std::string rat_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

int SimplicialComplex::dim() const {
  int d = -1;
  for (const auto& s : simplices) d = std::max(d, static_cast<int>(s.size()) - 1);
  return d;
}

std::string SimplicialComplex::label(int i) const {
  std::string out = "[";
  const auto& s = simplices.at(i);
  for (size_t j = 0; j < s.size(); ++j) {
    if (j) out += " ";
    out += vertices.at(s[j]);
  }
  return out + "]";
}

int SimplicialComplex::index_of(const std::vector<int>& s) const {
  auto it = std::lower_bound(simplices.begin(), simplices.end(), s, cell_less);
  if (it == simplices.end() || *it != s) return -1;
  return static_cast<int>(it - simplices.begin());
}

GradedBasis SimplicialComplex::cell_basis() const {
  GradedBasis b;
  int top = dim();
  for (int i = 0; i < cell_count(); ++i) b.add(label(i), top - cell_dim(i));
  return b;
}

void SimplicialComplex::validate() const {
  std::set<std::string> seen;
  for (const auto& v : vertices)
    if (!seen.insert(v).second) throw error("repeated vertex name " + v);
  int nv = static_cast<int>(vertices.size());
  for (size_t i = 0; i < simplices.size(); ++i) {
    const auto& s = simplices[i];
    if (s.empty()) throw error("empty cell");
    for (size_t j = 0; j < s.size(); ++j) {
      if (s[j] < 0 || s[j] >= nv) throw error("vertex index out of range");
      if (j && s[j - 1] >= s[j])
        throw error("cell not sorted by the vertex order");
    }
    if (i && !cell_less(simplices[i - 1], s))
      throw error("cells not in canonical order");
    for (const auto& f : facets_of(s))
      if (index_of(f) < 0)
        throw error("face closure violated below " + label(static_cast<int>(i)));
  }
}

SimplicialComplex SimplicialComplex::from_cells(
    std::vector<std::string> vertices, const std::vector<std::vector<std::string>>& cells) {
  std::map<std::string, int> idx;
  for (size_t i = 0; i < vertices.size(); ++i) {
    if (idx.count(vertices[i])) throw error("repeated vertex name " + vertices[i]);
    idx[vertices[i]] = static_cast<int>(i);
  }
  std::set<std::vector<int>, bool (*)(const std::vector<int>&, const std::vector<int>&)> closed(
      cell_less);
  for (const auto& cell : cells) {
    std::vector<int> s;
    for (const auto& name : cell) {
      auto it = idx.find(name);
      if (it == idx.end()) throw error("unknown vertex " + name);
      s.push_back(it->second);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw error("repeated vertex inside a cell");
    int m = static_cast<int>(s.size());
    for (int mask = 1; mask < (1 << m); ++mask) {
      std::vector<int> f;
      for (int j = 0; j < m; ++j)
        if (mask & (1 << j)) f.push_back(s[j]);
      closed.insert(f);
    }
  }
  SimplicialComplex K;
  K.vertices = std::move(vertices);
  K.simplices.assign(closed.begin(), closed.end());
  K.validate();
  return K;
}

std::optional<int> GradientMatching::coface_of(int cell) const {
  for (const auto& [a, b] : pairs)
    if (a == cell) return b;
  return std::nullopt;
}

bool GradientMatching::is_critical(int cell) const {
  return std::find(critical.begin(), critical.end(), cell) != critical.end();
}

void GradientMatching::validate(const SimplicialComplex& K) const {
  int n = K.cell_count();
  std::vector<char> used(n, 0);
  std::map<int, int> match;  // face -> coface
  for (const auto& [a, b] : pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw error("matching index out of range");
    if (K.cell_dim(b) != K.cell_dim(a) + 1 ||
        !std::includes(K.simplices[b].begin(), K.simplices[b].end(), K.simplices[a].begin(),
                       K.simplices[a].end()))
      throw error(K.label(a) + " is not a facet of " + K.label(b));
    if (used[a] || used[b]) throw error("cell matched twice: " + K.label(used[a] ? a : b));
    used[a] = used[b] = 1;
    match[a] = b;
  }
  std::vector<int> expect;
  for (int i = 0; i < n; ++i)
    if (!used[i]) expect.push_back(i);
  if (critical != expect)
    throw error("critical set is not the complement of the matched cells");

  // A flow path moves from a matched face through its coface to another
  // matched facet of that coface; a closed path makes the flow circulate
  // forever and is rejected with the full circuit.
  std::map<int, std::vector<int>> adj;
  for (const auto& [a, b] : pairs) {
    for (const auto& f : facets_of(K.simplices[b])) {
      int fi = K.index_of(f);
      if (fi >= 0 && fi != a && match.count(fi)) adj[a].push_back(fi);
    }
  }
  std::map<int, int> state;  // 0 new, 1 on stack, 2 done
  std::vector<int> path;
  std::function<void(int)> visit = [&](int a) {
    state[a] = 1;
    path.push_back(a);
    for (int c : adj[a]) {
      if (state[c] == 2) continue;
      if (state[c] == 1) {
        auto start = std::find(path.begin(), path.end(), c);
        std::string s;
        for (auto it = start; it != path.end(); ++it)
          s += K.label(*it) + " -> " + K.label(match[*it]) + " -> ";
        throw error("matching has a closed flow path: " + s + K.label(c));
      }
      visit(c);
    }
    path.pop_back();
    state[a] = 2;
  };
  for (const auto& [a, b] : pairs)
    if (state[a] == 0) visit(a);
}

LinearMap boundary_operator(const Field& F, const SimplicialComplex& K) {
  K.validate();
  LinearMap d;
  d.shift = 1;
  Scalar global = F.make(K.dim() % 2 == 0 ? 1 : -1);
  for (int i = 0; i < K.cell_count(); ++i) {
    const auto& s = K.simplices[i];
    if (s.size() < 2) continue;
    for (size_t j = 0; j < s.size(); ++j) {
      std::vector<int> f;
      for (size_t t = 0; t < s.size(); ++t)
        if (t != j) f.push_back(s[t]);
      Scalar c = j % 2 == 0 ? global : F.neg(global);
      d.add_entry(F, i, K.index_of(f), c);
    }
  }
  return d;
}

GradientMatching build_matching(const SimplicialComplex& K) {
  K.validate();
  int n = K.cell_count();
  std::vector<char> alive(n, 1);
  std::vector<std::vector<int>> face_idx(n);
  for (int i = 0; i < n; ++i)
    for (const auto& f : facets_of(K.simplices[i])) face_idx[i].push_back(K.index_of(f));
  GradientMatching M;
  int remaining = n;
  while (remaining > 0) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (int tau = 0; tau < n && !progress; ++tau) {
        if (!alive[tau]) continue;
        int last = -1, count = 0;
        for (int f : face_idx[tau])
          if (alive[f]) {
            last = f;
            ++count;
          }
        if (count == 1) {
          M.pairs.emplace_back(last, tau);
          alive[last] = alive[tau] = 0;
          remaining -= 2;
          progress = true;
        }
      }
    }
    for (int i = 0; i < n; ++i)
      if (alive[i]) {
        M.critical.push_back(i);
        alive[i] = 0;
        --remaining;
        break;
      }
  }
  std::sort(M.critical.begin(), M.critical.end());
  M.validate(K);
  return M;
}

GradientMatching matching_from_pairs(
    const SimplicialComplex& K,
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& pairs) {
  K.validate();
  std::map<std::string, int> vtx;
  for (size_t i = 0; i < K.vertices.size(); ++i) vtx[K.vertices[i]] = static_cast<int>(i);
  auto resolve = [&](const std::vector<std::string>& names) {
    std::vector<int> s;
    for (const auto& name : names) {
      auto it = vtx.find(name);
      if (it == vtx.end()) throw error("unknown vertex " + name);
      s.push_back(it->second);
    }
    std::sort(s.begin(), s.end());
    int i = K.index_of(s);
    if (i < 0) throw error("cell not in the complex");
    return i;
  };
  GradientMatching M;
  std::set<int> used;
  for (const auto& [a, b] : pairs) {
    M.pairs.emplace_back(resolve(a), resolve(b));
    used.insert(M.pairs.back().first);
    used.insert(M.pairs.back().second);
  }
  for (int i = 0; i < K.cell_count(); ++i)
    if (!used.count(i)) M.critical.push_back(i);
  M.validate(K);
  return M;
}

MorsePackage morse_flow_data(const Field& F, const SimplicialComplex& K,
                             const GradientMatching& M) {
  K.validate();
  M.validate(K);
  GradedBasis cells = K.cell_basis();
  LinearMap d = boundary_operator(F, K);
  int n = K.cell_count();

  // V sends a matched face to the coface scaled so that dV fixes it with
  // the wrong sign; 1 + dV + Vd then kills the pair.
  LinearMap V;
  V.shift = -1;
  for (const auto& [a, b] : M.pairs) {
    FieldChain col = d.column(b);
    auto it = col.find(a);
    if (it == col.end()) throw error("matched pair with zero incidence");
    V.add_entry(F, a, b, F.neg(F.inv(it->second)));
  }

  LinearMap id = lm_identity(n);
  LinearMap phi = lm_add(F, id, lm_add(F, lm_compose(F, d, V), lm_compose(F, V, d)));
  LinearMap P = id;
  LinearMap S;
  bool stable = false;
  for (int iter = 0; iter <= n + 1; ++iter) {
    LinearMap next = lm_compose(F, P, phi);
    if (next == P) {
      stable = true;
      break;
    }
    S = lm_add(F, S, P);
    P = next;
  }
  if (!stable) throw error("discrete flow failed to stabilize");
  LinearMap G_raw = lm_compose(F, V, S);

  GradedBasis crit;
  LinearMap iota;
  int top = K.dim();
  for (size_t q = 0; q < M.critical.size(); ++q) {
    int c = M.critical[q];
    crit.add(K.label(c), top - K.cell_dim(c));
    FieldChain col = P.column(c);
    for (const auto& [i, s] : col) iota.add_entry(F, static_cast<int>(q), i, s);
  }
  for (int deg : cells.degrees_present()) {
    int r = mat_rank(F, lm_slice(F, cells, cells, P, deg));
    int want = 0;
    for (int c : M.critical)
      if (top - K.cell_dim(c) == deg) ++want;
    if (r != want)
      throw error("flow projection rank mismatch in degree " + std::to_string(deg));
  }

  MorsePackage pkg;
  pkg.complex = K;
  pkg.cells = cells;
  pkg.boundary = d;
  pkg.matching = M;
  pkg.crit = crit;
  pkg.data = normalize_homotopy(F, cells, crit, d, iota, P, G_raw);
  return pkg;
}

FilteredAInfinity boundary_algebra(const Field& F, const SimplicialComplex& K,
                                   const GapMonoid& monoid, const Rational& energy_cutoff,
                                   int arity_cutoff) {
  FilteredAInfinity A;
  A.field = F;
  A.basis = K.cell_basis();
  A.monoid = monoid;
  A.energy_cutoff = energy_cutoff;
  A.arity_cutoff = arity_cutoff;
  LinearMap d = boundary_operator(F, K);
  GapClass zero{Rational(0), 0};
  for (const auto& [i, col] : d.cols) A.add_entry(1, zero, {i}, col);
  A.validate();
  return A;
}

CanonicalModelResult morse_transfer(const SimplicialComplex& K, const GradientMatching& M,
                                    const FilteredAInfinity& disc_ops) {
  K.validate();
  M.validate(K);
  const Field& F = disc_ops.field;
  if (!(disc_ops.basis == K.cell_basis()))
    throw error("operations do not live on the cell basis of the complex");
  LinearMap d = boundary_operator(F, K);
  Tensor want;
  for (const auto& [i, col] : d.cols) want[{i}] = col;
  const Tensor* have = disc_ops.op(1, GapClass{Rational(0), 0});
  if ((have ? *have : Tensor{}) != want)
    throw error(
        "the arity-1 energy-zero operation must be the scaled simplicial boundary");
  Report rep = verify_ainfty(disc_ops);
  if (!rep.ok())
    throw error("cell operations fail the relation check\n" +
                             rep.render(disc_ops.basis, F));
  MorsePackage pkg = morse_flow_data(F, K, M);
  return transfer(disc_ops, pkg.data);
}

namespace {

// Replays one tree bottom-up on Novikov chains, appending a line per
// stage.  Leaves are consumed left to right, matching the key order the
// ledger uses.
struct TraceReplay {
  const Field& F;
  const FilteredAInfinity& A;
  const TransferData& T;
  const DecoratedTree& t;
  const std::vector<int>& inputs;
  std::ostringstream& os;
  int cursor = 0;

  Chain leaf_chain(int q) {
    Chain ch;
    for (const auto& [i, s] : T.iota.column(q))
      chain_add_term(ch, i, NovElement::scalar(F, A.energy_cutoff, s));
    return ch;
  }

  Chain apply_class(int l, const GapClass& beta, const std::vector<Chain>& args) {
    Chain out;
    const Tensor* op = A.op(l, beta);
    if (!op) return out;
    Key key(l);
    std::function<void(size_t, const NovElement&)> rec = [&](size_t j, const NovElement& acc) {
      if (j == args.size()) {
        auto it = op->find(key);
        if (it == op->end()) return;
        NovElement w = acc.shifted(beta.lambda, beta.mu / 2);
        for (const auto& [ob, s] : it->second) chain_add_term(out, ob, w.scaled(s));
        return;
      }
      for (const auto& [b, u] : args[j]) {
        key[j] = b;
        rec(j + 1, acc * u);
      }
    };
    rec(0, NovElement::scalar(F, A.energy_cutoff, F.make(1)));
    return out;
  }

  Chain vertex(int v) {
    const TreeVertex& tv = t.vertices[v];
    std::vector<Chain> args;
    for (int c : tv.children) {
      if (c < 0) {
        int q = inputs[cursor++];
        Chain ch = leaf_chain(q);
        os << "  leaf " << T.sub.name(q) << " -> included as " << chain_to_string(T.amb, ch)
           << "\n";
        args.push_back(ch);
      } else {
        Chain sub = vertex(c);
        Chain h = T.hmt.apply(sub);
        os << "  edge " << c << " -> " << v << ": homotopy -> " << chain_to_string(T.amb, h)
           << "\n";
        args.push_back(h);
      }
    }
    Rational level = A.monoid.levels().at(tv.eta);
    Chain out;
    for (const auto& beta : A.monoid.at_level(level)) {
      Chain part = apply_class(static_cast<int>(tv.children.size()), beta, args);
      os << "  vertex " << v << ": class " << to_string(beta) << " operation -> "
         << chain_to_string(T.amb, part) << "\n";
      chain_add(out, part);
    }
    return out;
  }
};

}  // namespace

std::string trace_configuration(const CanonicalModelResult& R, const FilteredAInfinity& A,
                                const TransferData& T, const std::string& tree_id,
                                const std::vector<int>& inputs) {
  const TreeContribution* entry = nullptr;
  for (const auto& tc : R.ledger)
    if (tc.id == tree_id) entry = &tc;
  if (!entry) throw error("no ledger entry for tree " + tree_id);
  if (static_cast<int>(inputs.size()) != entry->k)
    throw error("tree " + tree_id + " takes " + std::to_string(entry->k) +
                             " inputs");
  for (int q : inputs)
    if (q < 0 || q >= T.sub.size()) throw error("input index out of range");

  std::ostringstream os;
  os << "configuration " << tree_id << ": " << entry->k << " leaves, energy "
     << rat_str(entry->energy) << "\n";

  if (tree_id == "e") {
    int q = inputs[0];
    Chain in;
    for (const auto& [i, s] : T.iota.column(q))
      chain_add_term(in, i, NovElement::scalar(A.field, A.energy_cutoff, s));
    os << "  leaf " << T.sub.name(q) << " -> included as " << chain_to_string(T.amb, in) << "\n";
    Chain dv = T.d.apply(in);
    os << "  differential -> " << chain_to_string(T.amb, dv) << "\n";
    os << "  output " << chain_to_string(T.sub, T.coords.apply(dv)) << "\n";
    os << "  homomorphism part keeps the inclusion: " << chain_to_string(T.amb, in) << "\n";
    os << "  weight T^0\n";
    return os.str();
  }

  std::vector<DecoratedTree> trees =
      enumerate_trees(entry->k, A.monoid, A.energy_cutoff, A.arity_cutoff);
  const DecoratedTree* shape = nullptr;
  for (const auto& cand : trees)
    if (cand.id() == tree_id) shape = &cand;
  if (!shape) throw error("ledger id does not match an enumerated tree");

  TraceReplay replay{A.field, A, T, *shape, inputs, os};
  Chain pre = replay.vertex(0);
  os << "  root projection -> " << chain_to_string(T.amb, T.proj.apply(pre)) << "\n";
  os << "  output " << chain_to_string(T.sub, T.coords.apply(pre)) << "\n";
  os << "  homomorphism part: homotopy -> " << chain_to_string(T.amb, T.hmt.apply(pre)) << "\n";

  bool single = true;
  Rational mu_half(0);
  for (const auto& tv : shape->vertices) {
    auto classes = A.monoid.at_level(A.monoid.levels().at(tv.eta));
    if (classes.size() != 1) single = false;
    else mu_half += Rational(classes[0].mu, 2);
  }
  os << "  weight T^" << rat_str(shape->energy);
  if (single && mu_half != 0) os << " e^" << rat_str(mu_half);
  if (!single) os << " (e power varies with the class chosen at each vertex)";
  os << "\n";
  return os.str();
}

}  // namespace ainf
