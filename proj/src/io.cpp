#include "ainf/io.hpp"

#include <fstream>

namespace ainf {

namespace {

void expect_format(const Json& j, const std::string& name) {
  if (!j.is_object() || !j.contains("format") || !j.contains("version"))
    throw error("not an artifact file: missing format/version header");
  if (j.at("format") != name)
    throw error("expected a " + name + " file, found " + j.at("format").dump());
  if (j.at("version") != 1) throw error("unsupported " + name + " version");
}

Json header(const std::string& name) {
  Json j;
  j["format"] = name;
  j["version"] = 1;
  return j;
}

Json scalar_save(const Field& F, const Scalar& s) { return F.to_string(s); }

Scalar scalar_load(const Field& F, const Json& j) {
  if (j.is_string()) return F.parse(j.get<std::string>());
  if (j.is_number_integer()) return F.make(j.get<long long>());
  throw error("expected an exact scalar, found " + j.dump());
}

Json field_chain_save(const Field& F, const GradedBasis& basis, const FieldChain& c) {
  Json out = Json::array();
  for (const auto& [i, s] : c) {
    Json t;
    t["gen"] = basis.name(i);
    t["coeff"] = scalar_save(F, s);
    out.push_back(t);
  }
  return out;
}

FieldChain field_chain_load(const Field& F, const GradedBasis& basis, const Json& j) {
  FieldChain c;
  for (const auto& t : j) {
    Scalar s = scalar_load(F, t.at("coeff"));
    if (Field::is_zero(s)) continue;
    c[basis.index(t.at("gen").get<std::string>())] = s;
  }
  return c;
}

Json word_save(const GradedBasis& basis, const Key& w) {
  Json out = Json::array();
  for (int i : w) out.push_back(basis.name(i));
  return out;
}

Key word_load(const GradedBasis& basis, const Json& j) {
  Key w;
  for (const auto& n : j) w.push_back(basis.index(n.get<std::string>()));
  return w;
}

Json monoid_save(const GapMonoid& m) {
  Json out = Json::array();
  for (const auto& b : m.classes())
    if (!b.is_zero()) out.push_back(class_save(b));
  return out;
}

GapMonoid monoid_load(const Json& j, const Rational& cutoff) {
  std::vector<GapClass> classes;
  for (const auto& c : j) classes.push_back(class_load(c));
  return GapMonoid(classes, cutoff);
}

Json tensor_map_save(const Field& F, const GradedBasis& in, const GradedBasis& out,
                     const std::map<OpKey, Tensor>& ops) {
  Json arr = Json::array();
  for (const auto& [key, tensor] : ops) {
    Json op;
    op["arity"] = key.k;
    op["class"] = class_save(key.beta);
    Json entries = Json::array();
    for (const auto& [word, chain] : tensor) {
      Json e;
      e["word"] = word_save(in, word);
      e["out"] = field_chain_save(F, out, chain);
      entries.push_back(e);
    }
    op["entries"] = entries;
    arr.push_back(op);
  }
  return arr;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw error(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw error("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw error("short write to " + path);
}

Json rational_save(const Rational& r) { return to_string(r); }

Rational rational_load(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw error("expected an exact rational, found " + j.dump());
}

Json basis_save(const GradedBasis& b) {
  Json out = Json::array();
  for (int i = 0; i < b.size(); ++i) {
    Json g;
    g["name"] = b.name(i);
    g["degree"] = b.degree(i);
    out.push_back(g);
  }
  return out;
}

GradedBasis basis_load(const Json& j) {
  GradedBasis b;
  for (const auto& g : j) b.add(g.at("name").get<std::string>(), g.at("degree").get<int>());
  return b;
}

Json class_save(const GapClass& b) {
  Json j;
  j["lambda"] = rational_save(b.lambda);
  j["mu"] = b.mu;
  return j;
}

GapClass class_load(const Json& j) {
  return GapClass{rational_load(j.at("lambda")), j.at("mu").get<int>()};
}

Json algebra_save(const FilteredAInfinity& A) {
  Json j = header("ainf/algebra");
  j["field"] = A.field.name();
  j["energy_cutoff"] = rational_save(A.energy_cutoff);
  j["arity_cutoff"] = A.arity_cutoff;
  j["total"] = A.total;
  j["monoid"] = monoid_save(A.monoid);
  j["basis"] = basis_save(A.basis);
  j["ops"] = tensor_map_save(A.field, A.basis, A.basis, A.ops);
  return j;
}

FilteredAInfinity algebra_load(const Json& j) {
  expect_format(j, "ainf/algebra");
  FilteredAInfinity A;
  A.field = Field::from_name(j.at("field").get<std::string>());
  A.energy_cutoff = rational_load(j.at("energy_cutoff"));
  A.arity_cutoff = j.at("arity_cutoff").get<int>();
  A.total = j.at("total").get<bool>();
  A.monoid = monoid_load(j.at("monoid"), A.energy_cutoff);
  A.basis = basis_load(j.at("basis"));
  for (const auto& op : j.at("ops")) {
    int k = op.at("arity").get<int>();
    GapClass beta = class_load(op.at("class"));
    // an explicitly listed operation with no entries declares a zero
    // tensor, which partial structures need
    A.ops[OpKey{k, beta}];
    for (const auto& e : op.at("entries"))
      A.add_entry(k, beta, word_load(A.basis, e.at("word")),
                  field_chain_load(A.field, A.basis, e.at("out")));
  }
  A.validate();
  return A;
}

Json chain_save(const Field& F, const GradedBasis& basis, const Chain& c,
                const Rational& energy_cutoff, const Rational& floor) {
  Json j = header("ainf/chain");
  j["field"] = F.name();
  j["energy_cutoff"] = rational_save(energy_cutoff);
  j["floor"] = rational_save(floor);
  Json terms = Json::array();
  for (const auto& [i, u] : c) {
    Json t;
    t["gen"] = basis.name(i);
    Json coeffs = Json::array();
    for (const auto& [mono, s] : u.terms()) {
      Json m;
      m["lambda"] = rational_save(mono.lambda);
      m["e"] = mono.e;
      m["coeff"] = scalar_save(F, s);
      coeffs.push_back(m);
    }
    t["coeffs"] = coeffs;
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j;
}

Chain chain_load(const Field& F, const GradedBasis& basis, const Json& j) {
  expect_format(j, "ainf/chain");
  Field file_field = Field::from_name(j.at("field").get<std::string>());
  if (file_field != F) throw error("chain field " + file_field.name() + " does not match " + F.name());
  Rational cutoff = rational_load(j.at("energy_cutoff"));
  Rational floor = rational_load(j.at("floor"));
  Chain c;
  for (const auto& t : j.at("terms")) {
    NovElement u(F, cutoff, floor);
    for (const auto& m : t.at("coeffs"))
      u.add_term(NovMonomial{rational_load(m.at("lambda")), m.at("e").get<int>()},
                 scalar_load(F, m.at("coeff")));
    if (!u.is_zero()) c[basis.index(t.at("gen").get<std::string>())] = u;
  }
  return c;
}

Json hom_save(const HomFamily& f) {
  Json j = header("ainf/hom");
  j["field"] = f.field.name();
  j["energy_cutoff"] = rational_save(f.energy_cutoff);
  j["arity_cutoff"] = f.arity_cutoff;
  j["floor"] = rational_save(f.floor);
  j["dom"] = basis_save(f.dom);
  j["cod"] = basis_save(f.cod);
  Json arr = Json::array();
  for (const auto& [key, tensor] : f.comps) {
    Json op;
    op["arity"] = key.k;
    op["class"] = class_save(key.beta);
    Json entries = Json::array();
    for (const auto& [word, chain] : tensor) {
      Json e;
      e["word"] = word_save(f.dom, word);
      e["out"] = field_chain_save(f.field, f.cod, chain);
      entries.push_back(e);
    }
    op["entries"] = entries;
    arr.push_back(op);
  }
  j["comps"] = arr;
  return j;
}

HomFamily hom_load(const Json& j) {
  expect_format(j, "ainf/hom");
  HomFamily f;
  f.field = Field::from_name(j.at("field").get<std::string>());
  f.energy_cutoff = rational_load(j.at("energy_cutoff"));
  f.arity_cutoff = j.at("arity_cutoff").get<int>();
  f.floor = rational_load(j.at("floor"));
  f.dom = basis_load(j.at("dom"));
  f.cod = basis_load(j.at("cod"));
  for (const auto& op : j.at("comps")) {
    int k = op.at("arity").get<int>();
    GapClass beta = class_load(op.at("class"));
    f.comps[OpKey{k, beta}];
    for (const auto& e : op.at("entries"))
      f.add_entry(k, beta, word_load(f.dom, e.at("word")),
                  field_chain_load(f.field, f.cod, e.at("out")));
  }
  f.validate();
  return f;
}

Json linmap_save(const Field& F, const GradedBasis& dom, const GradedBasis& cod,
                 const LinearMap& m) {
  Json j = header("ainf/linmap");
  j["field"] = F.name();
  j["shift"] = m.shift;
  Json cols = Json::array();
  for (const auto& [i, chain] : m.cols) {
    Json c;
    c["gen"] = dom.name(i);
    c["chain"] = field_chain_save(F, cod, chain);
    cols.push_back(c);
  }
  j["cols"] = cols;
  return j;
}

LinearMap linmap_load(const Field& F, const GradedBasis& dom, const GradedBasis& cod,
                      const Json& j) {
  expect_format(j, "ainf/linmap");
  LinearMap m;
  m.shift = j.at("shift").get<int>();
  for (const auto& c : j.at("cols")) {
    int from = dom.index(c.at("gen").get<std::string>());
    for (const auto& [to, s] : field_chain_load(F, cod, c.at("chain")))
      m.add_entry(F, from, to, s);
  }
  lm_check_graded(dom, cod, m, "map column");
  return m;
}

Json subspace_save(const Field& F, const GradedBasis& sub, const GradedBasis& amb,
                   const LinearMap& iota) {
  Json j = header("ainf/subspace");
  j["field"] = F.name();
  j["basis"] = basis_save(sub);
  Json inc = Json::array();
  for (const auto& [q, chain] : iota.cols) {
    Json c;
    c["gen"] = sub.name(q);
    c["chain"] = field_chain_save(F, amb, chain);
    inc.push_back(c);
  }
  j["include"] = inc;
  return j;
}

std::pair<GradedBasis, LinearMap> subspace_load(const Field& F, const GradedBasis& amb,
                                                const Json& j) {
  expect_format(j, "ainf/subspace");
  GradedBasis sub = basis_load(j.at("basis"));
  LinearMap iota;
  for (const auto& c : j.at("include")) {
    int q = sub.index(c.at("gen").get<std::string>());
    for (const auto& [to, s] : field_chain_load(F, amb, c.at("chain")))
      iota.add_entry(F, q, to, s);
  }
  lm_check_graded(sub, amb, iota, "inclusion column");
  return {sub, iota};
}

Json simplicial_save(const SimplicialComplex& K) {
  Json j = header("ainf/complex");
  j["vertices"] = K.vertices;
  Json cells = Json::array();
  for (const auto& s : K.simplices) {
    Json c = Json::array();
    for (int v : s) c.push_back(K.vertices.at(v));
    cells.push_back(c);
  }
  j["simplices"] = cells;
  return j;
}

SimplicialComplex simplicial_load(const Json& j) {
  expect_format(j, "ainf/complex");
  std::vector<std::vector<std::string>> cells;
  for (const auto& c : j.at("simplices"))
    cells.push_back(c.get<std::vector<std::string>>());
  return SimplicialComplex::from_cells(j.at("vertices").get<std::vector<std::string>>(), cells);
}

Json matching_save(const SimplicialComplex& K, const GradientMatching& M) {
  Json j = header("ainf/matching");
  Json pairs = Json::array();
  auto names = [&](int cell) {
    Json out = Json::array();
    for (int v : K.simplices.at(cell)) out.push_back(K.vertices.at(v));
    return out;
  };
  for (const auto& [a, b] : M.pairs) pairs.push_back(Json::array({names(a), names(b)}));
  j["pairs"] = pairs;
  return j;
}

GradientMatching matching_load(const SimplicialComplex& K, const Json& j) {
  expect_format(j, "ainf/matching");
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs;
  for (const auto& p : j.at("pairs")) {
    if (!p.is_array() || p.size() != 2) throw error("matching entry is not a [face, coface] pair");
    pairs.push_back({p.at(0).get<std::vector<std::string>>(),
                     p.at(1).get<std::vector<std::string>>()});
  }
  return matching_from_pairs(K, pairs);
}

Json bimodule_save(const FilteredBimodule& D) {
  Json j = header("ainf/bimodule");
  j["field"] = D.field.name();
  j["energy_cutoff"] = rational_save(D.energy_cutoff);
  j["arity_cutoff"] = D.arity_cutoff;
  j["monoid"] = monoid_save(D.monoid);
  j["basis"] = basis_save(D.basis);
  j["left"] = algebra_save(D.left);
  j["right"] = algebra_save(D.right);
  Json arr = Json::array();
  for (const auto& [key, tensor] : D.ops) {
    Json op;
    op["k1"] = key.k1;
    op["k0"] = key.k0;
    op["class"] = class_save(key.beta);
    Json entries = Json::array();
    for (const auto& [bk, chain] : tensor) {
      Json e;
      e["xs"] = word_save(D.left.basis, bk.xs);
      e["y"] = D.basis.name(bk.y);
      e["zs"] = word_save(D.right.basis, bk.zs);
      e["out"] = field_chain_save(D.field, D.basis, chain);
      entries.push_back(e);
    }
    op["entries"] = entries;
    arr.push_back(op);
  }
  j["ops"] = arr;
  return j;
}

FilteredBimodule bimodule_load(const Json& j) {
  expect_format(j, "ainf/bimodule");
  FilteredBimodule D;
  D.field = Field::from_name(j.at("field").get<std::string>());
  D.energy_cutoff = rational_load(j.at("energy_cutoff"));
  D.arity_cutoff = j.at("arity_cutoff").get<int>();
  D.monoid = monoid_load(j.at("monoid"), D.energy_cutoff);
  D.basis = basis_load(j.at("basis"));
  D.left = algebra_load(j.at("left"));
  D.right = algebra_load(j.at("right"));
  for (const auto& op : j.at("ops")) {
    int k1 = op.at("k1").get<int>();
    int k0 = op.at("k0").get<int>();
    GapClass beta = class_load(op.at("class"));
    D.ops[BimoduleOpKey{k1, k0, beta}];
    for (const auto& e : op.at("entries")) {
      BimKey bk{word_load(D.left.basis, e.at("xs")), D.basis.index(e.at("y").get<std::string>()),
                word_load(D.right.basis, e.at("zs"))};
      D.add_entry(k1, k0, beta, bk, field_chain_load(D.field, D.basis, e.at("out")));
    }
  }
  D.validate();
  return D;
}

Json ledger_save(const Field& F, const GradedBasis& sub, const GradedBasis& amb,
                 const std::vector<TreeContribution>& ledger) {
  Json j = header("ainf/ledger");
  j["field"] = F.name();
  Json trees = Json::array();
  auto part_save = [&](const std::map<GapClass, Tensor>& part, const GradedBasis& out) {
    Json arr = Json::array();
    for (const auto& [cls, tensor] : part) {
      Json p;
      p["class"] = class_save(cls);
      Json entries = Json::array();
      for (const auto& [word, chain] : tensor) {
        Json e;
        e["word"] = word_save(sub, word);
        e["out"] = field_chain_save(F, out, chain);
        entries.push_back(e);
      }
      p["entries"] = entries;
      arr.push_back(p);
    }
    return arr;
  };
  for (const auto& tc : ledger) {
    Json t;
    t["k"] = tc.k;
    t["id"] = tc.id;
    t["energy"] = rational_save(tc.energy);
    t["m"] = part_save(tc.m_part, sub);
    t["f"] = part_save(tc.f_part, amb);
    trees.push_back(t);
  }
  j["trees"] = trees;
  return j;
}

std::vector<TreeContribution> ledger_load(const Field& F, const GradedBasis& sub,
                                          const GradedBasis& amb, const Json& j) {
  expect_format(j, "ainf/ledger");
  std::vector<TreeContribution> out;
  auto part_load = [&](const Json& arr, const GradedBasis& cod) {
    std::map<GapClass, Tensor> part;
    for (const auto& p : arr) {
      Tensor& tensor = part[class_load(p.at("class"))];
      for (const auto& e : p.at("entries"))
        tensor[word_load(sub, e.at("word"))] = field_chain_load(F, cod, e.at("out"));
    }
    return part;
  };
  for (const auto& t : j.at("trees")) {
    TreeContribution tc{t.at("k").get<int>(), t.at("id").get<std::string>(),
                        rational_load(t.at("energy")), part_load(t.at("m"), sub),
                        part_load(t.at("f"), amb)};
    out.push_back(std::move(tc));
  }
  return out;
}

}  // namespace ainf
