#include "ainf/linalg.hpp"

#include <algorithm>
#include <set>

namespace ainf {

int rref(const Field& F, Matrix& m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && Field::is_zero(m[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    Scalar inv = F.inv(m[r][c]);
    for (size_t j = c; j < cols; ++j) m[r][j] = F.mul(m[r][j], inv);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || Field::is_zero(m[i][c])) continue;
      Scalar f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[r][j]));
    }
    ++r;
  }
  return static_cast<int>(r);
}

int mat_rank(const Field& F, Matrix m) { return rref(F, m); }

std::optional<std::vector<Scalar>> mat_solve(const Field& F, Matrix a, std::vector<Scalar> b) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  for (size_t i = 0; i < rows; ++i) a[i].push_back(b.at(i));
  rref(F, a);
  std::vector<Scalar> x(cols, F.zero());
  for (size_t i = 0; i < rows; ++i) {
    size_t lead = 0;
    while (lead <= cols && Field::is_zero(a[i][lead])) ++lead;
    if (lead > cols) continue;              // zero row
    if (lead == cols) return std::nullopt;  // 0 = nonzero
    x[lead] = a[i][cols];
  }
  return x;
}

std::vector<std::vector<Scalar>> mat_kernel(const Field& F, Matrix a, int n) {
  size_t cols = static_cast<size_t>(n);
  for (auto& row : a)
    if (row.size() != cols) throw error("kernel: ragged matrix");
  rref(F, a);
  std::vector<int> lead_of_col(cols, -1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < cols; ++j)
      if (!Field::is_zero(a[i][j])) {
        lead_of_col[j] = static_cast<int>(i);
        break;
      }
  std::vector<std::vector<Scalar>> basis;
  for (size_t j = 0; j < cols; ++j) {
    if (lead_of_col[j] != -1) continue;  // pivot column
    std::vector<Scalar> v(cols, F.zero());
    v[j] = F.one();
    for (size_t jj = 0; jj < cols; ++jj) {
      if (lead_of_col[jj] == -1) continue;
      v[jj] = F.neg(a[static_cast<size_t>(lead_of_col[jj])][j]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

FieldChain LinearMap::apply(const Field& F, const FieldChain& v) const {
  FieldChain r;
  for (const auto& [i, c] : v) {
    auto it = cols.find(i);
    if (it == cols.end()) continue;
    fc_add(F, r, it->second, c);
  }
  return r;
}

Chain LinearMap::apply(const Chain& v) const {
  Chain r;
  for (const auto& [i, c] : v) {
    auto it = cols.find(i);
    if (it == cols.end()) continue;
    for (const auto& [j, s] : it->second) chain_add_term(r, j, c.scaled(s));
  }
  return r;
}

FieldChain LinearMap::column(int i) const {
  auto it = cols.find(i);
  return it == cols.end() ? FieldChain{} : it->second;
}

void LinearMap::add_entry(const Field& F, int from, int to, const Scalar& c) {
  if (Field::is_zero(c)) return;
  FieldChain one{{to, c}};
  fc_add(F, cols[from], one, F.one());
  if (cols[from].empty()) cols.erase(from);
}

bool LinearMap::is_zero() const {
  for (const auto& [i, c] : cols)
    if (!c.empty()) return false;
  return true;
}

bool LinearMap::operator==(const LinearMap& o) const {
  if (shift != o.shift) return false;
  auto nonempty = [](const std::map<int, FieldChain>& m) {
    std::map<int, FieldChain> r;
    for (const auto& [i, c] : m)
      if (!c.empty()) r.emplace(i, c);
    return r;
  };
  return nonempty(cols) == nonempty(o.cols);
}

LinearMap lm_identity(int n) {
  LinearMap m;
  for (int i = 0; i < n; ++i) m.cols[i] = FieldChain{{i, Scalar(1)}};
  return m;
}

LinearMap lm_compose(const Field& F, const LinearMap& a, const LinearMap& b) {
  LinearMap r;
  r.shift = a.shift + b.shift;
  for (const auto& [i, c] : b.cols) {
    FieldChain img = a.apply(F, c);
    if (!img.empty()) r.cols.emplace(i, std::move(img));
  }
  return r;
}

LinearMap lm_add(const Field& F, const LinearMap& a, const LinearMap& b) {
  if (a.shift != b.shift && !a.is_zero() && !b.is_zero())
    throw error("adding linear maps of different shifts");
  LinearMap r;
  r.shift = a.is_zero() ? b.shift : a.shift;
  r.cols = a.cols;
  for (const auto& [i, c] : b.cols) {
    fc_add(F, r.cols[i], c, F.one());
    if (r.cols[i].empty()) r.cols.erase(i);
  }
  return r;
}

LinearMap lm_sub(const Field& F, const LinearMap& a, const LinearMap& b) {
  return lm_add(F, a, lm_scaled(F, b, F.make(-1)));
}

LinearMap lm_scaled(const Field& F, const LinearMap& a, const Scalar& c) {
  LinearMap r;
  r.shift = a.shift;
  if (Field::is_zero(c)) return r;
  for (const auto& [i, col] : a.cols) {
    FieldChain s = fc_scaled(F, col, c);
    if (!s.empty()) r.cols.emplace(i, std::move(s));
  }
  return r;
}

void lm_check_graded(const GradedBasis& dom, const GradedBasis& cod, const LinearMap& m,
                     const std::string& what) {
  for (const auto& [i, c] : m.cols) {
    if (i < 0 || i >= dom.size()) throw error(what + ": column index out of range");
    for (const auto& [j, v] : c) {
      (void)v;
      if (j < 0 || j >= cod.size()) throw error(what + ": row index out of range");
      if (cod.degree(j) != dom.degree(i) + m.shift)
        throw error(what + ": entry " + dom.name(i) + " -> " + cod.name(j) +
                    " breaks the degree shift " + std::to_string(m.shift));
    }
  }
}

Matrix lm_slice(const Field& F, const GradedBasis& dom, const GradedBasis& cod,
                const LinearMap& m, int deg, std::vector<int>* row_index,
                std::vector<int>* col_index) {
  std::vector<int> rows, cols;
  for (int j = 0; j < cod.size(); ++j)
    if (cod.degree(j) == deg + m.shift) rows.push_back(j);
  for (int i = 0; i < dom.size(); ++i)
    if (dom.degree(i) == deg) cols.push_back(i);
  Matrix r(rows.size(), std::vector<Scalar>(cols.size(), F.zero()));
  for (size_t ci = 0; ci < cols.size(); ++ci) {
    auto it = m.cols.find(cols[ci]);
    if (it == m.cols.end()) continue;
    for (const auto& [j, v] : it->second) {
      auto rit = std::find(rows.begin(), rows.end(), j);
      if (rit == rows.end()) continue;  // off-degree entries are a grading bug
      r[static_cast<size_t>(rit - rows.begin())][ci] = v;
    }
  }
  if (row_index) *row_index = rows;
  if (col_index) *col_index = cols;
  return r;
}

std::map<int, int> cohomology_ranks(const Field& F, const GradedBasis& basis,
                                    const LinearMap& d) {
  std::map<int, int> dim_by_deg, rank_out, rank_in;
  for (int i = 0; i < basis.size(); ++i) dim_by_deg[basis.degree(i)]++;
  for (const auto& [deg, dim] : dim_by_deg) {
    (void)dim;
    rank_out[deg] = mat_rank(F, lm_slice(F, basis, basis, d, deg));
    rank_in[deg + 1] = rank_out[deg];
  }
  std::map<int, int> h;
  for (const auto& [deg, dim] : dim_by_deg) {
    int z = dim - rank_out[deg];
    int b = rank_in.count(deg) ? rank_in[deg] : 0;
    h[deg] = z - b;
  }
  return h;
}

bool induces_cohomology_iso(const Field& F, const GradedBasis& a, const LinearMap& da,
                            const GradedBasis& b, const LinearMap& db, const LinearMap& f,
                            int* bad_degree) {
  std::set<int> degs;
  for (int i = 0; i < a.size(); ++i) degs.insert(a.degree(i));
  for (int i = 0; i < b.size(); ++i) degs.insert(b.degree(i));
  auto ha = cohomology_ranks(F, a, da);
  auto hb = cohomology_ranks(F, b, db);
  for (int deg : degs) {
    int dim_ha = ha.count(deg) ? ha[deg] : 0;
    int dim_hb = hb.count(deg) ? hb[deg] : 0;
    if (dim_ha != dim_hb) {
      if (bad_degree) *bad_degree = deg;
      return false;
    }
    if (dim_ha == 0) continue;
    // Injectivity of the induced map: a cocycle of A maps into the
    // boundaries of B only if it is itself a boundary.
    std::vector<int> cols_a;
    Matrix da_k = lm_slice(F, a, a, da, deg, nullptr, &cols_a);
    auto zbase = mat_kernel(F, da_k, static_cast<int>(cols_a.size()));
    // Boundaries of B in this degree, as dense columns.
    std::vector<int> rows_b;
    for (int j = 0; j < b.size(); ++j)
      if (b.degree(j) == deg) rows_b.push_back(j);
    auto dense_b = [&](const FieldChain& c) {
      std::vector<Scalar> v(rows_b.size(), F.zero());
      for (const auto& [j, s] : c) {
        auto it = std::find(rows_b.begin(), rows_b.end(), j);
        if (it == rows_b.end()) throw error("induces_cohomology_iso: inhomogeneous image");
        v[static_cast<size_t>(it - rows_b.begin())] = s;
      }
      return v;
    };
    std::vector<std::vector<Scalar>> bnd_cols;
    for (int i = 0; i < b.size(); ++i)
      if (b.degree(i) == deg - 1) {
        FieldChain img = db.apply(F, FieldChain{{i, F.one()}});
        if (!img.empty()) bnd_cols.push_back(dense_b(img));
      }
    // Matrix with boundary columns first, then images of Z-basis cocycles.
    size_t nb = bnd_cols.size(), nz = zbase.size();
    Matrix stacked(rows_b.size(), std::vector<Scalar>(nb + nz, F.zero()));
    for (size_t c = 0; c < nb; ++c)
      for (size_t r = 0; r < rows_b.size(); ++r) stacked[r][c] = bnd_cols[c][r];
    for (size_t c = 0; c < nz; ++c) {
      FieldChain zc;
      for (size_t t = 0; t < zbase[c].size(); ++t)
        if (!Field::is_zero(zbase[c][t])) zc[cols_a[t]] = zbase[c][t];
      std::vector<Scalar> img = dense_b(f.apply(F, zc));
      for (size_t r = 0; r < rows_b.size(); ++r) stacked[r][nb + c] = img[r];
    }
    Matrix bonly(rows_b.size(), std::vector<Scalar>(nb, F.zero()));
    for (size_t c = 0; c < nb; ++c)
      for (size_t r = 0; r < rows_b.size(); ++r) bonly[r][c] = bnd_cols[c][r];
    int rank_b = mat_rank(F, bonly);
    int rank_bf = mat_rank(F, stacked);
    int dim_za = static_cast<int>(nz);
    int dim_ba = dim_za - dim_ha;  // dim of boundaries inside Z
    int ker_induced = dim_za - (rank_bf - rank_b) - dim_ba;
    if (ker_induced != 0) {
      if (bad_degree) *bad_degree = deg;
      return false;
    }
  }
  return true;
}


std::string CheckReport::render() const {
  if (failures.empty()) return "all checks passed\n";
  std::string out;
  for (const std::string& f : failures) out += f + "\n";
  return out;
}

}  // namespace ainf
