#pragma once

// Hand-built fixtures shared across the suites.  Expected values frozen
// in the tests were derived independently before being pinned here.

#include "ainf/morse.hpp"
#include "ainf/transfer.hpp"

namespace fix {

using namespace ainf;

// Exterior algebra on x, y, z of degree 1 with dz = xy.  Cohomology
// drops z and xy and acquires a Massey product, which is what makes the
// transferred triple operation nonzero.
inline DgaInput heisenberg(const Field& F, const Rational& energy_cutoff = Rational(1),
                           int arity_cutoff = 3) {
  DgaInput in;
  in.field = F;
  in.energy_cutoff = energy_cutoff;
  in.arity_cutoff = arity_cutoff;
  int u = in.basis.add("1", 0);
  int x = in.basis.add("x", 1);
  int y = in.basis.add("y", 1);
  int z = in.basis.add("z", 1);
  int xy = in.basis.add("xy", 2);
  int xz = in.basis.add("xz", 2);
  int yz = in.basis.add("yz", 2);
  int xyz = in.basis.add("xyz", 3);
  in.d.shift = 1;
  in.d.add_entry(F, z, xy, F.one());
  auto put = [&](int a, int b, int out, int sign) {
    in.product[{a, b}] = {{out, F.make(sign)}};
  };
  for (int i = 0; i < in.basis.size(); ++i) {
    put(u, i, i, 1);
    if (i != u) put(i, u, i, 1);
  }
  put(x, y, xy, 1), put(y, x, xy, -1);
  put(x, z, xz, 1), put(z, x, xz, -1);
  put(y, z, yz, 1), put(z, y, yz, -1);
  put(x, yz, xyz, 1), put(yz, x, xyz, 1);
  put(y, xz, xyz, -1), put(xz, y, xyz, -1);
  put(z, xy, xyz, 1), put(xy, z, xyz, 1);
  return in;
}

// The standard contraction of the algebra above onto its cohomology:
// the projection kills z and xy, the homotopy moves xy back to z.  The
// homotopy sign tracks the sign-twisted differential m_1(z) = -xy, not
// the geometric one.
inline TransferData heisenberg_contraction(const Field& F, const GradedBasis& amb,
                                           const LinearMap& d) {
  GradedBasis sub;
  sub.add("h1", 0);
  sub.add("hx", 1);
  sub.add("hy", 1);
  sub.add("hxz", 2);
  sub.add("hyz", 2);
  sub.add("hxyz", 3);
  LinearMap iota, proj, hmt;
  hmt.shift = -1;
  const int kept[6] = {0, 1, 2, 5, 6, 7};  // 1 x y xz yz xyz
  for (int q = 0; q < 6; ++q) iota.add_entry(F, q, kept[q], F.one());
  for (int q = 0; q < 6; ++q) proj.add_entry(F, kept[q], kept[q], F.one());
  hmt.add_entry(F, 4, 3, F.one());  // xy -> z
  return make_transfer_data(F, amb, sub, d, iota, proj, hmt);
}

// Five-dimensional variant small enough for exhaustive checks: unit e,
// letters x, y, z with dz = w and xy = w = -yx.
inline DgaInput mini_heisenberg(const Field& F, const Rational& energy_cutoff = Rational(1),
                                int arity_cutoff = 3) {
  DgaInput in;
  in.field = F;
  in.energy_cutoff = energy_cutoff;
  in.arity_cutoff = arity_cutoff;
  int e = in.basis.add("e", 0);
  int x = in.basis.add("x", 1);
  int y = in.basis.add("y", 1);
  int z = in.basis.add("z", 1);
  int w = in.basis.add("w", 2);
  in.d.shift = 1;
  in.d.add_entry(F, z, w, F.one());
  for (int i = 0; i < in.basis.size(); ++i) {
    in.product[{e, i}] = {{i, F.one()}};
    if (i != e) in.product[{i, e}] = {{i, F.one()}};
  }
  in.product[{x, y}] = {{w, F.one()}};
  in.product[{y, x}] = {{w, F.neg(F.one())}};
  return in;
}

// du = v with u idempotent: the smallest dga whose product fails to be
// graded-commutative, so twisted insertions are visible.
inline DgaInput dual_numbers(const Field& F, const Rational& energy_cutoff = Rational(1),
                             int arity_cutoff = 3) {
  DgaInput in;
  in.field = F;
  in.energy_cutoff = energy_cutoff;
  in.arity_cutoff = arity_cutoff;
  int u = in.basis.add("u", 0);
  int v = in.basis.add("v", 1);
  in.d.shift = 1;
  in.d.add_entry(F, u, v, F.one());
  in.product[{u, u}] = {{u, F.one()}};
  in.product[{u, v}] = {{v, F.one()}};
  return in;
}

inline SimplicialComplex hexagon() {
  return SimplicialComplex::from_cells({"v0", "v1", "v2", "v3", "v4", "v5"},
                                       {{"v0", "v1"},
                                        {"v1", "v2"},
                                        {"v2", "v3"},
                                        {"v3", "v4"},
                                        {"v4", "v5"},
                                        {"v0", "v5"}});
}

// Seven-vertex triangulation of the torus.
inline SimplicialComplex torus7() {
  std::vector<std::string> verts;
  for (int i = 0; i < 7; ++i) verts.push_back("t" + std::to_string(i));
  std::vector<std::vector<std::string>> cells;
  for (int i = 0; i < 7; ++i) {
    cells.push_back({verts[i], verts[(i + 1) % 7], verts[(i + 3) % 7]});
    cells.push_back({verts[i], verts[(i + 2) % 7], verts[(i + 3) % 7]});
  }
  return SimplicialComplex::from_cells(verts, cells);
}

// Six-vertex triangulation of the real projective plane; its homology
// depends on the coefficient field.
inline SimplicialComplex rp2() {
  std::vector<std::vector<std::string>> cells;
  for (const char* t : {"124", "126", "134", "135", "156", "235", "236", "245", "346", "456"})
    cells.push_back({std::string(1, t[0]), std::string(1, t[1]), std::string(1, t[2])});
  return SimplicialComplex::from_cells({"1", "2", "3", "4", "5", "6"}, cells);
}

inline SimplicialComplex triangle() {
  return SimplicialComplex::from_cells({"a", "b", "c"}, {{"a", "b", "c"}});
}

}  // namespace fix
