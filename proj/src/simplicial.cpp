#include "hbc/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json.hpp"

namespace hbc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Parity of the permutation sorting a distinct triple, as +1/-1.
int triple_parity(std::array<int, 3> t) {
  int swaps = 0;
  if (t[0] > t[1]) { std::swap(t[0], t[1]); ++swaps; }
  if (t[1] > t[2]) { std::swap(t[1], t[2]); ++swaps; }
  if (t[0] > t[1]) { std::swap(t[0], t[1]); ++swaps; }
  return swaps % 2 == 0 ? +1 : -1;
}

std::array<int, 3> sorted_triple(std::array<int, 3> t) {
  std::sort(t.begin(), t.end());
  return t;
}

// The six Kuhn tetrahedra of a unit cube: paths 000 -> 111 adding one
// axis at a time, ordered so every tetrahedron is positively oriented.
struct KuhnTet {
  std::array<int, 4> corners;  // cube corner bitmasks (bit0=x, bit1=y, bit2=z)
};

std::array<KuhnTet, 6> kuhn_tets() {
  std::array<KuhnTet, 6> out{};
  static constexpr std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (std::size_t p = 0; p < perms.size(); ++p) {
    const auto& axes = perms[p];
    int parity = triple_parity({axes[0], axes[1], axes[2]});
    std::array<int, 4> c{};
    c[0] = 0;
    c[1] = 1 << axes[0];
    c[2] = c[1] | (1 << axes[1]);
    c[3] = 7;
    if (parity < 0) std::swap(c[2], c[3]);  // make det positive
    out[p].corners = c;
  }
  return out;
}

}  // namespace

std::vector<std::pair<int, int>> SimplicialComplex3::edges() const {
  std::set<std::pair<int, int>> set;
  for (const auto& t : tets)
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        set.emplace(std::min(t.v[a], t.v[b]), std::max(t.v[a], t.v[b]));
  return {set.begin(), set.end()};
}

long SimplicialComplex3::face_count() const {
  std::set<std::array<int, 3>> faces;
  for (const auto& t : tets)
    for (int skip = 0; skip < 4; ++skip) {
      std::array<int, 3> f{};
      int k = 0;
      for (int i = 0; i < 4; ++i)
        if (i != skip) f[k++] = t.v[i];
      faces.insert(sorted_triple(f));
    }
  return static_cast<long>(faces.size());
}

long SimplicialComplex3::edge_count() const {
  return static_cast<long>(edges().size());
}

long SimplicialComplex3::euler_characteristic() const {
  return static_cast<long>(vertices.size()) - edge_count() + face_count() -
         static_cast<long>(tets.size());
}

ClosednessReport validate_closed(const SimplicialComplex3& complex) {
  // key -> list of induced orientation signs
  std::map<std::array<int, 3>, std::vector<int>> incidence;
  for (const auto& t : complex.tets) {
    for (int skip = 0; skip < 4; ++skip) {
      std::array<int, 3> f{};
      int k = 0;
      for (int i = 0; i < 4; ++i)
        if (i != skip) f[k++] = t.v[i];
      const int face_sign =
          (skip % 2 == 0 ? +1 : -1) * triple_parity(f) * t.sign;
      incidence[sorted_triple(f)].push_back(face_sign);
    }
  }
  ClosednessReport rep;
  rep.faces = static_cast<long>(incidence.size());
  for (const auto& [face, signs] : incidence) {
    if (signs.size() == 1) {
      ++rep.boundary_faces;
    } else if (signs.size() > 2) {
      ++rep.overshared_faces;
    } else if (signs[0] + signs[1] != 0) {
      ++rep.orientation_violations;
    }
  }
  rep.closed = rep.boundary_faces == 0 && rep.overshared_faces == 0 &&
               rep.orientation_violations == 0;
  rep.summary = "faces=" + std::to_string(rep.faces) +
                " boundary=" + std::to_string(rep.boundary_faces) +
                " overshared=" + std::to_string(rep.overshared_faces) +
                " orientation_violations=" +
                std::to_string(rep.orientation_violations);
  return rep;
}

PrismCell prism_curvature_cell(int j, int n_shells, double theta0, double phi0,
                               double dtheta, double dphi) {
  if (j < 0 || j >= n_shells)
    throw Error("prism_curvature_cell: shell index out of range");
  const double a0 = -kPi / 4 + (kPi / 2) * j / n_shells;
  const double a1 = -kPi / 4 + (kPi / 2) * (j + 1) / n_shells;
  const double tm = theta0 - dtheta / 2, tp = theta0 + dtheta / 2;
  const double pm = phi0 - dphi / 2, pp = phi0 + dphi / 2;
  PrismCell cell;
  cell.coords = {{{a0, tm, pm},
                  {a1, tm, pm},
                  {a0, tp, pm},
                  {a1, tp, pm},
                  {a0, tm, pp},
                  {a1, tm, pp}}};
  cell.degenerate = dtheta == 0.0 || dphi == 0.0 || a0 == a1;
  return cell;
}

SimplicialComplex3 cube_grid_complex(int n_alpha, int n_theta, int n_phi) {
  if (n_alpha < 2 || n_theta < 2 || n_phi < 2)
    throw Error("cube_grid_complex: grid sizes must be >= 2");

  SimplicialComplex3 out;
  out.n_shells = n_alpha - 1;

  // Vertex identification: single vertex at each alpha cap, one vertex
  // per (alpha, pole), interior vertices indexed by (i, j, k).
  const int cap_lo = 0;
  const int cap_hi = 1;
  auto pole_id = [&](int i, bool south) {
    return 2 + 2 * (i - 1) + (south ? 1 : 0);
  };
  const int interior_base = 2 + 2 * (n_alpha - 2);
  auto vid = [&](int i, int j, int k) -> int {
    k = ((k % n_phi) + n_phi) % n_phi;
    if (i == 0) return cap_lo;
    if (i == n_alpha - 1) return cap_hi;
    if (j == 0) return pole_id(i, false);
    if (j == n_theta - 1) return pole_id(i, true);
    return interior_base + ((i - 1) * (n_theta - 2) + (j - 1)) * n_phi + k;
  };

  auto alpha_of = [&](int i) {
    return -kPi / 4 + (kPi / 2) * i / (n_alpha - 1);
  };
  auto theta_of = [&](int j) { return kPi * j / (n_theta - 1); };
  auto phi_of = [&](int k) { return 2 * kPi * k / n_phi; };

  const int total = interior_base + (n_alpha - 2) * (n_theta - 2) * n_phi;
  out.vertices.resize(total);
  out.vertices[cap_lo] = {cap_lo, {alpha_of(0), 0.0, 0.0}};
  out.vertices[cap_hi] = {cap_hi, {alpha_of(n_alpha - 1), 0.0, 0.0}};
  for (int i = 1; i < n_alpha - 1; ++i) {
    out.vertices[pole_id(i, false)] = {pole_id(i, false),
                                       {alpha_of(i), 0.0, 0.0}};
    out.vertices[pole_id(i, true)] = {pole_id(i, true),
                                      {alpha_of(i), kPi, 0.0}};
    for (int j = 1; j < n_theta - 1; ++j)
      for (int k = 0; k < n_phi; ++k)
        out.vertices[vid(i, j, k)] = {vid(i, j, k),
                                      {alpha_of(i), theta_of(j), phi_of(k)}};
  }

  const auto tets6 = kuhn_tets();
  long cell_index = 0;
  for (int i = 0; i + 1 < n_alpha; ++i)
    for (int j = 0; j + 1 < n_theta; ++j)
      for (int k = 0; k < n_phi; ++k, ++cell_index) {
        std::array<int, 8> corner{};
        for (int b = 0; b < 8; ++b)
          corner[b] = vid(i + (b & 1), j + ((b >> 1) & 1), k + ((b >> 2) & 1));
        for (const auto& kt : tets6) {
          TetRec t;
          for (int c = 0; c < 4; ++c) t.v[c] = corner[kt.corners[c]];
          bool degenerate = false;
          for (int a = 0; a < 4 && !degenerate; ++a)
            for (int b = a + 1; b < 4; ++b)
              if (t.v[a] == t.v[b]) {
                degenerate = true;
                break;
              }
          if (degenerate) continue;
          t.sign = +1;
          t.shell = i;
          t.cell = cell_index;
          out.tets.push_back(t);
        }
      }
  return out;
}

SimplicialComplex3 torus_grid_complex(int nx, int ny, int nz) {
  if (nx < 2 || ny < 2 || nz < 2)
    throw Error("torus_grid_complex: grid sizes must be >= 2");
  SimplicialComplex3 out;
  out.n_shells = nx;
  auto vid = [&](int i, int j, int k) {
    return ((i % nx) * ny + (j % ny)) * nz + (k % nz);
  };
  out.vertices.resize(static_cast<std::size_t>(nx) * ny * nz);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k)
        out.vertices[vid(i, j, k)] = {
            vid(i, j, k),
            {double(i) / nx, double(j) / ny, double(k) / nz}};
  const auto tets6 = kuhn_tets();
  long cell_index = 0;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k, ++cell_index)
        for (const auto& kt : tets6) {
          TetRec t;
          for (int c = 0; c < 4; ++c)
            t.v[c] = vid(i + (kt.corners[c] & 1), j + ((kt.corners[c] >> 1) & 1),
                         k + ((kt.corners[c] >> 2) & 1));
          t.sign = +1;
          t.shell = i;
          t.cell = cell_index;
          out.tets.push_back(t);
        }
  return out;
}

TriangulatedSurface sphere_grid_surface(int n_theta, int n_phi) {
  if (n_theta < 3 || n_phi < 3)
    throw Error("sphere_grid_surface: need at least a 3x3 grid");
  TriangulatedSurface out;
  auto vid = [&](int j, int k) -> int {
    k = ((k % n_phi) + n_phi) % n_phi;
    if (j == 0) return 0;
    if (j == n_theta - 1) return 1;
    return 2 + (j - 1) * n_phi + k;
  };
  out.vertices.resize(2 + (n_theta - 2) * n_phi);
  out.vertices[0] = {0, {0.0, 0.0, 0.0}};
  out.vertices[1] = {1, {kPi, 0.0, 0.0}};
  for (int j = 1; j < n_theta - 1; ++j)
    for (int k = 0; k < n_phi; ++k)
      out.vertices[vid(j, k)] = {vid(j, k),
                                 {kPi * j / (n_theta - 1), 2 * kPi * k / n_phi,
                                  0.0}};
  for (int j = 0; j + 1 < n_theta; ++j)
    for (int k = 0; k < n_phi; ++k) {
      const int v00 = vid(j, k), v10 = vid(j + 1, k);
      const int v01 = vid(j, k + 1), v11 = vid(j + 1, k + 1);
      // consistent diagonal (j,k)-(j+1,k+1); oriented along d(theta)^d(phi)
      if (v00 != v10 && v10 != v11 && v00 != v11)
        out.triangles.push_back({{v00, v10, v11}, +1});
      if (v00 != v11 && v11 != v01 && v00 != v01)
        out.triangles.push_back({{v00, v11, v01}, +1});
    }
  return out;
}

std::string complex_to_json(const SimplicialComplex3& complex) {
  nlohmann::json j;
  j["format"] = "hbc-complex";
  j["version"] = 1;
  auto& vs = j["vertices"] = nlohmann::json::array();
  for (const auto& v : complex.vertices)
    vs.push_back({{"id", v.id}, {"coords", v.coords}});
  auto& ts = j["tets"] = nlohmann::json::array();
  for (const auto& t : complex.tets)
    ts.push_back({{"v", t.v}, {"sign", t.sign}, {"shell", t.shell}});
  return j.dump(1);
}

}  // namespace hbc
