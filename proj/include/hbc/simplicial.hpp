#pragma once

#include <array>
#include <string>
#include <vector>

#include "hbc/errors.hpp"

namespace hbc {

struct VertexRec {
  int id = -1;
  std::array<double, 3> coords{};  // (alpha, theta, phi) for the model grids
};

struct TetRec {
  std::array<int, 4> v{};
  int sign = +1;    // orientation relative to the complex
  int shell = 0;    // alpha-slab index (reporting)
  long cell = -1;   // originating cube, -1 when not grid-derived
};

/// Oriented 3-complex: vertices plus oriented tetrahedra.  Faces and
/// edges are derived on demand.
struct SimplicialComplex3 {
  std::vector<VertexRec> vertices;
  std::vector<TetRec> tets;
  int n_shells = 0;

  std::vector<std::pair<int, int>> edges() const;
  long face_count() const;
  long edge_count() const;
  /// V - E + F - T; zero for a closed 3-manifold.
  long euler_characteristic() const;
};

struct ClosednessReport {
  bool closed = false;
  long faces = 0;
  long boundary_faces = 0;         // faces seen once
  long overshared_faces = 0;       // faces seen more than twice
  long orientation_violations = 0; // face pairs with equal induced orientation
  std::string summary;
};

/// Every triangle face of a closed complex must be shared by exactly two
/// tetrahedra with opposite induced orientations.
ClosednessReport validate_closed(const SimplicialComplex3& complex);

/// Triangular prism spanning [alpha_j, alpha_{j+1}] x a small (theta, phi)
/// triangle, with the three signed tetrahedra (0124)+, (1235)-, (1245)+
/// tiling it.
struct PrismCell {
  std::array<std::array<double, 3>, 6> coords{};  // (alpha, theta, phi)
  bool degenerate = false;                        // zero-volume cell

  static constexpr std::array<std::array<int, 4>, 3> kTets{
      {{0, 1, 2, 4}, {1, 2, 3, 5}, {1, 2, 4, 5}}};
  static constexpr std::array<int, 3> kSigns{+1, -1, +1};
};

/// Prism for shell j of n_shells covering alpha in [-pi/4, pi/4], around
/// the point (theta0, phi0) with displacements (dtheta, dphi).
PrismCell prism_curvature_cell(int j, int n_shells, double theta0, double phi0,
                               double dtheta, double dphi);

/// Closed oriented triangulation of S^3 in (alpha, theta, phi) coordinates:
/// alpha in [-pi/4, pi/4] (all of S^2 identified at the ends), theta in
/// [0, pi] (poles identified along phi), phi periodic.  Each grid cube is
/// cut into six tetrahedra with face diagonals consistent across
/// neighbors; zero-volume tetrahedra at the identification loci are
/// dropped.  n_alpha / n_theta count grid values, n_phi counts distinct
/// periodic values.
SimplicialComplex3 cube_grid_complex(int n_alpha, int n_theta, int n_phi);

/// Fully periodic grid (3-torus), six tetrahedra per cube, no
/// identifications.  Coordinates in [0,1)^3.
SimplicialComplex3 torus_grid_complex(int nx, int ny, int nz);

/// Oriented triangle on a closed surface.
struct SurfaceTriangle {
  std::array<int, 3> v{};
  int sign = +1;
};

struct TriangulatedSurface {
  std::vector<VertexRec> vertices;
  std::vector<SurfaceTriangle> triangles;
};

/// Sphere triangulation on a (theta, phi) grid with poles identified;
/// oriented so the monopole lowest band carries Chern number +1.
TriangulatedSurface sphere_grid_surface(int n_theta, int n_phi);

/// JSON mesh export (vertices with coordinates, tets with signs).
std::string complex_to_json(const SimplicialComplex3& complex);

}  // namespace hbc
