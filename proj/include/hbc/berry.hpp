#pragma once

#include <optional>
#include <vector>

#include "hbc/mps.hpp"
#include "hbc/overlap.hpp"
#include "hbc/simplicial.hpp"

namespace hbc {

/// Principal branch of the angle: [-pi, pi).
double wrap_angle(double a);

/// Arg of the product of consecutive overlaps of a discretized state
/// family.  For a closed loop the caller repeats the first state at the
/// end.  Throws ChargeTransitionError on a vanishing overlap.
double berry_phase_0d(const std::vector<Vector>& states, bool closed);

/// (1/2pi) sum of triangle fluxes over a closed oriented triangulated
/// surface of states; asserts the sum is within 1e-6 of an integer.
/// Throws RefinementError when any |flux| is near the branch cut.
int chern_number_0d(const TriangulatedSurface& surface,
                    const std::vector<Vector>& states);

/// Higher Berry connection integrated over one oriented triangle:
/// Arg tr[L0^{2/3} V01 L1^{2/3} V12 L2^{2/3} V20], V20 = V02+.
/// Throws IllConditionedError when the trace modulus is below tiny.
double phi_triangle(const std::array<int, 3>& face, OverlapCache& overlaps,
                    double trace_floor = 1e-12);

/// Negative-control variant Arg tr[L0^2 V01 V12 V20]; depends on the
/// bond dimension and is kept only as a diagnostic.
double phi_triangle_unweighted(const std::array<int, 3>& face,
                               OverlapCache& overlaps,
                               double trace_floor = 1e-12);

/// Higher Berry phase: signed sum of triangle phases over a closed
/// oriented surface, reduced mod 2pi into [-pi, pi).
double higher_berry_phase(const std::vector<SurfaceTriangle>& faces,
                          OverlapCache& overlaps);

/// Discrete higher Berry curvature of one oriented tetrahedron:
/// wrap(phi(123) - phi(023) + phi(013) - phi(012)).  Sets *refinement
/// when |F| > pi/2 (grid too coarse for the real-number reading).
double curvature_tet(const std::array<int, 4>& tet, OverlapCache& overlaps,
                     bool* refinement = nullptr);

struct CurvatureReport {
  std::vector<double> tet_curvature;  // F per tetrahedron, complex order
  std::vector<double> shell_sums;     // sum of signed F per alpha shell
  double nu = 0.0;
  long nearest_integer = 0;
  double integer_residual = 0.0;
  double min_edge_rel_gap = 2.0;
  int refinement_warnings = 0;
  std::vector<double> vertex_entropy;
  std::vector<int> vertex_bond_dim;
  std::vector<RealVector> vertex_schmidt_sq;
};

/// nu = (1/2pi) sum of signed tetrahedron curvatures over a validated
/// closed complex, with per-shell breakdown and state diagnostics.
CurvatureReport invariant_3manifold(const SimplicialComplex3& complex,
                                    OverlapCache& overlaps, int threads = 1,
                                    bool collect_vertex_diagnostics = true);

/// Sphere-area rescaling of a prism curvature:
/// f_j = F(prism) * 4pi / (sin(theta0) dtheta dphi / 2).
double shell_estimate(double prism_curvature, double theta0, double dtheta,
                      double dphi);

}  // namespace hbc
