#include "hbc/berry.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

namespace hbc {

namespace {

constexpr double kPi = 3.14159265358979323846;

Complex triangle_trace(const std::array<int, 3>& face, OverlapCache& ov,
                       bool weighted) {
  const auto& s0 = ov.state(face[0]);
  const auto& s1 = ov.state(face[1]);
  const auto& s2 = ov.state(face[2]);
  const Matrix v01 = ov.get(face[0], face[1]).v;
  const Matrix v12 = ov.get(face[1], face[2]).v;
  const Matrix v20 = ov.get(face[2], face[0]).v;
  if (weighted) {
    const auto w0 = s0.lambda().array().pow(2.0 / 3.0).matrix().asDiagonal();
    const auto w1 = s1.lambda().array().pow(2.0 / 3.0).matrix().asDiagonal();
    const auto w2 = s2.lambda().array().pow(2.0 / 3.0).matrix().asDiagonal();
    return (w0 * v01 * w1 * v12 * w2 * v20).trace();
  }
  const auto w0 = s0.lambda().array().square().matrix().asDiagonal();
  return (w0 * v01 * v12 * v20).trace();
}

double phi_impl(const std::array<int, 3>& face, OverlapCache& ov,
                bool weighted, double floor) {
  const Complex tr = triangle_trace(face, ov, weighted);
  if (std::abs(tr) < floor)
    throw IllConditionedError("phi_triangle: trace modulus " +
                              std::to_string(std::abs(tr)) +
                              " below the floor");
  return std::arg(tr) == kPi ? -kPi : std::arg(tr);
}

void run_indexed(std::size_t n, int threads,
                 const std::function<void(std::size_t)>& body) {
  threads = std::max(1, threads);
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> g(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

double wrap_angle(double a) {
  double w = std::remainder(a, 2 * kPi);
  if (w >= kPi) w -= 2 * kPi;  // remainder returns (-pi, pi]
  return w;
}

double berry_phase_0d(const std::vector<Vector>& states, bool closed) {
  if (states.size() < 2)
    throw Error("berry_phase_0d: need at least two states");
  if (closed && (states.front() - states.back()).norm() > 1e-9)
    throw Error("berry_phase_0d: closed loop must repeat the first state");
  Complex prod = 1.0;
  double arg_acc = 0.0;
  for (std::size_t j = 0; j + 1 < states.size(); ++j) {
    Complex ov = states[j].dot(states[j + 1]);  // conjugates the left factor
    if (std::abs(ov) < 1e-12)
      throw ChargeTransitionError(
          "berry_phase_0d: vanishing overlap at step " + std::to_string(j));
    prod *= ov / std::abs(ov);
    if (std::abs(prod) < 1e-6) {  // keep the running product normalized
      arg_acc += std::arg(prod);
      prod = 1.0;
    }
  }
  return wrap_angle(arg_acc + std::arg(prod));
}

int chern_number_0d(const TriangulatedSurface& surface,
                    const std::vector<Vector>& states) {
  double total = 0.0;
  for (const auto& tri : surface.triangles) {
    const Complex z01 = states[tri.v[0]].dot(states[tri.v[1]]);
    const Complex z12 = states[tri.v[1]].dot(states[tri.v[2]]);
    const Complex z20 = states[tri.v[2]].dot(states[tri.v[0]]);
    if (std::abs(z01) < 1e-12 || std::abs(z12) < 1e-12 ||
        std::abs(z20) < 1e-12)
      throw ChargeTransitionError("chern_number_0d: vanishing overlap");
    const double flux = std::arg(z01 * z12 * z20);
    if (std::abs(flux) > 0.9 * kPi)
      throw RefinementError(
          "chern_number_0d: triangle flux near the branch cut, refine the "
          "grid");
    total += tri.sign * flux;
  }
  const double nu = total / (2 * kPi);
  const long rounded = std::lround(nu);
  if (std::abs(nu - static_cast<double>(rounded)) > 1e-6)
    throw Error("chern_number_0d: flux sum not within 1e-6 of an integer: " +
                std::to_string(nu));
  return static_cast<int>(rounded);
}

double phi_triangle(const std::array<int, 3>& face, OverlapCache& overlaps,
                    double trace_floor) {
  return phi_impl(face, overlaps, /*weighted=*/true, trace_floor);
}

double phi_triangle_unweighted(const std::array<int, 3>& face,
                               OverlapCache& overlaps, double trace_floor) {
  return phi_impl(face, overlaps, /*weighted=*/false, trace_floor);
}

double higher_berry_phase(const std::vector<SurfaceTriangle>& faces,
                          OverlapCache& overlaps) {
  double total = 0.0;
  for (const auto& f : faces) total += f.sign * phi_triangle(f.v, overlaps);
  return wrap_angle(total);
}

double curvature_tet(const std::array<int, 4>& tet, OverlapCache& overlaps,
                     bool* refinement) {
  const double p123 = phi_triangle({tet[1], tet[2], tet[3]}, overlaps);
  const double p023 = phi_triangle({tet[0], tet[2], tet[3]}, overlaps);
  const double p013 = phi_triangle({tet[0], tet[1], tet[3]}, overlaps);
  const double p012 = phi_triangle({tet[0], tet[1], tet[2]}, overlaps);
  const double f = wrap_angle(p123 - p023 + p013 - p012);
  if (refinement && std::abs(f) > kPi / 2) *refinement = true;
  return f;
}

CurvatureReport invariant_3manifold(const SimplicialComplex3& complex,
                                    OverlapCache& overlaps, int threads,
                                    bool collect_vertex_diagnostics) {
  CurvatureReport rep;
  rep.tet_curvature.assign(complex.tets.size(), 0.0);
  std::vector<char> warn(complex.tets.size(), 0);

  run_indexed(complex.tets.size(), threads, [&](std::size_t i) {
    bool r = false;
    rep.tet_curvature[i] = curvature_tet(complex.tets[i].v, overlaps, &r);
    warn[i] = r ? 1 : 0;
  });

  rep.shell_sums.assign(std::max(1, complex.n_shells), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < complex.tets.size(); ++i) {
    const double signed_f = complex.tets[i].sign * rep.tet_curvature[i];
    total += signed_f;
    const int shell = complex.tets[i].shell;
    if (shell >= 0 && shell < static_cast<int>(rep.shell_sums.size()))
      rep.shell_sums[shell] += signed_f;
    rep.refinement_warnings += warn[i];
  }
  rep.nu = total / (2 * kPi);
  rep.nearest_integer = std::lround(rep.nu);
  rep.integer_residual = rep.nu - static_cast<double>(rep.nearest_integer);
  rep.min_edge_rel_gap = overlaps.min_rel_gap();

  if (collect_vertex_diagnostics) {
    rep.vertex_entropy.reserve(complex.vertices.size());
    rep.vertex_bond_dim.reserve(complex.vertices.size());
    for (const auto& v : complex.vertices) {
      const CanonicalMps& s = overlaps.state(v.id);
      rep.vertex_entropy.push_back(entanglement_entropy(s));
      rep.vertex_bond_dim.push_back(s.bond_dim());
      rep.vertex_schmidt_sq.push_back(s.schmidt_squared());
    }
  }
  return rep;
}

double shell_estimate(double prism_curvature, double theta0, double dtheta,
                      double dphi) {
  const double patch = std::sin(theta0) * dtheta * dphi / 2;
  if (patch == 0.0)
    throw Error("shell_estimate: degenerate surface patch (sin theta0 = 0)");
  return prism_curvature * 4 * kPi / patch;
}

}  // namespace hbc
