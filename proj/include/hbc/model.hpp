#pragma once

#include <cstdint>
#include <vector>

#include "hbc/mps.hpp"

namespace hbc {

/// Point of the S^3 x couplings parameter space.  The unit vector n is
/// given in polar coordinates; all n are identified at alpha = +-pi/4.
struct ModelPoint {
  double alpha = 0.0;  // [-pi/4, pi/4]
  double theta = 0.0;
  double phi = 0.0;
  double j1 = 0.0;
  double j2 = 0.0;
};

/// Translation-invariant chain Hamiltonian, grouped on the 4-dimensional
/// (sigma, tau) site: one on-site term plus one nearest-neighbor bond
/// term.  Basis order per site: (uu, ud, du, dd) in (sigma, tau).
struct LocalHamiltonian {
  Eigen::Matrix4cd onsite;
  Matrix bond;  // 16 x 16
};

/// H(alpha, n) = H0 + J1 V1 + J2 V2 assembled at one parameter point.
/// sin(2a)(-sigma.tau) acts on site for alpha <= 0, sin(2a) tau.sigma'
/// on the bond for alpha >= 0; continuous but not smooth at alpha = 0.
LocalHamiltonian hamiltonian(const ModelPoint& point);

/// Single-site rotation u(n) = Rz(phi) Ry(theta) applied to both spins.
Eigen::Matrix4cd site_unitary(double theta, double phi);

/// Physical-index rotation of an MPS from n = z to n = (theta, phi);
/// canonical form and Schmidt spectrum are preserved exactly.
CanonicalMps rotate_mps(const CanonicalMps& at_z, double theta, double phi);

/// Exact ground state of H0(alpha, n) (J1 = J2 = 0): bond dimension 1
/// for alpha <= 0, 2 for alpha > 0.
CanonicalMps analytic_mps(double alpha, double theta = 0.0, double phi = 0.0);

/// Smooth seeded random coupling fields on an (alpha, theta, phi) grid,
/// Gaussian-enveloped in alpha so they vanish at alpha = +-pi/4, constant
/// across identified pole/cap grid points, periodic in phi.
struct CouplingField {
  int n_alpha = 0, n_theta = 0, n_phi = 0;
  std::vector<double> j1, j2;  // index ((i * n_theta) + j) * n_phi + k

  double j1_at(int i, int j, int k) const { return j1[index(i, j, k)]; }
  double j2_at(int i, int j, int k) const { return j2[index(i, j, k)]; }

  std::size_t index(int i, int j, int k) const {
    k = ((k % n_phi) + n_phi) % n_phi;
    return (static_cast<std::size_t>(i) * n_theta + j) * n_phi + k;
  }
};

CouplingField random_coupling_field(std::uint64_t seed, int n_alpha,
                                    int n_theta, int n_phi, double amplitude,
                                    double envelope_width = 0.2);

}  // namespace hbc
