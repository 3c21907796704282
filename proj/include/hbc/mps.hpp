#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "hbc/errors.hpp"

namespace hbc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Local tensor of a translation-invariant MPS: a family of d complex
/// D_left x D_right matrices {A^i}.
struct MpsTensor {
  std::vector<Matrix> a;  // one matrix per physical index

  MpsTensor() = default;
  explicit MpsTensor(std::vector<Matrix> mats) : a(std::move(mats)) { check(); }

  int phys_dim() const { return static_cast<int>(a.size()); }
  int left_dim() const { return a.empty() ? 0 : static_cast<int>(a[0].rows()); }
  int right_dim() const { return a.empty() ? 0 : static_cast<int>(a[0].cols()); }

  /// All matrices must share one shape.
  void check() const {
    if (a.empty()) throw DimensionError("MpsTensor: empty physical index");
    for (const auto& m : a)
      if (m.rows() != a[0].rows() || m.cols() != a[0].cols())
        throw DimensionError("MpsTensor: matrices of unequal shape");
  }
};

/// An injective MPS in right-canonical form together with its Schmidt
/// weights and transfer spectral metadata.
///
/// Invariants (validated on construction):
///   sum_i A^i A^i+     = 1          (right-canonical)
///   sum_i A^i+ L^2 A^i = L^2        (left-canonical, L = lambda)
///   tr L^2 = 1, entries of L positive and descending
class CanonicalMps {
 public:
  /// Validating constructor used by canonicalize() and by trusted
  /// analytic constructions.  Checks the canonical residuals, not
  /// injectivity.
  CanonicalMps(MpsTensor tensor, RealVector lambda, double gap,
               double corr_length, double residual_tol = 1e-10);

  const MpsTensor& tensor() const { return tensor_; }
  const RealVector& lambda() const { return lambda_; }
  int phys_dim() const { return tensor_.phys_dim(); }
  int bond_dim() const { return static_cast<int>(lambda_.size()); }

  /// Modulus gap 1 - |eta_1| of the self transfer map.
  double gap() const { return gap_; }
  /// xi = -1/log|eta_1|; zero for bond dimension 1.
  double corr_length() const { return corr_length_; }
  /// |eta_1| recovered from the stored correlation length.
  double subleading_modulus() const;

  RealVector schmidt_squared() const { return lambda_.array().square(); }

 private:
  MpsTensor tensor_;
  RealVector lambda_;
  double gap_ = 0.0;
  double corr_length_ = 0.0;
};

/// Gauge-fix an injective raw tensor to the canonical form: rescale by
/// 1/sqrt(eta_0), conjugate by the right fixed point's inverse square
/// root, then rotate to the basis diagonalizing the left fixed point.
/// Lambda comes out descending with tr L^2 = 1.
///
/// Throws InjectivityError when the leading transfer eigenvalue is not
/// simple or the fixed point is not positive definite.
CanonicalMps canonicalize(const MpsTensor& raw, double tol = 1e-13);

/// Drop Schmidt rows/columns with lambda_j < cutoff, re-canonicalize and
/// renormalize.  cutoff = 0 is the identity.
CanonicalMps truncate(const CanonicalMps& mps, double cutoff);

/// Periodic-chain amplitudes tr[A^{i1} ... A^{iL}], unnormalized,
/// ordered with i1 as the most significant digit (base d).
Vector dense_state(const MpsTensor& mps, int sites,
                   std::size_t max_amplitudes = std::size_t{1} << 20);

/// xi = -1/log|eta_1|.  Throws PhaseTransitionError when |eta_1| >= 1.
double correlation_length(const CanonicalMps& mps);

/// S_E = -sum_j lambda_j^2 log lambda_j^2.
double entanglement_entropy(const CanonicalMps& mps);

}  // namespace hbc
