#pragma once

#include <Eigen/Dense>
#include <complex>

#include "hbc/mps.hpp"

namespace hbc {

/// Direction of a (mixed) transfer map.
enum class TransferDirection {
  kRight,  // X -> sum_i A0^i X A1^i+
  kLeft,   // X -> sum_i A0^i+ X A1^i   (adjoint under the Frobenius pairing)
};

/// Matrix-free (mixed) transfer map between two MPS tensors sharing a
/// physical dimension.  Acts linearly on D0 x D1 complex matrices.
class TransferMap {
 public:
  TransferMap(const MpsTensor& left, const MpsTensor& right,
              TransferDirection dir = TransferDirection::kRight);

  /// Self transfer map of a single tensor.
  explicit TransferMap(const MpsTensor& tensor,
                       TransferDirection dir = TransferDirection::kRight)
      : TransferMap(tensor, tensor, dir) {}

  Matrix apply(const Matrix& x) const;

  /// Rows/cols of the matrices the map acts on.
  int rows() const;
  int cols() const;
  long dim() const { return static_cast<long>(rows()) * cols(); }

  /// Dense matrix of the vectorized map (row-major vec convention),
  /// [T]_{ab,cd} = sum_i [A0^i]_{ac} [A1^i*]_{bd} for the right-acting
  /// form.  Intended for small dimensions and for test oracles.
  Matrix dense() const;

  TransferMap adjoint() const;

 private:
  const MpsTensor* left_;
  const MpsTensor* right_;
  TransferDirection dir_;
};

struct EigsOptions {
  double tol = 1e-12;
  int max_iter = 4000;       // total operator applications
  int krylov_dim = 20;       // subspace size, clipped to the map dimension
  long dense_threshold = 64; // dim <= threshold solves densely
  double degeneracy_rel_gap = 1e-8;
  bool force_iterative = false;  // test hook: skip the dense fallback
  unsigned start_seed = 0x5eed;  // deterministic start vector
};

/// Dominant eigenpair of a transfer map.
struct SpectralResult {
  Complex eta = 0.0;     // leading eigenvalue
  Matrix vec;            // eigenvector, |.|_F = 1, deterministic phase
  double gap = 0.0;      // |eta_0| - |eta_1| (certified by the subleading Ritz value)
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;        // |T(vec) - eta vec|_F
  bool degenerate_flag = false; // gap < degeneracy_rel_gap * |eta_0|
};

/// Largest-modulus eigenvalue, its phase-fixed eigenvector and the
/// modulus gap to the subleading eigenvalue.  Dense eigendecomposition
/// below opts.dense_threshold, Krylov-Schur (thick-restart Arnoldi)
/// above it.  Throws ConvergenceError on failure.
SpectralResult leading_eigenpair(const TransferMap& map,
                                 const EigsOptions& opts = {});

/// |eta_1| via deflation of the leading pair (or the dense spectrum).
/// Returns 0 for one-dimensional maps.
double subleading_modulus(const TransferMap& map, const EigsOptions& opts = {});

/// Top-k eigenvalues by modulus (dense path only; requires
/// dim <= opts.dense_threshold or a modest dimension).  Used by the
/// SPT modulus-degeneracy report.
std::vector<Complex> dense_spectrum(const TransferMap& map);

/// Rotate the largest-modulus entry (first one in row-major order on
/// ties) to the positive real axis and normalize to Frobenius norm 1.
void fix_phase(Matrix& m);

}  // namespace hbc
