#include <Eigen/Eigenvalues>
#include <cmath>

#include "hbc/mps.hpp"
#include "hbc/transfer.hpp"

namespace hbc {

namespace {

double right_residual(const MpsTensor& t) {
  Matrix s = Matrix::Zero(t.left_dim(), t.left_dim());
  for (const auto& m : t.a) s.noalias() += m * m.adjoint();
  return (s - Matrix::Identity(s.rows(), s.cols())).norm();
}

double left_residual(const MpsTensor& t, const RealVector& lambda) {
  Matrix l2 = lambda.array().square().matrix().asDiagonal();
  Matrix s = Matrix::Zero(t.right_dim(), t.right_dim());
  for (const auto& m : t.a) s.noalias() += m.adjoint() * l2 * m;
  return (s - l2).norm();
}

// Phase-align, Hermitize and eigendecompose a fixed point that is a
// positive matrix in exact arithmetic.  Throws InjectivityError when the
// result is not positive definite.
Eigen::SelfAdjointEigenSolver<Matrix> positive_fixed_point(
    Matrix x, const char* which) {
  const Complex tr = x.trace();
  if (std::abs(tr) < 1e-14)
    throw InjectivityError(std::string(which) + " fixed point has zero trace");
  x *= std::conj(tr) / std::abs(tr);
  const double asym = (x - x.adjoint()).norm() / std::max(1.0, x.norm());
  if (asym > 1e-6)
    throw InjectivityError(std::string(which) +
                           " fixed point is not Hermitian up to phase");
  x = 0.5 * (x + x.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(x);
  if (es.info() != Eigen::Success)
    throw InjectivityError("fixed point eigendecomposition failed");
  if (es.eigenvalues().minCoeff() <= 1e-10)
    throw InjectivityError(std::string(which) +
                           " fixed point is not positive definite");
  return es;
}

struct Pass {
  MpsTensor tensor;
  RealVector lambda;
};

Pass canonicalize_pass(const MpsTensor& raw, double tol) {
  EigsOptions eopts;
  eopts.tol = std::min(tol, 1e-13);

  TransferMap t_right(raw, TransferDirection::kRight);
  SpectralResult right = leading_eigenpair(t_right, eopts);
  if (right.degenerate_flag)
    throw InjectivityError(
        "degenerate leading transfer eigenvalue (relative gap " +
        std::to_string(right.gap / std::abs(right.eta)) + ")");

  auto es_x = positive_fixed_point(right.vec, "right");
  const double eta0 = std::abs(right.eta);
  Matrix sqrt_x = es_x.operatorSqrt();
  Matrix inv_sqrt_x = es_x.operatorInverseSqrt();

  MpsTensor b = raw;
  for (auto& m : b.a) m = (inv_sqrt_x * m * sqrt_x) / std::sqrt(eta0);

  TransferMap t_left(b, TransferDirection::kLeft);
  SpectralResult left = leading_eigenpair(t_left, eopts);
  auto es_y = positive_fixed_point(left.vec, "left");

  // Descending Schmidt order: reverse the ascending eigenbasis.
  const long dim = es_y.eigenvalues().size();
  Matrix p(dim, dim);
  RealVector lam2(dim);
  for (long j = 0; j < dim; ++j) {
    p.col(j) = es_y.eigenvectors().col(dim - 1 - j);
    lam2[j] = es_y.eigenvalues()[dim - 1 - j];
  }
  lam2 /= lam2.sum();

  MpsTensor c = b;
  for (auto& m : c.a) m = p.adjoint() * m * p;
  return {std::move(c), lam2.array().sqrt().matrix()};
}

}  // namespace

CanonicalMps::CanonicalMps(MpsTensor tensor, RealVector lambda, double gap,
                           double corr_length, double residual_tol)
    : tensor_(std::move(tensor)),
      lambda_(std::move(lambda)),
      gap_(gap),
      corr_length_(corr_length) {
  tensor_.check();
  if (tensor_.left_dim() != tensor_.right_dim())
    throw DimensionError("CanonicalMps: tensor must be square");
  if (lambda_.size() != tensor_.left_dim())
    throw DimensionError("CanonicalMps: lambda size mismatch");
  for (long j = 0; j < lambda_.size(); ++j) {
    if (!(lambda_[j] > 0.0))
      throw Error("CanonicalMps: Schmidt values must be strictly positive");
    if (j > 0 && lambda_[j] > lambda_[j - 1] + 1e-14)
      throw Error("CanonicalMps: Schmidt values must be descending");
  }
  if (std::abs(lambda_.squaredNorm() - 1.0) > 1e-10)
    throw Error("CanonicalMps: tr Lambda^2 != 1");
  const double rr = right_residual(tensor_);
  if (rr > residual_tol)
    throw Error("CanonicalMps: right-canonical residual " + std::to_string(rr));
  const double lr = left_residual(tensor_, lambda_);
  if (lr > residual_tol)
    throw Error("CanonicalMps: left-canonical residual " + std::to_string(lr));
}

double CanonicalMps::subleading_modulus() const {
  return std::max(0.0, 1.0 - gap_);
}

CanonicalMps canonicalize(const MpsTensor& raw, double tol) {
  raw.check();
  if (raw.left_dim() != raw.right_dim())
    throw DimensionError("canonicalize: tensor must be square");

  Pass pass = canonicalize_pass(raw, tol);
  const long dim = pass.lambda.size();
  // One cleanup pass if the first landed above the target residual.
  for (int round = 0; round < 2; ++round) {
    const double rr = right_residual(pass.tensor);
    const double lr = left_residual(pass.tensor, pass.lambda);
    const double target = std::max(tol, 1e-14 * static_cast<double>(dim));
    if (rr < target && lr < target) break;
    pass = canonicalize_pass(pass.tensor, tol);
  }

  EigsOptions eopts;
  eopts.tol = std::min(tol, 1e-13);
  TransferMap self(pass.tensor);
  const double eta1 = subleading_modulus(self, eopts);
  const double gap = 1.0 - eta1;
  double xi = 0.0;
  if (eta1 > 0.0 && eta1 < 1.0) xi = -1.0 / std::log(eta1);

  return CanonicalMps(std::move(pass.tensor), std::move(pass.lambda), gap, xi,
                      std::max(tol * 10, 1e-12 * std::sqrt(double(dim))));
}

CanonicalMps truncate(const CanonicalMps& mps, double cutoff) {
  if (cutoff < 0.0 || cutoff >= 1.0)
    throw Error("truncate: cutoff must lie in [0, 1)");
  if (cutoff == 0.0) return mps;

  std::vector<long> keep;
  for (long j = 0; j < mps.lambda().size(); ++j)
    if (mps.lambda()[j] >= cutoff) keep.push_back(j);
  if (keep.empty())
    throw EmptyStateError("truncate: all Schmidt values below cutoff");
  if (static_cast<long>(keep.size()) == mps.lambda().size()) return mps;

  MpsTensor cut;
  cut.a.reserve(mps.phys_dim());
  for (const auto& m : mps.tensor().a) {
    Matrix sub(keep.size(), keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r)
      for (std::size_t c = 0; c < keep.size(); ++c)
        sub(r, c) = m(keep[r], keep[c]);
    cut.a.push_back(std::move(sub));
  }
  return canonicalize(cut);
}

Vector dense_state(const MpsTensor& mps, int sites,
                   std::size_t max_amplitudes) {
  if (sites < 1) throw Error("dense_state: need at least one site");
  const int d = mps.phys_dim();
  double amps = std::pow(static_cast<double>(d), sites);
  if (amps > static_cast<double>(max_amplitudes))
    throw CapacityError("dense_state: d^L exceeds the amplitude limit");
  const std::size_t total = static_cast<std::size_t>(amps + 0.5);

  Vector out(total);
  std::vector<int> digit(sites, 0);
  std::vector<Matrix> prefix(sites);
  prefix[0] = mps.a[0];
  for (int k = 1; k < sites; ++k) prefix[k] = prefix[k - 1] * mps.a[0];

  for (std::size_t idx = 0;; ++idx) {
    out[idx] = prefix[sites - 1].trace();
    int k = sites - 1;
    while (k >= 0 && digit[k] == d - 1) --k;
    if (k < 0) break;
    ++digit[k];
    for (int j = k; j < sites; ++j) {
      if (j > k) digit[j] = 0;
      const Matrix& step = mps.a[digit[j]];
      prefix[j] = j == 0 ? step : Matrix(prefix[j - 1] * step);
    }
  }
  return out;
}

double correlation_length(const CanonicalMps& mps) {
  if (mps.bond_dim() == 1) return 0.0;
  const double eta1 = subleading_modulus(TransferMap(mps.tensor()));
  if (eta1 >= 1.0 - 1e-12)
    throw PhaseTransitionError(
        "correlation_length: |eta_1| = |eta_0|, phase transition point");
  if (eta1 <= 0.0) return 0.0;
  return -1.0 / std::log(eta1);
}

double entanglement_entropy(const CanonicalMps& mps) {
  double s = 0.0;
  for (long j = 0; j < mps.lambda().size(); ++j) {
    const double p = mps.lambda()[j] * mps.lambda()[j];
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

}  // namespace hbc
