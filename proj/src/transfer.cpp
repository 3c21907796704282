#include "hbc/transfer.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace hbc {

namespace {

Vector mat_to_vec(const Matrix& m) {
  Vector v(m.size());
  long idx = 0;
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c) v[idx++] = m(r, c);
  return v;
}

Matrix vec_to_mat(const Vector& v, long rows, long cols) {
  Matrix m(rows, cols);
  long idx = 0;
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) m(r, c) = v[idx++];
  return m;
}

Vector deterministic_start(long n, unsigned seed) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed) * 0x9e3779b97f4a7c15ULL +
                      static_cast<std::uint64_t>(n));
  std::normal_distribution<double> dist(0.0, 1.0);
  Vector v(n);
  for (long i = 0; i < n; ++i) v[i] = Complex(dist(rng), dist(rng));
  v /= v.norm();
  return v;
}

// Reorder a complex Schur form so the diagonal is descending in modulus.
// Each adjacent swap is a 2x2 similarity with a Givens-type unitary.
void sort_schur_descending(Matrix& t, Matrix& q) {
  const long m = t.rows();
  bool moved = true;
  while (moved) {
    moved = false;
    for (long k = 0; k + 1 < m; ++k) {
      if (std::abs(t(k + 1, k + 1)) <= std::abs(t(k, k))) continue;
      const Complex a = t(k, k), b = t(k, k + 1), c = t(k + 1, k + 1);
      Eigen::Matrix2cd g;
      const double nv = std::sqrt(std::norm(b) + std::norm(c - a));
      if (nv < 1e-300) {
        g << 0, 1, 1, 0;
      } else {
        const Complex v0 = b / nv, v1 = (c - a) / nv;
        g << v0, -std::conj(v1), v1, std::conj(v0);
      }
      t.middleCols(k, 2) = (t.middleCols(k, 2) * g).eval();
      t.middleRows(k, 2) = (g.adjoint() * t.middleRows(k, 2)).eval();
      q.middleCols(k, 2) = (q.middleCols(k, 2) * g).eval();
      t(k + 1, k) = 0.0;
      moved = true;
    }
  }
}

struct RitzPair {
  Complex theta;
  Vector y;
  double residual;
};

struct CoreResult {
  Complex eta;
  Vector x;
  Complex eta1;  // subleading Ritz value (gap certificate)
  bool converged;
  int applies;
  double residual;
};

// Krylov-Schur (thick-restart Arnoldi) for the dominant eigenpair of a
// general complex linear operator.
CoreResult eigs_core(const std::function<Vector(const Vector&)>& op, long n,
                     const EigsOptions& opts) {
  const long m = std::min<long>(std::max(opts.krylov_dim, 4), n);
  const long keep = std::min<long>(6, m - 1);

  Matrix basis = Matrix::Zero(n, m + 1);
  Matrix s = Matrix::Zero(m + 1, m);
  basis.col(0) = deterministic_start(n, opts.start_seed);

  long cur = 0;  // restart size; invariant: A*V_cur = V_cur*S + v_cur*spike
  int applies = 0;
  int breakdown_salt = 1;

  CoreResult best{0.0, Vector(), 0.0, false, 0, 1e300};

  while (applies < opts.max_iter) {
    for (long j = cur; j < m; ++j) {
      Vector w = op(basis.col(j));
      ++applies;
      Vector coeff = basis.leftCols(j + 1).adjoint() * w;
      w -= basis.leftCols(j + 1) * coeff;
      Vector coeff2 = basis.leftCols(j + 1).adjoint() * w;
      w -= basis.leftCols(j + 1) * coeff2;
      coeff += coeff2;
      s.col(j).head(j + 1) = coeff;
      const double beta = w.norm();
      if (beta > 1e-14 * std::max(1.0, coeff.norm())) {
        s(j + 1, j) = beta;
        basis.col(j + 1) = w / beta;
      } else {
        // invariant subspace hit; continue in the orthogonal complement
        s(j + 1, j) = 0.0;
        Vector fresh = deterministic_start(n, opts.start_seed + 977u * breakdown_salt++);
        fresh -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).adjoint() * fresh).eval();
        fresh -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).adjoint() * fresh).eval();
        const double fn = fresh.norm();
        if (fn < 1e-12) {  // whole space exhausted (n small)
          basis.col(j + 1).setZero();
        } else {
          basis.col(j + 1) = fresh / fn;
        }
      }
    }

    Matrix h = s.topRows(m);
    Eigen::ComplexEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
      throw ConvergenceError("eigs: Hessenberg eigendecomposition failed", 0.0);

    std::vector<RitzPair> ritz(m);
    const double beta_last = std::abs(s(m, m - 1));
    for (long i = 0; i < m; ++i) {
      ritz[i].theta = es.eigenvalues()[i];
      ritz[i].y = es.eigenvectors().col(i);
      ritz[i].residual = beta_last * std::abs(ritz[i].y[m - 1]);
    }
    std::stable_sort(ritz.begin(), ritz.end(),
                     [](const RitzPair& a, const RitzPair& b) {
                       return std::abs(a.theta) > std::abs(b.theta);
                     });

    const double scale0 = std::max(std::abs(ritz[0].theta), 1e-300);
    const bool primary = ritz[0].residual <= opts.tol * scale0;
    const bool secondary =
        m >= n || m < 2 ||
        ritz[1].residual <=
            std::sqrt(opts.tol) * std::max(std::abs(ritz[1].theta), scale0 * 1e-8);

    if (primary) {
      Vector x = basis.leftCols(m) * ritz[0].y;
      x /= x.norm();
      best = {ritz[0].theta, x, m >= 2 ? ritz[1].theta : Complex(0.0), true,
              applies, ritz[0].residual};
      if (secondary || applies >= opts.max_iter) return best;
    }

    // Krylov-Schur restart: keep the `keep` dominant Schur vectors.
    Eigen::ComplexSchur<Matrix> schur(h);
    if (schur.info() != Eigen::Success)
      throw ConvergenceError("eigs: Schur decomposition failed", 0.0);
    Matrix t = schur.matrixT();
    Matrix q = schur.matrixU();
    sort_schur_descending(t, q);

    Matrix new_basis = basis.leftCols(m) * q.leftCols(keep);
    basis.leftCols(keep) = new_basis;
    basis.col(keep) = basis.col(m);
    Eigen::RowVectorXcd spike = s(m, m - 1) * q.row(m - 1).head(keep);
    s.setZero();
    s.topLeftCorner(keep, keep) = t.topLeftCorner(keep, keep);
    s.row(keep).head(keep) = spike;
    cur = keep;
  }

  if (best.converged) return best;
  throw ConvergenceError("eigs: no convergence within max_iter", best.residual);
}

}  // namespace

TransferMap::TransferMap(const MpsTensor& left, const MpsTensor& right,
                         TransferDirection dir)
    : left_(&left), right_(&right), dir_(dir) {
  if (left.phys_dim() != right.phys_dim())
    throw DimensionError("TransferMap: physical dimensions differ");
}

int TransferMap::rows() const {
  return dir_ == TransferDirection::kRight ? left_->right_dim()
                                           : left_->left_dim();
}

int TransferMap::cols() const {
  return dir_ == TransferDirection::kRight ? right_->right_dim()
                                           : right_->left_dim();
}

Matrix TransferMap::apply(const Matrix& x) const {
  if (x.rows() != rows() || x.cols() != cols())
    throw DimensionError("TransferMap::apply: operand shape mismatch");
  const int d = left_->phys_dim();
  if (dir_ == TransferDirection::kRight) {
    Matrix out = Matrix::Zero(left_->left_dim(), right_->left_dim());
    for (int i = 0; i < d; ++i)
      out.noalias() += left_->a[i] * x * right_->a[i].adjoint();
    return out;
  }
  Matrix out = Matrix::Zero(left_->right_dim(), right_->right_dim());
  for (int i = 0; i < d; ++i)
    out.noalias() += left_->a[i].adjoint() * x * right_->a[i];
  return out;
}

Matrix TransferMap::dense() const {
  const int d = left_->phys_dim();
  const long ro = dir_ == TransferDirection::kRight ? left_->left_dim()
                                                    : left_->right_dim();
  const long co = dir_ == TransferDirection::kRight ? right_->left_dim()
                                                    : right_->right_dim();
  const long ri = rows(), ci = cols();
  Matrix m = Matrix::Zero(ro * co, ri * ci);
  for (int i = 0; i < d; ++i) {
    Matrix p, q;
    if (dir_ == TransferDirection::kRight) {
      p = left_->a[i];
      q = right_->a[i].conjugate();
    } else {
      p = left_->a[i].adjoint();
      q = right_->a[i].transpose();
    }
    for (long a = 0; a < p.rows(); ++a)
      for (long c = 0; c < p.cols(); ++c) {
        if (p(a, c) == Complex(0.0)) continue;
        m.block(a * co, c * ci, co, ci) += p(a, c) * q;
      }
  }
  return m;
}

TransferMap TransferMap::adjoint() const {
  TransferMap t = *this;
  t.dir_ = dir_ == TransferDirection::kRight ? TransferDirection::kLeft
                                             : TransferDirection::kRight;
  return t;
}

void fix_phase(Matrix& m) {
  double best = -1.0;
  Complex pivot = 1.0;
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c) {
      const double a = std::abs(m(r, c));
      if (a > best) {
        best = a;
        pivot = m(r, c);
      }
    }
  if (best > 0.0) m *= std::conj(pivot) / std::abs(pivot);
  const double n = m.norm();
  if (n > 0.0) m /= n;
}

SpectralResult leading_eigenpair(const TransferMap& map,
                                 const EigsOptions& opts) {
  if (opts.tol <= 0) throw Error("leading_eigenpair: tol must be positive");
  const long rr = map.rows(), cc = map.cols();
  const long n = rr * cc;
  if (map.apply(Matrix::Zero(rr, cc)).rows() != rr)
    throw DimensionError("leading_eigenpair: map is not an endomorphism");

  SpectralResult res;
  if (n <= opts.dense_threshold && !opts.force_iterative) {
    Matrix dense = map.dense();
    Eigen::ComplexEigenSolver<Matrix> es(dense);
    if (es.info() != Eigen::Success)
      throw ConvergenceError("leading_eigenpair: dense solve failed", 0.0);
    std::vector<long> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](long a, long b) {
      return std::abs(es.eigenvalues()[a]) > std::abs(es.eigenvalues()[b]);
    });
    res.eta = es.eigenvalues()[order[0]];
    res.vec = vec_to_mat(es.eigenvectors().col(order[0]), rr, cc);
    res.gap = n > 1 ? std::abs(res.eta) - std::abs(es.eigenvalues()[order[1]])
                    : std::abs(res.eta);
    res.converged = true;
    res.iterations = 0;
  } else {
    auto op = [&map, rr, cc](const Vector& v) {
      return mat_to_vec(map.apply(vec_to_mat(v, rr, cc)));
    };
    CoreResult core = eigs_core(op, n, opts);
    res.eta = core.eta;
    res.vec = vec_to_mat(core.x, rr, cc);
    res.gap = n > 1 ? std::max(0.0, std::abs(core.eta) - std::abs(core.eta1))
                    : std::abs(core.eta);
    res.converged = core.converged;
    res.iterations = core.applies;
  }
  fix_phase(res.vec);
  res.residual = (map.apply(res.vec) - res.eta * res.vec).norm();
  res.degenerate_flag =
      n > 1 && res.gap < opts.degeneracy_rel_gap * std::abs(res.eta);
  return res;
}

double subleading_modulus(const TransferMap& map, const EigsOptions& opts) {
  const long rr = map.rows(), cc = map.cols();
  const long n = rr * cc;
  if (n == 1) return 0.0;

  if (n <= opts.dense_threshold && !opts.force_iterative) {
    std::vector<Complex> spec = dense_spectrum(map);
    return std::abs(spec[1]);
  }

  SpectralResult lead = leading_eigenpair(map, opts);
  SpectralResult left = leading_eigenpair(map.adjoint(), opts);
  const Complex wv = (left.vec.adjoint() * lead.vec).trace();
  if (std::abs(wv) < 1e-12)
    // ill-conditioned spectral projector; fall back to the Ritz gap
    return std::max(0.0, std::abs(lead.eta) - lead.gap);

  const Matrix v = lead.vec;
  const Matrix w = left.vec;
  auto op = [&](const Vector& x) {
    Matrix xm = vec_to_mat(x, rr, cc);
    const Complex proj = (w.adjoint() * xm).trace() / wv;
    xm -= proj * v;
    return mat_to_vec(map.apply(xm));
  };
  CoreResult core = eigs_core(op, n, opts);
  return std::abs(core.eta);
}

std::vector<Complex> dense_spectrum(const TransferMap& map) {
  Matrix dense = map.dense();
  Eigen::ComplexEigenSolver<Matrix> es(dense, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("dense_spectrum: eigendecomposition failed", 0.0);
  std::vector<Complex> spec(es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size());
  std::stable_sort(spec.begin(), spec.end(), [](Complex a, Complex b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return spec;
}

}  // namespace hbc
