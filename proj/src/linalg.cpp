#include "fintriple/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace fintriple {

double Tolerance::threshold(double scale) const {
  return std::max(abs_floor, rel * scale);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix conjugate(const ComplexMatrix& a) { return a.conjugate(); }

ComplexMatrix transpose(const ComplexMatrix& a) { return a.transpose(); }

ComplexMatrix comm(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionError("comm: operands must be square of equal dimension");
  return a * b - b * a;
}

ComplexMatrix unit_matrix(int i, int j, int n) {
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw DimensionError("unit_matrix: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("hs_inner: shape mismatch");
  return (a.conjugate().cwiseProduct(b)).sum();
}

double hs_norm(const ComplexMatrix& a) { return a.norm(); }

bool entries_finite(const ComplexMatrix& a) {
  return a.allFinite();
}

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols)
    throw DimensionError("unvec: size mismatch");
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

namespace {

// All SVDs go through Jacobi, with tall inputs first reduced to square by a
// Householder QR (same singular values, kernel carried by the R factor).
// BDCSVD in this Eigen release returns corrupted factors on some
// rank-deficient inputs, so it is avoided everywhere.
struct ThinSvd {
  ComplexMatrix u;
  RealVector s;
};

ThinSvd thin_svd_u(const ComplexMatrix& m) {
  ThinSvd out;
  if (m.rows() > m.cols()) {
    Eigen::HouseholderQR<ComplexMatrix> qr(m);
    ComplexMatrix r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<ComplexMatrix> svd(r, Eigen::ComputeThinU);
    ComplexMatrix thin_q = qr.householderQ() * ComplexMatrix::Identity(m.rows(), m.cols());
    out.u = thin_q * svd.matrixU();
    out.s = svd.singularValues();
  } else {
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
    out.u = svd.matrixU();
    out.s = svd.singularValues();
  }
  return out;
}

void canonicalize_phase(ComplexVector& v, double scale) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double a = std::abs(v[i]);
    if (a > 1e-12 * std::max(scale, 1.0)) {
      v *= std::conj(v[i]) / a;
      return;
    }
  }
}

bool lex_less(const ComplexVector& a, const ComplexVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace

std::vector<ComplexVector> nullspace(const ComplexMatrix& m, const Tolerance& tol) {
  if (!entries_finite(m)) throw DimensionError("nullspace: non-finite entries");
  const Eigen::Index cols = m.cols();
  ComplexMatrix v;
  RealVector s;
  if (m.rows() > cols) {
    Eigen::HouseholderQR<ComplexMatrix> qr(m);
    ComplexMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<ComplexMatrix> svd(r, Eigen::ComputeFullV);
    v = svd.matrixV();
    s = svd.singularValues();
  } else {
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
    v = svd.matrixV();
    s = svd.singularValues();
  }
  const double smax = s.size() > 0 ? s[0] : 0.0;
  const double cut = tol.threshold(smax);

  std::vector<std::pair<double, ComplexVector>> kept;
  for (Eigen::Index i = 0; i < cols; ++i) {
    const double si = i < s.size() ? s[i] : 0.0;
    if (si <= cut) {
      ComplexVector col = v.col(i);
      canonicalize_phase(col, 1.0);
      kept.emplace_back(si, std::move(col));
    }
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return lex_less(a.second, b.second);
  });

  std::vector<ComplexVector> out;
  out.reserve(kept.size());
  for (auto& kv : kept) out.push_back(std::move(kv.second));
  return out;
}

MatrixSubspace::MatrixSubspace(int ambient_dim)
    : ambient_dim_(ambient_dim),
      cols_(static_cast<Eigen::Index>(ambient_dim) * ambient_dim, 0) {
  if (ambient_dim <= 0) throw DimensionError("MatrixSubspace: ambient_dim must be positive");
}

MatrixSubspace MatrixSubspace::from_orthonormal_columns(int ambient_dim, ComplexMatrix cols) {
  MatrixSubspace s(ambient_dim);
  if (cols.rows() != static_cast<Eigen::Index>(ambient_dim) * ambient_dim)
    throw DimensionError("MatrixSubspace: column length must be ambient_dim^2");
  s.cols_ = std::move(cols);
  return s;
}

ComplexMatrix MatrixSubspace::basis_matrix(int t) const {
  if (t < 0 || t >= dim()) throw DimensionError("MatrixSubspace: basis index out of range");
  return unvec(cols_.col(t), ambient_dim_, ambient_dim_);
}

std::vector<ComplexMatrix> MatrixSubspace::basis() const {
  std::vector<ComplexMatrix> out;
  out.reserve(dim());
  for (int t = 0; t < dim(); ++t) out.push_back(basis_matrix(t));
  return out;
}

ComplexMatrix MatrixSubspace::project(const ComplexMatrix& x) const {
  if (x.rows() != ambient_dim_ || x.cols() != ambient_dim_)
    throw DimensionError("MatrixSubspace: ambient mismatch");
  if (dim() == 0) return ComplexMatrix::Zero(ambient_dim_, ambient_dim_);
  ComplexVector vx = vec(x);
  return unvec(cols_ * (cols_.adjoint() * vx), ambient_dim_, ambient_dim_);
}

double MatrixSubspace::residual(const ComplexMatrix& x) const {
  if (x.rows() != ambient_dim_ || x.cols() != ambient_dim_)
    throw DimensionError("MatrixSubspace: ambient mismatch");
  ComplexVector vx = vec(x);
  if (dim() == 0) return vx.norm();
  return (vx - cols_ * (cols_.adjoint() * vx)).norm();
}

double MatrixSubspace::gram_defect() const {
  if (dim() == 0) return 0.0;
  ComplexMatrix g = cols_.adjoint() * cols_;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

MatrixSubspace orthonormalize(const std::vector<ComplexMatrix>& mats,
                              const Tolerance& tol, double floor) {
  if (mats.empty()) throw DimensionError("orthonormalize: empty input");
  const Eigen::Index n = mats[0].rows();
  if (mats[0].cols() != n) throw DimensionError("orthonormalize: matrices must be square");
  ComplexMatrix stack(n * n, static_cast<Eigen::Index>(mats.size()));
  for (size_t t = 0; t < mats.size(); ++t) {
    if (mats[t].rows() != n || mats[t].cols() != n)
      throw DimensionError("orthonormalize: mixed dimensions");
    stack.col(static_cast<Eigen::Index>(t)) = vec(mats[t]);
  }
  ThinSvd svd = thin_svd_u(stack);
  const double smax = svd.s.size() > 0 ? svd.s[0] : 0.0;
  const double cut = std::max(tol.threshold(smax), floor);
  Eigen::Index keep = 0;
  while (keep < svd.s.size() && svd.s[keep] > cut) ++keep;
  return MatrixSubspace::from_orthonormal_columns(static_cast<int>(n),
                                                  svd.u.leftCols(keep));
}

bool subspace_contains(const MatrixSubspace& s, const ComplexMatrix& x,
                       const Tolerance& tol) {
  return s.residual(x) <= tol.threshold(hs_norm(x));
}

double projector_distance(const MatrixSubspace& s1, const MatrixSubspace& s2) {
  if (s1.ambient_dim() != s2.ambient_dim())
    throw DimensionError("projector_distance: ambient mismatch");
  const ComplexMatrix& b1 = s1.columns();
  const ComplexMatrix& b2 = s2.columns();
  double r1 = 0.0, r2 = 0.0;
  if (b1.cols() > 0) {
    if (b2.cols() > 0)
      r1 = (b1 - b2 * (b2.adjoint() * b1)).squaredNorm();
    else
      r1 = static_cast<double>(b1.cols());
  }
  if (b2.cols() > 0) {
    if (b1.cols() > 0)
      r2 = (b2 - b1 * (b1.adjoint() * b2)).squaredNorm();
    else
      r2 = static_cast<double>(b2.cols());
  }
  return std::sqrt(r1 + r2);
}

bool subspace_equal(const MatrixSubspace& s1, const MatrixSubspace& s2,
                    const Tolerance& tol) {
  if (s1.ambient_dim() != s2.ambient_dim())
    throw DimensionError("subspace_equal: ambient mismatch");
  if (s1.dim() != s2.dim()) return false;
  return projector_distance(s1, s2) <= tol.threshold(1.0);
}

SpanBuilder::SpanBuilder(int ambient_dim, const Tolerance& tol, double floor)
    : ambient_dim_(ambient_dim), tol_(tol), floor_(floor) {
  if (ambient_dim <= 0) throw DimensionError("SpanBuilder: ambient_dim must be positive");
  cols_.resize(static_cast<Eigen::Index>(ambient_dim) * ambient_dim, 16);
}

bool SpanBuilder::add(const ComplexMatrix& x) {
  if (x.rows() != ambient_dim_ || x.cols() != ambient_dim_)
    throw DimensionError("SpanBuilder: ambient mismatch");
  return add_vec(vec(x));
}

bool SpanBuilder::add_vec(const ComplexVector& v) {
  const double nx = v.norm();
  const double cut = std::max(floor_, tol_.threshold(nx));
  if (nx <= cut) return false;

  ComplexVector r = v;
  // Two Gram-Schmidt passes keep orthogonality at machine level even when the
  // candidate is nearly inside the span.
  for (int pass = 0; pass < 2 && dim_ > 0; ++pass) {
    auto b = cols_.leftCols(dim_);
    r -= b * (b.adjoint() * r);
  }
  const double nr = r.norm();
  if (nr <= cut) return false;

  if (dim_ == cols_.cols())
    cols_.conservativeResize(Eigen::NoChange, std::min<Eigen::Index>(
        cols_.cols() * 2, static_cast<Eigen::Index>(ambient_dim_) * ambient_dim_));
  cols_.col(dim_++) = r / nr;
  return true;
}

MatrixSubspace SpanBuilder::subspace() const {
  return MatrixSubspace::from_orthonormal_columns(ambient_dim_, cols_.leftCols(dim_));
}

}  // namespace fintriple
