#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace fintriple {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct DimensionError : std::invalid_argument {
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Rank/zero decisions: anything below max(abs_floor, rel * scale) is zero,
/// where scale is the relevant magnitude (largest singular value, operator
/// norm, ...). Defaults suit double precision at ambient dims <= 1024.
struct Tolerance {
  double rel = 1e-10;
  double abs_floor = 1e-12;
  double threshold(double scale) const;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
/// comm(a, b) = ab - ba; requires equal square dims.
ComplexMatrix comm(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix unit e_{ij} in M_n (0-based indices).
ComplexMatrix unit_matrix(int i, int j, int n);

/// Hilbert-Schmidt inner product trace(a* b) and the induced (Frobenius) norm.
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double hs_norm(const ComplexMatrix& a);

bool entries_finite(const ComplexMatrix& a);

/// Column-major vectorization and its inverse.
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, int rows, int cols);

/// Orthonormal basis of the numerical kernel of m (any shape; kernel in the
/// domain). Vectors are ordered by ascending singular value with a
/// lexicographic tie-break on components, phases fixed so the first
/// significant component is real positive.
std::vector<ComplexVector> nullspace(const ComplexMatrix& m, const Tolerance& tol = {});

/// An orthonormal (Hilbert-Schmidt) basis of a subspace of operators on
/// C^ambient_dim, stored as the ambient_dim^2 x dim matrix of vectorized
/// basis elements.
class MatrixSubspace {
 public:
  explicit MatrixSubspace(int ambient_dim);
  static MatrixSubspace from_orthonormal_columns(int ambient_dim, ComplexMatrix cols);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(cols_.cols()); }
  const ComplexMatrix& columns() const { return cols_; }
  ComplexMatrix basis_matrix(int t) const;
  std::vector<ComplexMatrix> basis() const;

  /// Orthogonal projection of x onto the subspace.
  ComplexMatrix project(const ComplexMatrix& x) const;
  /// ||x - P(x)||_HS.
  double residual(const ComplexMatrix& x) const;
  /// Largest deviation of the basis Gram matrix from the identity.
  double gram_defect() const;

 private:
  int ambient_dim_;
  ComplexMatrix cols_;
};

/// Orthonormal HS basis of the complex span, rank-revealing by SVD. floor is
/// an absolute singular-value cutoff so candidate sets that are pure roundoff
/// yield the zero subspace.
MatrixSubspace orthonormalize(const std::vector<ComplexMatrix>& mats,
                              const Tolerance& tol = {}, double floor = 0.0);

/// x lies in s up to tolerance relative to ||x|| (x = 0 is contained everywhere).
bool subspace_contains(const MatrixSubspace& s, const ComplexMatrix& x,
                       const Tolerance& tol = {});
/// Equal dimensions and projector Frobenius distance below threshold.
bool subspace_equal(const MatrixSubspace& s1, const MatrixSubspace& s2,
                    const Tolerance& tol = {});
/// ||P1 - P2||_F computed through the cancellation-free residual identity
/// ||P1 - P2||^2 = ||(1-P2)B1||^2 + ||(1-P1)B2||^2.
double projector_distance(const MatrixSubspace& s1, const MatrixSubspace& s2);

/// Incremental span accumulation by modified Gram-Schmidt with a second
/// orthogonalization pass. Candidates whose residual falls below
/// max(floor, tol.rel * ||candidate||) are dropped. Produces the same spans
/// as orthonormalize on well-separated inputs at a fraction of the cost.
class SpanBuilder {
 public:
  SpanBuilder(int ambient_dim, const Tolerance& tol = {}, double floor = 0.0);

  /// Returns true when the candidate enlarged the span.
  bool add(const ComplexMatrix& x);
  bool add_vec(const ComplexVector& v);

  int dim() const { return dim_; }
  int ambient_dim() const { return ambient_dim_; }
  MatrixSubspace subspace() const;
  /// Direct access to the orthonormal columns accumulated so far.
  ComplexMatrix columns() const { return cols_.leftCols(dim_); }

 private:
  int ambient_dim_;
  Tolerance tol_;
  double floor_;
  ComplexMatrix cols_;
  int dim_ = 0;
};

}  // namespace fintriple
