#include "fintriple/algebra.hpp"
#include "fintriple/rng.hpp"

#include <algorithm>
#include <cmath>

namespace fintriple {

namespace {

void require_square_equal(const std::vector<ComplexMatrix>& mats, const char* who) {
  if (mats.empty()) throw DimensionError(std::string(who) + ": empty matrix list");
  const Eigen::Index n = mats[0].rows();
  for (const auto& m : mats)
    if (m.rows() != n || m.cols() != n)
      throw DimensionError(std::string(who) + ": matrices must be square of equal dimension");
}

ComplexMatrix apply_ad(const ComplexMatrix& g, const ComplexMatrix& x) {
  return g * x - x * g;
}

}  // namespace

AntilinearMap::AntilinearMap(ComplexMatrix c, const Tolerance& tol) : c_(std::move(c)) {
  if (c_.rows() != c_.cols() || c_.rows() == 0)
    throw DimensionError("AntilinearMap: linear part must be square");
  if (!entries_finite(c_)) throw DimensionError("AntilinearMap: non-finite entries");
  const int n = dim();
  const double cut = tol.threshold(1.0) * std::sqrt(static_cast<double>(n)) * 10.0;
  ComplexMatrix gram = c_.adjoint() * c_;
  gram.diagonal().array() -= 1.0;
  if (gram.norm() > cut)
    throw AlgebraError("AntilinearMap: linear part is not unitary");
  ComplexMatrix s = c_ * c_.conjugate();
  const double dplus = (s - ComplexMatrix::Identity(n, n)).norm();
  const double dminus = (s + ComplexMatrix::Identity(n, n)).norm();
  if (std::min(dplus, dminus) > cut)
    throw AlgebraError("AntilinearMap: c * conj(c) is not +/- identity");
  sign_ = dplus <= dminus ? 1 : -1;
}

ComplexVector AntilinearMap::apply(const ComplexVector& v) const {
  if (v.size() != c_.rows()) throw DimensionError("AntilinearMap: vector dimension mismatch");
  return c_ * v.conjugate();
}

ComplexMatrix AntilinearMap::ad(const ComplexMatrix& x) const {
  if (x.rows() != c_.rows() || x.cols() != c_.cols())
    throw DimensionError("AntilinearMap: operator dimension mismatch");
  return c_ * x.conjugate() * c_.adjoint();
}

StarAlgebra generated_algebra(const std::vector<ComplexMatrix>& generators,
                              bool unital, const Tolerance& tol) {
  if (generators.empty())
    throw DimensionError("generated_algebra: ambient dimension unknown for empty generator list");
  require_square_equal(generators, "generated_algebra");
  const int n = static_cast<int>(generators[0].rows());

  SpanBuilder sb(n, tol);
  if (unital) sb.add(ComplexMatrix::Identity(n, n));
  for (const auto& g : generators) sb.add(g);

  // Worklist closure: every orthonormal basis element, exactly once, offers
  // its adjoint and its products with each generator. A span stable under
  // those offers contains all generator words, hence the whole generated
  // algebra. Candidates are pre-screened in batches with a two-pass residual
  // against a snapshot of the span; the snapshot can only overestimate the
  // residual, so half of the admission cut is a safe discard margin, and
  // survivors still go through the canonical SpanBuilder admission.
  const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
  const Eigen::Index chunk = 192;
  std::vector<ComplexMatrix> pending;
  pending.reserve(chunk + 2 * generators.size() + 1);
  int processed = 0;
  while (processed < sb.dim()) {
    ComplexMatrix x = unvec(sb.columns().col(processed++), n, n);
    pending.push_back(x.adjoint());
    for (const auto& g : generators) {
      pending.push_back(x * g);
      pending.push_back(g * x);
    }
    if (processed < sb.dim() && static_cast<Eigen::Index>(pending.size()) < chunk) continue;

    ComplexMatrix q = sb.columns();
    ComplexMatrix c(nn, static_cast<Eigen::Index>(pending.size()));
    for (size_t j = 0; j < pending.size(); ++j)
      c.col(static_cast<Eigen::Index>(j)) = vec(pending[j]);
    ComplexMatrix r = c - q * (q.adjoint() * c).eval();
    r -= q * (q.adjoint() * r).eval();
    for (size_t j = 0; j < pending.size(); ++j) {
      const Eigen::Index jj = static_cast<Eigen::Index>(j);
      if (r.col(jj).norm() > 0.5 * tol.threshold(c.col(jj).norm())) sb.add(pending[j]);
    }
    pending.clear();
  }
  return StarAlgebra{sb.subspace(), unital, std::nullopt};
}

StarAlgebra commutant(const std::vector<ComplexMatrix>& generators, const Tolerance& tol) {
  require_square_equal(generators, "commutant");
  const int n = static_cast<int>(generators[0].rows());
  const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;

  // Work with a *-closed family so the joint kernel is the commutant of the
  // generated *-algebra (and closed under the adjoint itself). When the span
  // of the generators already contains every adjoint (e.g. an algebra basis),
  // the extra family members are redundant and skipped.
  std::vector<ComplexMatrix> fam = generators;
  {
    MatrixSubspace span = orthonormalize(generators, tol);
    for (const auto& g : generators) {
      ComplexMatrix ga = g.adjoint();
      if ((g - ga).norm() <= tol.threshold(g.norm())) continue;
      if (span.residual(ga) <= tol.threshold(ga.norm())) continue;
      fam.push_back(std::move(ga));
    }
  }

  ComplexMatrix kernel_cols;
  if (n <= 8) {
    ComplexMatrix id = ComplexMatrix::Identity(n, n);
    ComplexMatrix stacked(static_cast<Eigen::Index>(fam.size()) * nn, nn);
    for (size_t t = 0; t < fam.size(); ++t)
      stacked.middleRows(static_cast<Eigen::Index>(t) * nn, nn) =
          kron(id, fam[t]) - kron(fam[t].transpose(), id);
    auto vecs = nullspace(stacked, tol);
    kernel_cols.resize(nn, static_cast<Eigen::Index>(vecs.size()));
    for (size_t t = 0; t < vecs.size(); ++t) kernel_cols.col(static_cast<Eigen::Index>(t)) = vecs[t];
  } else {
    // Accumulate M = sum_g (ad_g)^H (ad_g); its kernel is the joint kernel.
    ComplexMatrix id = ComplexMatrix::Identity(n, n);
    ComplexMatrix m = ComplexMatrix::Zero(nn, nn);
    for (const auto& g : fam) {
      m += kron(id, g.adjoint() * g);
      m += kron((g.conjugate() * g.transpose()).eval(), id);
      m -= kron(g.transpose(), g.adjoint());
      m -= kron(g.conjugate(), g);
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(m);
    const RealVector& ev = eig.eigenvalues();
    const double top = std::max(ev.cwiseAbs().maxCoeff(), 0.0);
    // Generous superset cut; the per-generator refinement below trims it.
    const double cut = std::max(1e-8 * top, tol.abs_floor);
    Eigen::Index count = 0;
    while (count < ev.size() && ev[count] <= cut) ++count;
    ComplexMatrix b = eig.eigenvectors().leftCols(count);

    for (const auto& g : fam) {
      if (b.cols() == 0) break;
      ComplexMatrix r(nn, b.cols());
      for (Eigen::Index t = 0; t < b.cols(); ++t)
        r.col(t) = vec(apply_ad(g, unvec(b.col(t), n, n)));
      // QR-reduce to square, then Jacobi (see linalg.cpp on BDCSVD).
      Eigen::HouseholderQR<ComplexMatrix> qr(r);
      ComplexMatrix rr = qr.matrixQR().topRows(b.cols()).triangularView<Eigen::Upper>();
      Eigen::JacobiSVD<ComplexMatrix> svd(rr, Eigen::ComputeFullV);
      const RealVector& s = svd.singularValues();
      const double smax = s.size() > 0 ? s[0] : 0.0;
      const double scut = tol.threshold(smax);
      Eigen::Index keep_from = 0;
      while (keep_from < s.size() && s[keep_from] > scut) ++keep_from;
      b = (b * svd.matrixV().rightCols(b.cols() - keep_from)).eval();
    }
    kernel_cols = std::move(b);
  }

  auto space = MatrixSubspace::from_orthonormal_columns(n, std::move(kernel_cols));
  if (!subspace_contains(space, ComplexMatrix::Identity(n, n), tol))
    throw AlgebraError("commutant: kernel lost the identity (numerical failure)");
  return StarAlgebra{std::move(space), true, std::nullopt};
}

MatrixSubspace relative_commutant(const MatrixSubspace& within,
                                  const std::vector<ComplexMatrix>& generators,
                                  const Tolerance& tol) {
  const int n = within.ambient_dim();
  const int d = within.dim();
  if (d == 0 || generators.empty()) return within;
  require_square_equal(generators, "relative_commutant");
  if (generators[0].rows() != n)
    throw DimensionError("relative_commutant: generator dimension does not match ambient");

  // One wide and one tall copy of the basis make each generator's worth of
  // commutator columns two large products instead of 2d small ones.
  const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
  ComplexMatrix wide(n, static_cast<Eigen::Index>(d) * n);
  ComplexMatrix tall(static_cast<Eigen::Index>(d) * n, n);
  for (int t = 0; t < d; ++t) {
    ComplexMatrix e = within.basis_matrix(t);
    wide.middleCols(static_cast<Eigen::Index>(t) * n, n) = e;
    tall.middleRows(static_cast<Eigen::Index>(t) * n, n) = e;
  }
  ComplexMatrix sys(static_cast<Eigen::Index>(generators.size()) * nn, d);
  for (size_t k = 0; k < generators.size(); ++k) {
    const ComplexMatrix& g = generators[k];
    ComplexMatrix ge = g * wide;
    ComplexMatrix eg = tall * g;
    for (int t = 0; t < d; ++t)
      sys.block(static_cast<Eigen::Index>(k) * nn, t, nn, 1) =
          vec((eg.middleRows(static_cast<Eigen::Index>(t) * n, n) -
               ge.middleCols(static_cast<Eigen::Index>(t) * n, n))
                  .eval());
  }
  auto coeffs = nullspace(sys, tol);
  ComplexMatrix cols(nn, static_cast<Eigen::Index>(coeffs.size()));
  for (size_t u = 0; u < coeffs.size(); ++u)
    cols.col(static_cast<Eigen::Index>(u)) = within.columns() * coeffs[u];
  return MatrixSubspace::from_orthonormal_columns(n, std::move(cols));
}

MatrixSubspace subspace_intersection(const MatrixSubspace& s1, const MatrixSubspace& s2,
                                     const Tolerance& tol) {
  if (s1.ambient_dim() != s2.ambient_dim())
    throw DimensionError("subspace_intersection: ambient mismatch");
  const int n = s1.ambient_dim();
  if (s1.dim() == 0 || s2.dim() == 0) return MatrixSubspace(n);
  ComplexMatrix c = s1.columns().adjoint() * s2.columns();
  Eigen::JacobiSVD<ComplexMatrix> svd(c, Eigen::ComputeFullU);
  const RealVector& s = svd.singularValues();
  const double cut = 1.0 - 100.0 * tol.threshold(1.0);
  Eigen::Index count = 0;
  while (count < s.size() && s[count] >= cut) ++count;
  return MatrixSubspace::from_orthonormal_columns(
      n, s1.columns() * svd.matrixU().leftCols(count));
}

namespace {

// Real-orthonormal basis of the self-adjoint part of a *-closed subspace.
std::vector<ComplexMatrix> hermitian_basis(const MatrixSubspace& z, const Tolerance& tol) {
  std::vector<ComplexMatrix> out;
  const Complex iu(0.0, 1.0);
  for (int t = 0; t < z.dim(); ++t) {
    ComplexMatrix x = z.basis_matrix(t);
    for (ComplexMatrix h : {ComplexMatrix(x + x.adjoint()), ComplexMatrix(iu * (x - x.adjoint()))}) {
      const double nh = h.norm();
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& u : out) h -= hs_inner(u, h).real() * u;
      const double nr = h.norm();
      if (nr > std::max(tol.threshold(nh), tol.abs_floor)) out.push_back(h / nr);
    }
  }
  return out;
}

struct ClusterResult {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> ranges;  // [begin, end)
  bool ambiguous = false;
};

ClusterResult cluster_eigenvalues(const RealVector& ev, double merge_rel) {
  ClusterResult out;
  const Eigen::Index n = ev.size();
  const double spread = ev[n - 1] - ev[0];
  if (spread <= 1e-12) {
    out.ranges.emplace_back(0, n);
    return out;
  }
  const double merge = merge_rel * spread;
  Eigen::Index begin = 0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double gap = ev[i + 1] - ev[i];
    if (gap > merge) {
      out.ranges.emplace_back(begin, i + 1);
      begin = i + 1;
    } else if (gap > 0.01 * merge) {
      // Gap in the gray zone around the cut: clustering is not trustworthy.
      out.ambiguous = true;
    }
  }
  out.ranges.emplace_back(begin, n);
  return out;
}

bool diag_lex_less(const ComplexMatrix& a, const ComplexMatrix& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double x = a(i, i).real(), y = b(i, i).real();
    if (std::abs(x - y) > 1e-9) return x < y;
  }
  return false;
}

}  // namespace

StarAlgebra wedderburn(const StarAlgebra& b, const Tolerance& tol, std::uint64_t seed) {
  if (!b.unital) throw AlgebraError("wedderburn: algebra must be unital");
  const int n = b.ambient_dim();
  const int d = b.dim();
  if (d == 0) throw AlgebraError("wedderburn: zero algebra");

  // Light closure screen; thorough closure is the caller's contract.
  {
    const int probe = std::min(d, 3);
    for (int i = 0; i < probe; ++i) {
      if (b.space.residual(b.space.basis_matrix(i).adjoint()) > 1e-8)
        throw AlgebraError("wedderburn: input is not adjoint-closed");
      for (int j = 0; j < probe; ++j)
        if (b.space.residual(b.space.basis_matrix(i) * b.space.basis_matrix(j)) > 1e-8)
          throw AlgebraError("wedderburn: input is not product-closed");
    }
  }

  // Center of b, computed inside b: coefficient kernel of the stacked
  // commutator map c_t -> [sum_t c_t B_t, B_s]. Never touches the ambient
  // n^2-dimensional operator space, so it scales to large Hilbert spaces.
  const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
  std::vector<ComplexMatrix> basis = b.space.basis();
  MatrixSubspace center(n);
  {
    ComplexMatrix sys(static_cast<Eigen::Index>(d) * nn, d);
    for (int t = 0; t < d; ++t)
      for (int s = 0; s < d; ++s)
        sys.block(static_cast<Eigen::Index>(s) * nn, t, nn, 1) = vec(comm(basis[t], basis[s]));
    auto coeffs = nullspace(sys, tol);
    ComplexMatrix cols(nn, static_cast<Eigen::Index>(coeffs.size()));
    for (size_t u = 0; u < coeffs.size(); ++u) {
      ComplexMatrix z = ComplexMatrix::Zero(n, n);
      for (int t = 0; t < d; ++t) z += coeffs[u][t] * basis[t];
      cols.col(static_cast<Eigen::Index>(u)) = vec(z);
    }
    // Orthonormal coefficient vectors map to orthonormal matrices because the
    // basis is itself orthonormal.
    center = MatrixSubspace::from_orthonormal_columns(n, std::move(cols));
  }
  std::vector<ComplexMatrix> herm = hermitian_basis(center, tol);
  if (static_cast<int>(herm.size()) != center.dim())
    throw AlgebraError("wedderburn: self-adjoint central basis has unexpected dimension");

  std::string last_failure = "eigenvalue clustering stayed ambiguous";
  for (int attempt = 0; attempt < 8; ++attempt) {
    GaussianSource gauss(mix_seed(seed, 0x77edde2bULL, static_cast<std::uint64_t>(attempt)));
    ComplexMatrix central = ComplexMatrix::Zero(n, n);
    for (const auto& h : herm) central += gauss.normal() * h;
    central = 0.5 * (central + central.adjoint()).eval();

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(central);
    ClusterResult clusters = cluster_eigenvalues(eig.eigenvalues(), 1e-6);
    if (clusters.ambiguous) continue;
    if (clusters.ranges.size() != static_cast<size_t>(center.dim())) {
      last_failure = "cluster count disagrees with the center dimension";
      continue;
    }

    std::vector<WedderburnBlock> blocks;
    bool ok = true;
    int sum_mk = 0, sum_m2 = 0;
    for (const auto& [lo, hi] : clusters.ranges) {
      ComplexMatrix u = eig.eigenvectors().middleCols(lo, hi - lo);
      WedderburnBlock blk;
      blk.p = u * u.adjoint();

      std::vector<ComplexMatrix> corner;
      corner.reserve(d);
      for (int t = 0; t < d; ++t)
        corner.push_back(blk.p * b.space.basis_matrix(t) * blk.p);
      const int corner_dim = orthonormalize(corner, tol, 1e-10).dim();
      blk.m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(corner_dim))));
      const double tr = blk.p.trace().real();
      const int rank = static_cast<int>(std::lround(tr));
      if (blk.m * blk.m != corner_dim || std::abs(tr - rank) > 1e-6 ||
          blk.m <= 0 || rank % blk.m != 0) {
        ok = false;
        last_failure = "block sizes are not integral";
        break;
      }
      blk.k = rank / blk.m;
      sum_mk += blk.m * blk.k;
      sum_m2 += blk.m * blk.m;
      blocks.push_back(std::move(blk));
    }
    if (!ok) continue;
    if (sum_mk != n || sum_m2 != d) {
      last_failure = "block dimension sums disagree with the algebra";
      continue;
    }

    // Structural invariants of the central projections.
    ComplexMatrix sum_p = ComplexMatrix::Zero(n, n);
    for (const auto& blk : blocks) {
      if ((blk.p - blk.p.adjoint()).norm() > 1e-8 ||
          (blk.p * blk.p - blk.p).norm() > 1e-8) { ok = false; break; }
      sum_p += blk.p;
    }
    if (!ok || (sum_p - ComplexMatrix::Identity(n, n)).norm() > 1e-8) {
      last_failure = "central projections failed idempotence/partition checks";
      continue;
    }

    std::sort(blocks.begin(), blocks.end(), [](const WedderburnBlock& a, const WedderburnBlock& c) {
      if (a.m != c.m) return a.m < c.m;
      if (a.k != c.k) return a.k < c.k;
      return diag_lex_less(a.p, c.p);
    });
    return StarAlgebra{b.space, b.unital, std::move(blocks)};
  }
  throw AlgebraError("wedderburn: " + last_failure + " after retries");
}

ComplexMatrix circle(const ComplexMatrix& xi, const AntilinearMap& j) {
  if (xi.rows() != j.dim() || xi.cols() != j.dim())
    throw DimensionError("circle: operator dimension mismatch");
  return j.linear_part() * xi.transpose() * j.linear_part().adjoint();
}

StarAlgebra circle_algebra(const StarAlgebra& b, const AntilinearMap& j, const Tolerance& tol) {
  if (b.ambient_dim() != j.dim()) throw DimensionError("circle_algebra: dimension mismatch");
  std::vector<ComplexMatrix> image;
  image.reserve(b.dim());
  for (int t = 0; t < b.dim(); ++t) image.push_back(circle(b.space.basis_matrix(t), j));
  if (image.empty()) return StarAlgebra{MatrixSubspace(b.ambient_dim()), b.unital, std::nullopt};
  return StarAlgebra{orthonormalize(image, tol), b.unital, std::nullopt};
}

}  // namespace fintriple
