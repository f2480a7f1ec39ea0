#include "fintriple/fastpath.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace fintriple {
namespace {

// An element of the internal commutant M_{8n} + M_{4n} + M_{4n} + M_{4n} is
// block diagonal in the flat basis, with the smaller summands repeated along
// the diagonal once per copy of the corresponding irreducible module:
//   rows [0, 8n)                      the M_{8n} summand, multiplicity 1
//   rows [8n, 12n)                    the first M_{4n}, multiplicity 1
//   rows [16n, 20n) and [24n, 28n)    the second M_{4n} twice, multiplicity 2
//   rows [12n, 16n), [20n, 24n),
//        [28n, 32n)                   the third M_{4n} thrice, multiplicity 3
// Collapsing the copies gives a faithful *-isomorphism onto block-diagonal
// matrices in M_{20n}; Hilbert-space multiplicities of the reduced diagonal
// ranges are 1, 1, 2, 3 in that order.
ComplexMatrix reduce_to_blocks(const ComplexMatrix& x, int n, const Tolerance& tol) {
  const int h = 32 * n;
  ComplexMatrix one8 = x.block(0, 0, 8 * n, 8 * n);
  ComplexMatrix one4 = x.block(8 * n, 8 * n, 4 * n, 4 * n);
  ComplexMatrix two4 = x.block(16 * n, 16 * n, 4 * n, 4 * n);
  ComplexMatrix three4 = x.block(12 * n, 12 * n, 4 * n, 4 * n);

  ComplexMatrix recon = ComplexMatrix::Zero(h, h);
  recon.block(0, 0, 8 * n, 8 * n) = one8;
  recon.block(8 * n, 8 * n, 4 * n, 4 * n) = one4;
  recon.block(16 * n, 16 * n, 4 * n, 4 * n) = two4;
  recon.block(24 * n, 24 * n, 4 * n, 4 * n) = two4;
  recon.block(12 * n, 12 * n, 4 * n, 4 * n) = three4;
  recon.block(20 * n, 20 * n, 4 * n, 4 * n) = three4;
  recon.block(28 * n, 28 * n, 4 * n, 4 * n) = three4;
  if (hs_norm(x - recon) > tol.threshold(std::max(1.0, hs_norm(x))))
    throw AlgebraError("sm_hodge_fast: commutant element breaks the repeated-copy block layout");

  ComplexMatrix red = ComplexMatrix::Zero(20 * n, 20 * n);
  red.block(0, 0, 8 * n, 8 * n) = std::move(one8);
  red.block(8 * n, 8 * n, 4 * n, 4 * n) = std::move(one4);
  red.block(12 * n, 12 * n, 4 * n, 4 * n) = std::move(two4);
  red.block(16 * n, 16 * n, 4 * n, 4 * n) = std::move(three4);
  return red;
}

}  // namespace

MatrixSubspace sm_internal_commutant(int generations, const Tolerance& tol) {
  return orthonormalize(sm_commutant_span(generations), tol);
}

SMHodgeVerdict sm_hodge_fast(const SMTriple& t, const MatrixSubspace& internal_commutant,
                             const Tolerance& tol) {
  const int n = t.params.generations;
  const int h = t.triple.dim_h;
  if (h != 32 * n)
    throw DimensionError("sm_hodge_fast: Hilbert space does not match the generation count");
  if (internal_commutant.ambient_dim() != h ||
      internal_commutant.dim() != 112 * n * n)
    throw DimensionError("sm_hodge_fast: commutant basis does not match the triple");

  // X = Cl'. Inside the internal commutant the algebra part of Cl imposes
  // nothing, so only the one-form generators and their adjoints constrain.
  std::vector<ComplexMatrix> constraints;
  constraints.reserve(12);
  for (const auto& g : sm_generators(n)) {
    ComplexMatrix dg = t.triple.dirac * g - g * t.triple.dirac;
    constraints.push_back(dg.adjoint());
    constraints.push_back(std::move(dg));
  }
  MatrixSubspace x = relative_commutant(internal_commutant, constraints, tol);

  SMHodgeVerdict v;
  v.commutant_dim = x.dim();

  std::vector<ComplexMatrix> reduced;
  reduced.reserve(static_cast<size_t>(x.dim()));
  for (int i = 0; i < x.dim(); ++i)
    reduced.push_back(reduce_to_blocks(x.basis_matrix(i), n, tol));
  MatrixSubspace red = orthonormalize(reduced, tol);
  if (red.dim() != x.dim())
    throw AlgebraError("sm_hodge_fast: collapsing the copies lost dimensions");
  StarAlgebra xs = wedderburn(StarAlgebra{std::move(red), true, std::nullopt}, tol);

  // dim Cl = dim X'' = sum_i mu_i^2, where mu_i counts the copies of the
  // i-th irreducible X-module in C^{32n}: a partial-trace combination of the
  // minimal central projections with the sector multiplicities as weights.
  long clifford = 0;
  long covered = 0;
  for (const auto& blk : *xs.structure) {
    const double tr = blk.p.block(0, 0, 8 * n, 8 * n).trace().real() +
                      blk.p.block(8 * n, 8 * n, 4 * n, 4 * n).trace().real() +
                      2.0 * blk.p.block(12 * n, 12 * n, 4 * n, 4 * n).trace().real() +
                      3.0 * blk.p.block(16 * n, 16 * n, 4 * n, 4 * n).trace().real();
    const double mu = tr / blk.m;
    const long mult = std::lround(mu);
    if (mult <= 0 || std::abs(mu - static_cast<double>(mult)) > 1e-6)
      throw AlgebraError("sm_hodge_fast: non-integral Hilbert-space multiplicity");
    clifford += mult * mult;
    covered += static_cast<long>(blk.m) * mult;
  }
  if (covered != h)
    throw AlgebraError("sm_hodge_fast: multiplicities do not cover the Hilbert space");
  v.clifford_dim = static_cast<int>(clifford);

  // X-degree inside X' = Cl: every pairwise commutator of the circled basis
  // with the basis itself must vanish. Together with equal dimensions this
  // is exactly Cl' = Cl-degree. Stacked copies turn the d^2 products into
  // 2d matrix multiplies.
  const Eigen::Index hh = h;
  const Eigen::Index d = x.dim();
  ComplexMatrix wide(hh, d * hh);
  ComplexMatrix tall(d * hh, hh);
  for (Eigen::Index k = 0; k < d; ++k) {
    ComplexMatrix xk = x.basis_matrix(static_cast<int>(k));
    wide.middleCols(k * hh, hh) = xk;
    tall.middleRows(k * hh, hh) = std::move(xk);
  }
  double worst = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    const ComplexMatrix xc = circle(x.basis_matrix(static_cast<int>(k)), t.triple.j);
    const ComplexMatrix left = xc * wide;
    const ComplexMatrix right = tall * xc;
    for (Eigen::Index j = 0; j < d; ++j)
      worst = std::max(worst,
                       (left.middleCols(j * hh, hh) - right.middleRows(j * hh, hh)).norm());
  }
  v.opposite_residual = worst;

  v.holds = v.commutant_dim == v.clifford_dim && worst <= tol.threshold(1.0);
  return v;
}

SMHodgeVerdict sm_hodge_fast(const SMTriple& t, const Tolerance& tol) {
  return sm_hodge_fast(t, sm_internal_commutant(t.params.generations, tol), tol);
}

}  // namespace fintriple
