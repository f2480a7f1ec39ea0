#include "fintriple/triple.hpp"

#include <cmath>
#include <utility>

namespace fintriple {
namespace {

void require_consistent(const RealSpectralTriple& t) {
  const int n = t.dim_h;
  if (n <= 0) throw DimensionError("triple: dim_h must be positive");
  if (t.algebra_generators.empty())
    throw DimensionError("triple: at least one algebra generator is required");
  for (const auto& g : t.algebra_generators) {
    if (g.rows() != n || g.cols() != n)
      throw DimensionError("triple: algebra generator is not dim_h x dim_h");
    if (!entries_finite(g)) throw DimensionError("triple: non-finite algebra generator");
  }
  if (t.dirac.rows() != n || t.dirac.cols() != n)
    throw DimensionError("triple: dirac is not dim_h x dim_h");
  if (!entries_finite(t.dirac)) throw DimensionError("triple: non-finite dirac operator");
  if (t.j.dim() != n) throw DimensionError("triple: real structure dimension mismatch");
  if (t.gamma) {
    if (t.gamma->rows() != n || t.gamma->cols() != n)
      throw DimensionError("triple: gamma is not dim_h x dim_h");
    if (!entries_finite(*t.gamma)) throw DimensionError("triple: non-finite grading");
    if (!t.signs.epsilon_double_prime)
      throw DimensionError("triple: grading present but epsilon_double_prime missing");
  }
  auto sign_ok = [](int s) { return s == 1 || s == -1; };
  if (!sign_ok(t.signs.epsilon) || !sign_ok(t.signs.epsilon_prime))
    throw DimensionError("triple: signs must be +1 or -1");
  if (t.signs.epsilon_double_prime && !sign_ok(*t.signs.epsilon_double_prime))
    throw DimensionError("triple: epsilon_double_prime must be +1 or -1");
}

// span{ a [D, b] } over basis pairs. Directions below the noise floor
// 10 * tol.rel * |D| are structural zeros contaminated by roundoff.
MatrixSubspace one_forms(const ComplexMatrix& dirac, const std::vector<ComplexMatrix>& basis,
                         const Tolerance& tol) {
  const int n = static_cast<int>(dirac.rows());
  SpanBuilder sb(n, tol, 10.0 * tol.rel * hs_norm(dirac));
  std::vector<ComplexMatrix> db;
  db.reserve(basis.size());
  for (const auto& b : basis) db.push_back(comm(dirac, b));
  for (const auto& a : basis)
    for (const auto& k : db) sb.add(a * k);
  return sb.subspace();
}

// max_{s,t} |[[D, b_s], [D, b_t]°]| over the given basis.
double second_order_residual(const ComplexMatrix& dirac, const std::vector<ComplexMatrix>& basis,
                             const AntilinearMap& j) {
  std::vector<ComplexMatrix> db, dbo;
  db.reserve(basis.size());
  dbo.reserve(basis.size());
  for (const auto& b : basis) {
    db.push_back(comm(dirac, b));
    dbo.push_back(circle(db.back(), j));
  }
  double worst = 0.0;
  for (const auto& x : db)
    for (const auto& y : dbo) worst = std::max(worst, hs_norm(comm(x, y)));
  return worst;
}

// max_{s,t} |[[X, b_s], b_t°]| for the first-order condition of X.
double first_order_residual(const ComplexMatrix& x, const std::vector<ComplexMatrix>& basis,
                            const std::vector<ComplexMatrix>& basis_circle) {
  double worst = 0.0;
  for (const auto& b : basis) {
    ComplexMatrix k = comm(x, b);
    for (const auto& bo : basis_circle) worst = std::max(worst, hs_norm(comm(k, bo)));
  }
  return worst;
}

std::vector<ComplexMatrix> circled(const std::vector<ComplexMatrix>& basis,
                                   const AntilinearMap& j) {
  std::vector<ComplexMatrix> out;
  out.reserve(basis.size());
  for (const auto& b : basis) out.push_back(circle(b, j));
  return out;
}

// Membership in the commutant of the generated algebra, decided against the
// generators and their adjoints instead of a constructed basis. Scales to
// Hilbert spaces where the vectorized commutant would be unaffordable.
bool commutes_with_algebra(const ComplexMatrix& x, const std::vector<ComplexMatrix>& generators,
                           const Tolerance& tol) {
  const double nx = hs_norm(x);
  for (const auto& g : generators) {
    const double scale = nx * hs_norm(g);
    if (hs_norm(comm(x, g)) > tol.threshold(scale)) return false;
    if (hs_norm(comm(x, g.adjoint().eval())) > tol.threshold(scale)) return false;
  }
  return true;
}

DiracDecomposition decompose_impl(const RealSpectralTriple& t, const StarAlgebra& alg,
                                  const Tolerance& tol) {
  StarAlgebra w = wedderburn(alg, tol);
  const auto& st = *w.structure;
  const int c = static_cast<int>(st.size());
  const int n = t.dim_h;
  const ComplexMatrix& d = t.dirac;

  DiracDecomposition dec;
  dec.count = c;
  dec.projections_p.reserve(c);
  dec.projections_q.reserve(c);
  for (const auto& blk : st) dec.projections_p.push_back(blk.p);
  for (const auto& blk : st) dec.projections_q.push_back(t.j.ad(blk.p));

  // r[i][j] = P_i Q_j; the two families commute by the reality condition, so
  // these are projections and sum to the identity.
  std::vector<ComplexMatrix> r(static_cast<size_t>(c) * c);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j)
      r[static_cast<size_t>(i) * c + j] = dec.projections_p[i] * dec.projections_q[j];

  std::vector<ComplexMatrix> left(static_cast<size_t>(c) * c);
  for (size_t ij = 0; ij < r.size(); ++ij) left[ij] = r[ij] * d;

  dec.blocks.resize(static_cast<size_t>(c) * c * c * c);
  dec.d0 = ComplexMatrix::Zero(n, n);
  dec.d1 = ComplexMatrix::Zero(n, n);
  dec.d2 = ComplexMatrix::Zero(n, n);
  dec.dr = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j)
      for (int k = 0; k < c; ++k)
        for (int l = 0; l < c; ++l) {
          ComplexMatrix blk = left[static_cast<size_t>(i) * c + j] * r[static_cast<size_t>(k) * c + l];
          if (i == k && j == l)
            dec.dr += blk;
          else if (j == l)
            dec.d0 += blk;
          else if (i == k)
            dec.d1 += blk;
          else
            dec.d2 += blk;
          dec.blocks[((static_cast<size_t>(i) * c + j) * c + k) * c + l] = std::move(blk);
        }

  const double eps_prime = static_cast<double>(t.signs.epsilon_prime);
  const double thr = tol.threshold(hs_norm(d));
  auto demand = [&](double res, const char* what) {
    if (!(res <= thr))
      throw AlgebraError(std::string("decompose: ") + what +
                         " (identity violated; is the triple valid?)");
  };
  demand(hs_norm(dec.d0 + dec.d1 + dec.d2 + dec.dr - d), "parts do not sum to D");
  demand(hs_norm(dec.d0 - dec.d0.adjoint()), "d0 is not self-adjoint");
  demand(hs_norm(dec.d1 - dec.d1.adjoint()), "d1 is not self-adjoint");
  demand(hs_norm(dec.d2 - dec.d2.adjoint()), "d2 is not self-adjoint");
  demand(hs_norm(dec.dr - dec.dr.adjoint()), "dr is not self-adjoint");
  demand(hs_norm(t.j.ad(dec.d0) - eps_prime * dec.d1), "J d0 J^{-1} != eps' d1");
  demand(hs_norm(t.j.ad(dec.d2) - eps_prime * dec.d2), "J d2 J^{-1} != eps' d2");
  demand(hs_norm(t.j.ad(dec.dr) - eps_prime * dec.dr), "J dr J^{-1} != eps' dr");
  return dec;
}

}  // namespace

bool ValidationReport::valid() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const AxiomCheck* ValidationReport::failing() const {
  for (const auto& c : checks)
    if (!c.pass) return &c;
  return nullptr;
}

const AxiomCheck* ValidationReport::find(const std::string& axiom) const {
  for (const auto& c : checks)
    if (c.axiom == axiom) return &c;
  return nullptr;
}

StarAlgebra complex_algebra(const RealSpectralTriple& t, const Tolerance& tol) {
  require_consistent(t);
  return generated_algebra(t.algebra_generators, true, tol);
}

ValidationReport validate(const RealSpectralTriple& t, const Tolerance& tol) {
  require_consistent(t);
  const int n = t.dim_h;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix& d = t.dirac;
  const double dnorm = hs_norm(d);
  const double rootn = std::sqrt(static_cast<double>(n));

  ValidationReport rep;
  auto push = [&](std::string axiom, double residual, double scale) {
    const double thr = tol.threshold(scale);
    rep.checks.push_back(AxiomCheck{std::move(axiom), residual, thr, residual <= thr});
  };

  push("dirac_self_adjoint", hs_norm(d - d.adjoint()), dnorm);

  const ComplexMatrix& cmat = t.j.linear_part();
  push("j_antiunitary", hs_norm(cmat.adjoint() * cmat - id), rootn);
  push("j_squared_sign",
       hs_norm(cmat * cmat.conjugate() - static_cast<double>(t.signs.epsilon) * id), rootn);
  push("j_dirac_sign", hs_norm(t.j.ad(d) - static_cast<double>(t.signs.epsilon_prime) * d),
       dnorm);

  StarAlgebra alg = generated_algebra(t.algebra_generators, true, tol);
  std::vector<ComplexMatrix> basis = alg.space.basis();

  if (t.gamma) {
    const ComplexMatrix& g = *t.gamma;
    const double gnorm = hs_norm(g);
    push("gamma_self_adjoint", hs_norm(g - g.adjoint()), gnorm);
    push("gamma_squares_to_identity", hs_norm(g * g - id), gnorm);
    double worst = 0.0;
    for (const auto& b : basis) worst = std::max(worst, hs_norm(comm(g, b)));
    push("gamma_commutes_with_algebra", worst, gnorm);
    push("gamma_anticommutes_with_dirac", hs_norm(g * d + d * g), dnorm);
    push("j_gamma_sign",
         hs_norm(t.j.ad(g) - static_cast<double>(*t.signs.epsilon_double_prime) * g), gnorm);
  }

  std::vector<ComplexMatrix> basis_circle = circled(basis, t.j);
  double worst_reality = 0.0;
  for (const auto& a : basis)
    for (const auto& bo : basis_circle) worst_reality = std::max(worst_reality, hs_norm(comm(a, bo)));
  push("reality", worst_reality, 1.0);

  push("first_order", first_order_residual(d, basis, basis_circle), dnorm);

  if (one_forms(d, basis, tol).dim() == 0)
    rep.warnings.push_back(
        "one-form space is zero; Clifford and Hodge statements degenerate to the algebra itself");
  return rep;
}

MatrixSubspace omega1(const RealSpectralTriple& t, const Tolerance& tol) {
  require_consistent(t);
  StarAlgebra alg = generated_algebra(t.algebra_generators, true, tol);
  return one_forms(t.dirac, alg.space.basis(), tol);
}

StarAlgebra clifford(const RealSpectralTriple& t, const Tolerance& tol) {
  require_consistent(t);
  StarAlgebra alg = generated_algebra(t.algebra_generators, true, tol);
  std::vector<ComplexMatrix> gens = alg.space.basis();
  MatrixSubspace om = one_forms(t.dirac, gens, tol);
  for (int k = 0; k < om.dim(); ++k) gens.push_back(om.basis_matrix(k));
  return generated_algebra(gens, true, tol);
}

const ComplexMatrix& DiracDecomposition::block(int i, int j, int k, int l) const {
  const int c = count;
  if (i < 0 || j < 0 || k < 0 || l < 0 || i >= c || j >= c || k >= c || l >= c)
    throw DimensionError("DiracDecomposition::block: index out of range");
  return blocks[((static_cast<size_t>(i) * c + j) * c + k) * c + l];
}

DiracDecomposition decompose(const RealSpectralTriple& t, const Tolerance& tol) {
  require_consistent(t);
  return decompose_impl(t, complex_algebra(t, tol), tol);
}

FirstOrderVerdict first_order_via_decomposition(const RealSpectralTriple& t,
                                                const Tolerance& tol) {
  require_consistent(t);
  StarAlgebra alg = complex_algebra(t, tol);
  DiracDecomposition dec = decompose_impl(t, alg, tol);
  std::vector<ComplexMatrix> basis = alg.space.basis();
  std::vector<ComplexMatrix> basis_circle = circled(basis, t.j);
  const double dnorm = hs_norm(t.dirac);

  FirstOrderVerdict v;
  v.d2_zero = hs_norm(dec.d2) <= tol.threshold(dnorm);
  v.d1_in_commutant = commutes_with_algebra(dec.d1, t.algebra_generators, tol);
  v.dr_first_order =
      first_order_residual(dec.dr, basis, basis_circle) <= tol.threshold(hs_norm(dec.dr));
  v.holds = v.d2_zero && v.d1_in_commutant && v.dr_first_order;
  if (!v.holds) {
    if (!v.d2_zero)
      v.witness = "D_2 is nonzero";
    else if (!v.d1_in_commutant)
      v.witness = "D_1 is not in the commutant";
    else
      v.witness = "D_R violates 1st order";
  }

  v.direct_residual = first_order_residual(t.dirac, basis, basis_circle);
  const bool direct = v.direct_residual <= tol.threshold(dnorm);
  if (direct != v.holds)
    throw AlgebraError("first_order_via_decomposition: decomposition disagrees with the direct check");
  return v;
}

SecondOrderVerdict second_order(const RealSpectralTriple& t, const Tolerance& tol) {
  require_consistent(t);
  StarAlgebra alg = complex_algebra(t, tol);
  std::vector<ComplexMatrix> basis = alg.space.basis();
  const double dnorm = hs_norm(t.dirac);

  SecondOrderVerdict v;
  v.residual = second_order_residual(t.dirac, basis, t.j);
  v.threshold = tol.threshold(dnorm * dnorm);
  v.holds = v.residual <= v.threshold;

  DiracDecomposition dec = decompose_impl(t, alg, tol);
  if (commutes_with_algebra(dec.dr, t.algebra_generators, tol)) {
    const double cres = hs_norm(comm(dec.d0, dec.d1));
    v.commutator_residual = cres;
    const bool via_blocks = cres <= v.threshold;
    if (via_blocks != v.holds)
      throw AlgebraError("second_order: [d0, d1] criterion disagrees with the direct check");
  }
  return v;
}

HodgeDiagnostics hodge(const RealSpectralTriple& t, const Tolerance& tol) {
  require_consistent(t);
  StarAlgebra cl = clifford(t, tol);
  StarAlgebra com = commutant(cl.space.basis(), tol);
  StarAlgebra circ = circle_algebra(cl, t.j, tol);

  HodgeDiagnostics h;
  h.clifford_dim = cl.dim();
  h.commutant_dim = com.dim();
  h.circle_dim = circ.dim();
  h.circle_in_commutant = true;
  for (int k = 0; k < circ.dim(); ++k)
    if (!subspace_contains(com.space, circ.space.basis_matrix(k), tol)) {
      h.circle_in_commutant = false;
      break;
    }
  h.projector_distance = projector_distance(com.space, circ.space);
  h.holds = subspace_equal(com.space, circ.space, tol);
  return h;
}

}  // namespace fintriple
