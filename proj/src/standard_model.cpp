#include "fintriple/standard_model.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace fintriple {
namespace {

ComplexMatrix e4(int i, int j) { return unit_matrix(i, j, 4); }
ComplexMatrix es(int i, int j) { return unit_matrix(i, j, 2); }

const ComplexMatrix kI2 = ComplexMatrix::Identity(2, 2);
const ComplexMatrix kI4 = ComplexMatrix::Identity(4, 4);

ComplexMatrix rep424(const ComplexMatrix& a, const ComplexMatrix& s, const ComplexMatrix& b) {
  return kron(kron(a, s), b);
}

ComplexMatrix with_generations(const ComplexMatrix& base, int n) {
  if (n == 1) return base;
  return kron(base, ComplexMatrix::Identity(n, n));
}

ComplexMatrix quaternion(Complex q1, Complex q2) {
  ComplexMatrix q(2, 2);
  q << q1, q2, -std::conj(q2), std::conj(q1);
  return q;
}

// Linear part of J from the index map (i, a, j) -> (j, 1-a, i) with
// componentwise conjugation on the generation factor.
ComplexMatrix real_structure(int n) {
  ComplexMatrix c = ComplexMatrix::Zero(32, 32);
  for (int i = 0; i < 4; ++i)
    for (int a = 0; a < 2; ++a)
      for (int j = 0; j < 4; ++j) c((j * 2 + (1 - a)) * 4 + i, (i * 2 + a) * 4 + j) = 1.0;
  return with_generations(c, n);
}

// The same map written out through its defining action (v, w) -> (w^*, v^*),
// where ^* is the adjoint of the 4x4 coefficient matrix.
ComplexMatrix real_structure_direct(int n) {
  ComplexMatrix c = ComplexMatrix::Zero(32, 32);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      c((i * 2 + 0) * 4 + j, (j * 2 + 1) * 4 + i) = 1.0;
      c((i * 2 + 1) * 4 + j, (j * 2 + 0) * 4 + i) = 1.0;
    }
  return with_generations(c, n);
}

ComplexMatrix grading(int n) {
  ComplexMatrix g4 = ComplexMatrix::Zero(4, 4);
  g4.diagonal() << 1.0, 1.0, -1.0, -1.0;
  return with_generations(rep424(g4, es(0, 0), kI4) - rep424(kI4, es(1, 1), g4), n);
}

ComplexMatrix permutation_u(int n) {
  ComplexMatrix sx = es(0, 1) + es(1, 0);
  ComplexMatrix u = ComplexMatrix::Identity(32, 32) - rep424(e4(0, 0), kI2, e4(0, 0)) +
                    rep424(e4(0, 0), sx, e4(0, 0));
  return with_generations(u, n);
}

// Adds blk at (row, col) in units of n x n generation blocks, plus the
// conjugate at the transposed position, keeping the result self-adjoint.
void put_block(ComplexMatrix& d, int row, int col, const ComplexMatrix& blk, int n) {
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2) {
      d(row * n + g1, col * n + g2) += blk(g1, g2);
      d(col * n + g2, row * n + g1) += std::conj(blk(g1, g2));
    }
}

ComplexMatrix build_d0(const SMDiracParams& p) {
  const int n = p.generations;
  ComplexMatrix d0 = ComplexMatrix::Zero(32 * n, 32 * n);
  const std::pair<std::pair<int, int>, const ComplexMatrix*> alphas[] = {
      {{0, 2}, &p.a13}, {{0, 3}, &p.a14}, {{1, 2}, &p.a23}, {{1, 3}, &p.a24}};
  for (const auto& [rc, blk] : alphas)
    put_block(d0, (rc.first * 2 + 0) * 4 + 0, (rc.second * 2 + 0) * 4 + 0, *blk, n);
  const std::pair<std::pair<int, int>, const ComplexMatrix*> betas[] = {
      {{0, 2}, &p.b13}, {{0, 3}, &p.b14}, {{1, 2}, &p.b23}, {{1, 3}, &p.b24}};
  for (const auto& [rc, blk] : betas)
    for (int j = 1; j < 4; ++j)
      put_block(d0, (rc.first * 2 + 0) * 4 + j, (rc.second * 2 + 0) * 4 + j, *blk, n);
  const std::pair<std::pair<int, int>, const ComplexMatrix*> deltas[] = {
      {{0, 1}, &p.d12}, {{0, 2}, &p.d13}, {{0, 3}, &p.d14}, {{1, 0}, &p.d21},
      {{1, 1}, &p.d22}, {{1, 2}, &p.d23}, {{1, 3}, &p.d24}};
  for (const auto& [ij, blk] : deltas)
    put_block(d0, (ij.first * 2 + 0) * 4 + 0, (ij.second * 2 + 1) * 4 + 0, *blk, n);
  return d0;
}

ComplexMatrix build_dr(const SMDiracParams& p) {
  const int n = p.generations;
  ComplexMatrix dr = ComplexMatrix::Zero(32 * n, 32 * n);
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2) {
      dr(4 * n + g1, g2) = p.yr(g1, g2);
      dr(g1, 4 * n + g2) = std::conj(p.yr(g2, g1));
    }
  return dr;
}

void require_params(const SMDiracParams& p, const char* who) {
  if (p.generations < 1) throw DimensionError(std::string(who) + ": generations must be >= 1");
  const int n = p.generations;
  for (const auto& [name, blk] : p.entries()) {
    if (blk->rows() != n || blk->cols() != n)
      throw DimensionError(std::string(who) + ": entry " + name + " is not " +
                           std::to_string(n) + "x" + std::to_string(n));
    if (!entries_finite(*blk))
      throw DimensionError(std::string(who) + ": entry " + name + " has non-finite values");
  }
}

double vec_norm(std::initializer_list<const ComplexMatrix*> blocks) {
  double s = 0.0;
  for (const auto* b : blocks) s += b->squaredNorm();
  return std::sqrt(s);
}

// Closed-form case criteria for one generation; entries are 1x1 blocks.
bool thm_case1(const SMDiracParams& p, const Tolerance& tol) {
  const double z = tol.threshold(1.0);
  const ComplexMatrix* rows[4][2] = {
      {&p.a13, &p.a14}, {&p.a23, &p.a24}, {&p.b13, &p.b14}, {&p.b23, &p.b24}};
  for (const auto& row : rows)
    if (vec_norm({row[0], row[1]}) <= z) return false;
  // Unimodular row relation: each alpha row a phase multiple of the matching
  // beta row, i.e. parallel with equal norms.
  bool related = true;
  for (int r = 0; r < 2 && related; ++r) {
    Complex a0 = (*rows[r][0])(0, 0), a1 = (*rows[r][1])(0, 0);
    Complex b0 = (*rows[r + 2][0])(0, 0), b1 = (*rows[r + 2][1])(0, 0);
    const double na = std::sqrt(std::norm(a0) + std::norm(a1));
    const double nb = std::sqrt(std::norm(b0) + std::norm(b1));
    const double inner = std::abs(a0 * std::conj(b0) + a1 * std::conj(b1));
    related = std::abs(na - nb) <= tol.threshold(std::max(na, nb)) &&
              na * nb - inner <= tol.threshold(na * nb);
  }
  return !related;
}

bool thm_case2(const SMDiracParams& p, const Tolerance& tol) {
  const double z = tol.threshold(1.0);
  return vec_norm({&p.d21}) > z && vec_norm({&p.a23, &p.a24}) > z &&
         vec_norm({&p.b13, &p.b14}) > z && vec_norm({&p.b23, &p.b24}) > z;
}

bool thm_case3(const SMDiracParams& p, const Tolerance& tol) {
  const double z = tol.threshold(1.0);
  if (vec_norm({&p.b23, &p.b24}) <= z) return false;
  int nonzero = 0;
  nonzero += vec_norm({&p.a13, &p.a14}) > z;
  nonzero += vec_norm({&p.a23, &p.a24}) > z;
  nonzero += vec_norm({&p.d12, &p.d13, &p.d14}) > z;
  nonzero += vec_norm({&p.d22, &p.d23, &p.d24}) > z;
  return nonzero >= 3;
}

bool thm_case4(const SMDiracParams& p, const Tolerance& tol) {
  const double z = tol.threshold(1.0);
  return vec_norm({&p.d21}) > z && vec_norm({&p.a23, &p.a24}) > z &&
         vec_norm({&p.b23, &p.b24}) > z && vec_norm({&p.d22, &p.d23, &p.d24}) > z;
}

void assert_sm_invariants(const SMTriple& t, const Tolerance& tol) {
  const ComplexMatrix& u = t.u;
  const int dim = static_cast<int>(u.rows());
  const double thr = tol.threshold(std::sqrt(static_cast<double>(dim)));
  if (hs_norm(u - u.adjoint()) > thr || hs_norm(u * u - ComplexMatrix::Identity(dim, dim)) > thr)
    throw AlgebraError("sm triple: u is not a self-adjoint involution");
  for (const auto& g : t.triple.algebra_generators)
    if (hs_norm(comm(u, g)) > tol.threshold(hs_norm(g)))
      throw AlgebraError("sm triple: u does not commute with the algebra");
  if (hs_norm(u * t.triple.j.linear_part() - t.triple.j.linear_part() * u) > thr)
    throw AlgebraError("sm triple: u does not commute with the real structure");
}

// M7 embedding for the second comparison algebra: the seven j = 0 column
// states, indices 0..3 on the first slot, 4..6 on rows 1..3 of the second.
ComplexMatrix embed_m7(const ComplexMatrix& a) {
  ComplexMatrix out = ComplexMatrix::Zero(32, 32);
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c) {
      if (a(r, c) == Complex(0, 0)) continue;
      const int rr = r < 4 ? r : r - 3, ra = r < 4 ? 0 : 1;
      const int cc = c < 4 ? c : c - 3, ca = c < 4 ? 0 : 1;
      out += a(r, c) * rep424(e4(rr, cc), es(ra, ca), e4(0, 0));
    }
  return out;
}

std::vector<ComplexMatrix> big_algebra_span(int which) {
  std::vector<ComplexMatrix> out;
  if (which <= 2) {
    out.push_back(rep424(e4(0, 0), es(1, 1), kI4));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out.push_back(rep424(e4(1 + i, 1 + j), es(1, 1), kI4));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        out.push_back(rep424(e4(i, j), es(0, 0), e4(0, 0)));
        out.push_back(rep424(e4(i, j), es(0, 0), kI4 - e4(0, 0)));
      }
  } else {
    out.push_back(rep424(e4(0, 0), kI2, kI4) - rep424(e4(0, 0), es(0, 0), e4(0, 0)));
    for (int a = 0; a < 2; ++a)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          out.push_back(rep424(e4(1 + i, 1 + j), es(a, a), kI4 - e4(0, 0)));
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) out.push_back(embed_m7(unit_matrix(i, j, 7)));
  }
  return out;
}

}  // namespace

SMDiracParams SMDiracParams::zero(int generations) {
  SMDiracParams p;
  p.generations = generations;
  for (auto& [name, blk] : p.entries()) *blk = ComplexMatrix::Zero(generations, generations);
  return p;
}

std::vector<std::pair<const char*, ComplexMatrix*>> SMDiracParams::entries() {
  return {{"a13", &a13}, {"a14", &a14}, {"a23", &a23}, {"a24", &a24},
          {"b13", &b13}, {"b14", &b14}, {"b23", &b23}, {"b24", &b24},
          {"d12", &d12}, {"d13", &d13}, {"d14", &d14}, {"d21", &d21},
          {"d22", &d22}, {"d23", &d23}, {"d24", &d24}, {"yr", &yr}};
}

std::vector<std::pair<const char*, const ComplexMatrix*>> SMDiracParams::entries() const {
  std::vector<std::pair<const char*, const ComplexMatrix*>> out;
  for (auto& [name, blk] : const_cast<SMDiracParams*>(this)->entries()) out.emplace_back(name, blk);
  return out;
}

ComplexMatrix sm_rep(const ComplexMatrix& a, const ComplexMatrix& s, const ComplexMatrix& b,
                     int generations) {
  if (a.rows() != 4 || a.cols() != 4 || s.rows() != 2 || s.cols() != 2 || b.rows() != 4 ||
      b.cols() != 4)
    throw DimensionError("sm_rep: factors must be 4x4, 2x2, 4x4");
  if (generations < 1) throw DimensionError("sm_rep: generations must be >= 1");
  return with_generations(rep424(a, s, b), generations);
}

ComplexMatrix sm_algebra_element(Complex lambda, const ComplexMatrix& q, const ComplexMatrix& m,
                                 int generations, const Tolerance& tol) {
  if (q.rows() != 2 || q.cols() != 2) throw DimensionError("sm_algebra_element: q must be 2x2");
  if (m.rows() != 3 || m.cols() != 3) throw DimensionError("sm_algebra_element: m must be 3x3");
  if (generations < 1) throw DimensionError("sm_algebra_element: generations must be >= 1");
  const double qres = std::abs(q(1, 0) + std::conj(q(0, 1))) + std::abs(q(1, 1) - std::conj(q(0, 0)));
  if (qres > tol.threshold(std::max(1.0, q.norm())))
    throw AlgebraError("sm_algebra_element: q is not of quaternion form");

  ComplexMatrix a1 = ComplexMatrix::Zero(4, 4);
  a1(0, 0) = lambda;
  a1(1, 1) = std::conj(lambda);
  a1.block(2, 2, 2, 2) = q;
  ComplexMatrix a2 = ComplexMatrix::Zero(4, 4);
  a2(0, 0) = lambda;
  a2.block(1, 1, 3, 3) = m;
  return with_generations(rep424(a1, es(0, 0), kI4) + rep424(a2, es(1, 1), kI4), generations);
}

std::vector<ComplexMatrix> sm_generators(int generations) {
  const ComplexMatrix z2 = ComplexMatrix::Zero(2, 2);
  const ComplexMatrix z3 = ComplexMatrix::Zero(3, 3);
  const ComplexMatrix i3 = ComplexMatrix::Identity(3, 3);
  return {
      sm_algebra_element(1.0, kI2, i3, generations),
      sm_algebra_element(Complex(0, 1), z2, z3, generations),
      sm_algebra_element(0.0, quaternion(Complex(0, 1), 0.0), z3, generations),
      sm_algebra_element(0.0, quaternion(0.0, 1.0), z3, generations),
      sm_algebra_element(0.0, z2, unit_matrix(0, 1, 3), generations),
      sm_algebra_element(0.0, z2, unit_matrix(1, 2, 3), generations),
  };
}

SMTriple sm_build(const SMDiracParams& p, const Tolerance& tol) {
  require_params(p, "sm_build");
  const int n = p.generations;

  if (hs_norm(p.yr - p.yr.transpose()) > tol.threshold(hs_norm(p.yr)))
    throw AlgebraError(
        "sm_build: the Majorana block must be symmetric (componentwise conjugation on the "
        "generation factor makes an antisymmetric part J-incompatible)");

  ComplexMatrix c = real_structure(n);
  if (hs_norm(c - real_structure_direct(n)) > tol.threshold(std::sqrt(32.0 * n)))
    throw AlgebraError("sm_build: real structure disagrees with its defining action");

  ComplexMatrix d0 = build_d0(p);
  AntilinearMap j(std::move(c), tol);
  ComplexMatrix d = d0 + j.ad(d0) + build_dr(p);

  SMTriple t{RealSpectralTriple{32 * n, sm_generators(n), std::move(d), grading(n), std::move(j),
                                SignTriple{1, 1, -1}},
             permutation_u(n), p};
  assert_sm_invariants(t, tol);

  ValidationReport rep = validate(t.triple, tol);
  if (!rep.valid())
    throw AlgebraError("sm_build: constructed triple failed validation at axiom '" +
                       rep.failing()->axiom + "'");
  return t;
}

SMDiracParams cc_params(Complex yn, Complex ye, Complex yu, Complex yd, Complex yr) {
  SMDiracParams p = SMDiracParams::zero(1);
  p.a13(0, 0) = std::conj(yn);
  p.a24(0, 0) = std::conj(ye);
  p.b13(0, 0) = std::conj(yu);
  p.b24(0, 0) = std::conj(yd);
  p.yr(0, 0) = yr;
  return p;
}

std::set<int> classify_cases(const SMDiracParams& p, const Tolerance& tol) {
  require_params(p, "classify_cases");
  const double z = tol.threshold(1.0);
  auto zero = [&](const ComplexMatrix& b) { return hs_norm(b) <= z; };
  std::set<int> cases;
  if (zero(p.d12) && zero(p.d13) && zero(p.d14) && zero(p.d21) && zero(p.d22) && zero(p.d23) &&
      zero(p.d24))
    cases.insert(1);
  if (zero(p.a13) && zero(p.a14) && zero(p.d12) && zero(p.d13) && zero(p.d14) && zero(p.d22) &&
      zero(p.d23) && zero(p.d24))
    cases.insert(2);
  if (zero(p.d21) && zero(p.b13) && zero(p.b14)) cases.insert(3);
  if (zero(p.d12) && zero(p.d13) && zero(p.d14) && zero(p.b13) && zero(p.b14) && zero(p.a13) &&
      zero(p.a14))
    cases.insert(4);
  return cases;
}

bool second_order_closed(const SMDiracParams& p, const Tolerance& tol) {
  require_params(p, "second_order_closed");
  if (p.generations == 1) return !classify_cases(p, tol).empty();

  // n > 1: the obstruction is a list of matrix products; each may vanish by
  // cancellation without either factor being zero.
  auto vanishes = [&](const ComplexMatrix& x, const ComplexMatrix& y) {
    return hs_norm(x * y.conjugate()) <= tol.threshold(hs_norm(x) * hs_norm(y));
  };
  if (!vanishes(p.d21, p.a13) || !vanishes(p.d21, p.a14)) return false;
  if (!vanishes(p.d21, p.d12) || !vanishes(p.d21, p.d13) || !vanishes(p.d21, p.d14)) return false;
  for (const ComplexMatrix* dij : {&p.d12, &p.d13, &p.d14, &p.d22, &p.d23, &p.d24})
    if (!vanishes(*dij, p.b13) || !vanishes(*dij, p.b14)) return false;
  return true;
}

std::optional<bool> hodge_closed(const SMDiracParams& p, const Tolerance& tol) {
  require_params(p, "hodge_closed");
  if (p.generations > 1) return std::nullopt;
  std::set<int> cases = classify_cases(p, tol);
  if (cases.empty()) return std::nullopt;

  std::optional<bool> verdict;
  for (int c : cases) {
    bool v = c == 1   ? thm_case1(p, tol)
             : c == 2 ? thm_case2(p, tol)
             : c == 3 ? thm_case3(p, tol)
                      : thm_case4(p, tol);
    if (verdict && *verdict != v)
      throw AlgebraError("hodge_closed: overlapping case criteria disagree (case " +
                         std::to_string(c) + ")");
    verdict = v;
  }
  return verdict;
}

std::vector<ComplexMatrix> sm_commutant_span(int generations) {
  if (generations < 1) throw DimensionError("sm_commutant_span: generations must be >= 1");
  std::vector<ComplexMatrix> units;
  ComplexMatrix quark = e4(2, 2) + e4(3, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      ComplexMatrix m = e4(i, j);
      units.push_back(rep424(e4(1, 1), es(0, 0), m));
      units.push_back(rep424(quark, es(0, 0), m));
      units.push_back(rep424(kI4 - e4(0, 0), es(1, 1), m));
      for (int si = 0; si < 2; ++si)
        for (int sj = 0; sj < 2; ++sj) units.push_back(rep424(e4(0, 0), es(si, sj), m));
    }
  if (generations == 1) return units;
  std::vector<ComplexMatrix> out;
  out.reserve(units.size() * generations * generations);
  for (const auto& u : units)
    for (int g = 0; g < generations; ++g)
      for (int h = 0; h < generations; ++h) out.push_back(kron(u, unit_matrix(g, h, generations)));
  return out;
}

StarAlgebra big_algebra(int which, const Tolerance& tol) {
  if (which < 1 || which > 4) throw DimensionError("big_algebra: case must be 1..4");
  std::vector<ComplexMatrix> span = big_algebra_span(which);
  if (which == 2 || which == 4) {
    ComplexMatrix u = permutation_u(1);
    for (auto& x : span) x = (u * x * u).eval();
  }
  StarAlgebra b{orthonormalize(span, tol), true, std::nullopt};
  b = wedderburn(b, tol);

  const std::vector<std::pair<int, int>> expect =
      which <= 2 ? std::vector<std::pair<int, int>>{{1, 4}, {3, 4}, {4, 1}, {4, 3}}
                 : std::vector<std::pair<int, int>>{{1, 7}, {3, 3}, {3, 3}, {7, 1}};
  std::vector<std::pair<int, int>> got;
  for (const auto& blk : *b.structure) got.emplace_back(blk.m, blk.k);
  if (got != expect) throw AlgebraError("big_algebra: unexpected block structure");

  // Defining property: the commutant equals the circled copy. The commutant
  // is computed inside the (much smaller) commutant of the internal algebra,
  // which contains it because the internal algebra sits inside b.
  AntilinearMap j(real_structure(1), tol);
  for (const auto& g : sm_generators(1))
    if (!subspace_contains(b.space, g, tol))
      throw AlgebraError("big_algebra: internal algebra is not contained");
  MatrixSubspace aprime = orthonormalize(sm_commutant_span(1), tol);
  MatrixSubspace bprime = relative_commutant(aprime, b.space.basis(), tol);
  StarAlgebra bcircle = circle_algebra(b, j, tol);
  if (!subspace_equal(bprime, bcircle.space, tol))
    throw AlgebraError("big_algebra: commutant does not equal the circled copy");
  return b;
}

SMTriple conjugate_by_u(const SMTriple& t, const Tolerance& tol) {
  assert_sm_invariants(t, tol);
  SMTriple out = t;
  out.triple.dirac = t.u * t.triple.dirac * t.u;
  // Unitary equivalence: the algebra span and J are fixed by u (asserted
  // above), the grading is not and must move along with the Dirac operator.
  if (t.triple.gamma) out.triple.gamma = (t.u * *t.triple.gamma * t.u).eval();

  // On one-generation case-2/4 patterns, u relocates the d21 coupling into
  // the alpha block; check the documented shape.
  if (t.params.generations == 1) {
    std::set<int> cases = classify_cases(t.params, tol);
    if (cases.count(2) || cases.count(4)) {
      ComplexMatrix d0 = build_d0(t.params);
      SMDiracParams moved = t.params;
      moved.d21 = ComplexMatrix::Zero(1, 1);
      ComplexMatrix alpha_like = ComplexMatrix::Zero(4, 4);
      alpha_like(0, 1) = std::conj(t.params.d21(0, 0));
      alpha_like(1, 0) = t.params.d21(0, 0);
      ComplexMatrix want = build_d0(moved) + rep424(alpha_like, es(0, 0), e4(0, 0));
      if (hs_norm(t.u * d0 * t.u - want) > tol.threshold(hs_norm(d0)))
        throw AlgebraError("conjugate_by_u: relocated coupling shape mismatch");
    }
  }
  return out;
}

}  // namespace fintriple
