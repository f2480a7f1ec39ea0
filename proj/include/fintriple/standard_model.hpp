#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fintriple/triple.hpp"

namespace fintriple {

// Parameters of the internal-space Dirac family. alpha and beta fill the
// upper-right 2x2 coupling blocks (row index 1-2, column index 3-4 of the
// 4x4 particle arrangement), delta the seven allowed lepton couplings, yr
// the Majorana block. Every entry is an n x n matrix; n = 1 means 1x1.
struct SMDiracParams {
  int generations = 1;
  ComplexMatrix a13, a14, a23, a24;
  ComplexMatrix b13, b14, b23, b24;
  ComplexMatrix d12, d13, d14, d21, d22, d23, d24;
  ComplexMatrix yr;

  static SMDiracParams zero(int generations = 1);

  // Stable name -> entry view in a fixed order, for serialization and scans.
  std::vector<std::pair<const char*, const ComplexMatrix*>> entries() const;
  std::vector<std::pair<const char*, ComplexMatrix*>> entries();
};

// A built internal-space triple together with the distinguished permutation u
// (self-adjoint, squares to the identity, commutes with the algebra and J)
// and the parameters it was built from.
struct SMTriple {
  RealSpectralTriple triple;
  ComplexMatrix u;
  SMDiracParams params;
};

// kron(a, s, b) (x) I_n: the representation of elementary tensors on
// C^4 (x) C^2 (x) C^4 (x) C^n.
ComplexMatrix sm_rep(const ComplexMatrix& a, const ComplexMatrix& s, const ComplexMatrix& b,
                     int generations = 1);

// The algebra element determined by (lambda, q, m):
//   diag(lambda, conj(lambda), q) on the first slot, diag(lambda, m) on the
//   second. q must have the quaternion form [[q1, q2], [-conj(q2), conj(q1)]].
ComplexMatrix sm_algebra_element(Complex lambda, const ComplexMatrix& q, const ComplexMatrix& m,
                                 int generations = 1, const Tolerance& tol = {});

// Six fixed generators of the internal algebra (closure has dimension 15).
std::vector<ComplexMatrix> sm_generators(int generations = 1);

// Builds the full triple: grading, real structure (asserted against its
// defining action), D = D0 + J D0 J^{-1} + D_R, signs (+1, +1, -1), and u.
// Requires yr symmetric (J-compatibility of the Majorana block) and a fully
// valid result, including the first-order condition.
SMTriple sm_build(const SMDiracParams& p, const Tolerance& tol = {});

// Diagonal-Yukawa parameters: alpha = diag(conj(yn), conj(ye)),
// beta = diag(conj(yu), conj(yd)), delta = 0.
SMDiracParams cc_params(Complex yn, Complex ye, Complex yu, Complex yd, Complex yr);

// Which of the four zero-pattern cases the parameters satisfy (possibly
// none, possibly several).
std::set<int> classify_cases(const SMDiracParams& p, const Tolerance& tol = {});

// Second-order condition in closed form: for one generation, membership in
// some case; for n > 1, vanishing of the required matrix products (which can
// hold by cancellation without any zero pattern).
bool second_order_closed(const SMDiracParams& p, const Tolerance& tol = {});

// Closed-form Hodge verdict. Empty when no case applies or generations > 1
// (no closed form exists there); otherwise every applicable case criterion
// is evaluated and asserted to agree.
std::optional<bool> hodge_closed(const SMDiracParams& p, const Tolerance& tol = {});

// The comparison algebra for the given case on C^32: cases 1-2 share
// C + M3 + M4 + M4 (dim 42), cases 3-4 share C + M3 + M3 + M7 (dim 68); the
// case-2 and case-4 copies are conjugated by u to match where the Clifford
// algebra actually lands. Wedderburn structure attached; the defining
// property commutant == circled copy is asserted.
StarAlgebra big_algebra(int which, const Tolerance& tol = {});

// Explicit spanning set of the algebra's commutant (dim 112 for n = 1,
// scaled by a full generation factor for n > 1).
std::vector<ComplexMatrix> sm_commutant_span(int generations = 1);

// The unitarily equivalent triple with D replaced by u D u. Asserts that the
// algebra and J are untouched; on one-generation case-2/4 zero patterns also
// asserts that u D0 u has the documented relocated-coupling shape.
SMTriple conjugate_by_u(const SMTriple& t, const Tolerance& tol = {});

}  // namespace fintriple
