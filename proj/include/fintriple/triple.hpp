#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fintriple/algebra.hpp"
#include "fintriple/linalg.hpp"

namespace fintriple {

// Signs attached to the real structure: epsilon for J^2, epsilon_prime for
// JD = eps' DJ, epsilon_double_prime for J gamma = eps'' gamma J. The last is
// absent exactly when the triple carries no grading.
struct SignTriple {
  int epsilon = 1;
  int epsilon_prime = 1;
  std::optional<int> epsilon_double_prime;
};

// Finite real spectral triple over a concrete Hilbert space C^dim_h. The
// algebra enters through a list of operators generating it; the complex
// *-algebra they generate is what every check below quantifies over.
struct RealSpectralTriple {
  int dim_h = 0;
  std::vector<ComplexMatrix> algebra_generators;
  ComplexMatrix dirac;
  std::optional<ComplexMatrix> gamma;
  AntilinearMap j;
  SignTriple signs;
};

struct AxiomCheck {
  std::string axiom;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<AxiomCheck> checks;
  std::vector<std::string> warnings;

  bool valid() const;
  // First failing check, or nullptr when everything passed.
  const AxiomCheck* failing() const;
  const AxiomCheck* find(const std::string& axiom) const;
};

// The complex *-algebra generated by the triple's generators (unital).
StarAlgebra complex_algebra(const RealSpectralTriple& t, const Tolerance& tol = {});

// Checks every axiom against the declared signs: self-adjointness of D, the
// grading relations when gamma is present, the J relations, the reality
// condition [a, b°] = 0 and the first-order condition [[D, a], b°] = 0, both
// quantified over a basis of the generated complex algebra. A zero one-form
// space is flagged as a warning, not a failure.
ValidationReport validate(const RealSpectralTriple& t, const Tolerance& tol = {});

// Orthonormal basis of the one-form space span{ a [D, b] } over basis pairs
// of the generated algebra. Directions below 10 * tol.rel * |D| are treated
// as noise.
MatrixSubspace omega1(const RealSpectralTriple& t, const Tolerance& tol = {});

// Unital *-algebra generated by the algebra together with its one-forms.
StarAlgebra clifford(const RealSpectralTriple& t, const Tolerance& tol = {});

// Splitting of D against the block projections P_i of the generated algebra
// and their conjugates Q_j = J P_j J^{-1}:
//   dr: diagonal in both families    d0: off-diagonal in P, diagonal in Q
//   d1: diagonal in P, off-diagonal in Q    d2: off-diagonal in both.
// blocks stores P_i Q_j D P_k Q_l in row-major (i, j, k, l) order; count is
// the number of projections per family.
struct DiracDecomposition {
  ComplexMatrix d0, d1, d2, dr;
  std::vector<ComplexMatrix> projections_p;
  std::vector<ComplexMatrix> projections_q;
  std::vector<ComplexMatrix> blocks;
  int count = 0;

  const ComplexMatrix& block(int i, int j, int k, int l) const;
};

// Computes the decomposition and asserts its structural identities: the four
// parts sum to D, each part is self-adjoint, and conjugation by J fixes dr
// and d2 while exchanging d0 with d1 (up to epsilon_prime).
DiracDecomposition decompose(const RealSpectralTriple& t, const Tolerance& tol = {});

struct FirstOrderVerdict {
  bool holds = false;
  // Names the violated conjunct when holds is false; empty otherwise.
  std::string witness;
  bool d2_zero = false;
  bool d1_in_commutant = false;
  bool dr_first_order = false;
  double direct_residual = 0.0;
};

// First-order condition evaluated through the decomposition: d2 = 0, d1 lies
// in the commutant of the algebra, and dr satisfies the first-order condition
// on its own. Cross-checked against the direct double-commutator test.
FirstOrderVerdict first_order_via_decomposition(const RealSpectralTriple& t,
                                                const Tolerance& tol = {});

struct SecondOrderVerdict {
  bool holds = false;
  double residual = 0.0;
  double threshold = 0.0;
  // Norm of [d0, d1]; set when dr lies in the commutant, where that single
  // commutator is equivalent to the full condition.
  std::optional<double> commutator_residual;
};

// Second-order condition max_{a,b} |[[D, a], [D, b]°]| over basis pairs.
SecondOrderVerdict second_order(const RealSpectralTriple& t, const Tolerance& tol = {});

struct HodgeDiagnostics {
  bool holds = false;
  int clifford_dim = 0;
  int commutant_dim = 0;
  int circle_dim = 0;
  // Whether the circled Clifford algebra sits inside the Clifford commutant;
  // implied by the second-order condition.
  bool circle_in_commutant = false;
  double projector_distance = 0.0;
};

// Hodge property: the commutant of the Clifford algebra equals its image
// under x -> J x* J^{-1}.
HodgeDiagnostics hodge(const RealSpectralTriple& t, const Tolerance& tol = {});

}  // namespace fintriple
