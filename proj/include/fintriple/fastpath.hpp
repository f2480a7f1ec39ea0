#pragma once

#include "fintriple/standard_model.hpp"

namespace fintriple {

// Hodge verdict obtained without closing the Clifford algebra. With
// X = Cl' the bicommutant theorem gives dim Cl = dim X' = sum of squared
// Hilbert-space multiplicities of the simple summands of X, and the Hodge
// property Cl' = Cl-degree is equivalent to the two facts recorded here:
// the circled basis of X commutes with X, and the dimensions agree.
struct SMHodgeVerdict {
  bool holds = false;
  int commutant_dim = 0;  // dim Cl'
  int clifford_dim = 0;   // dim Cl, recovered from the multiplicities
  // max_{i,j} |[x_i-degree, x_j]| over the orthonormal basis of X; tests
  // X-degree inside X' = Cl.
  double opposite_residual = 0.0;
};

// Orthonormal basis of the commutant of the internal algebra on C^{32 n},
// assembled from its explicit spanning set rather than a kernel solve.
// Compute once and share across a parameter scan.
MatrixSubspace sm_internal_commutant(int generations = 1, const Tolerance& tol = {});

// Hodge check specialised to triples from sm_build. Because Cl contains the
// algebra, X = Cl' lives inside the internal commutant, where only the
// one-form generators [D, g] and their adjoints still constrain. The simple
// structure of X is read off in the reduced block coordinates of the
// commutant (summands of sizes 8n, 4n, 4n, 4n with Hilbert-space
// multiplicities 1, 1, 2, 3), giving dim Cl without generating Cl itself.
// Agrees with hodge() on the built triple at a fraction of the cost.
SMHodgeVerdict sm_hodge_fast(const SMTriple& t, const MatrixSubspace& internal_commutant,
                             const Tolerance& tol = {});

// Convenience overload that builds the commutant basis itself.
SMHodgeVerdict sm_hodge_fast(const SMTriple& t, const Tolerance& tol = {});

}  // namespace fintriple
