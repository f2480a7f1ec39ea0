#pragma once

#include "fintriple/linalg.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fintriple {

struct AlgebraError : std::runtime_error {
  explicit AlgebraError(const std::string& what) : std::runtime_error(what) {}
};

/// An antilinear operator stored through its linear part: v -> c * conj(v).
/// Construction checks that c is unitary and that c * conj(c) = sign * I for a
/// sign in {+1, -1}; the sign is recorded.
class AntilinearMap {
 public:
  explicit AntilinearMap(ComplexMatrix c, const Tolerance& tol = {});

  const ComplexMatrix& linear_part() const { return c_; }
  int dim() const { return static_cast<int>(c_.rows()); }
  int sign() const { return sign_; }

  ComplexVector apply(const ComplexVector& v) const;
  /// J x J^{-1} = c * conj(x) * c^{-1} (a linear operator again).
  ComplexMatrix ad(const ComplexMatrix& x) const;

 private:
  ComplexMatrix c_;
  int sign_;
};

struct WedderburnBlock {
  int m = 0;               // matrix size of the simple summand M_m
  int k = 0;               // multiplicity of its irreducible module
  ComplexMatrix p;         // minimal central projection cutting the block
};

/// A product- and adjoint-closed subspace of operators, optionally carrying
/// its decomposition into simple matrix blocks.
struct StarAlgebra {
  MatrixSubspace space;
  bool unital = true;
  std::optional<std::vector<WedderburnBlock>> structure;

  int ambient_dim() const { return space.ambient_dim(); }
  int dim() const { return space.dim(); }
};

/// Smallest complex *-subalgebra containing the generators (plus the identity
/// when unital). Closure rounds adjoin adjoints of the current basis and all
/// products of the current basis with the original generators on both sides,
/// until the dimension stabilizes.
StarAlgebra generated_algebra(const std::vector<ComplexMatrix>& generators,
                              bool unital = true, const Tolerance& tol = {});

/// {x : [x, g] = 0 for every g and g*}. Adjoints of the generators are always
/// included, so the result is the commutant of the *-algebra the generators
/// generate, and is itself closed under product and adjoint.
StarAlgebra commutant(const std::vector<ComplexMatrix>& generators,
                      const Tolerance& tol = {});

/// Fills in the block structure of a unital *-closed algebra: minimal central
/// projections from the spectral clusters of a seeded random self-adjoint
/// central element, block sizes m_i = sqrt(dim p_i b p_i), multiplicities
/// k_i = rank(p_i)/m_i. Blocks are sorted canonically by (m, k, projection
/// diagonal). Ambiguous eigenvalue clustering retries with derived seeds.
StarAlgebra wedderburn(const StarAlgebra& b, const Tolerance& tol = {},
                       std::uint64_t seed = 0x5eedULL);

/// xi -> C xi^T C^{-1}, the closed form of J xi* J^{-1}.
ComplexMatrix circle(const ComplexMatrix& xi, const AntilinearMap& j);

/// Image algebra {xi degrees : xi in b}; closed because circle is a linear
/// anti-automorphism commuting with the adjoint.
StarAlgebra circle_algebra(const StarAlgebra& b, const AntilinearMap& j,
                           const Tolerance& tol = {});

/// Orthonormal basis of s1 intersect s2 via principal angles.
MatrixSubspace subspace_intersection(const MatrixSubspace& s1, const MatrixSubspace& s2,
                                     const Tolerance& tol = {});

/// {x in within : [x, g] = 0 for every generator}. Solved in the coordinates
/// of `within`, so the cost scales with its dimension instead of the squared
/// ambient dimension. Pass a *-closed generator family (e.g. an algebra
/// basis) when the commutant of the generated *-algebra is wanted; the
/// ambient commutant is recovered by passing the full matrix space.
MatrixSubspace relative_commutant(const MatrixSubspace& within,
                                  const std::vector<ComplexMatrix>& generators,
                                  const Tolerance& tol = {});

}  // namespace fintriple
