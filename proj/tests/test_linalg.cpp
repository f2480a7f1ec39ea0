#include "doctest.h"
#include "fintriple/linalg.hpp"

#include <random>

using namespace fintriple;

namespace {

ComplexMatrix randm(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

ComplexMatrix random_unitary(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(randm(n, n, rng));
  ComplexMatrix q = qr.householderQ();
  return q;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("kron identity and unit cases") {
  ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK((kron(i2, i2) - ComplexMatrix::Identity(4, 4)).norm() == doctest::Approx(0.0));
  ComplexMatrix e11 = unit_matrix(0, 0, 2);
  CHECK((kron(e11, e11) - unit_matrix(0, 0, 4)).norm() == doctest::Approx(0.0));
}

TEST_CASE("kron of sigma_x with diag(2,3)") {
  ComplexMatrix sx(2, 2);
  sx << 0, 1, 1, 0;
  ComplexMatrix d(2, 2);
  d << 2, 0, 0, 3;
  ComplexMatrix expect(4, 4);
  expect << 0, 0, 2, 0,
            0, 0, 0, 3,
            2, 0, 0, 0,
            0, 3, 0, 0;
  CHECK((kron(sx, d) - expect).norm() == doctest::Approx(0.0));
}

TEST_CASE("dagger, conjugate, transpose, commutator") {
  ComplexMatrix m(1, 1);
  m(0, 0) = Complex(0, 1);
  CHECK(dagger(m)(0, 0) == Complex(0, -1));
  CHECK(conjugate(m)(0, 0) == Complex(0, -1));
  CHECK(transpose(m)(0, 0) == Complex(0, 1));

  std::mt19937_64 rng(11);
  ComplexMatrix a = randm(4, 4, rng);
  CHECK(comm(a, a).norm() == doctest::Approx(0.0));

  ComplexMatrix c = comm(unit_matrix(0, 1, 2), unit_matrix(1, 0, 2));
  ComplexMatrix expect(2, 2);
  expect << 1, 0, 0, -1;
  CHECK((c - expect).norm() == doctest::Approx(0.0));

  CHECK_THROWS_AS(comm(ComplexMatrix::Zero(2, 3), ComplexMatrix::Zero(3, 2)), DimensionError);
  CHECK_THROWS_AS(comm(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3)), DimensionError);
}

TEST_CASE("hilbert-schmidt inner product and vectorization") {
  ComplexMatrix e11 = unit_matrix(0, 0, 2);
  ComplexMatrix e22 = unit_matrix(1, 1, 2);
  CHECK(hs_inner(e11, e11) == Complex(1, 0));
  CHECK(hs_inner(e11, e22) == Complex(0, 0));
  CHECK(hs_norm(e11 + e22) == doctest::Approx(std::sqrt(2.0)));

  std::mt19937_64 rng(12);
  ComplexMatrix m = randm(3, 3, rng);
  CHECK((unvec(vec(m), 3, 3) - m).norm() == doctest::Approx(0.0));
  CHECK_THROWS_AS(unvec(ComplexVector::Zero(5), 2, 2), DimensionError);
  CHECK_THROWS_AS(unit_matrix(2, 0, 2), DimensionError);
  CHECK_THROWS_AS(hs_inner(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3)), DimensionError);
}

TEST_CASE("entries_finite flags NaN and Inf") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  CHECK(entries_finite(m));
  m(0, 1) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK(!entries_finite(m));
  m(0, 1) = Complex(0.0, std::numeric_limits<double>::infinity());
  CHECK(!entries_finite(m));
}

TEST_CASE("nullspace basic kernels") {
  CHECK(nullspace(ComplexMatrix::Identity(3, 3)).empty());

  auto z = nullspace(ComplexMatrix::Zero(2, 2));
  REQUIRE(z.size() == 2);
  ComplexMatrix g(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = z[i].dot(z[j]);
  CHECK((g - ComplexMatrix::Identity(2, 2)).norm() == doctest::Approx(0.0).epsilon(1e-12));

  auto k = nullspace(unit_matrix(0, 0, 2));
  REQUIRE(k.size() == 1);
  CHECK(std::abs(k[0][0]) == doctest::Approx(0.0));
  CHECK(k[0][1].real() == doctest::Approx(1.0));
  CHECK(k[0][1].imag() == doctest::Approx(0.0));
}

TEST_CASE("nullspace of wide matrix includes trailing right singular vectors") {
  // 1x3 row [1,0,0]: kernel is the last two coordinates.
  ComplexMatrix m = ComplexMatrix::Zero(1, 3);
  m(0, 0) = 1.0;
  auto k = nullspace(m);
  REQUIRE(k.size() == 2);
  for (const auto& v : k) CHECK((m * v).norm() == doctest::Approx(0.0));
}

TEST_CASE("orthonormalize pinned spans") {
  ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK(orthonormalize({i2, 2.0 * i2}).dim() == 1);

  auto full = orthonormalize({unit_matrix(0, 0, 2), unit_matrix(0, 1, 2),
                              unit_matrix(1, 0, 2), unit_matrix(1, 1, 2)});
  CHECK(full.dim() == 4);
  std::mt19937_64 rng(13);
  CHECK(subspace_contains(full, randm(2, 2, rng)));

  ComplexMatrix e11 = unit_matrix(0, 0, 2), e22 = unit_matrix(1, 1, 2);
  auto diag2 = orthonormalize({e11 + e22, e11 - e22, e11});
  CHECK(diag2.dim() == 2);
  CHECK(diag2.gram_defect() < 1e-13);

  CHECK_THROWS_AS(orthonormalize({ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3)}),
                  DimensionError);
  CHECK_THROWS_AS(orthonormalize({ComplexMatrix::Zero(2, 3)}), DimensionError);
}

TEST_CASE("orthonormalize floor drops pure-roundoff candidates") {
  ComplexMatrix tiny = 1e-15 * ComplexMatrix::Identity(2, 2);
  CHECK(orthonormalize({tiny}).dim() == 0);  // below the default absolute floor
  ComplexMatrix small = 1e-10 * ComplexMatrix::Identity(2, 2);
  CHECK(orthonormalize({small}).dim() == 1);           // above abs_floor: kept
  CHECK(orthonormalize({small}, {}, 1e-6).dim() == 0);  // explicit floor kills it
}

TEST_CASE("subspace containment and equality on pinned examples") {
  ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  auto scalars = orthonormalize({i2});
  CHECK(subspace_contains(scalars, 5.0 * i2));
  CHECK(!subspace_contains(scalars, unit_matrix(0, 1, 2)));
  CHECK(subspace_contains(scalars, ComplexMatrix::Zero(2, 2)));

  ComplexMatrix e11 = unit_matrix(0, 0, 2), e22 = unit_matrix(1, 1, 2);
  auto s1 = orthonormalize({e11 + e22, e11 - e22});
  auto s2 = orthonormalize({e11, e22});
  CHECK(subspace_equal(s1, s2));
  CHECK(projector_distance(s1, s2) < 1e-12);
  CHECK(!subspace_equal(s1, scalars));
  CHECK(projector_distance(s1, scalars) == doctest::Approx(1.0));

  auto s3 = orthonormalize({ComplexMatrix::Identity(3, 3)});
  CHECK_THROWS_AS(subspace_equal(s1, s3), DimensionError);
  CHECK_THROWS_AS(projector_distance(s1, s3), DimensionError);
}

TEST_CASE("span builder matches svd orthonormalization") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    int count = 1 + static_cast<int>(rng() % 7);
    std::vector<ComplexMatrix> mats;
    for (int t = 0; t < count; ++t) mats.push_back(randm(n, n, rng));
    // Append redundant combinations.
    mats.push_back(mats[0] + mats[count / 2]);
    mats.push_back(2.0 * mats[0]);

    SpanBuilder sb(n);
    for (const auto& m : mats) sb.add(m);
    auto svd_span = orthonormalize(mats);
    CHECK(sb.dim() == svd_span.dim());
    CHECK(subspace_equal(sb.subspace(), svd_span));
    CHECK(sb.subspace().gram_defect() < 1e-13);
  }
}

TEST_CASE("property: kron bilinearity over random sizes") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 120; ++trial) {
    int p = 1 + static_cast<int>(rng() % 3), q = 1 + static_cast<int>(rng() % 3);
    int r = 1 + static_cast<int>(rng() % 3), s = 1 + static_cast<int>(rng() % 3);
    int t = 1 + static_cast<int>(rng() % 3), u = 1 + static_cast<int>(rng() % 3);
    ComplexMatrix a = randm(p, q, rng), c = randm(q, r, rng);
    ComplexMatrix b = randm(s, t, rng), d = randm(t, u, rng);
    ComplexMatrix lhs = kron(a, b) * kron(c, d);
    ComplexMatrix rhs = kron(a * c, b * d);
    REQUIRE((lhs - rhs).norm() <= 1e-12 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("property: nullspace orthonormality, residual, ordering") {
  std::mt19937_64 rng(102);
  Tolerance tol;
  for (int trial = 0; trial < 120; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 8);
    int cols = 1 + static_cast<int>(rng() % 8);
    int rank = static_cast<int>(rng() % (std::min(rows, cols) + 1));
    ComplexMatrix m = rank == 0
        ? ComplexMatrix::Zero(rows, cols)
        : ComplexMatrix(randm(rows, rank, rng) * randm(rank, cols, rng));
    auto k = nullspace(m, tol);
    REQUIRE(static_cast<int>(k.size()) == cols - rank);
    double mnorm = m.norm();
    for (size_t i = 0; i < k.size(); ++i) {
      REQUIRE((m * k[i]).norm() <= tol.threshold(mnorm) * std::max(1.0, mnorm));
      for (size_t j = 0; j < k.size(); ++j) {
        Complex ip = k[i].dot(k[j]);
        double expect = i == j ? 1.0 : 0.0;
        REQUIRE(std::abs(ip - Complex(expect, 0)) < 1e-10);
      }
    }
  }
}

TEST_CASE("property: subspace_equal equivalence and unitary invariance") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    int count = 1 + static_cast<int>(rng() % 4);
    std::vector<ComplexMatrix> mats;
    for (int t = 0; t < count; ++t) mats.push_back(randm(n, n, rng));
    auto s = orthonormalize(mats);

    // Recombine the basis by a random unitary: same subspace.
    ComplexMatrix u = random_unitary(s.dim(), rng);
    std::vector<ComplexMatrix> recombined;
    for (int t = 0; t < s.dim(); ++t) {
      ComplexMatrix acc = ComplexMatrix::Zero(n, n);
      for (int w = 0; w < s.dim(); ++w) acc += u(w, t) * s.basis_matrix(w);
      recombined.push_back(acc);
    }
    auto s2 = orthonormalize(recombined);

    REQUIRE(subspace_equal(s, s));          // reflexive
    REQUIRE(subspace_equal(s, s2));         // invariant under recombination
    REQUIRE(subspace_equal(s2, s));         // symmetric

    std::vector<ComplexMatrix> permuted(mats.rbegin(), mats.rend());
    auto s3 = orthonormalize(permuted);
    REQUIRE(subspace_equal(s2, s3));
    REQUIRE(subspace_equal(s, s3));         // transitivity witness

    if (s.dim() < n * n) {
      mats.push_back(randm(n, n, rng));
      auto bigger = orthonormalize(mats);
      if (bigger.dim() != s.dim()) REQUIRE(!subspace_equal(s, bigger));
    }
  }
}

TEST_CASE("property: orthonormalize dimension equals independent gram rank") {
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    int count = 1 + static_cast<int>(rng() % 6);
    std::vector<ComplexMatrix> mats;
    for (int t = 0; t < count; ++t) {
      if (!mats.empty() && rng() % 3 == 0) {
        // Deliberate dependence: random combination of earlier entries.
        ComplexMatrix acc = ComplexMatrix::Zero(n, n);
        std::normal_distribution<double> g(0.0, 1.0);
        for (const auto& m : mats) acc += Complex(g(rng), g(rng)) * m;
        mats.push_back(acc);
      } else {
        mats.push_back(randm(n, n, rng));
      }
    }
    ComplexMatrix gram(mats.size(), mats.size());
    for (size_t i = 0; i < mats.size(); ++i)
      for (size_t j = 0; j < mats.size(); ++j) gram(i, j) = hs_inner(mats[i], mats[j]);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram);
    double top = eig.eigenvalues().cwiseAbs().maxCoeff();
    int rank = 0;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
      if (eig.eigenvalues()[i] > 1e-10 * std::max(top, 1.0)) ++rank;
    REQUIRE(orthonormalize(mats).dim() == rank);
  }
}

}  // TEST_SUITE
