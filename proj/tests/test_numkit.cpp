#include "test_util.hpp"

#include <algorithm>

using namespace crossprod;
using crossprod::testing::dist;

TEST(Tolerance, RejectsNonPositiveOrInvertedThresholds) {
  EXPECT_NO_THROW(Tolerance{}.validate());
  EXPECT_THROW((Tolerance{0.0, 1e-8, 1e-6}.validate()), Error);
  EXPECT_THROW((Tolerance{1e-9, -1.0, 1e-6}.validate()), Error);
  EXPECT_THROW((Tolerance{1e-5, 1e-8, 1e-6}.validate()), Error);
}

TEST(Nullspace, IdentityHasNone) { EXPECT_EQ(nullspace(CMatrix::Identity(3, 3)).cols(), 0); }

TEST(Nullspace, ZeroIsEverything) {
  const CMatrix n = nullspace(CMatrix::Zero(2, 2));
  EXPECT_EQ(n.cols(), 2);
  EXPECT_LT(dist(n.adjoint() * n, CMatrix::Identity(2, 2)), 1e-12);
}

TEST(Nullspace, AllOnesTwoByTwo) {
  CMatrix m(2, 2);
  m << 1, 1, 1, 1;
  const CMatrix n = nullspace(m);
  ASSERT_EQ(n.cols(), 1);
  // Orthogonal to (1, 1), unit length: (1, -1)/sqrt(2) up to phase.
  const Complex ratio = n(1, 0) / n(0, 0);
  EXPECT_NEAR(std::abs(ratio + 1.0), 0.0, 1e-12);
  EXPECT_NEAR(n.col(0).norm(), 1.0, 1e-12);
}

TEST(Nullspace, AdjointDimensionDifferenceIsColsMinusRows) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Index rows = 1 + static_cast<Index>(rng() % 6), cols = 1 + static_cast<Index>(rng() % 6);
    const Index rank = 1 + static_cast<Index>(rng() % std::min(rows, cols));
    const CMatrix m = random_complex_matrix(rng, rows, rank) * random_complex_matrix(rng, rank, cols);
    const Index a = nullspace(m).cols(), b = nullspace(m.adjoint()).cols();
    EXPECT_EQ(a - b, cols - rows);
    EXPECT_EQ(numerical_rank(m), rank);
    EXPECT_LE((m * nullspace(m)).norm(), 1e-9 * std::max(1.0, m.norm()));
  }
}

TEST(RangeBasis, SpansColumnSpace) {
  std::mt19937_64 rng(3);
  const CMatrix m = random_complex_matrix(rng, 5, 2) * random_complex_matrix(rng, 2, 4);
  const CMatrix q = range_basis(m);
  ASSERT_EQ(q.cols(), 2);
  EXPECT_LT(dist(q * (q.adjoint() * m), m), 1e-10);
}

TEST(UnitaryEigenspaces, DiagonalSigns) {
  CMatrix u = CMatrix::Zero(2, 2);
  u(0, 0) = 1;
  u(1, 1) = -1;
  const auto spaces = unitary_eigenspaces(u);
  ASSERT_EQ(spaces.size(), 2u);
  EXPECT_NEAR(std::abs(spaces[0].value - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(spaces[1].value + 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(spaces[0].isometry(0, 0)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(spaces[1].isometry(1, 0)), 1.0, 1e-12);
}

TEST(UnitaryEigenspaces, IdentityIsOneCluster) {
  const auto spaces = unitary_eigenspaces(CMatrix::Identity(4, 4));
  ASSERT_EQ(spaces.size(), 1u);
  EXPECT_EQ(spaces[0].isometry.cols(), 4);
}

TEST(UnitaryEigenspaces, ShiftGivesCubeRootsWithFourierVectors) {
  const CMatrix shift = fixtures::shift_matrix(3);
  const auto spaces = unitary_eigenspaces(shift);
  ASSERT_EQ(spaces.size(), 3u);
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(std::abs(spaces[j].value - crossprod::testing::root_of_unity(3, j)), 0.0, 1e-10);
    // The Fourier vector with the same eigenvalue, built independently.
    CVector f(3);
    const Complex lambda = spaces[j].value;
    for (int x = 0; x < 3; ++x) f(x) = std::pow(lambda, x) / std::sqrt(3.0);
    const CVector v = spaces[j].isometry.col(0);
    EXPECT_NEAR(std::abs(f.dot(v)), 1.0, 1e-10);
  }
}

TEST(UnitaryEigenspaces, RejectsNonUnitary) {
  CMatrix m = CMatrix::Identity(2, 2) * 2.0;
  EXPECT_THROW(unitary_eigenspaces(m), Error);
}

TEST(UnitaryEigenspaces, ReassemblesRandomUnitaries) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 8; ++n) {
    const CMatrix u = random_unitary(rng, n);
    CMatrix sum = CMatrix::Zero(n, n);
    Index total = 0;
    for (const auto& e : unitary_eigenspaces(u)) {
      EXPECT_NEAR(std::abs(e.value), 1.0, 1e-9);
      EXPECT_LT(dist(e.isometry.adjoint() * e.isometry, CMatrix::Identity(e.isometry.cols(), e.isometry.cols())), 1e-9);
      sum += e.value * e.isometry * e.isometry.adjoint();
      total += e.isometry.cols();
    }
    EXPECT_EQ(total, n);
    EXPECT_LT(dist(sum, u), 1e-8);
  }
}

TEST(UnitaryEigenspaces, MergesNearbyEigenvalues) {
  CMatrix u = CMatrix::Zero(2, 2);
  u(0, 0) = std::polar(1.0, 0.3);
  u(1, 1) = std::polar(1.0, 0.3 + 1e-9);
  EXPECT_EQ(unitary_eigenspaces(u).size(), 1u);
}

TEST(HermitianEigenspaces, AscendingWithMultiplicity) {
  CMatrix h = CMatrix::Zero(3, 3);
  h(0, 0) = 2;
  h(1, 1) = -1;
  h(2, 2) = 2;
  const auto spaces = hermitian_eigenspaces(h);
  ASSERT_EQ(spaces.size(), 2u);
  EXPECT_NEAR(spaces[0].value.real(), -1.0, 1e-12);
  EXPECT_EQ(spaces[1].isometry.cols(), 2);
}

TEST(Sylvester, ScalarsCommute) {
  CMatrix two(1, 1);
  two(0, 0) = 2;
  const auto basis = solve_sylvester_family({{two, two}}, 1, 1);
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_NEAR(std::abs(basis[0](0, 0)), 1.0, 1e-12);
}

TEST(Sylvester, SimilarPaulisHaveATwoDimensionalSolutionSpace) {
  // X and Z share the spectrum {1, -1}, so AX = XB has one solution per eigenvalue pair.
  const CMatrix x = crossprod::testing::pauli_x(), z = crossprod::testing::pauli_z();
  const auto basis = solve_sylvester_family({{x, z}}, 2, 2);
  ASSERT_EQ(basis.size(), 2u);
  for (const auto& s : basis) EXPECT_LT((x * s - s * z).norm(), 1e-10);
  CMatrix h(2, 2);
  h << 1, 1, 1, -1;
  EXPECT_LT((x * h - h * z).norm(), 1e-12);
}

TEST(Sylvester, DisjointSpectraHaveNoSolution) {
  const CMatrix one = CMatrix::Identity(2, 2);
  EXPECT_TRUE(solve_sylvester_family({{one, 2.0 * one}}, 2, 2).empty());
}

TEST(Sylvester, NoConstraintsGivesAllMatrices) {
  const auto basis = solve_sylvester_family({}, 2, 2);
  ASSERT_EQ(basis.size(), 4u);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      EXPECT_NEAR(std::abs((basis[i].adjoint() * basis[j]).trace()), i == j ? 1.0 : 0.0, 1e-12);
}

TEST(Sylvester, RejectsMismatchedShapes) {
  EXPECT_THROW(solve_sylvester_family({{CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)}}, 2, 2), Error);
}

TEST(Sylvester, FastPathMatchesStackedSystemAndResidualBound) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    // Pairs related by a hidden similarity have a known solution space.
    const Index n = 1 + static_cast<Index>(rng() % 4);
    const CMatrix w = random_unitary(rng, n);
    std::vector<SylvesterPair> pairs;
    for (int i = 0; i < 3; ++i) {
      CMatrix h = random_hermitian(rng, n);
      if (trial % 3 == 0) h = CMatrix::Identity(n, n) * h(0, 0);
      pairs.push_back({w * h * w.adjoint(), h});
    }
    const auto fast = solve_sylvester_family(pairs, n, n);
    const auto slow = solve_sylvester_stacked(pairs, n, n);
    EXPECT_EQ(fast.size(), slow.size());
    EXPECT_GE(fast.size(), 1u);
    for (const auto& t : fast)
      for (const auto& p : pairs)
        EXPECT_LE((t * p.right - p.left * t).norm(), 1e-8 * (t.norm() * p.right.norm() + p.left.norm() * t.norm()) + 1e-12);
  }
}

TEST(MatrixHelpers, KronBlockDiagonalPower) {
  const CMatrix x = crossprod::testing::pauli_x();
  const CMatrix k = kron(CMatrix::Identity(2, 2), x);
  EXPECT_LT(dist(k, block_diagonal({x, x})), 1e-15);
  EXPECT_LT(dist(matrix_power(x, 2), CMatrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(dist(matrix_power(x, -1), x), 1e-12);
  EXPECT_LT(dist(matrix_power(x, 0), CMatrix::Identity(2, 2)), 1e-15);
}

TEST(MatrixHelpers, NormalizePhaseAndScalarRatio) {
  CMatrix m(2, 2);
  m << Complex(0, 0.1), Complex(0, -2), 0, 0;
  const CMatrix n = normalize_phase(m);
  EXPECT_NEAR(n(0, 1).imag(), 0.0, 1e-15);
  EXPECT_GT(n(0, 1).real(), 0.0);
  const auto r = scalar_ratio(m * Complex(0.6, 0.8), m, 1e-12);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(std::abs(*r - Complex(0.6, 0.8)), 0.0, 1e-14);
  EXPECT_FALSE(scalar_ratio(CMatrix::Identity(2, 2), crossprod::testing::pauli_z(), 1e-9).has_value());
}

TEST(MatrixHelpers, CleanDropsSignedZeros) {
  const Complex z = clean(Complex(-0.0, -0.0));
  EXPECT_FALSE(std::signbit(z.real()));
  EXPECT_FALSE(std::signbit(z.imag()));
}

TEST(MatrixHelpers, Unitarity) {
  std::mt19937_64 rng(1);
  EXPECT_TRUE(is_unitary(random_unitary(rng, 5), 1e-10));
  EXPECT_FALSE(is_unitary(CMatrix::Identity(2, 2) * 1.1, 1e-3));
}

TEST(Adjoint, IsAnInvolution) {
  std::mt19937_64 rng(2);
  const CMatrix m = random_complex_matrix(rng, 3, 4);
  EXPECT_EQ(m.adjoint().adjoint(), m);
}
