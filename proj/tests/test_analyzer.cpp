#include "test_util.hpp"

#include <set>

using namespace crossprod;
using crossprod::testing::dist;

namespace {

constexpr int kEta = 1, kTau = 3;

// Recomputes every structural claim of a report directly from the input.
void expect_structure(const CovariantRep& pi, const StructureReport& r) {
  const FiniteGroup& G = pi.group();
  EXPECT_EQ(G.order(), r.m() * r.H.size());
  EXPECT_EQ(r.coset_reps.front(), G.identity());
  const Index d1 = r.base_irrep.dim();
  const Index bd = r.block_dim();
  EXPECT_EQ(r.m() * bd, pi.dim());
  EXPECT_TRUE(is_unitary(r.conjugator, 1e-9));
  const CovariantRep c = r.canonical(pi);

  std::vector<Rep> translates;
  for (int g : r.coset_reps) translates.push_back(compose(r.base_irrep, *pi.action, g));
  for (const auto& [label, m] : c.base.gens()) {
    std::vector<CMatrix> blocks;
    for (const auto& t : translates) blocks.push_back(kron(CMatrix::Identity(r.multiplicity, r.multiplicity), t.at(label)));
    EXPECT_LT(dist(m, block_diagonal(blocks)), 1e-7) << label;
  }
  for (std::size_t i = 0; i < translates.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) EXPECT_TRUE(intertwiners(translates[i], translates[j]).empty());

  for (int g = 0; g < G.order(); ++g) {
    const CMatrix& u = c.unitaries[g];
    std::set<int> targets;
    for (int j = 0; j < r.m(); ++j) {
      const int i = r.perms[g][j];
      targets.insert(i);
      for (int row = 0; row < r.m(); ++row) {
        const CMatrix blk = u.block(row * bd, j * bd, bd, bd);
        if (row == i) EXPECT_LT(dist(blk, r.block_unitaries[g][j]), 1e-7);
        else EXPECT_LT(blk.norm(), 1e-7);
      }
    }
    EXPECT_EQ(static_cast<int>(targets.size()), r.m());
    // Block diagonal exactly on the stabilizer.
    EXPECT_EQ(r.perms[g][0] == 0, r.H.contains(g));
  }

  for (int i = 0; i < r.H.size(); ++i) {
    const int h = r.H.members[i];
    EXPECT_LT(dist(r.Psi.unitaries[i], kron(r.Lambda.mats[i], r.Vproj.mats[i])), 1e-7);
    EXPECT_LT(dist(r.Psi.unitaries[i], c.unitaries[h].topLeftCorner(bd, bd)), 1e-7);
    const Rep twisted = compose(r.base_irrep, *pi.action, h);
    for (const auto& [label, m] : r.base_irrep.gens()) EXPECT_LT(dist(r.Vproj.mats[i] * m, twisted.at(label) * r.Vproj.mats[i]), 1e-7);
  }
  for (const ProjectiveRep* p : {&r.Lambda, &r.Vproj}) {
    EXPECT_LT(p->modulus_residual(), 1e-8);
    EXPECT_LT(p->multiplier_residual(), 1e-7);
    EXPECT_LT(p->cocycle_identity_residual(), 1e-8);
  }
  EXPECT_EQ(r.Lambda.mats.front().rows(), r.multiplicity);
  EXPECT_EQ(r.Vproj.mats.front().rows(), d1);
  EXPECT_EQ(r.ergodic_dim, 1);
  EXPECT_TRUE(r.block_diagonal_iff_in_H);
  EXPECT_TRUE(r.psi_irreducible);
  EXPECT_EQ(r.lambda_irreducible, r.psi_irreducible);
}

ActionPtr shared(const GroupAction& a) { return std::make_shared<const GeneratorAction>(GeneratorAction::from(a)); }

}  // namespace

TEST(Analyze, RegularFreeOrbit) {
  for (const CovariantRep& pi : {fixtures::torus_regular(), fixtures::orbit_regular()}) {
    const StructureReport r = analyze(pi, 42);
    EXPECT_EQ(r.H.size(), 1);
    EXPECT_EQ(r.m(), 6);
    EXPECT_EQ(r.multiplicity, 1);
    expect_structure(pi, r);
  }
}

TEST(Analyze, MinimalRep) {
  const CovariantRep pi = fixtures::minimal_covariant();
  const StructureReport r = analyze(pi, 42);
  EXPECT_EQ(r.H.size(), 6);
  EXPECT_EQ(r.m(), 1);
  EXPECT_EQ(r.multiplicity, 1);
  expect_structure(pi, r);
}

TEST(Analyze, DoubledMinimalHasMultiplicityTwo) {
  const CovariantRep pi = fixtures::doubled_minimal_covariant();
  EXPECT_TRUE(is_irreducible(pi.as_rep()));
  EXPECT_EQ(commutant_basis(pi.base).size(), 4u);
  const StructureReport r = analyze(pi, 42);
  // Every translate of the minimal rep is equivalent to it, so the whole group stabilizes it.
  EXPECT_EQ(r.H.size(), 6);
  EXPECT_EQ(r.m(), 1);
  EXPECT_EQ(r.multiplicity, 2);
  EXPECT_TRUE(r.lambda_irreducible);
  expect_structure(pi, r);
}

TEST(Analyze, EtaSymmetricPair) {
  const CovariantRep pi = fixtures::eta_symmetric_covariant();
  const StructureReport r = analyze(pi, 42);
  EXPECT_EQ(r.H.members, (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(r.H_normal);
  EXPECT_EQ(r.m(), 2);
  EXPECT_EQ(r.multiplicity, 1);
  expect_structure(pi, r);
}

TEST(Analyze, WeylPairHasIrreducibleMultiplicityPart) {
  for (int q : {2, 3}) {
    const CovariantRep pi = fixtures::weyl_covariant(q);
    const StructureReport r = analyze(pi, 42);
    EXPECT_EQ(r.multiplicity, q);
    EXPECT_EQ(r.H.size(), q * q);
    EXPECT_TRUE(r.lambda_irreducible);
    EXPECT_FALSE(r.Lambda.trivial_cocycle(1e-7));
    expect_structure(pi, r);
  }
}

TEST(Analyze, RejectsReducibleInput) {
  const auto act = fixtures::rotation_action(3);
  const CovariantRep reg = regular_representation(defining_rep(act->algebra), *act);
  try {
    analyze(reg, 42);
    FAIL() << "expected NotIrreducible";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotIrreducible);
  }
}

TEST(Analyze, CrossedIrrepsOfRandomActions) {
  std::mt19937_64 rng(77);
  int analyzed = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const FiniteGroup g = trial % 3 == 0 ? make_symmetric_group_3()
                                         : make_direct_product(make_cyclic_group(2), make_cyclic_group(2 + trial % 2));
    const GroupAction act = fixtures::random_group_action(g, rng);
    const ActionPtr a = shared(act);
    const Rep pi = block_rep(act.algebra, static_cast<int>(rng() % act.algebra.block_dims.size()));
    for (const auto& irrep : fixtures::crossed_irreps(pi, a, trial)) {
      expect_structure(irrep, analyze(irrep, 42));
      ++analyzed;
    }
  }
  EXPECT_GT(analyzed, 12);
}

TEST(FactorTensor, IdentityAndKnownFactor) {
  std::mt19937_64 rng(12);
  const CMatrix v = random_unitary(rng, 3);
  EXPECT_LT(dist(factor_tensor(kron(CMatrix::Identity(2, 2), v), v, 2), CMatrix::Identity(2, 2)), 1e-9);
  const CMatrix x = random_unitary(rng, 2);
  const CMatrix got = factor_tensor(kron(x, v), v, 2);
  const auto phase = scalar_ratio(got, x, 1e-9);
  ASSERT_TRUE(phase.has_value());
  EXPECT_NEAR(std::abs(*phase), 1.0, 1e-9);
  EXPECT_THROW(factor_tensor(random_unitary(rng, 6), v, 2), Error);
}

TEST(FactorTensor, WeylExampleRecoversClockMatrix) {
  const CovariantRep pi = fixtures::weyl_covariant(2);
  // Psi(U^(1,0)) = V (x) U with V the clock and U the shift.
  const CMatrix clock = fixtures::clock_matrix(2), shift = fixtures::shift_matrix(2);
  const int g = 2;  // (1, 0) in Z_2 x Z_2
  const CMatrix lambda = factor_tensor(pi.unitaries[g], shift, 2);
  EXPECT_TRUE(scalar_ratio(lambda, clock, 1e-9).has_value());
}

TEST(HomogeneousIrreducibility, AgreesWithDirectTest) {
  const CovariantRep minimal = fixtures::minimal_covariant();
  EXPECT_TRUE(homogeneous_irreducibility(minimal, minimal.base));

  const StructureReport w = analyze(fixtures::weyl_covariant(3), 42);
  EXPECT_TRUE(homogeneous_irreducibility(w.Psi, w.base_irrep));

  // 1_2 (x) pi with U_h = 1 (x) V_h: the Lambda family is trivial.
  CovariantRep doubled{multiple(minimal.base, 2), minimal.action, {}};
  for (const auto& u : minimal.unitaries) doubled.unitaries.push_back(kron(CMatrix::Identity(2, 2), u));
  EXPECT_FALSE(homogeneous_irreducibility(doubled, minimal.base));
  EXPECT_FALSE(is_irreducible(doubled.as_rep()));
}

TEST(ProjectiveRep, RejectsNonScalarRatios) {
  const Subgroup z2 = whole_group(make_cyclic_group(2));
  CMatrix swap = CMatrix::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1;
  const ProjectiveRep ok = make_projective(z2, {CMatrix::Identity(2, 2), swap});
  EXPECT_TRUE(ok.trivial_cocycle(1e-9));
  CMatrix diag = CMatrix::Identity(2, 2);
  diag(1, 1) = 2;
  EXPECT_THROW(make_projective(z2, {CMatrix::Identity(2, 2), diag}), Error);
}

TEST(CyclicAnalyze, FlipSwapExample) {
  const CovariantRep pi = fixtures::flip_swap_covariant();
  EXPECT_TRUE(is_irreducible(pi.as_rep()));
  const CyclicReport r = cyclic_analyze(pi, 42);
  EXPECT_EQ(r.m, 2);
  EXPECT_EQ(r.k, 2);
  EXPECT_EQ(r.base.multiplicity, 1);
  EXPECT_FALSE(r.minimal);
  EXPECT_TRUE(r.pieces_inequivalent);
  ASSERT_TRUE(r.has_fixed_point_data);
  EXPECT_EQ(r.fixed_point_dim, 2);
  EXPECT_EQ(r.eta, 2);
  EXPECT_EQ(r.fixed_pt_irreps.size(), 2u);
  EXPECT_TRUE(r.base_restriction_multiplicity_free);
  expect_structure(pi, r.base);

  // Each piece restricted to the fixed points is the sum of the two characters.
  const GroupAction& act = *pi.action->concrete;
  const FixedPointAlgebra f = fixed_point_algebra(act);
  const IrrepDecomposition phis = decompose(f.rep, 42);
  ASSERT_EQ(phis.components.size(), 2u);
  for (int i = 0; i < r.m; ++i) {
    const Rep piece = subalgebra_rep(compose(r.base.base_irrep, *pi.action, i), act.algebra, f.basis);
    const IrrepDecomposition d = decompose(piece, 42);
    ASSERT_EQ(d.components.size(), 2u);
    for (const auto& c : d.components) {
      EXPECT_EQ(c.multiplicity, 1);
      int matches = 0;
      for (const auto& phi : phis.components) matches += !intertwiners(c.irrep, phi.irrep).empty();
      EXPECT_EQ(matches, 1);
    }
  }
}

TEST(CyclicAnalyze, RegularRotationHasOneCharacterWithFullMultiplicity) {
  for (int q : {2, 3, 5}) {
    const CovariantRep pi = fixtures::rotation_covariant(q);
    const CyclicReport r = cyclic_analyze(pi, 42);
    EXPECT_EQ(r.m, q);
    EXPECT_EQ(r.k, 1);
    ASSERT_EQ(r.fixed_pt_irreps.size(), 1u);
    EXPECT_EQ(r.fixed_pt_irreps[0].multiplicity, q);
    expect_structure(pi, r.base);
  }
}

TEST(CyclicAnalyze, DiagonalPhaseSpectrumIsNotACoset) {
  const CyclicReport r = cyclic_analyze(fixtures::diagonal_phase_covariant(), 42);
  EXPECT_EQ(r.m, 1);
  EXPECT_EQ(r.k, 8);
  EXPECT_TRUE(r.minimal);
  ASSERT_EQ(r.spectrum_of_U.size(), 2u);
  const Complex a = r.spectrum_of_U[0].value, b = r.spectrum_of_U[1].value;
  EXPECT_NEAR(std::abs(a - Complex(0, 1)), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(b - std::polar(1.0, 3 * std::numbers::pi / 4)), 0.0, 1e-9);
  // The ratio is a primitive eighth root, so the spectrum is no coset of the fourth roots.
  EXPECT_GT(std::abs(std::pow(b / a, 4) - 1.0), 0.5);
}

TEST(CyclicAnalyze, MultiplicityOneOnRandomCrossedIrreps) {
  std::mt19937_64 rng(31);
  int count = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 5;
    const GroupAction act = fixtures::random_cyclic_action(n, rng);
    const ActionPtr a = shared(act);
    const Rep pi = block_rep(act.algebra, static_cast<int>(rng() % act.algebra.block_dims.size()));
    for (const auto& irrep : fixtures::crossed_irreps(pi, a, trial)) {
      const CyclicReport r = cyclic_analyze(irrep, 42);
      EXPECT_EQ(r.base.multiplicity, 1);
      EXPECT_EQ(r.m * r.k, n);
      expect_structure(irrep, r.base);
      ++count;
    }
  }
  EXPECT_GE(count, 12);
}

TEST(CyclicAnalyze, RejectsNonCyclicGroups) {
  EXPECT_THROW(cyclic_analyze(fixtures::minimal_covariant(), 42), Error);
}

TEST(BuildCyclicIrrep, MinimalPieceReturnsItself) {
  const CovariantRep pi = fixtures::diagonal_phase_covariant();
  const CovariantRep built = build_cyclic_irrep(pi.base, pi.unitaries[1], 1, 8, pi.action);
  EXPECT_TRUE(are_equivalent(built.as_rep(), pi.as_rep()).equivalent);
}

TEST(BuildCyclicIrrep, FlipSwapDataReproducesTheExample) {
  const CovariantRep pi = fixtures::flip_swap_covariant();
  const GroupAction& act = *pi.action->concrete;
  CMatrix flip = CMatrix::Zero(2, 2);
  flip(0, 1) = flip(1, 0) = 1;
  const CovariantRep built = build_cyclic_irrep(block_rep(act.algebra, 0), flip, 2, 2, pi.action);
  EXPECT_EQ(built.dim(), 4);
  EXPECT_TRUE(are_equivalent(built.as_rep(), pi.as_rep()).equivalent);
}

TEST(BuildCyclicIrrep, FreeOrbitGivesTheRegularRep) {
  const auto act = fixtures::rotation_action(4);
  const ActionPtr a = shared(*act);
  const Rep pi1 = block_rep(act->algebra, 0);
  const CovariantRep built = build_cyclic_irrep(pi1, CMatrix::Identity(1, 1), 4, 1, a);
  EXPECT_TRUE(are_equivalent(built.as_rep(), regular_representation(pi1, a).as_rep()).equivalent);
}

TEST(BuildCyclicIrrep, ReportsPreconditionViolations) {
  const CovariantRep pi = fixtures::flip_swap_covariant();
  const GroupAction& act = *pi.action->concrete;
  const Rep pi1 = block_rep(act.algebra, 0);
  CMatrix flip = CMatrix::Zero(2, 2);
  flip(0, 1) = flip(1, 0) = 1;
  EXPECT_THROW(build_cyclic_irrep(pi1, flip, 2, 3, pi.action), Error);
  EXPECT_THROW(build_cyclic_irrep(pi1, CMatrix::Identity(2, 2), 2, 2, pi.action), Error);
  EXPECT_THROW(build_cyclic_irrep(pi1, flip, 1, 4, pi.action), Error);
}

TEST(Periodize, AlreadyPeriodicIsUnchanged) {
  const CovariantRep pi = fixtures::rotation_covariant(3);
  const CovariantRep p = periodize(pi.base, pi.unitaries[1], pi.action);
  for (int g = 0; g < 3; ++g) EXPECT_LT(dist(p.unitaries[g], pi.unitaries[g]), 1e-12);
}

TEST(Periodize, RemovesAGlobalPhase) {
  const CovariantRep pi = fixtures::rotation_covariant(3);
  const CovariantRep p = periodize(pi.base, pi.unitaries[1] * std::polar(1.0, 0.37), pi.action);
  EXPECT_LT(dist(matrix_power(p.unitaries[1], 3), CMatrix::Identity(3, 3)), 1e-12);
  EXPECT_NO_THROW(p.validate({}));
  EXPECT_TRUE(scalar_ratio(p.unitaries[1], pi.unitaries[1], 1e-9).has_value());
}

TEST(Periodize, NonScalarPowerIsRejected) {
  // A trivial algebra image lets any unitary satisfy covariance; this one has a non-scalar square.
  const MatAlg alg{{1}};
  const GroupAction trivial{make_cyclic_group(2), alg, {StarAut::identity(alg), StarAut::identity(alg)}};
  const Rep ones(2, {{"E0[0,0]", CMatrix::Identity(2, 2)}});
  CMatrix u = CMatrix::Identity(2, 2);
  u(1, 1) = Complex(0, 1);
  try {
    periodize(ones, u, shared(trivial));
    FAIL() << "expected NotScalarPower";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotScalarPower);
  }
}

TEST(RoundTrip, BuiltRepsAreRecovered) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const fixtures::CyclicInput in = fixtures::random_cyclic_input(2 + trial % 5, rng);
    const CovariantRep built = build_cyclic_irrep(in.pi1, in.V, in.m, in.k, in.action);
    const CyclicReport r = cyclic_analyze(built, 42);
    EXPECT_EQ(r.m, in.m);
    EXPECT_EQ(r.k, in.k);
    // The recovered base is the input up to the choice of block.
    bool found = false;
    const int u = in.action->group.cyclic_generator();
    for (int i = 0; i < in.m; ++i)
      found = found || !intertwiners(in.pi1, compose(r.base.base_irrep, *in.action, in.action->group.power(u, i))).empty();
    EXPECT_TRUE(found);
    const CovariantRep rebuilt = build_cyclic_irrep(r.base.base_irrep, r.V, r.m, r.k, in.action);
    EXPECT_TRUE(are_equivalent(rebuilt.as_rep(), built.as_rep()).equivalent);
  }
}

TEST(ClassifyS3, AllFourCases) {
  struct Case {
    CovariantRep pi;
    S3Case kind;
  };
  const std::vector<Case> cases = {{fixtures::minimal_covariant(), S3Case::Minimal},
                                   {fixtures::eta_triple_covariant(42), S3Case::EtaTriple},
                                   {fixtures::eta_symmetric_covariant(), S3Case::TauPair},
                                   {fixtures::doubled_minimal_covariant(), S3Case::TauPair},
                                   {fixtures::torus_regular(), S3Case::Regular6},
                                   {fixtures::orbit_regular(), S3Case::Regular6}};
  for (const auto& c : cases) {
    const S3Class s = classify_s3(c.pi, 42);
    EXPECT_EQ(s.kind, c.kind) << to_string(c.kind);
    EXPECT_LT(s.reconstruction_residual, 1e-7);
    EXPECT_EQ(s.eta, kEta);
    EXPECT_EQ(s.tau, kTau);
    EXPECT_EQ(static_cast<Index>(s.block_elements.size()) * s.pi1.dim(), c.pi.dim());
  }
}

TEST(ClassifyS3, TauPairRecordsEquivalenceAndMultiplicity) {
  const S3Class doubled = classify_s3(fixtures::doubled_minimal_covariant(), 42);
  ASSERT_TRUE(doubled.tau_equivalent.has_value());
  EXPECT_TRUE(*doubled.tau_equivalent);
  EXPECT_EQ(doubled.multiplicity.value_or(0), 2);
  const S3Class pair = classify_s3(fixtures::eta_symmetric_covariant(), 42);
  ASSERT_TRUE(pair.tau_equivalent.has_value());
  EXPECT_FALSE(*pair.tau_equivalent);
  EXPECT_EQ(pair.multiplicity.value_or(0), 1);
}

TEST(ClassifyS3, RejectsOtherGroups) {
  EXPECT_THROW(classify_s3(fixtures::rotation_covariant(3), 42), Error);
}
