// Checks the eight acceptance criteria and prints one PASS/FAIL line for each.
#include "crossprod/fixtures.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace crossprod;

namespace {

constexpr int kEta = 1, kTau = 3;
const Tolerance kTol{1e-9, 1e-8, 1e-6};

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[violated: " << what << "] ";
    }
  }
};

double dist(const CMatrix& a, const CMatrix& b) { return (a - b).norm(); }

ActionPtr shared(const GroupAction& a) { return std::make_shared<const GeneratorAction>(GeneratorAction::from(a)); }

std::size_t twist_dim(const Rep& pi, const GeneratorAction& a, int g) {
  return intertwiners(pi, compose(pi, a, g), kTol).size();
}

void quantum_isomorphism(Verdict& v) {
  for (int q : {2, 3, 5}) {
    const CrossedModel m = build_crossed_model(fixtures::rotation_action(q), kTol);
    const std::size_t commutant = commutant_basis(fixtures::rotation_covariant(q).as_rep(), kTol).size();
    v.require(m.span_dim() == q * q, "span dim q^2 for q=" + std::to_string(q));
    v.require(commutant == 1, "commutant dim 1 for q=" + std::to_string(q));
    v.detail << "q=" << q << " span=" << m.span_dim() << " commutant=" << commutant << "; ";
  }
}

void flip_swap_pipeline(Verdict& v) {
  const CovariantRep pi = fixtures::flip_swap_covariant();
  v.require(is_irreducible(pi.as_rep(), kTol), "irreducible on C^4");
  const CyclicReport r = cyclic_analyze(pi, 42, kTol);
  v.require(r.m == 2 && r.k == 2, "m=2, k=2");
  v.require(r.base.multiplicity == 1, "r=1");
  v.require(r.pieces_inequivalent, "minimal pieces inequivalent");
  const GroupAction& act = *pi.action->concrete;
  const FixedPointAlgebra f = fixed_point_algebra(act, kTol);
  v.require(f.basis.size() == 2, "fixed points of linear dimension 2");
  const IrrepDecomposition phis = decompose(f.rep, 42, kTol);
  bool two_chars = phis.components.size() == 2;
  for (const auto& c : phis.components) two_chars = two_chars && c.irrep.dim() == 1;
  v.require(two_chars, "exactly two inequivalent 1-dim irreps of the fixed points");
  if (!two_chars) return;
  const Rep phi_sum = direct_sum(phis.components[0].irrep, phis.components[1].irrep);
  const IrrepDecomposition target = decompose(phi_sum, 42, kTol);
  const int u = act.group.cyclic_generator();
  for (int i = 0; i < r.m; ++i) {
    const Rep piece = subalgebra_rep(compose(r.base.base_irrep, *pi.action, act.group.power(u, i)), act.algebra, f.basis);
    v.require(same_decomposition(decompose(piece, 42, kTol), target, kTol), "pi_" + std::to_string(i + 1) + " on fixed points is phi1+phi2");
  }
  v.detail << "m=" << r.m << " k=" << r.k << " r=" << r.base.multiplicity << " fixed_dim=" << f.basis.size()
           << " phis=" << phis.components.size();
}

void s3_equivalence_matrix(Verdict& v) {
  const auto act = fixtures::free_group_action();
  const Rep ex1 = fixtures::tau_symmetric_rep();
  v.require(twist_dim(ex1, *act, kTau) == 1 && twist_dim(ex1, *act, kEta) == 0, "first example: tau equivalent, eta not");

  const Rep minimal = fixtures::minimal_rep();
  bool all = is_irreducible(minimal, kTol);
  for (int g = 0; g < 6; ++g) all = all && twist_dim(minimal, *act, g) == 1;
  v.require(all, "minimal example equivalent to every translate");

  const Rep ex2 = fixtures::eta_symmetric_rep();
  const std::size_t eta = twist_dim(ex2, *act, kEta), tau = twist_dim(ex2, *act, kTau);
  v.require(eta == 1 && tau == 0, "eta-symmetric example: intertwiner dims 1 and 0");

  const auto torus = fixtures::torus_action();
  const Rep x = fixtures::torus_evaluation();
  v.require(is_irreducible(fixtures::torus_regular().as_rep(), kTol), "torus regular rep irreducible");
  int inequivalent_pairs = 0;
  for (int g = 0; g < 6; ++g)
    for (int h = g + 1; h < 6; ++h)
      inequivalent_pairs += intertwiners(compose(x, *torus, g), compose(x, *torus, h), kTol).empty();
  v.require(inequivalent_pairs == 15, "six translates pairwise inequivalent");
  v.detail << "ex1 tau/eta=" << twist_dim(ex1, *act, kTau) << "/" << twist_dim(ex1, *act, kEta) << " minimal=" << all
           << " ex2 eta/tau=" << eta << "/" << tau << " torus inequivalent pairs=" << inequivalent_pairs << "/15";
}

void multiplicity_divide(Verdict& v) {
  const CovariantRep doubled = fixtures::doubled_minimal_covariant();
  const S3Class c = classify_s3(doubled, 42, kTol);
  const std::size_t whole = commutant_basis(doubled.as_rep(), kTol).size();
  const std::size_t base = commutant_basis(doubled.base, kTol).size();
  v.require(c.kind == S3Case::TauPair, "doubled example classified TauPair");
  v.require(c.multiplicity.value_or(0) == 2, "doubled example r=2");
  v.require(whole == 1 && base == 4, "commutant dims 1 and 4");

  std::mt19937_64 rng(2024);
  int irreps = 0, actions = 0, r_one = 0;
  while (irreps < 60 && actions < 400) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const GroupAction act = fixtures::random_cyclic_action(n, rng, 8);
    ++actions;
    if (act.algebra.dimension() > 8) {
      v.require(false, "random action exceeded dim A <= 8");
      return;
    }
    const Rep pi = block_rep(act.algebra, static_cast<int>(rng() % act.algebra.block_dims.size()));
    for (const auto& irrep : fixtures::crossed_irreps(pi, shared(act), rng(), kTol)) {
      ++irreps;
      r_one += cyclic_analyze(irrep, 42, kTol).base.multiplicity == 1;
    }
  }
  v.require(irreps >= 50, "at least 50 cyclic irreps");
  v.require(r_one == irreps, "r=1 for every cyclic irrep");
  v.detail << "TauPair r=" << c.multiplicity.value_or(0) << " commutants " << whole << "/" << base << "; cyclic sweep r=1 in "
           << r_one << "/" << irreps << " irreps from " << actions << " actions";
}

void regular_criterion(Verdict& v) {
  std::mt19937_64 rng(7);
  int agree = 0, total = 0, irreducible = 0;
  for (; total < 120; ++total) {
    const FiniteGroup g = total % 4 == 3 ? make_symmetric_group_3() : make_cyclic_group(1 + static_cast<int>(rng() % 6));
    const GroupAction act = fixtures::random_group_action(g, rng, 6);
    const int blocks = static_cast<int>(act.algebra.block_dims.size());
    Rep pi = block_rep(act.algebra, static_cast<int>(rng() % blocks));
    if (total % 6 == 5) pi = direct_sum(pi, block_rep(act.algebra, static_cast<int>(rng() % blocks)));
    const bool criterion = regular_irreducibility_criterion(pi, GeneratorAction::from(act), kTol);
    const bool direct = is_irreducible(regular_representation(pi, act).as_rep(), kTol);
    agree += criterion == direct;
    irreducible += direct;
  }
  v.require(agree == total, "criterion agrees with direct irreducibility");
  v.require(irreducible > 0 && irreducible < total, "both truth values exercised");
  v.detail << agree << "/" << total << " agree (" << irreducible << " irreducible, " << total - irreducible << " reducible)";
}

void harmonic_identities(Verdict& v) {
  std::mt19937_64 rng(11);
  std::vector<FiniteGroup> groups;
  for (int n = 1; n <= 8; ++n) groups.push_back(make_cyclic_group(n));
  groups.push_back(make_symmetric_group_3());
  double worst = 0;
  for (const auto& g : groups) {
    const CharacterTable t = character_table(g, 42, kTol);
    int dim_sum = 0;
    for (int d : t.dims) dim_sum += d * d;
    v.require(dim_sum == g.order(), "sum of squared dims equals |G| for order " + std::to_string(g.order()));
    for (int x = 0; x < g.order(); ++x) {
      if (x == g.identity()) continue;
      Complex column = 0;
      for (int rho = 0; rho < t.size(); ++rho) column += t.on_elements(rho)[x] * static_cast<double>(t.dims[rho]);
      worst = std::max(worst, std::abs(column));
    }
    for (int trial = 0; trial < 3; ++trial) {
      const GroupAction act = fixtures::random_group_action(g, rng);
      const Index d = act.algebra.dimension();
      std::vector<CMatrix> ps;
      for (int rho = 0; rho < t.size(); ++rho) ps.push_back(spectral_projector(act, t.on_elements(rho)));
      CMatrix sum = CMatrix::Zero(d, d);
      for (std::size_t i = 0; i < ps.size(); ++i) {
        worst = std::max(worst, dist(ps[i] * ps[i], ps[i]));
        for (std::size_t j = 0; j < ps.size(); ++j)
          if (i != j) worst = std::max(worst, (ps[i] * ps[j]).norm());
        sum += ps[i];
      }
      worst = std::max(worst, dist(sum, CMatrix::Identity(d, d)));
    }
  }
  v.require(worst <= 1e-8, "identities within 1e-8");
  v.detail << "groups Z_1..Z_8 and S3, worst residual " << worst;
}

// Recomputes the block-diagonal and permutation-block forms from the input and the report alone.
double reconstruction_residual(const CovariantRep& pi, const StructureReport& r) {
  const CovariantRep c = r.canonical(pi);
  const Index bd = r.block_dim();
  double worst = 0;
  for (const auto& [label, m] : c.base.gens()) {
    std::vector<CMatrix> blocks;
    for (int g : r.coset_reps)
      blocks.push_back(kron(CMatrix::Identity(r.multiplicity, r.multiplicity), compose(r.base_irrep, *pi.action, g).at(label)));
    worst = std::max(worst, dist(m, block_diagonal(blocks)));
  }
  for (int g = 0; g < pi.group().order(); ++g) {
    CMatrix pattern = CMatrix::Zero(pi.dim(), pi.dim());
    for (int j = 0; j < r.m(); ++j) pattern.block(r.perms[g][j] * bd, j * bd, bd, bd) = r.block_unitaries[g][j];
    worst = std::max(worst, dist(c.unitaries[g], pattern));
  }
  return worst;
}

void structure_reconstruction(Verdict& v) {
  std::vector<std::pair<std::string, CovariantRep>> corpus = {
      {"torus_regular", fixtures::torus_regular()},
      {"orbit_regular", fixtures::orbit_regular()},
      {"rotation_3", fixtures::rotation_covariant(3)},
      {"rotation_5", fixtures::rotation_covariant(5)},
      {"minimal", fixtures::minimal_covariant()},
      {"diagonal_phase", fixtures::diagonal_phase_covariant()},
      {"flip_swap", fixtures::flip_swap_covariant()},
      {"eta_symmetric", fixtures::eta_symmetric_covariant()},
      {"doubled_minimal", fixtures::doubled_minimal_covariant()},
      {"eta_triple", fixtures::eta_triple_covariant(42)},
      {"weyl_2", fixtures::weyl_covariant(2)},
      {"weyl_3", fixtures::weyl_covariant(3)},
  };
  std::mt19937_64 rng(5);
  for (int i = 0; i < 8; ++i) {
    const fixtures::CyclicInput in = fixtures::random_cyclic_input(2 + i % 5, rng, kTol);
    corpus.emplace_back("built_cyclic_" + std::to_string(i), build_cyclic_irrep(in.pi1, in.V, in.m, in.k, in.action, kTol));
  }
  double worst = 0, worst_cocycle = 0;
  for (const auto& [name, pi] : corpus) {
    const StructureReport r = analyze(pi, 42, kTol);
    const double res = reconstruction_residual(pi, r);
    const double coc = std::max(r.Lambda.cocycle_identity_residual(), r.Vproj.cocycle_identity_residual());
    v.require(res <= 1e-7, name + " reconstruction");
    v.require(coc <= 1e-8, name + " cocycle identity");
    worst = std::max(worst, res);
    worst_cocycle = std::max(worst_cocycle, coc);
  }
  v.detail << corpus.size() << " reps, worst reconstruction " << worst << ", worst cocycle identity " << worst_cocycle;
}

void round_trip(Verdict& v) {
  std::mt19937_64 rng(8);
  int total = 0, mk = 0, in_orbit = 0, same_block = 0, rebuilt = 0;
  for (; total < 30; ++total) {
    const fixtures::CyclicInput in = fixtures::random_cyclic_input(2 + total % 5, rng, kTol);
    const CovariantRep built = build_cyclic_irrep(in.pi1, in.V, in.m, in.k, in.action, kTol);
    const CyclicReport r = cyclic_analyze(built, 42, kTol);
    mk += r.m == in.m && r.k == in.k;
    const FiniteGroup& G = in.action->group;
    const int u = G.cyclic_generator();
    bool found = false;
    for (int i = 0; i < in.m && !found; ++i)
      found = !intertwiners(in.pi1, compose(r.base.base_irrep, *in.action, G.power(u, i)), kTol).empty();
    in_orbit += found;
    same_block += !intertwiners(in.pi1, r.base.base_irrep, kTol).empty();
    if (r.m == in.m && r.k == in.k)
      rebuilt += are_equivalent(build_cyclic_irrep(r.base.base_irrep, r.V, r.m, r.k, in.action, kTol).as_rep(), built.as_rep(), kTol).equivalent;
  }
  v.require(mk == total, "(m, k) recovered");
  v.require(in_orbit == total, "base irrep equivalent to the input up to the block choice");
  v.require(rebuilt == total, "rebuilt rep equivalent to the input rep");
  v.detail << total << " inputs: (m,k) exact " << mk << "/" << total << ", base equivalent to input " << same_block << "/" << total
           << " and to a translate of it " << in_orbit << "/" << total << ", rebuilt equivalent " << rebuilt << "/" << total;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;  // 0 means no runtime requirement
    std::function<void(Verdict&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "quantum isomorphism", 1.0, quantum_isomorphism},
      {2, "flip-swap pipeline", 1.0, flip_swap_pipeline},
      {3, "S3 equivalence matrix", 0, s3_equivalence_matrix},
      {4, "multiplicity divide", 0, multiplicity_divide},
      {5, "regular criterion biconditional", 30.0, regular_criterion},
      {6, "harmonic-analysis identities", 0, harmonic_identities},
      {7, "structure-report reconstruction", 0, structure_reconstruction},
      {8, "round trip", 0, round_trip},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "[exception: " << e.what() << "]";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && seconds >= c.budget_seconds) {
      v.pass = false;
      v.detail << " [over the " << c.budget_seconds << " s budget]";
    }
    failed += !v.pass;
    std::printf("criterion %d (%s): %s  %.3f s  %s\n", c.id, c.name, v.pass ? "PASS" : "FAIL", seconds, v.detail.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
