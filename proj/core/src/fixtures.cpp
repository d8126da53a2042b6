#include "crossprod/fixtures.hpp"

#include <cmath>
#include <numbers>

namespace crossprod::fixtures {

namespace {

const Complex kI(0.0, 1.0);

Complex root_of_unity(int k, int n) { return std::polar(1.0, 2.0 * std::numbers::pi * k / n); }

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// U_g for every g = eta^a tau^b, from the images of eta and tau.
std::vector<CMatrix> s3_unitaries(const FiniteGroup& g, const CMatrix& u_eta, const CMatrix& u_tau) {
  const int eta = g.find("eta"), tau = g.find("tau");
  std::vector<CMatrix> out(g.order());
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 2; ++b)
      out[g.mul(g.power(eta, a), g.power(tau, b))] = matrix_power(u_eta, a) * matrix_power(u_tau, b);
  return out;
}

CovariantRep s3_covariant(const Rep& base, ActionPtr action, const CMatrix& u_eta, const CMatrix& u_tau) {
  CovariantRep out{base, action, s3_unitaries(action->group, u_eta, u_tau)};
  return out;
}

CovariantRep cyclic_covariant(const Rep& base, ActionPtr action, const CMatrix& u) {
  CovariantRep out{base, action, {}};
  for (int j = 0; j < action->group.order(); ++j) out.unitaries.push_back(matrix_power(u, j));
  return out;
}

ActionPtr generator_action(const GroupAction& a) { return std::make_shared<const GeneratorAction>(GeneratorAction::from(a)); }

Rep free_rep(const CMatrix& u1, const CMatrix& u2, const CMatrix& u3) {
  return Rep(u1.rows(), {{"U1", u1}, {"U2", u2}, {"U3", u3}});
}

CMatrix minimal_eta_unitary() {
  const Complex l = root_of_unity(1, 3);
  CMatrix v = CMatrix::Zero(2, 2);
  v(0, 0) = l * l;
  v(1, 1) = l;
  return v;
}

CMatrix eta_symmetric_v() {
  CMatrix v = CMatrix::Zero(3, 3);
  for (int j = 0; j < 3; ++j) v(j, j) = root_of_unity(j, 3);
  return v;
}

// The coordinate point used by the torus examples; coordinates pairwise distinct.
std::vector<Complex> torus_point() { return {std::polar(1.0, 0.3), std::polar(1.0, 1.1), std::polar(1.0, 2.4)}; }

}  // namespace

ActionPtr permuting_s3_action(const std::vector<std::string>& labels) {
  return std::make_shared<const GeneratorAction>(
      GeneratorAction::permuting(make_symmetric_group_3(), labels, symmetric_group_3_points()));
}

ActionPtr free_group_action() { return permuting_s3_action({"U1", "U2", "U3"}); }

Rep tau_symmetric_rep() {
  return free_rep(mat2(0, 1, 1, 0), mat2(0, -1, -1, 0), mat2(1, 0, 0, -1));
}

Rep minimal_rep() {
  const Complex l = root_of_unity(1, 3);
  return free_rep(mat2(0, l, l * l, 0), mat2(0, l * l, l, 0), mat2(0, 1, 1, 0));
}

CovariantRep minimal_covariant() {
  return s3_covariant(minimal_rep(), free_group_action(), minimal_eta_unitary(), mat2(0, 1, 1, 0));
}

Rep eta_symmetric_rep() {
  CMatrix t(3, 3);
  t << 0, -4.0 / 5, -3.0 / 5, 4.0 / 5, -9.0 / 25, 12.0 / 25, 3.0 / 5, 12.0 / 25, -16.0 / 25;
  const CMatrix v = eta_symmetric_v();
  const CMatrix v2 = v * v;
  return free_rep(v * t * v2, v2 * t * v, t);
}

CovariantRep eta_symmetric_covariant() {
  const ActionPtr action = free_group_action();
  const Rep pi = eta_symmetric_rep();
  const int tau = action->group.find("tau");
  const CMatrix v = eta_symmetric_v();
  const CMatrix u_eta = block_diagonal({v, v * v});
  CMatrix swap = kron(mat2(0, 1, 1, 0), CMatrix::Identity(3, 3));
  return s3_covariant(direct_sum(pi, compose(pi, *action, tau)), action, u_eta, swap);
}

CovariantRep doubled_minimal_covariant() {
  const ActionPtr action = free_group_action();
  const Rep pi = minimal_rep();
  const int tau = action->group.find("tau");
  const Complex w = root_of_unity(1, 3);
  const CMatrix v = minimal_eta_unitary();
  const CMatrix u_eta = block_diagonal({w * v, w * w * v * v});
  const CMatrix swap = kron(mat2(0, 1, 1, 0), CMatrix::Identity(2, 2));
  return s3_covariant(direct_sum(pi, compose(pi, *action, tau)), action, u_eta, swap);
}

CovariantRep eta_triple_covariant(std::uint64_t seed) {
  return crossed_irreps(tau_symmetric_rep(), free_group_action(), seed).front();
}

ActionPtr torus_action() { return permuting_s3_action({"z1", "z2", "z3"}); }

Rep torus_evaluation() {
  const auto x = torus_point();
  std::vector<Rep::Gen> gens;
  for (int i = 0; i < 3; ++i) gens.emplace_back("z" + std::to_string(i + 1), CMatrix::Constant(1, 1, x[i]));
  return Rep(1, std::move(gens));
}

CovariantRep torus_regular() { return regular_representation(torus_evaluation(), torus_action()); }

GroupActionPtr orbit_action() {
  const FiniteGroup g = make_symmetric_group_3();
  const auto points = symmetric_group_3_points();
  const auto x = torus_point();
  // orbit point k has coordinates x_{s_k(i)}
  std::vector<std::vector<Complex>> orbit;
  for (const auto& s : points) orbit.push_back({x[s[0]], x[s[1]], x[s[2]]});
  auto find = [&](const std::vector<Complex>& p) {
    for (std::size_t k = 0; k < orbit.size(); ++k)
      if (std::abs(orbit[k][0] - p[0]) + std::abs(orbit[k][1] - p[1]) + std::abs(orbit[k][2] - p[2]) < 1e-12)
        return static_cast<int>(k);
    throw Error(ErrorCode::InvariantViolation, "orbit is not closed");
  };
  const MatAlg alg{std::vector<int>(6, 1)};
  GroupAction act{g, alg, {}};
  for (int e = 0; e < g.order(); ++e) {
    // alpha_g(f)(z) = f(P_g z) with (P_g z)_i = z_{g(i)}, so alpha_g(e_q) = e_{P_g^-1 q}
    const auto& inv = points[g.inv(e)];
    StarAut s = StarAut::identity(alg);
    for (int k = 0; k < 6; ++k) s.perm[k] = find({orbit[k][inv[0]], orbit[k][inv[1]], orbit[k][inv[2]]});
    act.auts.push_back(std::move(s));
  }
  act.validate({});
  return std::make_shared<const GroupAction>(std::move(act));
}

Rep orbit_evaluation() { return block_rep(orbit_action()->algebra, 0); }

CovariantRep orbit_regular() { return regular_representation(orbit_evaluation(), *orbit_action()); }

GroupActionPtr flip_swap_action() {
  const MatAlg alg{{2, 2}};
  StarAut sigma{{1, 0}, {mat2(0, 1, 1, 0), CMatrix::Identity(2, 2)}};
  return std::make_shared<const GroupAction>(cyclic_action(alg, sigma, 4));
}

CovariantRep flip_swap_covariant() {
  const GroupActionPtr a = flip_swap_action();
  CMatrix u = CMatrix::Zero(4, 4);
  u.topRightCorner(2, 2) = mat2(0, 1, 1, 0);
  u.bottomLeftCorner(2, 2) = CMatrix::Identity(2, 2);
  return cyclic_covariant(defining_rep(a->algebra), generator_action(*a), u);
}

CMatrix clock_matrix(int q, int p) {
  CMatrix v = CMatrix::Zero(q, q);
  for (int j = 0; j < q; ++j) v(j, j) = root_of_unity(p * j, q);
  return v;
}

CMatrix shift_matrix(int q) {
  CMatrix u = CMatrix::Zero(q, q);
  for (int j = 0; j + 1 < q; ++j) u(j, j + 1) = 1.0;
  u(q - 1, 0) = 1.0;
  return u;
}

GroupActionPtr rotation_action(int q, int p) {
  const MatAlg alg{std::vector<int>(q, 1)};
  StarAut sigma = StarAut::identity(alg);
  for (int j = 0; j < q; ++j) sigma.perm[j] = ((j - p) % q + q) % q;
  return std::make_shared<const GroupAction>(cyclic_action(alg, sigma, q));
}

CovariantRep rotation_covariant(int q, int p) {
  const GroupActionPtr a = rotation_action(q, p);
  return cyclic_covariant(defining_rep(a->algebra), generator_action(*a), matrix_power(shift_matrix(q), p));
}

GroupActionPtr weyl_action(int q) {
  const FiniteGroup g = make_direct_product(make_cyclic_group(q), make_cyclic_group(q));
  const MatAlg alg{{q}};
  const CMatrix u = shift_matrix(q), v = clock_matrix(q);
  GroupAction act{g, alg, {}};
  for (int z = 0; z < q; ++z)
    for (int w = 0; w < q; ++w) act.auts.push_back(StarAut::inner(alg, {matrix_power(u, z) * matrix_power(v, w)}));
  return std::make_shared<const GroupAction>(std::move(act));
}

CovariantRep weyl_covariant(int q) {
  const GroupActionPtr a = weyl_action(q);
  const CMatrix u = shift_matrix(q), v = clock_matrix(q);
  const CMatrix first = kron(v, u), second = kron(u, v);
  const Rep base = alg_rep(a->algebra, [q](const AlgElement& x) { return kron(CMatrix::Identity(q, q), x.blocks[0]); });
  CovariantRep out{base, generator_action(*a), {}};
  for (int z = 0; z < q; ++z)
    for (int w = 0; w < q; ++w) out.unitaries.push_back(matrix_power(first, z) * matrix_power(second, w));
  return out;
}

GroupActionPtr diagonal_phase_action() {
  const MatAlg alg{{2}};
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = kI;
  d(1, 1) = std::polar(1.0, 3.0 * std::numbers::pi / 4.0);
  return std::make_shared<const GroupAction>(cyclic_action(alg, StarAut::inner(alg, {d}), 8));
}

CovariantRep diagonal_phase_covariant() {
  const GroupActionPtr a = diagonal_phase_action();
  return cyclic_covariant(defining_rep(a->algebra), generator_action(*a), a->auts[1].unitaries[0]);
}

std::vector<CovariantRep> crossed_irreps(const Rep& pi, ActionPtr action, std::uint64_t seed, const Tolerance& tol) {
  const CovariantRep reg = regular_representation(pi, action);
  std::vector<CovariantRep> out;
  for (const auto& c : decompose(reg.as_rep(), seed, tol).components) out.push_back(covariant_from_rep(c.irrep, action));
  return out;
}

GroupAction random_cyclic_action(int n, std::mt19937_64& rng, int max_dim) {
  std::vector<int> divisors;
  for (int c = 1; c <= n; ++c)
    if (n % c == 0) divisors.push_back(c);
  struct Orbit {
    int length;
    int dim;
  };
  std::vector<Orbit> orbits;
  int budget = max_dim;
  while (budget > 0) {
    std::vector<Orbit> options;
    for (int c : divisors)
      for (int d : {1, 2})
        if (c * d * d <= budget) options.push_back({c, d});
    if (options.empty()) break;
    orbits.push_back(options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
    budget -= orbits.back().length * orbits.back().dim * orbits.back().dim;
    if (std::bernoulli_distribution(0.35)(rng)) break;
  }

  MatAlg alg;
  for (const auto& o : orbits)
    for (int t = 0; t < o.length; ++t) alg.block_dims.push_back(o.dim);
  StarAut sigma = StarAut::identity(alg);
  int start = 0;
  for (const auto& o : orbits) {
    const int c = o.length, d = o.dim;
    // block start + t is sent to start + t + 1 (mod c)
    for (int t = 0; t < c; ++t) sigma.perm[start + t] = start + (t + 1) % c;
    CMatrix around = CMatrix::Identity(d, d);
    for (int t = 1; t < c; ++t) {
      sigma.unitaries[start + t] = random_unitary(rng, d);
      around = sigma.unitaries[start + t] * around;
    }
    // sigma^c on the first block is Ad of a unitary whose (n/c)-th power is 1
    std::uniform_int_distribution<int> root(0, n / c - 1);
    CMatrix diag = CMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) diag(i, i) = root_of_unity(root(rng), n / c);
    const CMatrix q = random_unitary(rng, d);
    sigma.unitaries[start] = q * diag * q.adjoint() * around.adjoint();
    start += c;
  }
  GroupAction act = cyclic_action(alg, sigma, n);
  act.validate({});
  return act;
}

GroupAction random_group_action(const FiniteGroup& g, std::mt19937_64& rng, int max_dim) {
  const CharacterTable table = character_table(g, rng());
  std::vector<int> dims;
  std::vector<std::vector<int>> perms;  // per orbit, per element: coset action
  std::vector<std::vector<CMatrix>> reps;
  int budget = max_dim;
  std::uniform_int_distribution<int> element(0, g.order() - 1);
  int attempts = 0;
  while (budget > 0) {
    const Subgroup k = ++attempts > 20 ? whole_group(g) : subgroup_closure(g, {element(rng)});
    const int size = g.order() / k.size();
    const int d = (4 * size <= budget && std::bernoulli_distribution(0.5)(rng)) ? 2 : 1;
    if (size * d * d > budget) {
      if (!dims.empty()) break;
      continue;
    }
    // left cosets x K, named by their smallest element
    std::vector<int> name(g.order(), -1), reps_of;
    for (int x = 0; x < g.order(); ++x) {
      if (name[x] >= 0) continue;
      for (int m : k.members) name[g.mul(x, m)] = static_cast<int>(reps_of.size());
      reps_of.push_back(x);
    }
    std::vector<CMatrix> r(g.order());
    if (d == 1) {
      for (auto& m : r) m = CMatrix::Identity(1, 1);
    } else {
      std::vector<int> two, one;
      for (int i = 0; i < table.size(); ++i) (table.dims[i] == 2 ? two : one).push_back(i);
      std::vector<int> pick;
      if (!two.empty() && std::bernoulli_distribution(0.6)(rng)) {
        pick.push_back(two[std::uniform_int_distribution<std::size_t>(0, two.size() - 1)(rng)]);
      } else {
        std::uniform_int_distribution<std::size_t> choose(0, one.size() - 1);
        pick = {one[choose(rng)], one[choose(rng)]};
      }
      const CMatrix q = random_unitary(rng, 2);
      for (int x = 0; x < g.order(); ++x) {
        std::vector<CMatrix> parts;
        for (int i : pick) parts.push_back(table.irreps[i].at(element_generator_label(g, x)));
        r[x] = q * block_diagonal(parts) * q.adjoint();
      }
    }
    for (int c = 0; c < size; ++c) dims.push_back(d);
    perms.push_back({});
    for (int x = 0; x < g.order(); ++x)
      for (int c = 0; c < size; ++c) perms.back().push_back(name[g.mul(x, reps_of[c])]);
    reps.push_back(std::move(r));
    budget -= size * d * d;
    if (std::bernoulli_distribution(0.4)(rng)) break;
  }

  const MatAlg alg{dims};
  GroupAction act{g, alg, {}};
  for (int x = 0; x < g.order(); ++x) {
    StarAut s = StarAut::identity(alg);
    int start = 0;
    for (std::size_t o = 0; o < perms.size(); ++o) {
      const int size = static_cast<int>(perms[o].size()) / g.order();
      for (int c = 0; c < size; ++c) {
        s.perm[start + c] = start + perms[o][x * size + c];
        s.unitaries[start + c] = reps[o][x];
      }
      start += size;
    }
    act.auts.push_back(std::move(s));
  }
  act.validate({});
  return act;
}

CyclicInput random_cyclic_input(int n, std::mt19937_64& rng, const Tolerance& tol) {
  const GroupAction act = random_cyclic_action(n, rng);
  const ActionPtr action = generator_action(act);
  const int block = std::uniform_int_distribution<int>(0, static_cast<int>(act.algebra.block_dims.size()) - 1)(rng);
  CyclicInput in;
  in.pi1 = block_rep(act.algebra, block);
  in.action = action;
  const int u = action->group.cyclic_generator();
  for (int j = 1; j <= n; ++j) {
    const auto eq = equivalence_of_irreducibles(in.pi1, compose(in.pi1, *action, action->group.power(u, j)), tol);
    if (!eq.equivalent) continue;
    in.m = j;
    in.k = n / j;
    const CMatrix w = *eq.witness;
    const Complex c = matrix_power(w, in.k).trace() / static_cast<double>(w.rows());
    const int twist = std::uniform_int_distribution<int>(0, in.k - 1)(rng);
    in.V = std::polar(1.0, -std::arg(c) / in.k) * root_of_unity(twist, in.k) * w;
    return in;
  }
  throw Error(ErrorCode::InvariantViolation, "no power of the generator fixes the class of pi1");
}

}  // namespace crossprod::fixtures
