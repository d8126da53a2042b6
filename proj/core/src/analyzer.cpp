#include "crossprod/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace crossprod {

namespace {

constexpr double kBlockEps = 1e-7;
constexpr double kPatternEps = 1e-6;

double rel_diff(const CMatrix& a, const CMatrix& b) {
  return (a - b).norm() / std::max({1.0, a.norm(), b.norm()});
}

void require_irreducible(const CovariantRep& pi, const Tolerance& tol) {
  pi.validate(tol);
  if (!is_irreducible(pi.as_rep(), tol))
    throw Error(ErrorCode::NotIrreducible, "the covariant representation is reducible");
}

CMatrix diagonal_of(const std::vector<Rep>& reps, const std::string& label) {
  std::vector<CMatrix> blocks;
  for (const auto& r : reps) blocks.push_back(r.at(label));
  return block_diagonal(blocks);
}

Rep labelled_family(const std::vector<CMatrix>& mats, const std::string& prefix) {
  std::vector<Rep::Gen> gens;
  for (std::size_t i = 0; i < mats.size(); ++i) gens.emplace_back(prefix + std::to_string(i), mats[i]);
  return Rep(mats.empty() ? 0 : mats[0].rows(), std::move(gens));
}

}  // namespace

double ProjectiveRep::modulus_residual() const {
  double worst = 0;
  for (const auto& row : cocycle)
    for (const auto& c : row) worst = std::max(worst, std::abs(std::abs(c) - 1.0));
  return worst;
}

double ProjectiveRep::multiplier_residual() const {
  const FiniteGroup& p = group.parent;
  double worst = 0;
  for (int a = 0; a < group.size(); ++a)
    for (int b = 0; b < group.size(); ++b) {
      const int ab = group.local_index(p.mul(group.members[a], group.members[b]));
      worst = std::max(worst, (mats[ab] - cocycle[a][b] * mats[a] * mats[b]).norm());
    }
  return worst;
}

double ProjectiveRep::cocycle_identity_residual() const {
  const FiniteGroup& p = group.parent;
  auto mul = [&](int a, int b) { return group.local_index(p.mul(group.members[a], group.members[b])); };
  double worst = 0;
  for (int g = 0; g < group.size(); ++g)
    for (int h = 0; h < group.size(); ++h)
      for (int k = 0; k < group.size(); ++k) {
        const Complex lhs = cocycle[g][h] * cocycle[mul(g, h)][k];
        const Complex rhs = cocycle[h][k] * cocycle[g][mul(h, k)];
        worst = std::max(worst, std::abs(lhs - rhs));
      }
  return worst;
}

bool ProjectiveRep::trivial_cocycle(double eps) const {
  for (const auto& row : cocycle)
    for (const auto& c : row)
      if (std::abs(c - Complex(1.0)) > eps) return false;
  return true;
}

ProjectiveRep make_projective(const Subgroup& h, std::vector<CMatrix> mats, double eps) {
  if (static_cast<int>(mats.size()) != h.size())
    throw Error(ErrorCode::InvalidInput, "one matrix per subgroup element is required");
  ProjectiveRep out{h, std::move(mats), {}};
  const FiniteGroup& p = h.parent;
  out.cocycle.assign(h.size(), std::vector<Complex>(h.size()));
  for (int a = 0; a < h.size(); ++a)
    for (int b = 0; b < h.size(); ++b) {
      const int ab = h.local_index(p.mul(h.members[a], h.members[b]));
      const auto c = scalar_ratio(out.mats[ab], out.mats[a] * out.mats[b], eps);
      if (!c)
        throw Error(ErrorCode::InvariantViolation, "M_gh is not a scalar multiple of M_g M_h for (" +
                                                       p.label(h.members[a]) + ", " + p.label(h.members[b]) + ")");
      out.cocycle[a][b] = *c;
    }
  return out;
}

CMatrix factor_tensor(const CMatrix& w, const CMatrix& v, int r, double eps) {
  const Index d = v.rows();
  if (r < 1 || v.cols() != d || w.rows() != r * d || w.cols() != r * d)
    throw Error(ErrorCode::DimensionMismatch, "tensor factor sizes do not fit");
  const CMatrix x = w * kron(CMatrix::Identity(r, r), v).adjoint();
  CMatrix lambda(r, r);
  for (int s = 0; s < r; ++s)
    for (int t = 0; t < r; ++t) lambda(s, t) = x.block(s * d, t * d, d, d).trace() / static_cast<double>(d);
  if ((w - kron(lambda, v)).norm() > eps * std::max(1.0, w.norm()))
    throw Error(ErrorCode::NotFactorable, "matrix is not of the form Lambda (x) V");
  return lambda;
}

bool homogeneous_irreducibility(const CovariantRep& psi, const Rep& pi1, const Tolerance& tol) {
  const Index d = pi1.dim();
  if (d == 0 || psi.dim() % d != 0) throw Error(ErrorCode::DimensionMismatch, "Psi does not live on C^r (x) H_1");
  const int r = static_cast<int>(psi.dim() / d);
  const CMatrix id = CMatrix::Identity(r, r);
  for (const auto& [label, m] : pi1.gens())
    if (rel_diff(psi.base.at(label), kron(id, m)) > kBlockEps)
      throw Error(ErrorCode::InvariantViolation, "Psi restricted to the algebra is not 1 (x) pi1");
  if (!is_irreducible(pi1, tol)) throw Error(ErrorCode::NotIrreducible, "pi1 is reducible");
  std::vector<CMatrix> lambdas;
  for (int g = 0; g < psi.group().order(); ++g) {
    const auto eq = equivalence_of_irreducibles(pi1, compose(pi1, *psi.action, g), tol);
    if (!eq.equivalent)
      throw Error(ErrorCode::InvariantViolation, "pi1 o alpha_h is not equivalent to pi1 for h = " + psi.group().label(g));
    lambdas.push_back(factor_tensor(psi.unitaries[g], *eq.witness, r));
  }
  return is_irreducible(labelled_family(lambdas, "L"), tol);
}

StructureReport analyze(const CovariantRep& pi, std::uint64_t seed, const Tolerance& tol) {
  require_irreducible(pi, tol);
  const FiniteGroup& G = pi.group();
  const GeneratorAction& action = *pi.action;
  const int n = G.order();

  StructureReport rep;
  rep.base_decomposition = decompose(pi.base, seed, tol);
  const auto& dec = rep.base_decomposition;
  rep.base_irrep = dec.components[0].irrep;
  rep.multiplicity = dec.components[0].multiplicity;
  const Rep& pi1 = rep.base_irrep;
  const Index d1 = pi1.dim();
  const int r = rep.multiplicity;

  // stabilizer of the class of pi1
  std::vector<int> members;
  std::vector<CMatrix> witness(n);
  for (int g = 0; g < n; ++g) {
    const auto eq = equivalence_of_irreducibles(pi1, compose(pi1, action, g), tol);
    if (eq.equivalent) {
      members.push_back(g);
      witness[g] = *eq.witness;
    }
  }
  rep.H = subgroup_closure(G, members);
  if (rep.H.members != members) throw Error(ErrorCode::InvariantViolation, "stabilizer of pi1 is not a subgroup");
  rep.coset_reps = right_coset_reps(rep.H);
  const int m = rep.m();

  // locate each translate among the components of Pi restricted to A
  std::vector<Rep> translates;
  std::vector<CMatrix> to_component;
  for (int gi : rep.coset_reps) {
    translates.push_back(compose(pi1, action, gi));
    bool found = false;
    for (std::size_t c = 0; c < dec.components.size() && !found; ++c) {
      if (dec.components[c].irrep.dim() != d1) continue;
      const auto eq = equivalence_of_irreducibles(translates.back(), dec.components[c].irrep, tol);
      if (eq.equivalent) {
        rep.orbit_components.push_back(static_cast<int>(c));
        to_component.push_back(*eq.witness);
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::InvariantViolation, "translate of pi1 missing from Pi restricted to A");
  }
  {
    auto sorted = rep.orbit_components;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
        static_cast<std::size_t>(m) != dec.components.size())
      throw Error(ErrorCode::InvariantViolation, "coset translates do not match the components one to one");
  }
  for (const auto& c : dec.components)
    if (c.multiplicity != r) throw Error(ErrorCode::InvariantViolation, "orbit members have different multiplicities");

  const Index bd = r * d1;
  rep.conjugator = CMatrix::Zero(pi.dim(), pi.dim());
  for (int i = 0; i < m; ++i)
    for (int s = 0; s < r; ++s)
      rep.conjugator.middleCols(i * bd + s * d1, d1) = dec.isometry(rep.orbit_components[i], s) * to_component[i];
  if (unitarity_defect(rep.conjugator) > kBlockEps)
    throw Error(ErrorCode::InvariantViolation, "assembled conjugator is not unitary");

  const CovariantRep conj = pi.conjugated(rep.conjugator);
  std::vector<Rep> expected_blocks;
  for (const auto& t : translates) expected_blocks.push_back(multiple(t, r));
  for (const auto& [label, x] : conj.base.gens())
    rep.base_residual = std::max(rep.base_residual, rel_diff(x, diagonal_of(expected_blocks, label)));
  if (rep.base_residual > kBlockEps)
    throw Error(ErrorCode::BlockStructureViolation, "conjugated Pi(a) is not the expected block diagonal");

  rep.perms.assign(n, std::vector<int>(m));
  rep.block_unitaries.assign(n, std::vector<CMatrix>(m));
  rep.block_diagonal_iff_in_H = true;
  for (int g = 0; g < n; ++g) {
    const CMatrix& x = conj.unitaries[g];
    double kept = 0;
    for (int j = 0; j < m; ++j) {
      int best = 0;
      double best_norm = -1;
      for (int i = 0; i < m; ++i) {
        const double v = x.block(i * bd, j * bd, bd, bd).norm();
        if (v > best_norm) {
          best_norm = v;
          best = i;
        }
      }
      rep.perms[g][j] = best;
      rep.block_unitaries[g][j] = x.block(best * bd, j * bd, bd, bd);
      kept += best_norm * best_norm;
    }
    const double off = std::sqrt(std::max(0.0, x.squaredNorm() - kept));
    rep.block_residual = std::max(rep.block_residual, off);
    auto sorted = rep.perms[g];
    std::sort(sorted.begin(), sorted.end());
    for (int j = 0; j < m; ++j)
      if (sorted[j] != j) throw Error(ErrorCode::BlockStructureViolation, "block pattern of U_g is not a permutation");
    bool identity = true;
    for (int j = 0; j < m; ++j) identity = identity && rep.perms[g][j] == j;
    if (identity != rep.H.contains(g)) rep.block_diagonal_iff_in_H = false;
  }
  if (rep.block_residual > kPatternEps)
    throw Error(ErrorCode::BlockStructureViolation, "conjugated Pi(U_g) has mass off the block pattern");
  rep.H_normal = rep.H.is_normal();

  // Psi on the first block, over H
  std::vector<Rep::Gen> psi_gens;
  for (const auto& [label, x] : conj.base.gens()) psi_gens.emplace_back(label, x.topLeftCorner(bd, bd));
  rep.Psi = CovariantRep{Rep(bd, std::move(psi_gens)),
                         std::make_shared<const GeneratorAction>(action.restrict_to(rep.H)), {}};
  std::vector<CMatrix> vmats, lmats;
  for (int h : rep.H.members) {
    if (rep.perms[h][0] != 0) throw Error(ErrorCode::BlockStructureViolation, "U_h moves the first block for h in H");
    const CMatrix u = conj.unitaries[h].topLeftCorner(bd, bd);
    rep.Psi.unitaries.push_back(u);
    vmats.push_back(witness[h]);
    lmats.push_back(factor_tensor(u, witness[h], r));
    rep.factor_residual = std::max(rep.factor_residual, (u - kron(lmats.back(), witness[h])).norm());
  }
  rep.Vproj = make_projective(rep.H, vmats);
  rep.Lambda = make_projective(rep.H, lmats);
  rep.lambda_irreducible = is_irreducible(labelled_family(lmats, "L"), tol);
  rep.psi_irreducible = is_irreducible(rep.Psi.as_rep(), tol);
  rep.ergodic_dim = ergodic_dimension(pi, tol);
  rep.commutant_residual = commutant_invariance_residual(pi, tol);
  return rep;
}

CyclicReport cyclic_analyze(const CovariantRep& pi, std::uint64_t seed, const Tolerance& tol) {
  const FiniteGroup& G = pi.group();
  const int u = G.cyclic_generator();
  if (u < 0) throw Error(ErrorCode::InvalidInput, "the group is not cyclic");

  CyclicReport out;
  out.base = analyze(pi, seed, tol);
  const StructureReport& rep = out.base;
  if (rep.multiplicity != 1)
    throw Error(ErrorCode::CanonicalFormViolation, "multiplicity " + std::to_string(rep.multiplicity) + " over a cyclic group");
  out.generator = u;
  out.n = G.order();
  out.m = rep.m();
  out.k = out.n / out.m;
  const int m = out.m;
  const Rep& pi1 = rep.base_irrep;
  const Index d = pi1.dim();

  // walk the blocks backwards along U_u: block b[i+1] is sent to block b[i]
  std::vector<int> b{0};
  for (int i = 1; i < m; ++i) {
    const auto& p = rep.perms[u];
    const int j = static_cast<int>(std::find(p.begin(), p.end(), b.back()) - p.begin());
    if (std::find(b.begin(), b.end(), j) != b.end())
      throw Error(ErrorCode::CanonicalFormViolation, "U_u does not cycle through all blocks");
    b.push_back(j);
  }
  std::vector<CMatrix> dmats{CMatrix::Identity(d, d)};
  for (int i = 0; i + 1 < m; ++i) dmats.push_back(rep.block_unitaries[u][b[i + 1]].adjoint() * dmats.back());
  out.V = dmats.back().adjoint() * rep.block_unitaries[u][b[0]];
  CMatrix q = CMatrix::Zero(pi.dim(), pi.dim());
  for (int i = 0; i < m; ++i) q.block(b[i] * d, i * d, d, d) = dmats[i];
  out.conjugator = rep.conjugator * q;

  const CovariantRep canon = pi.conjugated(out.conjugator);
  std::vector<Rep> translates;
  for (int i = 0; i < m; ++i) translates.push_back(compose(pi1, *pi.action, G.power(u, i)));
  double residual = 0;
  for (const auto& [label, x] : canon.base.gens()) residual = std::max(residual, rel_diff(x, diagonal_of(translates, label)));
  CMatrix shift = CMatrix::Zero(pi.dim(), pi.dim());
  for (int i = 0; i + 1 < m; ++i) shift.block(i * d, (i + 1) * d, d, d) = CMatrix::Identity(d, d);
  shift.block((m - 1) * d, 0, d, d) = out.V;
  residual = std::max(residual, rel_diff(canon.unitaries[u], shift));
  if (residual > kBlockEps) throw Error(ErrorCode::CanonicalFormViolation, "canonical cyclic form does not reproduce Pi");
  if (rel_diff(matrix_power(out.V, out.k), CMatrix::Identity(d, d)) > kBlockEps)
    throw Error(ErrorCode::CanonicalFormViolation, "V^k is not the identity");
  out.pieces_inequivalent = true;
  for (int i = 1; i < m; ++i)
    if (equivalence_of_irreducibles(pi1, translates[i], tol).equivalent) out.pieces_inequivalent = false;
  if (!out.pieces_inequivalent)
    throw Error(ErrorCode::CanonicalFormViolation, "pi1 o sigma^i is equivalent to pi1 for some 0 < i < m");

  out.spectrum_of_V = unitary_eigenspaces(out.V, tol);
  out.spectrum_of_U = unitary_eigenspaces(pi.unitaries[u], tol);
  out.minimal = is_irreducible(pi.base, tol);

  if (!pi.action->concrete) return out;
  const GroupAction& concrete = *pi.action->concrete;
  const FixedPointAlgebra fpa = fixed_point_algebra(concrete, tol);
  out.has_fixed_point_data = true;
  out.fixed_point_dim = static_cast<int>(fpa.basis.size());
  const Rep on_pi = subalgebra_rep(pi.base, concrete.algebra, fpa.basis);
  out.alpha_diag_irreducible = true;
  for (const auto& s : out.spectrum_of_U) {
    out.alpha_diag.push_back(compress(on_pi, s.isometry));
    out.alpha_diag_irreducible = out.alpha_diag_irreducible && is_irreducible(out.alpha_diag.back(), tol);
  }
  out.alpha_diag_pairwise_inequivalent = true;
  if (out.alpha_diag_irreducible)
    for (std::size_t i = 0; i < out.alpha_diag.size(); ++i)
      for (std::size_t j = i + 1; j < out.alpha_diag.size(); ++j)
        if (equivalence_of_irreducibles(out.alpha_diag[i], out.alpha_diag[j], tol).equivalent)
          out.alpha_diag_pairwise_inequivalent = false;

  const Rep on_pi1 = subalgebra_rep(pi1, concrete.algebra, fpa.basis);
  for (const auto& s : out.spectrum_of_V) out.minimal_pieces.push_back(compress(on_pi1, s.isometry));
  out.eta = static_cast<int>(out.spectrum_of_V.size());
  out.fixed_pt_irreps = decompose(on_pi, seed, tol).components;
  const auto pi1_dec = decompose(on_pi1, seed, tol);
  out.base_restriction_multiplicity_free =
      static_cast<int>(pi1_dec.components.size()) == out.eta &&
      std::all_of(pi1_dec.components.begin(), pi1_dec.components.end(),
                  [](const Component& c) { return c.multiplicity == 1; });
  return out;
}

CovariantRep build_cyclic_irrep(const Rep& pi1, const CMatrix& v, int m, int k, ActionPtr action,
                                const Tolerance& tol) {
  const FiniteGroup& G = action->group;
  const int n = G.order();
  if (m < 1 || k < 1 || m * k != n) throw Error(ErrorCode::InvalidInput, "m * k must equal the group order");
  const int u = G.cyclic_generator();
  if (u < 0) throw Error(ErrorCode::InvalidInput, "the group is not cyclic");
  const Index d = pi1.dim();
  if (v.rows() != d || v.cols() != d) throw Error(ErrorCode::DimensionMismatch, "V does not act on the space of pi1");
  if (!is_unitary(v, tol.abs_eps * std::max<double>(1.0, static_cast<double>(d)))) throw Error(ErrorCode::NotUnitary, "V");
  if (rel_diff(matrix_power(v, k), CMatrix::Identity(d, d)) > kBlockEps)
    throw Error(ErrorCode::InvariantViolation, "V^k is not the identity");
  if (!is_irreducible(pi1, tol)) throw Error(ErrorCode::NotIrreducible, "pi1 is reducible");
  const Rep shifted = compose(pi1, *action, G.power(u, m));
  for (const auto& [label, x] : pi1.gens())
    if (rel_diff(v * x * v.adjoint(), shifted.at(label)) > kBlockEps)
      throw Error(ErrorCode::InvariantViolation, "V pi1 V* differs from pi1 o sigma^m on " + label);
  std::vector<Rep> translates{pi1};
  for (int j = 1; j < m; ++j) {
    translates.push_back(compose(pi1, *action, G.power(u, j)));
    if (equivalence_of_irreducibles(pi1, translates.back(), tol).equivalent)
      throw Error(ErrorCode::InvariantViolation, "pi1 o sigma^" + std::to_string(j) + " is equivalent to pi1");
  }
  std::vector<Rep::Gen> gens;
  for (const auto& [label, x] : pi1.gens()) gens.emplace_back(label, diagonal_of(translates, label));
  CMatrix shift = CMatrix::Zero(m * d, m * d);
  for (int i = 0; i + 1 < m; ++i) shift.block(i * d, (i + 1) * d, d, d) = CMatrix::Identity(d, d);
  shift.block((m - 1) * d, 0, d, d) = v;
  CovariantRep out{Rep(m * d, std::move(gens)), action, std::vector<CMatrix>(n)};
  CMatrix power = CMatrix::Identity(m * d, m * d);
  for (int j = 0; j < n; ++j) {
    out.unitaries[G.power(u, j)] = power;
    power = power * shift;
  }
  out.validate(tol);
  if (!is_irreducible(out.as_rep(), tol)) throw Error(ErrorCode::NotIrreducible, "built representation is reducible");
  return out;
}

CovariantRep periodize(const Rep& base, const CMatrix& u, ActionPtr action, const Tolerance& tol) {
  const FiniteGroup& G = action->group;
  const int n = G.order();
  const int g0 = G.cyclic_generator();
  if (g0 < 0) throw Error(ErrorCode::InvalidInput, "periodization needs a cyclic group");
  const Index d = base.dim();
  if (u.rows() != d || u.cols() != d) throw Error(ErrorCode::DimensionMismatch, "unitary does not act on the base space");
  const CMatrix p = matrix_power(u, n);
  const Complex lambda = p.trace() / static_cast<double>(d);
  if ((p - lambda * CMatrix::Identity(d, d)).norm() > tol.abs_eps * n * std::max<double>(1.0, static_cast<double>(d)))
    throw Error(ErrorCode::NotScalarPower, "U^n is not a scalar");
  const Complex mu = std::polar(1.0, std::arg(lambda) / n);
  const CMatrix v = std::conj(mu) * u;
  CovariantRep out{base, action, std::vector<CMatrix>(n)};
  CMatrix power = CMatrix::Identity(d, d);
  for (int j = 0; j < n; ++j) {
    out.unitaries[G.power(g0, j)] = power;
    power = power * v;
  }
  out.validate(tol);
  return out;
}

const char* to_string(S3Case c) {
  switch (c) {
    case S3Case::Minimal: return "Minimal";
    case S3Case::TauPair: return "TauPair";
    case S3Case::EtaTriple: return "EtaTriple";
    case S3Case::Regular6: return "Regular6";
  }
  return "?";
}

namespace {

int element_of_order(const FiniteGroup& g, const std::string& label, int order) {
  const int named = g.find(label);
  if (named >= 0 && g.element_order(named) == order) return named;
  for (int x = 0; x < g.order(); ++x)
    if (g.element_order(x) == order) return x;
  return -1;
}

}  // namespace

S3Class classify_s3(const CovariantRep& pi, std::uint64_t seed, const Tolerance& tol) {
  const FiniteGroup& G = pi.group();
  if (G.order() != 6 || G.is_abelian()) throw Error(ErrorCode::InvalidInput, "classify_s3 needs the symmetric group S3");
  require_irreducible(pi, tol);
  const GeneratorAction& action = *pi.action;

  S3Class out;
  out.eta = element_of_order(G, "eta", 3);
  out.tau = element_of_order(G, "tau", 2);
  const int eta = out.eta, tau = out.tau, e = G.identity();
  const int eta2 = G.mul(eta, eta);
  const Subgroup N = subgroup_closure(G, {eta});
  out.normal_part_irreducible = is_irreducible(pi.restrict_to(N).as_rep(), tol);
  out.algebra_part_irreducible = is_irreducible(pi.base, tol);

  // isometry for block e; the block of g is U_{g^-1} applied to it
  CMatrix pe;
  if (out.normal_part_irreducible) {
    if (out.algebra_part_irreducible) {
      out.kind = S3Case::Minimal;
      out.pi1 = pi.base;
      out.conjugator = CMatrix::Identity(pi.dim(), pi.dim());
      out.block_elements = {e};
      return out;
    }
    out.kind = S3Case::EtaTriple;
    const auto dec = decompose(pi.base, seed, tol);
    pe = dec.isometry(0, 0);
    out.block_elements = {e, eta, eta2};
  } else {
    const auto dec = decompose(pi.restrict_to(N).as_rep(), seed, tol);
    const CMatrix p1 = dec.isometry(0, 0);
    const Rep rho_on_a = compress(pi.base, p1);
    if (is_irreducible(rho_on_a, tol)) {
      out.kind = S3Case::TauPair;
      pe = p1;
      out.block_elements = {e, tau};
      out.tau_equivalent = equivalence_of_irreducibles(rho_on_a, compose(rho_on_a, action, tau), tol).equivalent;
      out.multiplicity = analyze(pi, seed, tol).multiplicity;
    } else {
      out.kind = S3Case::Regular6;
      pe = p1 * decompose(rho_on_a, seed, tol).isometry(0, 0);
      out.block_elements = {e, eta, eta2, tau, G.mul(eta, tau), G.mul(eta2, tau)};
    }
  }
  out.pi1 = compress(pi.base, pe);
  const Index d = pe.cols();
  const int nb = static_cast<int>(out.block_elements.size());
  if (nb * d != pi.dim()) throw Error(ErrorCode::InvariantViolation, "blocks do not fill the space");
  out.conjugator.resize(pi.dim(), pi.dim());
  for (int i = 0; i < nb; ++i) out.conjugator.middleCols(i * d, d) = pi.unitaries[G.inv(out.block_elements[i])] * pe;
  if (unitarity_defect(out.conjugator) > kBlockEps)
    throw Error(ErrorCode::InvariantViolation, "block isometries are not mutually orthogonal");

  const CovariantRep conj = pi.conjugated(out.conjugator);
  std::vector<Rep> translates;
  for (int g : out.block_elements) translates.push_back(compose(out.pi1, action, g));
  double residual = 0;
  for (const auto& [label, x] : conj.base.gens()) residual = std::max(residual, rel_diff(x, diagonal_of(translates, label)));

  auto index_of = [&](int g) {
    return static_cast<int>(std::find(out.block_elements.begin(), out.block_elements.end(), g) - out.block_elements.begin());
  };
  // U_h sends the block of g to the block of g h^-1, whenever both are present
  auto permutation_unitary = [&](int h) {
    CMatrix p = CMatrix::Zero(nb, nb);
    for (int i = 0; i < nb; ++i) p(index_of(G.mul(out.block_elements[i], G.inv(h))), i) = 1.0;
    return kron(p, CMatrix::Identity(d, d));
  };
  switch (out.kind) {
    case S3Case::EtaTriple:
      residual = std::max(residual, rel_diff(conj.unitaries[eta], permutation_unitary(eta)));
      residual = std::max(residual, rel_diff(conj.unitaries[eta2], permutation_unitary(eta2)));
      break;
    case S3Case::Regular6:
      for (int h = 0; h < G.order(); ++h) residual = std::max(residual, rel_diff(conj.unitaries[h], permutation_unitary(h)));
      break;
    case S3Case::TauPair: {
      residual = std::max(residual, rel_diff(conj.unitaries[tau], permutation_unitary(tau)));
      const CMatrix& ue = conj.unitaries[eta];
      const double off = std::sqrt(ue.topRightCorner(d, d).squaredNorm() + ue.bottomLeftCorner(d, d).squaredNorm());
      residual = std::max(residual, off);
      break;
    }
    case S3Case::Minimal: break;
  }
  out.reconstruction_residual = residual;
  if (residual > kBlockEps)
    throw Error(ErrorCode::InvariantViolation, std::string("S3 ") + to_string(out.kind) + " form does not reproduce Pi");
  return out;
}

}  // namespace crossprod
