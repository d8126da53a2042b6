#include "crossprod/reps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace crossprod {

Rep::Rep(Index dim, std::vector<Gen> gens) : dim_(dim), gens_(std::move(gens)) {
  for (const auto& [label, m] : gens_)
    if (m.rows() != dim_ || m.cols() != dim_)
      throw Error(ErrorCode::DimensionMismatch, "generator " + label + " is not " +
                                                    std::to_string(dim_) + "x" + std::to_string(dim_));
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (gens_[i].first == gens_[j].first)
        throw Error(ErrorCode::InvalidInput, "duplicate generator label " + gens_[i].first);
}

std::vector<std::string> Rep::labels() const {
  std::vector<std::string> out;
  for (const auto& g : gens_) out.push_back(g.first);
  return out;
}

bool Rep::has(const std::string& label) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const Gen& g) { return g.first == label; });
}

const CMatrix& Rep::at(const std::string& label) const {
  for (const auto& g : gens_)
    if (g.first == label) return g.second;
  throw Error(ErrorCode::LabelMismatch, "no generator labelled " + label);
}

std::vector<Rep::Gen> Rep::closed_gens(double eps) const {
  std::vector<Gen> out = gens_;
  for (const auto& [label, m] : gens_) {
    CMatrix a = m.adjoint();
    bool present = false;
    for (const auto& existing : out)
      if (close(existing.second, a, eps)) {
        present = true;
        break;
      }
    if (!present) out.emplace_back(label + "*", std::move(a));
  }
  return out;
}

bool close(const CMatrix& a, const CMatrix& b, double eps) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).norm() <= eps * std::max({1.0, a.norm(), b.norm()});
}

Complex frobenius_inner(const CMatrix& a, const CMatrix& b) { return (a.conjugate().cwiseProduct(b)).sum(); }

double inner(const CMatrix& a, const CMatrix& b) { return frobenius_inner(a, b).real(); }

Rep compress(const Rep& r, const CMatrix& q) {
  if (q.rows() != r.dim()) throw Error(ErrorCode::DimensionMismatch, "isometry does not fit the representation");
  std::vector<Rep::Gen> gens;
  for (const auto& [label, m] : r.gens()) gens.emplace_back(label, q.adjoint() * m * q);
  return Rep(q.cols(), std::move(gens));
}

Rep direct_sum(const Rep& a, const Rep& b) {
  std::vector<Rep::Gen> gens;
  for (const auto& [label, m] : a.gens()) gens.emplace_back(label, block_diagonal({m, b.at(label)}));
  if (a.gens().size() != b.gens().size()) throw Error(ErrorCode::LabelMismatch, "direct sum of differently labelled reps");
  return Rep(a.dim() + b.dim(), std::move(gens));
}

Rep multiple(const Rep& r, int copies) {
  std::vector<Rep::Gen> gens;
  const CMatrix id = CMatrix::Identity(copies, copies);
  for (const auto& [label, m] : r.gens()) gens.emplace_back(label, kron(id, m));
  return Rep(r.dim() * copies, std::move(gens));
}

Rep compose(const Rep& pi, const GeneratorAction& action, int g) {
  const auto& gens = pi.gens();
  if (gens.size() != action.labels.size())
    throw Error(ErrorCode::LabelMismatch, "representation and action have different generators");
  // position in pi of each action generator
  std::vector<std::size_t> where(action.labels.size());
  for (std::size_t i = 0; i < action.labels.size(); ++i) {
    auto it = std::find_if(gens.begin(), gens.end(), [&](const Rep::Gen& x) { return x.first == action.labels[i]; });
    if (it == gens.end()) throw Error(ErrorCode::LabelMismatch, "representation lacks generator " + action.labels[i]);
    where[i] = static_cast<std::size_t>(it - gens.begin());
  }
  const CMatrix& s = action.subs.at(g);
  std::vector<Rep::Gen> out;
  for (const auto& [label, m] : gens) {
    const int j = action.label_index(label);
    CMatrix img = CMatrix::Zero(pi.dim(), pi.dim());
    for (Index i = 0; i < s.rows(); ++i)
      if (s(i, j) != Complex(0.0)) img += s(i, j) * gens[where[i]].second;
    out.emplace_back(label, std::move(img));
  }
  return Rep(pi.dim(), std::move(out));
}

Rep alg_rep(const MatAlg& a, const std::function<CMatrix(const AlgElement&)>& image) {
  const auto labels = a.unit_labels();
  std::vector<Rep::Gen> gens;
  Index dim = -1;
  std::size_t pos = 0;
  for (std::size_t k = 0; k < a.block_dims.size(); ++k)
    for (int i = 0; i < a.block_dims[k]; ++i)
      for (int j = 0; j < a.block_dims[k]; ++j) {
        CMatrix m = image(AlgElement::unit(a, static_cast<int>(k), i, j));
        if (dim < 0) dim = m.rows();
        gens.emplace_back(labels[pos++], std::move(m));
      }
  return Rep(dim, std::move(gens));
}

Rep defining_rep(const MatAlg& a) {
  return alg_rep(a, [](const AlgElement& x) { return x.defining(); });
}

Rep block_rep(const MatAlg& a, int block) {
  return alg_rep(a, [block](const AlgElement& x) { return x.blocks.at(block); });
}

CMatrix evaluate(const Rep& r, const MatAlg& a, const AlgElement& x) {
  if (!x.matches(a)) throw Error(ErrorCode::DimensionMismatch, "element does not belong to the algebra");
  const auto labels = a.unit_labels();
  const CVector c = x.coefficients();
  CMatrix out = CMatrix::Zero(r.dim(), r.dim());
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (c(static_cast<Index>(i)) != Complex(0.0)) out += c(static_cast<Index>(i)) * r.at(labels[i]);
  return out;
}

Rep subalgebra_rep(const Rep& r, const MatAlg& a, const std::vector<AlgElement>& basis,
                   const std::string& prefix) {
  std::vector<Rep::Gen> gens;
  for (std::size_t j = 0; j < basis.size(); ++j) gens.emplace_back(prefix + std::to_string(j), evaluate(r, a, basis[j]));
  return Rep(r.dim(), std::move(gens));
}

std::string unitary_label(int g) { return "U#" + std::to_string(g); }

void CovariantRep::validate(const Tolerance& tol) const {
  if (!action) throw Error(ErrorCode::InvalidInput, "covariant representation without an action");
  const FiniteGroup& g = action->group;
  if (static_cast<int>(unitaries.size()) != g.order())
    throw Error(ErrorCode::InvalidInput, "one unitary per group element is required");
  for (int x = 0; x < g.order(); ++x) {
    if (unitaries[x].rows() != dim() || unitaries[x].cols() != dim())
      throw Error(ErrorCode::DimensionMismatch, "unitary for " + g.label(x) + " has the wrong size");
    if (!is_unitary(unitaries[x], tol.abs_eps * std::max<double>(1.0, static_cast<double>(dim()))))
      throw Error(ErrorCode::NotUnitary, "U_g for g = " + g.label(x));
  }
  const double eps = tol.abs_eps * std::max<double>(1.0, static_cast<double>(dim()));
  if (!close(unitaries[g.identity()], CMatrix::Identity(dim(), dim()), eps))
    throw Error(ErrorCode::InvariantViolation, "U_e is not the identity");
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (!close(unitaries[a] * unitaries[b], unitaries[g.mul(a, b)], eps))
        throw Error(ErrorCode::InvariantViolation,
                    "U_g U_h != U_gh for (" + g.label(a) + ", " + g.label(b) + ")");
  for (int x = 0; x < g.order(); ++x) {
    const Rep moved = compose(base, *action, x);
    for (const auto& [label, m] : base.gens())
      if (!close(unitaries[x] * m * unitaries[x].adjoint(), moved.at(label), eps))
        throw Error(ErrorCode::InvariantViolation,
                    "covariance fails for g = " + g.label(x) + " on generator " + label);
  }
}

Rep CovariantRep::as_rep() const {
  std::vector<Rep::Gen> gens = base.gens();
  for (int x = 0; x < group().order(); ++x)
    if (x != group().identity()) gens.emplace_back(unitary_label(x), unitaries[x]);
  return Rep(dim(), std::move(gens));
}

CovariantRep CovariantRep::restrict_to(const Subgroup& h) const {
  CovariantRep out{base, std::make_shared<const GeneratorAction>(action->restrict_to(h)), {}};
  for (int m : h.members) out.unitaries.push_back(unitaries[m]);
  return out;
}

CovariantRep CovariantRep::conjugated(const CMatrix& w) const {
  CovariantRep out{compress(base, w), action, {}};
  for (const auto& u : unitaries) out.unitaries.push_back(w.adjoint() * u * w);
  return out;
}

CovariantRep covariant_from_rep(const Rep& r, ActionPtr action) {
  std::vector<Rep::Gen> gens;
  for (const auto& label : action->labels) gens.emplace_back(label, r.at(label));
  CovariantRep out{Rep(r.dim(), std::move(gens)), action, {}};
  for (int g = 0; g < action->group.order(); ++g)
    out.unitaries.push_back(g == action->group.identity() ? CMatrix::Identity(r.dim(), r.dim())
                                                          : r.at(unitary_label(g)));
  return out;
}

std::vector<CMatrix> intertwiners(const Rep& r1, const Rep& r2, const Tolerance& tol) {
  if (r1.gens().size() != r2.gens().size())
    throw Error(ErrorCode::LabelMismatch, "representations have different generator sets");
  std::vector<SylvesterPair> pairs;
  auto push = [&](CMatrix left, CMatrix right) {
    for (const auto& p : pairs)
      if (close(p.left, left, tol.abs_eps) && close(p.right, right, tol.abs_eps)) return;
    pairs.push_back({std::move(left), std::move(right)});
  };
  for (const auto& [label, m1] : r1.gens()) {
    if (!r2.has(label)) throw Error(ErrorCode::LabelMismatch, "second representation lacks " + label);
    const CMatrix& m2 = r2.at(label);
    push(m2, m1);
    push(m2.adjoint(), m1.adjoint());
  }
  return solve_sylvester_family(pairs, r2.dim(), r1.dim(), tol);
}

std::vector<CMatrix> commutant_basis(const Rep& r, const Tolerance& tol) { return intertwiners(r, r, tol); }

bool is_irreducible(const Rep& r, const Tolerance& tol) { return commutant_basis(r, tol).size() == 1; }

Equivalence equivalence_of_irreducibles(const Rep& r1, const Rep& r2, const Tolerance& tol) {
  if (r1.dim() != r2.dim()) return {};
  const auto basis = intertwiners(r1, r2, tol);
  if (basis.size() != 1) return {};
  CMatrix w = basis[0] * std::sqrt(static_cast<double>(r1.dim())) / basis[0].norm();
  if (unitarity_defect(w) > 1e-6) return {};
  return {true, normalize_phase(w)};
}

Equivalence are_equivalent(const Rep& r1, const Rep& r2, const Tolerance& tol) {
  if (!is_irreducible(r1, tol)) throw Error(ErrorCode::NotIrreducible, "first representation is reducible");
  if (!is_irreducible(r2, tol)) throw Error(ErrorCode::NotIrreducible, "second representation is reducible");
  return equivalence_of_irreducibles(r1, r2, tol);
}

Index IrrepDecomposition::offset(std::size_t component, int copy) const {
  Index off = 0;
  for (std::size_t c = 0; c < component; ++c) off += components[c].irrep.dim() * components[c].multiplicity;
  return off + copy * components[component].irrep.dim();
}

CMatrix IrrepDecomposition::isometry(std::size_t component, int copy) const {
  return basis_change.middleCols(offset(component, copy), components[component].irrep.dim());
}

namespace {

struct Leaf {
  CMatrix iso;
  Rep piece;
};

void split(const Rep& piece, const CMatrix& iso, std::mt19937_64& rng, const Tolerance& tol,
           std::vector<Leaf>& leaves) {
  const auto basis = commutant_basis(piece, tol);
  if (basis.size() <= 1) {
    leaves.push_back({iso, piece});
    return;
  }
  std::normal_distribution<double> normal;
  CMatrix x = CMatrix::Zero(piece.dim(), piece.dim());
  for (const auto& c : basis) x += Complex(normal(rng), normal(rng)) * c;
  const auto spaces = hermitian_eigenspaces((x + x.adjoint()) / 2.0, tol);
  if (spaces.size() < 2)
    throw Error(ErrorCode::DecompositionFailed, "random commutant element has a single eigenvalue cluster");
  for (const auto& s : spaces) split(compress(piece, s.isometry), iso * s.isometry, rng, tol, leaves);
}

IrrepDecomposition decompose_once(const Rep& r, std::uint64_t seed, const Tolerance& tol) {
  std::mt19937_64 rng(seed);
  std::vector<Leaf> leaves;
  split(r, CMatrix::Identity(r.dim(), r.dim()), rng, tol, leaves);

  struct Class {
    Rep rep;
    std::vector<CMatrix> isos;
  };
  std::vector<Class> classes;
  for (auto& leaf : leaves) {
    bool placed = false;
    for (auto& c : classes) {
      if (c.rep.dim() != leaf.piece.dim()) continue;
      auto eq = equivalence_of_irreducibles(c.rep, leaf.piece, tol);
      if (eq.equivalent) {
        c.isos.push_back(leaf.iso * *eq.witness);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({leaf.piece, {leaf.iso}});
  }
  // Equal dimensions are ordered by the moments tr(W^k) of a fixed product W of three generic
  // combinations of the generator images. These are class invariants, so the order does not
  // depend on the seed; a product is used because moments of one combination cannot see the
  // order of generators.
  auto trace_key = [](const Rep& p) {
    std::mt19937_64 coeffs(0x5eed);
    std::normal_distribution<double> normal;
    CMatrix w = CMatrix::Identity(p.dim(), p.dim());
    for (int factor = 0; factor < 3; ++factor) {
      CMatrix x = CMatrix::Zero(p.dim(), p.dim());
      for (const auto& [label, m] : p.gens()) x += Complex(normal(coeffs), normal(coeffs)) * m;
      w = w * x;
    }
    std::vector<double> key;
    CMatrix power = CMatrix::Identity(p.dim(), p.dim());
    for (Index k = 1; k <= p.dim(); ++k) {
      power = power * w;
      key.push_back(power.trace().real());
      key.push_back(power.trace().imag());
    }
    return key;
  };
  std::vector<std::vector<double>> keys;
  for (const auto& c : classes) keys.push_back(trace_key(c.rep));
  std::vector<std::size_t> order(classes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (classes[i].rep.dim() != classes[j].rep.dim()) return classes[i].rep.dim() < classes[j].rep.dim();
    for (std::size_t t = 0; t < keys[i].size(); ++t)
      if (std::abs(keys[i][t] - keys[j][t]) > 1e-6) return keys[i][t] < keys[j][t];
    return false;
  });
  std::vector<Class> sorted;
  for (std::size_t i : order) sorted.push_back(std::move(classes[i]));
  classes = std::move(sorted);

  IrrepDecomposition out;
  out.basis_change.resize(r.dim(), r.dim());
  Index col = 0;
  for (const auto& c : classes) {
    out.components.push_back({c.rep, static_cast<int>(c.isos.size())});
    for (const auto& q : c.isos) {
      out.basis_change.middleCols(col, q.cols()) = q;
      col += q.cols();
    }
  }
  if (col != r.dim()) throw Error(ErrorCode::DecompositionFailed, "pieces do not fill the space");
  if (unitarity_defect(out.basis_change) > 1e-7)
    throw Error(ErrorCode::DecompositionFailed, "assembled basis change is not unitary");
  return out;
}

}  // namespace

IrrepDecomposition decompose(const Rep& r, std::uint64_t seed, const Tolerance& tol) {
  if (r.dim() == 0) return {{}, CMatrix(0, 0)};
  std::string last;
  for (int attempt = 0; attempt < 5; ++attempt) {
    try {
      return decompose_once(r, seed + static_cast<std::uint64_t>(attempt), tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DecompositionFailed) throw;
      last = e.what();
    }
  }
  throw Error(ErrorCode::DecompositionFailed, "retry budget exhausted (" + last + ")");
}

bool same_decomposition(const IrrepDecomposition& a, const IrrepDecomposition& b, const Tolerance& tol) {
  if (a.components.size() != b.components.size()) return false;
  std::vector<bool> used(b.components.size(), false);
  for (const auto& ca : a.components) {
    bool found = false;
    for (std::size_t j = 0; j < b.components.size() && !found; ++j) {
      const auto& cb = b.components[j];
      if (used[j] || cb.multiplicity != ca.multiplicity || cb.irrep.dim() != ca.irrep.dim()) continue;
      if (equivalence_of_irreducibles(ca.irrep, cb.irrep, tol).equivalent) used[j] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

CovariantRep regular_representation(const Rep& pi, ActionPtr action) {
  const FiniteGroup& g = action->group;
  const int n = g.order();
  const Index d = pi.dim();
  std::vector<Rep> moved;
  for (int x = 0; x < n; ++x) moved.push_back(compose(pi, *action, g.inv(x)));
  std::vector<Rep::Gen> gens;
  for (const auto& [label, m] : pi.gens()) {
    std::vector<CMatrix> blocks;
    for (int x = 0; x < n; ++x) blocks.push_back(moved[x].at(label));
    gens.emplace_back(label, block_diagonal(blocks));
  }
  CovariantRep out{Rep(n * d, std::move(gens)), action, {}};
  const CMatrix id = CMatrix::Identity(d, d);
  for (int h = 0; h < n; ++h) {
    CMatrix lambda = CMatrix::Zero(n, n);
    for (int x = 0; x < n; ++x) lambda(g.mul(h, x), x) = 1.0;
    out.unitaries.push_back(kron(lambda, id));
  }
  return out;
}

CovariantRep regular_representation(const Rep& pi, const GroupAction& action) {
  return regular_representation(pi, std::make_shared<const GeneratorAction>(GeneratorAction::from(action)));
}

bool regular_irreducibility_criterion(const Rep& pi, const GeneratorAction& action, const Tolerance& tol) {
  if (!is_irreducible(pi, tol)) return false;
  for (int g = 0; g < action.group.order(); ++g) {
    if (g == action.group.identity()) continue;
    if (equivalence_of_irreducibles(pi, compose(pi, action, g), tol).equivalent) return false;
  }
  return true;
}

double commutant_invariance_residual(const CovariantRep& p, const Tolerance& tol) {
  const auto basis = commutant_basis(p.base, tol);
  double worst = 0;
  for (const auto& u : p.unitaries)
    for (const auto& t : basis) {
      const CMatrix x = u * t * u.adjoint();
      CMatrix proj = CMatrix::Zero(x.rows(), x.cols());
      for (const auto& c : basis) proj += frobenius_inner(c, x) * c;
      worst = std::max(worst, (x - proj).norm());
    }
  return worst;
}

Index ergodic_dimension(const CovariantRep& p, const Tolerance& tol) {
  const auto basis = commutant_basis(p.base, tol);
  const Index k = static_cast<Index>(basis.size());
  CMatrix avg = CMatrix::Zero(k, k);
  for (Index l = 0; l < k; ++l) {
    CMatrix x = CMatrix::Zero(p.dim(), p.dim());
    for (const auto& u : p.unitaries) x += u * basis[l] * u.adjoint();
    x /= static_cast<double>(p.unitaries.size());
    for (Index j = 0; j < k; ++j) avg(j, l) = frobenius_inner(basis[j], x);
  }
  return numerical_rank(avg, tol);
}

}  // namespace crossprod
