#include "crossprod/crossed.hpp"

namespace crossprod {

namespace {

bool same_action(const GroupActionPtr& a, const GroupActionPtr& b) {
  if (!a || !b) return false;
  if (a == b) return true;
  if (!(a->group == b->group) || !(a->algebra == b->algebra)) return false;
  for (int g = 0; g < a->group.order(); ++g)
    if (!close(a->auts[g].induced(a->algebra), b->auts[g].induced(b->algebra), 1e-9)) return false;
  return true;
}

void require_same(const CrossedElement& x, const CrossedElement& y) {
  if (!same_action(x.action, y.action)) throw Error(ErrorCode::ActionMismatch, "elements live over different actions");
}

}  // namespace

CrossedElement CrossedElement::zero(GroupActionPtr action) {
  CrossedElement out{action, {}};
  for (int g = 0; g < action->group.order(); ++g) out.coeffs.push_back(AlgElement::zero(action->algebra));
  return out;
}

CrossedElement CrossedElement::one(GroupActionPtr action) {
  return monomial(action, AlgElement::identity(action->algebra), action->group.identity());
}

CrossedElement CrossedElement::monomial(GroupActionPtr action, const AlgElement& a, int g) {
  CrossedElement out = zero(action);
  out.coeffs.at(g) = a;
  return out;
}

CrossedElement CrossedElement::random(GroupActionPtr action, std::mt19937_64& rng) {
  CrossedElement out{action, {}};
  for (int g = 0; g < action->group.order(); ++g) out.coeffs.push_back(AlgElement::random(action->algebra, rng));
  return out;
}

CrossedElement CrossedElement::operator+(const CrossedElement& o) const {
  require_same(*this, o);
  CrossedElement out = *this;
  for (std::size_t g = 0; g < coeffs.size(); ++g) out.coeffs[g] = coeffs[g] + o.coeffs[g];
  return out;
}

double CrossedElement::norm() const {
  double s = 0;
  for (const auto& c : coeffs) s += c.norm() * c.norm();
  return std::sqrt(s);
}

CrossedElement crossed_multiply(const CrossedElement& x, const CrossedElement& y) {
  require_same(x, y);
  const GroupAction& act = *x.action;
  CrossedElement out = CrossedElement::zero(x.action);
  for (int g = 0; g < act.group.order(); ++g)
    for (int h = 0; h < act.group.order(); ++h) {
      const int gh = act.group.mul(g, h);
      out.coeffs[gh] = out.coeffs[gh] + x.coeffs[g] * act.apply(g, y.coeffs[h]);
    }
  return out;
}

CrossedElement crossed_adjoint(const CrossedElement& x) {
  const GroupAction& act = *x.action;
  CrossedElement out = CrossedElement::zero(x.action);
  for (int g = 0; g < act.group.order(); ++g) {
    const int gi = act.group.inv(g);
    out.coeffs[gi] = out.coeffs[gi] + act.apply(gi, x.coeffs[g].adjoint());
  }
  return out;
}

CMatrix CrossedModel::psi(const AlgElement& a) const {
  std::vector<CMatrix> blocks;
  for (int g : order) blocks.push_back(action->apply(g, a).defining());
  return block_diagonal(blocks);
}

CMatrix CrossedModel::image(const CrossedElement& x) const {
  if (!same_action(action, x.action)) throw Error(ErrorCode::ActionMismatch, "element does not belong to this model");
  CMatrix out = CMatrix::Zero(host_dim, host_dim);
  for (int g = 0; g < action->group.order(); ++g) out += psi(x.coeffs[g]) * vg[g];
  return out;
}

CovariantRep CrossedModel::defining_rep() const {
  return CovariantRep{Rep(host_dim, psi_images), std::make_shared<const GeneratorAction>(GeneratorAction::from(*action)),
                      vg};
}

CrossedModel build_crossed_model(GroupActionPtr action, const Tolerance& tol) {
  action->validate(tol);
  const FiniteGroup& g = action->group;
  const MatAlg& alg = action->algebra;
  const int n = g.order();
  const Index d = alg.defining_dimension();

  CrossedModel m;
  m.action = action;
  m.host_dim = n * d;
  m.order.push_back(g.identity());
  for (int x = 0; x < n; ++x)
    if (x != g.identity()) m.order.push_back(x);
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[m.order[i]] = i;

  const auto labels = alg.unit_labels();
  std::size_t pos = 0;
  for (std::size_t k = 0; k < alg.block_dims.size(); ++k)
    for (int a = 0; a < alg.block_dims[k]; ++a)
      for (int b = 0; b < alg.block_dims[k]; ++b)
        m.psi_images.emplace_back(labels[pos++], m.psi(AlgElement::unit(alg, static_cast<int>(k), a, b)));

  // block (i, j) is the identity exactly when g_j = g_i * x
  const CMatrix id = CMatrix::Identity(d, d);
  for (int x = 0; x < n; ++x) {
    CMatrix v = CMatrix::Zero(m.host_dim, m.host_dim);
    for (int i = 0; i < n; ++i) {
      const int j = position[g.mul(m.order[i], x)];
      v.block(i * d, j * d, d, d) = id;
    }
    m.vg.push_back(std::move(v));
  }

  const Index hd2 = m.host_dim * m.host_dim;
  CMatrix stacked(hd2, static_cast<Index>(m.psi_images.size()) * n);
  Index col = 0;
  for (int x = 0; x < n; ++x)
    for (const auto& [label, p] : m.psi_images) {
      const CMatrix prod = p * m.vg[x];
      stacked.col(col++) = Eigen::Map<const CVector>(prod.data(), hd2);
    }
  const CMatrix range = range_basis(stacked, tol);
  for (Index c = 0; c < range.cols(); ++c)
    m.span_basis.push_back(Eigen::Map<const CMatrix>(range.col(c).data(), m.host_dim, m.host_dim));
  return m;
}

CMatrix spectral_projector(const GroupAction& action, const std::vector<Complex>& chi) {
  const int n = action.group.order();
  if (static_cast<int>(chi.size()) != n) throw Error(ErrorCode::DimensionMismatch, "character needs one value per element");
  const double dim = chi[action.group.identity()].real();
  const Index d = action.algebra.dimension();
  CMatrix p = CMatrix::Zero(d, d);
  for (int g = 0; g < n; ++g) p += std::conj(chi[g]) * action.auts[g].induced(action.algebra);
  return p * (dim / n);
}

AlgElement spectral_projection(const GroupAction& action, const std::vector<Complex>& chi, const AlgElement& x) {
  const int n = action.group.order();
  if (static_cast<int>(chi.size()) != n) throw Error(ErrorCode::DimensionMismatch, "character needs one value per element");
  const double dim = chi[action.group.identity()].real();
  AlgElement out = AlgElement::zero(action.algebra);
  for (int g = 0; g < n; ++g) out = out + action.apply(g, x) * (std::conj(chi[g]) * (dim / n));
  return out;
}

FixedPointAlgebra fixed_point_algebra(const GroupAction& action, const Tolerance& tol) {
  const std::vector<Complex> trivial(action.group.order(), Complex(1.0));
  const CMatrix range = range_basis(spectral_projector(action, trivial), tol);
  FixedPointAlgebra out;
  for (Index c = 0; c < range.cols(); ++c)
    out.basis.push_back(AlgElement::from_coefficients(action.algebra, range.col(c)));
  out.rep = subalgebra_rep(defining_rep(action.algebra), action.algebra, out.basis, "F");
  return out;
}

}  // namespace crossprod
