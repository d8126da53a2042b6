#include "crossprod/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace crossprod {

void MatAlg::validate() const {
  if (block_dims.empty()) throw Error(ErrorCode::InvalidInput, "algebra needs at least one block");
  for (int n : block_dims)
    if (n < 1) throw Error(ErrorCode::InvalidInput, "block dimensions must be positive");
}

int MatAlg::dimension() const {
  int d = 0;
  for (int n : block_dims) d += n * n;
  return d;
}

int MatAlg::defining_dimension() const {
  return std::accumulate(block_dims.begin(), block_dims.end(), 0);
}

int MatAlg::block_offset(int k) const {
  return std::accumulate(block_dims.begin(), block_dims.begin() + k, 0);
}

std::vector<std::string> MatAlg::unit_labels() const {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < block_dims.size(); ++k)
    for (int a = 0; a < block_dims[k]; ++a)
      for (int b = 0; b < block_dims[k]; ++b)
        out.push_back("E" + std::to_string(k) + "[" + std::to_string(a) + "," + std::to_string(b) + "]");
  return out;
}

AlgElement AlgElement::zero(const MatAlg& a) {
  AlgElement x;
  for (int n : a.block_dims) x.blocks.push_back(CMatrix::Zero(n, n));
  return x;
}

AlgElement AlgElement::identity(const MatAlg& a) {
  AlgElement x;
  for (int n : a.block_dims) x.blocks.push_back(CMatrix::Identity(n, n));
  return x;
}

AlgElement AlgElement::unit(const MatAlg& a, int block, int row, int col) {
  AlgElement x = zero(a);
  x.blocks.at(block)(row, col) = 1.0;
  return x;
}

AlgElement AlgElement::random(const MatAlg& a, std::mt19937_64& rng) {
  AlgElement x;
  for (int n : a.block_dims) x.blocks.push_back(random_complex_matrix(rng, n, n));
  return x;
}

AlgElement AlgElement::from_coefficients(const MatAlg& a, const CVector& c) {
  if (c.size() != a.dimension()) throw Error(ErrorCode::DimensionMismatch, "coefficient vector size");
  AlgElement x = zero(a);
  Index pos = 0;
  for (std::size_t k = 0; k < a.block_dims.size(); ++k)
    for (int i = 0; i < a.block_dims[k]; ++i)
      for (int j = 0; j < a.block_dims[k]; ++j) x.blocks[k](i, j) = c(pos++);
  return x;
}

CVector AlgElement::coefficients() const {
  Index d = 0;
  for (const auto& b : blocks) d += b.size();
  CVector c(d);
  Index pos = 0;
  for (const auto& b : blocks)
    for (Index i = 0; i < b.rows(); ++i)
      for (Index j = 0; j < b.cols(); ++j) c(pos++) = b(i, j);
  return c;
}

AlgElement AlgElement::adjoint() const {
  AlgElement x;
  for (const auto& b : blocks) x.blocks.push_back(b.adjoint());
  return x;
}

namespace {
void same_shape(const AlgElement& a, const AlgElement& b) {
  if (a.blocks.size() != b.blocks.size())
    throw Error(ErrorCode::DimensionMismatch, "algebra elements from different algebras");
  for (std::size_t k = 0; k < a.blocks.size(); ++k)
    if (a.blocks[k].rows() != b.blocks[k].rows())
      throw Error(ErrorCode::DimensionMismatch, "algebra elements from different algebras");
}
}  // namespace

AlgElement AlgElement::operator+(const AlgElement& o) const {
  same_shape(*this, o);
  AlgElement x = *this;
  for (std::size_t k = 0; k < blocks.size(); ++k) x.blocks[k] += o.blocks[k];
  return x;
}

AlgElement AlgElement::operator-(const AlgElement& o) const { return *this + o * Complex(-1.0); }

AlgElement AlgElement::operator*(const AlgElement& o) const {
  same_shape(*this, o);
  AlgElement x;
  for (std::size_t k = 0; k < blocks.size(); ++k) x.blocks.push_back(blocks[k] * o.blocks[k]);
  return x;
}

AlgElement AlgElement::operator*(Complex s) const {
  AlgElement x = *this;
  for (auto& b : x.blocks) b *= s;
  return x;
}

double AlgElement::norm() const {
  double s = 0;
  for (const auto& b : blocks) s += b.squaredNorm();
  return std::sqrt(s);
}

CMatrix AlgElement::defining() const { return block_diagonal(blocks); }

bool AlgElement::matches(const MatAlg& a) const {
  if (blocks.size() != a.block_dims.size()) return false;
  for (std::size_t k = 0; k < blocks.size(); ++k)
    if (blocks[k].rows() != a.block_dims[k] || blocks[k].cols() != a.block_dims[k]) return false;
  return true;
}

StarAut StarAut::identity(const MatAlg& a) {
  StarAut s;
  s.perm.resize(a.block_dims.size());
  std::iota(s.perm.begin(), s.perm.end(), 0);
  for (int n : a.block_dims) s.unitaries.push_back(CMatrix::Identity(n, n));
  return s;
}

StarAut StarAut::inner(const MatAlg& a, const std::vector<CMatrix>& unitaries) {
  StarAut s = identity(a);
  s.unitaries = unitaries;
  return s;
}

void StarAut::validate(const MatAlg& a, const Tolerance& tol) const {
  const std::size_t b = a.block_dims.size();
  if (perm.size() != b || unitaries.size() != b)
    throw Error(ErrorCode::InvalidInput, "automorphism data does not match the block count");
  std::vector<bool> seen(b, false);
  for (std::size_t k = 0; k < b; ++k) {
    const int t = perm[k];
    if (t < 0 || t >= static_cast<int>(b) || seen[t])
      throw Error(ErrorCode::InvalidInput, "automorphism block map is not a permutation");
    seen[t] = true;
    if (a.block_dims[t] != a.block_dims[k])
      throw Error(ErrorCode::InvariantViolation, "automorphism maps blocks of different sizes");
  }
  for (std::size_t k = 0; k < b; ++k) {
    if (unitaries[k].rows() != a.block_dims[k] || unitaries[k].cols() != a.block_dims[k])
      throw Error(ErrorCode::DimensionMismatch, "automorphism unitary has the wrong size");
    if (!is_unitary(unitaries[k], tol.abs_eps))
      throw Error(ErrorCode::NotUnitary, "automorphism unitary for block " + std::to_string(k));
  }
}

AlgElement StarAut::apply(const AlgElement& x) const {
  AlgElement y = x;
  for (std::size_t k = 0; k < x.blocks.size(); ++k) {
    const int t = perm[k];
    y.blocks[t] = unitaries[t] * x.blocks[k] * unitaries[t].adjoint();
  }
  return y;
}

CMatrix StarAut::induced(const MatAlg& a) const {
  const int d = a.dimension();
  CMatrix s(d, d);
  int col = 0;
  for (std::size_t k = 0; k < a.block_dims.size(); ++k)
    for (int i = 0; i < a.block_dims[k]; ++i)
      for (int j = 0; j < a.block_dims[k]; ++j)
        s.col(col++) = apply(AlgElement::unit(a, static_cast<int>(k), i, j)).coefficients();
  return s;
}

StarAut compose_auts(const StarAut& a, const StarAut& b) {
  const std::size_t n = a.perm.size();
  std::vector<int> a_inv(n);
  for (std::size_t k = 0; k < n; ++k) a_inv[a.perm[k]] = static_cast<int>(k);
  StarAut c;
  c.perm.resize(n);
  c.unitaries.resize(n);
  for (std::size_t k = 0; k < n; ++k) c.perm[k] = a.perm[b.perm[k]];
  for (std::size_t t = 0; t < n; ++t) c.unitaries[t] = a.unitaries[t] * b.unitaries[a_inv[t]];
  return c;
}

GroupAction cyclic_action(const MatAlg& a, const StarAut& sigma, int n) {
  GroupAction act{make_cyclic_group(n), a, {StarAut::identity(a)}};
  for (int j = 1; j < n; ++j) act.auts.push_back(compose_auts(sigma, act.auts.back()));
  return act;
}

namespace {
void check_homomorphism(const FiniteGroup& g, const std::vector<CMatrix>& maps, const Tolerance& tol,
                        const char* what) {
  const Index d = maps[g.identity()].rows();
  const double scale = std::max(1.0, std::sqrt(static_cast<double>(d)));
  if ((maps[g.identity()] - CMatrix::Identity(d, d)).norm() > tol.abs_eps * scale)
    throw Error(ErrorCode::InvariantViolation, std::string(what) + ": identity does not act trivially");
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if ((maps[a] * maps[b] - maps[g.mul(a, b)]).norm() > tol.abs_eps * scale * 10)
        throw Error(ErrorCode::InvariantViolation,
                    std::string(what) + ": composition fails for (" + g.label(a) + ", " + g.label(b) + ")");
}
}  // namespace

void GroupAction::validate(const Tolerance& tol) const {
  algebra.validate();
  if (static_cast<int>(auts.size()) != group.order())
    throw Error(ErrorCode::InvalidInput, "one automorphism per group element is required");
  std::vector<CMatrix> maps;
  for (const auto& s : auts) {
    s.validate(algebra, tol);
    maps.push_back(s.induced(algebra));
  }
  check_homomorphism(group, maps, tol, "group action");
}

GroupAction GroupAction::restrict_to(const Subgroup& h) const {
  GroupAction out{h.as_group(), algebra, {}};
  for (int m : h.members) out.auts.push_back(auts[m]);
  return out;
}

GeneratorAction GeneratorAction::from(const GroupAction& action) {
  GeneratorAction out;
  out.group = action.group;
  out.labels = action.algebra.unit_labels();
  for (const auto& s : action.auts) out.subs.push_back(s.induced(action.algebra));
  out.concrete = action;
  return out;
}

GeneratorAction GeneratorAction::permuting(const FiniteGroup& group, std::vector<std::string> labels,
                                           const std::vector<std::vector<int>>& perms) {
  if (static_cast<int>(perms.size()) != group.order())
    throw Error(ErrorCode::InvalidInput, "one generator permutation per group element is required");
  GeneratorAction out;
  out.group = group;
  out.labels = std::move(labels);
  const Index n = static_cast<Index>(out.labels.size());
  for (const auto& p : perms) {
    if (static_cast<Index>(p.size()) != n)
      throw Error(ErrorCode::InvalidInput, "generator permutation has the wrong length");
    CMatrix s = CMatrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
      if (p[j] < 0 || p[j] >= n) throw Error(ErrorCode::InvalidInput, "generator index out of range");
      s(p[j], j) = 1.0;
    }
    out.subs.push_back(std::move(s));
  }
  return out;
}

void GeneratorAction::validate(const Tolerance& tol) const {
  if (static_cast<int>(subs.size()) != group.order())
    throw Error(ErrorCode::InvalidInput, "one substitution per group element is required");
  const Index n = static_cast<Index>(labels.size());
  for (const auto& s : subs)
    if (s.rows() != n || s.cols() != n)
      throw Error(ErrorCode::DimensionMismatch, "substitution matrix does not match the generators");
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j]) throw Error(ErrorCode::InvalidInput, "duplicate generator label " + labels[i]);
  check_homomorphism(group, subs, tol, "generator action");
  if (concrete) concrete->validate(tol);
}

int GeneratorAction::label_index(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return -1;
}

GeneratorAction GeneratorAction::restrict_to(const Subgroup& h) const {
  GeneratorAction out;
  out.group = h.as_group();
  out.labels = labels;
  for (int m : h.members) out.subs.push_back(subs[m]);
  if (concrete) out.concrete = concrete->restrict_to(h);
  return out;
}

}  // namespace crossprod
