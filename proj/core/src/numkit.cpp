#include "crossprod/numkit.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace crossprod {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::DecompositionFailed: return "DecompositionFailed";
    case ErrorCode::ActionMismatch: return "ActionMismatch";
    case ErrorCode::BlockStructureViolation: return "BlockStructureViolation";
    case ErrorCode::NotFactorable: return "NotFactorable";
    case ErrorCode::NotScalarPower: return "NotScalarPower";
    case ErrorCode::CanonicalFormViolation: return "CanonicalFormViolation";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void Tolerance::validate() const {
  if (!(abs_eps > 0 && rank_eps > 0 && eig_sep > 0))
    throw Error(ErrorCode::InvalidInput, "tolerances must be strictly positive");
  if (!(abs_eps < eig_sep)) throw Error(ErrorCode::InvalidInput, "abs_eps must be below eig_sep");
}

namespace {

struct Svd {
  Eigen::VectorXd sigma;
  CMatrix u;
  CMatrix v;
};

Svd full_svd(const CMatrix& m, bool want_u, bool want_v) {
  unsigned opts = 0;
  if (want_u) opts |= Eigen::ComputeFullU;
  if (want_v) opts |= Eigen::ComputeFullV;
  Eigen::BDCSVD<CMatrix> svd(m, opts);
  Svd out;
  out.sigma = svd.singularValues();
  if (want_u) out.u = svd.matrixU();
  if (want_v) out.v = svd.matrixV();
  return out;
}

Index rank_of(const Eigen::VectorXd& sigma, const Tolerance& tol) {
  if (sigma.size() == 0) return 0;
  const double top = sigma(0);
  if (top <= tol.abs_eps * 1e-3) return 0;
  Index r = 0;
  while (r < sigma.size() && sigma(r) > tol.rank_eps * top) ++r;
  return r;
}

}  // namespace

Index numerical_rank(const CMatrix& m, const Tolerance& tol) {
  if (m.size() == 0) return 0;
  return rank_of(full_svd(m, false, false).sigma, tol);
}

CMatrix nullspace(const CMatrix& m, const Tolerance& tol) {
  const Index n = m.cols();
  if (n == 0) return CMatrix(0, 0);
  if (m.rows() == 0) return CMatrix::Identity(n, n);
  // A tall system is first compressed to its square R factor; same kernel, cheaper SVD.
  CMatrix work = m;
  if (m.rows() > 2 * n) {
    Eigen::HouseholderQR<CMatrix> qr(m);
    work = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  }
  Svd s = full_svd(work, false, true);
  const Index r = rank_of(s.sigma, tol);
  return s.v.rightCols(n - r);
}

CMatrix range_basis(const CMatrix& m, const Tolerance& tol) {
  if (m.size() == 0) return CMatrix(m.rows(), 0);
  Svd s = full_svd(m, true, false);
  return s.u.leftCols(rank_of(s.sigma, tol));
}

double unitarity_defect(const CMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm();
}

bool is_unitary(const CMatrix& u, double eps) { return unitarity_defect(u) <= eps; }

std::vector<Eigenspace> unitary_eigenspaces(const CMatrix& u, const Tolerance& tol) {
  if (u.rows() != u.cols()) throw Error(ErrorCode::DimensionMismatch, "unitary must be square");
  if (!is_unitary(u, tol.abs_eps))
    throw Error(ErrorCode::NotUnitary, "defect " + std::to_string(unitarity_defect(u)));
  const Index n = u.rows();
  if (n == 0) return {};
  // A normal matrix has a diagonal Schur form, so the Schur vectors are orthonormal eigenvectors.
  Eigen::ComplexSchur<CMatrix> schur(u);
  const CMatrix& q = schur.matrixU();
  const CMatrix& t = schur.matrixT();

  constexpr double two_pi = 2 * std::numbers::pi;
  std::vector<std::pair<double, Index>> angles;
  for (Index i = 0; i < n; ++i) {
    double a = std::arg(t(i, i));
    if (a < 0) a += two_pi;
    angles.emplace_back(a, i);
  }
  std::sort(angles.begin(), angles.end());

  std::vector<std::vector<Index>> clusters{{angles[0].second}};
  std::vector<double> first_angle{angles[0].first};
  for (std::size_t i = 1; i < angles.size(); ++i) {
    if (angles[i].first - angles[i - 1].first > tol.eig_sep) {
      clusters.emplace_back();
      first_angle.push_back(angles[i].first);
    }
    clusters.back().push_back(angles[i].second);
  }
  // Wrap around the circle: the last cluster may continue the first one through angle 0.
  if (clusters.size() > 1 && angles.front().first + two_pi - angles.back().first <= tol.eig_sep) {
    clusters.front().insert(clusters.front().end(), clusters.back().begin(), clusters.back().end());
    clusters.pop_back();
  }

  std::vector<Eigenspace> out;
  for (const auto& members : clusters) {
    Complex mean = 0;
    CMatrix iso(n, static_cast<Index>(members.size()));
    for (std::size_t c = 0; c < members.size(); ++c) {
      mean += t(members[c], members[c]);
      iso.col(static_cast<Index>(c)) = q.col(members[c]);
    }
    out.push_back({mean / std::abs(mean), iso});
  }
  return out;
}

std::vector<Eigenspace> hermitian_eigenspaces(const CMatrix& h, const Tolerance& tol) {
  if (h.rows() != h.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
  const Index n = h.rows();
  if (n == 0) return {};
  CMatrix sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  const double gap = tol.eig_sep * scale;

  std::vector<Eigenspace> out;
  Index start = 0;
  for (Index i = 1; i <= n; ++i) {
    if (i == n || ev(i) - ev(i - 1) > gap) {
      const Index len = i - start;
      out.push_back({Complex(ev.segment(start, len).mean(), 0.0), es.eigenvectors().middleCols(start, len)});
      start = i;
    }
  }
  return out;
}

namespace {

void check_pairs(const std::vector<SylvesterPair>& pairs, Index rows, Index cols) {
  for (const auto& p : pairs) {
    if (p.left.rows() != rows || p.left.cols() != rows || p.right.rows() != cols ||
        p.right.cols() != cols)
      throw Error(ErrorCode::DimensionMismatch, "Sylvester pair does not match declared dimensions");
  }
}

std::vector<CMatrix> unvec(const CMatrix& basis, Index rows, Index cols) {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(basis.cols()));
  for (Index j = 0; j < basis.cols(); ++j)
    out.push_back(Eigen::Map<const CMatrix>(basis.col(j).data(), rows, cols));
  return out;
}

// Column-major vec: vec(T R) = (R^T (x) 1) vec T and vec(L T) = (1 (x) L) vec T.
CMatrix sylvester_operator(const SylvesterPair& p, Index rows, Index cols) {
  return kron(p.right.transpose(), CMatrix::Identity(rows, rows)) -
         kron(CMatrix::Identity(cols, cols), p.left);
}

bool adjoint_closed(const std::vector<SylvesterPair>& pairs, double eps) {
  for (const auto& p : pairs) {
    const double sl = eps * (1.0 + p.left.norm());
    const double sr = eps * (1.0 + p.right.norm());
    bool found = false;
    for (const auto& q : pairs) {
      if ((q.left - p.left.adjoint()).norm() <= sl && (q.right - p.right.adjoint()).norm() <= sr) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

constexpr Index kDirectUnknowns = 256;

// Solutions of the whole family also solve T*HR == HL*T for Hermitian combinations HL, HR of
// the (adjoint-closed) family, so they map eigenspaces of HR into eigenspaces of HL with the same
// eigenvalue. That candidate space is usually far smaller than rows*cols; the exact constraints
// are then imposed on it pair by pair.
std::vector<CMatrix> solve_reduced(const std::vector<SylvesterPair>& pairs, Index rows, Index cols,
                                   const Tolerance& tol) {
  std::mt19937_64 rng(0x5eedc0ffeeULL);
  std::normal_distribution<double> normal;
  const Complex i_unit(0, 1);
  CMatrix hl = CMatrix::Zero(rows, rows);
  CMatrix hr = CMatrix::Zero(cols, cols);
  for (const auto& p : pairs) {
    const double w1 = normal(rng), w2 = normal(rng);
    hl += w1 * (p.left + p.left.adjoint()) + w2 * i_unit * (p.left - p.left.adjoint());
    hr += w1 * (p.right + p.right.adjoint()) + w2 * i_unit * (p.right - p.right.adjoint());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> el((hl + hl.adjoint()) / 2.0);
  Eigen::SelfAdjointEigenSolver<CMatrix> er((hr + hr.adjoint()) / 2.0);

  struct Tagged {
    double value;
    bool left;
    Index column;
  };
  std::vector<Tagged> all;
  for (Index i = 0; i < rows; ++i) all.push_back({el.eigenvalues()(i), true, i});
  for (Index i = 0; i < cols; ++i) all.push_back({er.eigenvalues()(i), false, i});
  std::sort(all.begin(), all.end(), [](const Tagged& a, const Tagged& b) { return a.value < b.value; });
  double scale = 1.0;
  for (const auto& t : all) scale = std::max(scale, std::abs(t.value));
  const double gap = tol.eig_sep * scale;

  std::vector<CMatrix> basis;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= all.size(); ++i) {
    if (i < all.size() && all[i].value - all[i - 1].value <= gap) continue;
    std::vector<Index> lcols, rcols;
    for (std::size_t j = start; j < i; ++j) (all[j].left ? lcols : rcols).push_back(all[j].column);
    for (Index a : lcols)
      for (Index b : rcols)
        basis.push_back(el.eigenvectors().col(a) * er.eigenvectors().col(b).adjoint());
    start = i;
  }

  for (const auto& p : pairs) {
    if (basis.empty()) return {};
    const Index d = static_cast<Index>(basis.size());
    CMatrix k(rows * cols, d);
    for (Index j = 0; j < d; ++j) {
      CMatrix c = basis[j] * p.right - p.left * basis[j];
      k.col(j) = Eigen::Map<const CVector>(c.data(), c.size());
    }
    CMatrix coeff = nullspace(k, tol);
    std::vector<CMatrix> next;
    for (Index l = 0; l < coeff.cols(); ++l) {
      CMatrix t = CMatrix::Zero(rows, cols);
      for (Index j = 0; j < d; ++j) t += coeff(j, l) * basis[j];
      next.push_back(std::move(t));
    }
    basis = std::move(next);
  }
  return basis;
}

}  // namespace

std::vector<CMatrix> solve_sylvester_stacked(const std::vector<SylvesterPair>& pairs, Index rows,
                                             Index cols, const Tolerance& tol) {
  check_pairs(pairs, rows, cols);
  const Index n = rows * cols;
  if (n == 0) return {};
  CMatrix k(static_cast<Index>(pairs.size()) * n, n);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    k.middleRows(static_cast<Index>(i) * n, n) = sylvester_operator(pairs[i], rows, cols);
  return unvec(nullspace(k, tol), rows, cols);
}

std::vector<CMatrix> solve_sylvester_family(const std::vector<SylvesterPair>& pairs, Index rows,
                                            Index cols, const Tolerance& tol) {
  check_pairs(pairs, rows, cols);
  if (rows * cols <= kDirectUnknowns || pairs.empty() || !adjoint_closed(pairs, tol.abs_eps))
    return solve_sylvester_stacked(pairs, rows, cols, tol);
  return solve_reduced(pairs, rows, cols, tol);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix block_diagonal(const std::vector<CMatrix>& blocks) {
  Index r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  CMatrix out = CMatrix::Zero(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

CMatrix matrix_power(const CMatrix& m, long long exponent) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "power of a non-square matrix");
  CMatrix base = exponent < 0 ? CMatrix(m.inverse()) : m;
  unsigned long long e = static_cast<unsigned long long>(exponent < 0 ? -exponent : exponent);
  CMatrix out = CMatrix::Identity(m.rows(), m.cols());
  while (e) {
    if (e & 1ULL) out = out * base;
    base = base * base;
    e >>= 1ULL;
  }
  return out;
}

CMatrix normalize_phase(const CMatrix& m) {
  if (m.size() == 0) return m;
  Index bi = 0, bj = 0;
  double best = -1;
  // Strictly-greater with a small slack keeps the first of near-equal entries, which is stable
  // under rounding noise.
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > best * (1 + 1e-9) + 1e-12) {
        best = std::abs(m(i, j));
        bi = i;
        bj = j;
      }
  if (best <= 0) return m;
  return m * (std::conj(m(bi, bj)) / best);
}

std::optional<Complex> scalar_ratio(const CMatrix& a, const CMatrix& b, double eps) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::nullopt;
  Index bi = 0, bj = 0;
  if (b.size() == 0) return std::nullopt;
  b.cwiseAbs().maxCoeff(&bi, &bj);
  if (std::abs(b(bi, bj)) == 0) return std::nullopt;
  const Complex c = a(bi, bj) / b(bi, bj);
  if ((a - c * b).norm() > eps * std::max(1.0, a.norm())) return std::nullopt;
  return c;
}

Complex clean(Complex z, double eps) {
  double re = std::abs(z.real()) <= eps ? 0.0 : z.real();
  double im = std::abs(z.imag()) <= eps ? 0.0 : z.imag();
  if (re == 0.0) re = 0.0;  // folds -0 into +0
  if (im == 0.0) im = 0.0;
  return {re, im};
}

CMatrix random_complex_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal;
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

CMatrix random_unitary(std::mt19937_64& rng, Index n) {
  CMatrix z = random_complex_matrix(rng, n, n);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fixing the phases of diag(R) makes the distribution Haar.
  for (Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

CMatrix random_hermitian(std::mt19937_64& rng, Index n) {
  CMatrix z = random_complex_matrix(rng, n, n);
  return (z + z.adjoint()) / 2.0;
}

}  // namespace crossprod
