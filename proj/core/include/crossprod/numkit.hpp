#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace crossprod {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

enum class ErrorCode {
  NotUnitary,
  DimensionMismatch,
  LabelMismatch,
  NotIrreducible,
  DecompositionFailed,
  ActionMismatch,
  BlockStructureViolation,
  NotFactorable,
  NotScalarPower,
  CanonicalFormViolation,
  InvariantViolation,
  InvalidInput,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Every rank, eigenvalue-clustering and equality decision goes through one of these.
struct Tolerance {
  double abs_eps = 1e-9;
  double rank_eps = 1e-8;  // relative to the largest singular value
  double eig_sep = 1e-6;

  void validate() const;
};

struct Eigenspace {
  Complex value;
  CMatrix isometry;  // orthonormal columns spanning the eigenspace
};

// Columns form an orthonormal basis of ker(m).
CMatrix nullspace(const CMatrix& m, const Tolerance& tol = {});
// Columns form an orthonormal basis of the column space of m.
CMatrix range_basis(const CMatrix& m, const Tolerance& tol = {});
Index numerical_rank(const CMatrix& m, const Tolerance& tol = {});

// Clusters are ordered by argument in [0, 2pi), so the cluster at 1 comes first.
std::vector<Eigenspace> unitary_eigenspaces(const CMatrix& u, const Tolerance& tol = {});
// Ascending eigenvalues; the gap is eig_sep scaled by max(1, spectral radius).
std::vector<Eigenspace> hermitian_eigenspaces(const CMatrix& h, const Tolerance& tol = {});

struct SylvesterPair {
  CMatrix left;
  CMatrix right;
};

// Orthonormal (Frobenius) basis of {T (rows x cols) : T*right_i == left_i*T for all i}.
std::vector<CMatrix> solve_sylvester_family(const std::vector<SylvesterPair>& pairs, Index rows,
                                            Index cols, const Tolerance& tol = {});
// The plain stacked system, never reduced; kept for cross-checking the fast path.
std::vector<CMatrix> solve_sylvester_stacked(const std::vector<SylvesterPair>& pairs, Index rows,
                                             Index cols, const Tolerance& tol = {});

double unitarity_defect(const CMatrix& u);
bool is_unitary(const CMatrix& u, double eps);
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix block_diagonal(const std::vector<CMatrix>& blocks);
CMatrix matrix_power(const CMatrix& m, long long exponent);
// Rescales by a unit phase so the largest-modulus entry becomes real positive.
CMatrix normalize_phase(const CMatrix& m);
// c with a == c*b, read from the largest entry of b and validated entrywise.
std::optional<Complex> scalar_ratio(const CMatrix& a, const CMatrix& b, double eps);
// Zeroes signed zeros and tiny imaginary parts of real-valued output; used before printing.
Complex clean(Complex z, double eps = 0.0);

CMatrix random_complex_matrix(std::mt19937_64& rng, Index rows, Index cols);
CMatrix random_unitary(std::mt19937_64& rng, Index n);
CMatrix random_hermitian(std::mt19937_64& rng, Index n);

}  // namespace crossprod
