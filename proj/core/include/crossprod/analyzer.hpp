#pragma once

#include "crossprod/crossed.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crossprod {

// mats[gh] == cocycle[g][h] * mats[g] * mats[h]; indices are local to the subgroup.
struct ProjectiveRep {
  Subgroup group;
  std::vector<CMatrix> mats;
  std::vector<std::vector<Complex>> cocycle;

  // Largest | |c| - 1 | and largest || M_gh - c M_g M_h ||.
  double modulus_residual() const;
  double multiplier_residual() const;
  // Largest | c(g,h) c(gh,k) - c(h,k) c(g,hk) | over all triples.
  double cocycle_identity_residual() const;
  bool trivial_cocycle(double eps) const;
};

// Reads the cocycle off the matrices; throws InvariantViolation if some M_gh is not a scalar
// multiple of M_g M_h.
ProjectiveRep make_projective(const Subgroup& h, std::vector<CMatrix> mats, double eps = 1e-7);

struct StructureReport {
  Subgroup H;
  std::vector<int> coset_reps;
  Rep base_irrep;
  int multiplicity = 0;
  IrrepDecomposition base_decomposition;  // of Pi restricted to A
  std::vector<int> orbit_components;      // component index carrying pi1 o alpha_{g_i}
  std::vector<std::vector<int>> perms;    // perms[g][j]: block that block j is sent to by U_g
  std::vector<std::vector<CMatrix>> block_unitaries;  // [g][j], the nonzero block in column j
  CovariantRep Psi;                                   // on C^r (x) H_1, over H
  ProjectiveRep Lambda;
  ProjectiveRep Vproj;
  CMatrix conjugator;
  bool H_normal = false;
  bool block_diagonal_iff_in_H = false;
  bool lambda_irreducible = false;
  bool psi_irreducible = false;
  Index ergodic_dim = 0;
  double base_residual = 0;        // conjugated Pi(a) vs the block diagonal of pi1 o alpha_{g_i}
  double block_residual = 0;       // off-pattern mass of conjugated Pi(U_g)
  double factor_residual = 0;      // || Psi(U_h) - Lambda_h (x) V_h ||
  double commutant_residual = 0;   // invariance of the commutant under Ad U_g

  int m() const { return static_cast<int>(coset_reps.size()); }
  Index block_dim() const { return multiplicity * base_irrep.dim(); }
  // Pi conjugated by the conjugator.
  CovariantRep canonical(const CovariantRep& pi) const { return pi.conjugated(conjugator); }
};

StructureReport analyze(const CovariantRep& pi, std::uint64_t seed, const Tolerance& tol = {});

// Lambda with W == Lambda (x) V, for W of size r*dim(V).
CMatrix factor_tensor(const CMatrix& w, const CMatrix& v, int r, double eps = 1e-7);

// Factors every Psi(U_h) against the witnesses of pi1 vs pi1 o alpha_h and tests the Lambda family.
bool homogeneous_irreducibility(const CovariantRep& psi, const Rep& pi1, const Tolerance& tol = {});

struct CyclicReport {
  StructureReport base;
  int generator = 0;
  int n = 0;
  int m = 0;
  int k = 0;
  CMatrix conjugator;  // into diag(pi1 o sigma^i) with the shift-with-V unitary
  CMatrix V;
  std::vector<Eigenspace> spectrum_of_V;
  std::vector<Eigenspace> spectrum_of_U;
  bool minimal = false;
  bool pieces_inequivalent = false;  // pi1 o sigma^i vs pi1 for 0 < i < m

  // Fixed-point data; filled when the action acts on a concrete MatAlg.
  bool has_fixed_point_data = false;
  int fixed_point_dim = 0;
  std::vector<Rep> alpha_diag;  // A_1 on the eigenspaces of U_Pi
  bool alpha_diag_irreducible = false;
  bool alpha_diag_pairwise_inequivalent = false;
  std::vector<Rep> minimal_pieces;  // A_1 through pi1 on the eigenspaces of V
  int eta = 0;
  std::vector<Component> fixed_pt_irreps;  // Pi restricted to A_1
  bool base_restriction_multiplicity_free = false;
};

CyclicReport cyclic_analyze(const CovariantRep& pi, std::uint64_t seed, const Tolerance& tol = {});

// The irreducible covariant representation pi_A = diag(pi1 o sigma^i), i < m, with U moving
// block i+1 to block i and block 0 to block m-1 through V.
CovariantRep build_cyclic_irrep(const Rep& pi1, const CMatrix& v, int m, int k, ActionPtr action,
                                const Tolerance& tol = {});

// Rescales u so that u^n == 1; the action must be over Z_n.
CovariantRep periodize(const Rep& base, const CMatrix& u, ActionPtr action, const Tolerance& tol = {});

enum class S3Case { Minimal, TauPair, EtaTriple, Regular6 };
const char* to_string(S3Case c);

struct S3Class {
  S3Case kind = S3Case::Minimal;
  int eta = -1;
  int tau = -1;
  Rep pi1;
  CMatrix conjugator;
  std::vector<int> block_elements;  // group element whose translate sits in each block
  bool normal_part_irreducible = false;
  bool algebra_part_irreducible = false;
  std::optional<bool> tau_equivalent;  // TauPair only
  std::optional<int> multiplicity;     // TauPair only
  double reconstruction_residual = 0;
};

S3Class classify_s3(const CovariantRep& pi, std::uint64_t seed, const Tolerance& tol = {});

}  // namespace crossprod
