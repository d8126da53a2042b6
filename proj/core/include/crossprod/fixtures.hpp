#pragma once

#include "crossprod/analyzer.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace crossprod::fixtures {

// S3 permuting three generators: alpha_s(x_i) = x_{s(i)}.
ActionPtr permuting_s3_action(const std::vector<std::string>& labels);
// C*(F_3) generated by U1, U2, U3.
ActionPtr free_group_action();

// Two-dimensional pi with pi ~ pi o alpha_tau and pi !~ pi o alpha_eta.
Rep tau_symmetric_rep();
// Two-dimensional pi equivalent to every translate; extended to a covariant rep by the
// unitaries implementing eta and tau.
Rep minimal_rep();
CovariantRep minimal_covariant();
// Three-dimensional pi with pi ~ pi o alpha_eta and pi !~ pi o alpha_tau.
Rep eta_symmetric_rep();
// diag(pi, pi o alpha_tau) for the rep above, with U_eta = diag(V, V^2) and U_tau the swap.
CovariantRep eta_symmetric_covariant();
// diag(pi, pi o alpha_tau) for the minimal rep, with U_eta twisted by cube roots of unity.
CovariantRep doubled_minimal_covariant();
// An irreducible covariant rep whose restriction to A x| Z_3 is irreducible but not to A.
CovariantRep eta_triple_covariant(std::uint64_t seed);

// C(T^3) generated by the coordinates z1, z2, z3, with S3 permuting coordinates.
ActionPtr torus_action();
// Evaluation at a point with pairwise distinct coordinates.
Rep torus_evaluation();
CovariantRep torus_regular();
// The same point seen in C^6, the functions on its S3 orbit.
GroupActionPtr orbit_action();
Rep orbit_evaluation();
CovariantRep orbit_regular();

// M_2 + M_2 over Z_4 with sigma(M + N) = W N W* + M for the flip W.
GroupActionPtr flip_swap_action();
CovariantRep flip_swap_covariant();

// C^q over Z_q with alpha_1(e_j) = e_{j-p}; pi(e_j) = E_jj and U the p-th power of the cyclic shift.
GroupActionPtr rotation_action(int q, int p = 1);
CovariantRep rotation_covariant(int q, int p = 1);
CMatrix clock_matrix(int q, int p = 1);  // diag(lambda^j)
CMatrix shift_matrix(int q);              // ones on the superdiagonal and in the bottom-left corner

// Z_q x Z_q acting on M_q by Ad(U^z V^z'); Psi(a) = 1 (x) a, Psi(U^(1,0)) = V (x) U, Psi(U^(0,1)) = U (x) V.
GroupActionPtr weyl_action(int q);
CovariantRep weyl_covariant(int q);

// Ad diag(i, e^{3 i pi / 4}) on M_2, over Z_8; U_Pi = the diagonal unitary.
GroupActionPtr diagonal_phase_action();
CovariantRep diagonal_phase_covariant();

// Every irreducible summand of the regular representation induced by pi.
std::vector<CovariantRep> crossed_irreps(const Rep& pi, ActionPtr action, std::uint64_t seed,
                                         const Tolerance& tol = {});

// Random actions keep the linear dimension of A at most max_dim.
GroupAction random_cyclic_action(int n, std::mt19937_64& rng, int max_dim = 8);
GroupAction random_group_action(const FiniteGroup& g, std::mt19937_64& rng, int max_dim = 8);

struct CyclicInput {
  Rep pi1;
  CMatrix V;
  int m = 0;
  int k = 0;
  ActionPtr action;
};
CyclicInput random_cyclic_input(int n, std::mt19937_64& rng, const Tolerance& tol = {});

}  // namespace crossprod::fixtures
