#pragma once

#include "crossprod/group.hpp"
#include "crossprod/numkit.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace crossprod {

// A direct sum of full matrix blocks M_{n_1} + ... + M_{n_b}.
struct MatAlg {
  std::vector<int> block_dims;

  void validate() const;
  int dimension() const;          // sum n_k^2
  int defining_dimension() const; // sum n_k
  int block_offset(int k) const;  // offset of block k on the defining space
  // Matrix units E^k_{ab}, block by block, row-major inside a block.
  std::vector<std::string> unit_labels() const;
  friend bool operator==(const MatAlg&, const MatAlg&) = default;
};

struct AlgElement {
  std::vector<CMatrix> blocks;

  static AlgElement zero(const MatAlg& a);
  static AlgElement identity(const MatAlg& a);
  static AlgElement unit(const MatAlg& a, int block, int row, int col);
  static AlgElement random(const MatAlg& a, std::mt19937_64& rng);
  // Coefficients in the matrix-unit basis (same order as unit_labels()).
  static AlgElement from_coefficients(const MatAlg& a, const CVector& c);
  CVector coefficients() const;

  AlgElement adjoint() const;
  AlgElement operator+(const AlgElement& o) const;
  AlgElement operator-(const AlgElement& o) const;
  AlgElement operator*(const AlgElement& o) const;
  AlgElement operator*(Complex s) const;
  double norm() const;  // Frobenius over all blocks
  // Image in the defining representation (block diagonal on C^{sum n_k}).
  CMatrix defining() const;
  bool matches(const MatAlg& a) const;
};

// x -> (U_i x_{perm^-1(i)} U_i^*)_i ; the unitaries are indexed by target block.
struct StarAut {
  std::vector<int> perm;
  std::vector<CMatrix> unitaries;

  static StarAut identity(const MatAlg& a);
  static StarAut inner(const MatAlg& a, const std::vector<CMatrix>& unitaries);
  void validate(const MatAlg& a, const Tolerance& tol) const;
  AlgElement apply(const AlgElement& x) const;
  // The map on the matrix-unit coefficient space.
  CMatrix induced(const MatAlg& a) const;
};

// a o b
StarAut compose_auts(const StarAut& a, const StarAut& b);

struct GroupAction {
  FiniteGroup group;
  MatAlg algebra;
  std::vector<StarAut> auts;  // indexed by group element

  void validate(const Tolerance& tol) const;
  AlgElement apply(int g, const AlgElement& x) const { return auts[g].apply(x); }
  GroupAction restrict_to(const Subgroup& h) const;
};

// A group acting on a labelled generating set by linear substitution:
// alpha_g(x_j) = sum_i subs[g](i, j) x_i. This is all the representation engine needs from an
// action; it covers MatAlg actions (generators = matrix units) and presented algebras such as
// C*(F_3) whose automorphisms permute the generators.
struct GeneratorAction {
  FiniteGroup group;
  std::vector<std::string> labels;
  std::vector<CMatrix> subs;
  std::optional<GroupAction> concrete;  // present when induced from a MatAlg action

  static GeneratorAction from(const GroupAction& action);
  // perms[g][j] is the index of the generator that x_j is sent to.
  static GeneratorAction permuting(const FiniteGroup& group, std::vector<std::string> labels,
                                   const std::vector<std::vector<int>>& perms);
  void validate(const Tolerance& tol) const;
  int label_index(const std::string& label) const;  // -1 when absent
  GeneratorAction restrict_to(const Subgroup& h) const;
};

// The Z_n action generated by sigma; element j acts by sigma^j.
GroupAction cyclic_action(const MatAlg& a, const StarAut& sigma, int n);

using ActionPtr = std::shared_ptr<const GeneratorAction>;

}  // namespace crossprod
