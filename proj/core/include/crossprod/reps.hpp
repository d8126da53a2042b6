#pragma once

#include "crossprod/algebra.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace crossprod {

// Images of a labelled generating set. Adjoints are appended automatically whenever an
// intertwiner space is computed, so only one of x, x* needs to be listed.
class Rep {
 public:
  using Gen = std::pair<std::string, CMatrix>;

  Rep() = default;
  Rep(Index dim, std::vector<Gen> gens);

  Index dim() const { return dim_; }
  const std::vector<Gen>& gens() const { return gens_; }
  std::vector<std::string> labels() const;
  bool has(const std::string& label) const;
  const CMatrix& at(const std::string& label) const;
  // Generator images followed by the adjoints that are not already present.
  std::vector<Gen> closed_gens(double eps) const;

 private:
  Index dim_ = 0;
  std::vector<Gen> gens_;
};

bool close(const CMatrix& a, const CMatrix& b, double eps);
double inner(const CMatrix& a, const CMatrix& b);  // real part of tr(a* b)
Complex frobenius_inner(const CMatrix& a, const CMatrix& b);

// q* r(x) q for an isometry q.
Rep compress(const Rep& r, const CMatrix& isometry);
Rep direct_sum(const Rep& a, const Rep& b);
// 1_copies (x) r, i.e. block diagonal with `copies` equal blocks.
Rep multiple(const Rep& r, int copies);
// pi o alpha_g.
Rep compose(const Rep& pi, const GeneratorAction& action, int g);

// Representations of a MatAlg are given on its matrix units.
Rep alg_rep(const MatAlg& a, const std::function<CMatrix(const AlgElement&)>& image);
Rep defining_rep(const MatAlg& a);
Rep block_rep(const MatAlg& a, int block);
CMatrix evaluate(const Rep& r, const MatAlg& a, const AlgElement& x);
// The restriction of r to the subalgebra spanned by `basis`, labelled prefix0, prefix1, ...
Rep subalgebra_rep(const Rep& r, const MatAlg& a, const std::vector<AlgElement>& basis,
                   const std::string& prefix = "F");

std::string unitary_label(int g);

struct CovariantRep {
  Rep base;
  ActionPtr action;
  std::vector<CMatrix> unitaries;  // indexed by group element

  Index dim() const { return base.dim(); }
  const FiniteGroup& group() const { return action->group; }
  // Homomorphism and covariance checks; throws on failure.
  void validate(const Tolerance& tol) const;
  // The representation of the crossed product: base generators plus U#g for g != e.
  Rep as_rep() const;
  CovariantRep restrict_to(const Subgroup& h) const;
  // Conjugation x -> w* x w by a unitary.
  CovariantRep conjugated(const CMatrix& w) const;
};

// Reads a crossed-product representation (base labels plus U#g) back into covariant form.
CovariantRep covariant_from_rep(const Rep& r, ActionPtr action);

std::vector<CMatrix> intertwiners(const Rep& r1, const Rep& r2, const Tolerance& tol = {});
std::vector<CMatrix> commutant_basis(const Rep& r, const Tolerance& tol = {});
bool is_irreducible(const Rep& r, const Tolerance& tol = {});

struct Equivalence {
  bool equivalent = false;
  std::optional<CMatrix> witness;  // unitary W with W r1(x) == r2(x) W
};

Equivalence are_equivalent(const Rep& r1, const Rep& r2, const Tolerance& tol = {});
// Same as are_equivalent but trusts the caller that both inputs are irreducible.
Equivalence equivalence_of_irreducibles(const Rep& r1, const Rep& r2, const Tolerance& tol = {});

struct Component {
  Rep irrep;
  int multiplicity = 0;
};

struct IrrepDecomposition {
  std::vector<Component> components;
  // Unitary B with B* r(x) B block diagonal: component 0 copies first, then component 1, ...
  CMatrix basis_change;

  Index offset(std::size_t component, int copy) const;
  CMatrix isometry(std::size_t component, int copy) const;
};

IrrepDecomposition decompose(const Rep& r, std::uint64_t seed, const Tolerance& tol = {});
// Equivalence of possibly reducible representations: equal decomposition multisets.
bool same_decomposition(const IrrepDecomposition& a, const IrrepDecomposition& b,
                        const Tolerance& tol = {});

CovariantRep regular_representation(const Rep& pi, ActionPtr action);
CovariantRep regular_representation(const Rep& pi, const GroupAction& action);
bool regular_irreducibility_criterion(const Rep& pi, const GeneratorAction& action,
                                      const Tolerance& tol = {});

// Largest distance of U_g T U_g* from the commutant span, over basis elements T and all g.
double commutant_invariance_residual(const CovariantRep& p, const Tolerance& tol = {});
// Dimension of the part of the commutant of the base fixed by every T -> U_g T U_g*.
Index ergodic_dimension(const CovariantRep& p, const Tolerance& tol = {});

}  // namespace crossprod
