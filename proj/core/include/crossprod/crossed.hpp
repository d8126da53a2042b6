#pragma once

#include "crossprod/characters.hpp"

#include <memory>
#include <vector>

namespace crossprod {

using GroupActionPtr = std::shared_ptr<const GroupAction>;

// sum_g coeffs[g] U^g
struct CrossedElement {
  GroupActionPtr action;
  std::vector<AlgElement> coeffs;  // indexed by group element

  static CrossedElement zero(GroupActionPtr action);
  static CrossedElement one(GroupActionPtr action);
  // a U^g
  static CrossedElement monomial(GroupActionPtr action, const AlgElement& a, int g);
  static CrossedElement random(GroupActionPtr action, std::mt19937_64& rng);

  CrossedElement operator+(const CrossedElement& o) const;
  double norm() const;
};

CrossedElement crossed_multiply(const CrossedElement& x, const CrossedElement& y);
CrossedElement crossed_adjoint(const CrossedElement& x);

struct CrossedModel {
  GroupActionPtr action;
  Index host_dim = 0;
  std::vector<int> order;                   // group elements along the diagonal, identity first
  std::vector<Rep::Gen> psi_images;         // psi of each matrix unit
  std::vector<CMatrix> vg;                  // indexed by group element
  std::vector<CMatrix> span_basis;          // orthonormal basis of span{psi(a) V_g}

  Index span_dim() const { return static_cast<Index>(span_basis.size()); }
  CMatrix psi(const AlgElement& a) const;
  CMatrix image(const CrossedElement& x) const;
  // psi on the matrix units together with the V_g.
  CovariantRep defining_rep() const;
};

CrossedModel build_crossed_model(GroupActionPtr action, const Tolerance& tol = {});

// chi is indexed by group element.
AlgElement spectral_projection(const GroupAction& action, const std::vector<Complex>& chi, const AlgElement& x);
// The same projection as a matrix on matrix-unit coefficients.
CMatrix spectral_projector(const GroupAction& action, const std::vector<Complex>& chi);

struct FixedPointAlgebra {
  std::vector<AlgElement> basis;  // orthonormal in the coefficient inner product
  Rep rep;                        // basis images on the defining space, labelled F0, F1, ...
};

FixedPointAlgebra fixed_point_algebra(const GroupAction& action, const Tolerance& tol = {});

}  // namespace crossprod
