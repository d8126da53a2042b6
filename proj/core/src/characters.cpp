#include "crossprod/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace crossprod {

namespace {

double rounded(double v) {
  const double r = std::round(v * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

}  // namespace

std::string element_generator_label(const FiniteGroup& g, int x) { return "g" + std::to_string(x) + ":" + g.label(x); }

int CharacterTable::class_of(int g) const {
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (std::find(classes[c].begin(), classes[c].end(), g) != classes[c].end()) return static_cast<int>(c);
  throw Error(ErrorCode::InvalidInput, "element outside the group");
}

std::vector<Complex> CharacterTable::on_elements(int rho) const {
  std::vector<Complex> out(group.order());
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int g : classes[c]) out[g] = chars.at(rho)[c];
  return out;
}

Rep group_regular_rep(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<Rep::Gen> gens;
  for (int x = 0; x < n; ++x) {
    CMatrix m = CMatrix::Zero(n, n);
    for (int y = 0; y < n; ++y) m(g.mul(x, y), y) = 1.0;
    gens.emplace_back(element_generator_label(g, x), std::move(m));
  }
  return Rep(n, std::move(gens));
}

CharacterTable character_table(const FiniteGroup& g, std::uint64_t seed, const Tolerance& tol) {
  CharacterTable out;
  out.group = g;
  out.classes = g.conjugacy_classes();
  const IrrepDecomposition dec = decompose(group_regular_rep(g), seed, tol);

  struct Row {
    int dim;
    std::vector<Complex> chi;
    Rep irrep;
  };
  std::vector<Row> rows;
  for (const auto& c : dec.components) {
    Row row{static_cast<int>(c.irrep.dim()), {}, c.irrep};
    for (const auto& cls : out.classes) row.chi.push_back(c.irrep.at(element_generator_label(g, cls.front())).trace());
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    for (std::size_t i = 0; i < a.chi.size(); ++i) {
      const double ar = rounded(a.chi[i].real()), br = rounded(b.chi[i].real());
      if (ar != br) return ar < br;
      const double ai = rounded(a.chi[i].imag()), bi = rounded(b.chi[i].imag());
      if (ai != bi) return ai < bi;
    }
    return false;
  });
  for (auto& row : rows) {
    out.dims.push_back(row.dim);
    out.chars.push_back(std::move(row.chi));
    out.irreps.push_back(std::move(row.irrep));
  }
  if (out.dims.size() != out.classes.size())
    throw Error(ErrorCode::DecompositionFailed, "number of irreps differs from number of conjugacy classes");
  return out;
}

}  // namespace crossprod
