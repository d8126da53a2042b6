#include "cli/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace crossprod::io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw SchemaError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) schema(what + " must be an integer");
  return j.get<int>();
}

// Fills the unset entries of a table indexed by group element with products of set ones.
template <class T, class Mul>
void close_under_products(const FiniteGroup& g, std::vector<std::optional<T>>& items, Mul mul,
                          const std::string& what) {
  bool grew = true;
  while (grew) {
    grew = false;
    for (int a = 0; a < g.order(); ++a) {
      if (!items[a]) continue;
      for (int b = 0; b < g.order(); ++b) {
        if (!items[b]) continue;
        const int c = g.mul(a, b);
        if (!items[c]) {
          items[c] = mul(*items[a], *items[b]);
          grew = true;
        }
      }
    }
  }
  for (int x = 0; x < g.order(); ++x)
    if (!items[x]) schema(what + " for element " + g.label(x) + " is missing and not generated by the given ones");
}

std::vector<std::string> element_labels(const FiniteGroup& g, const std::vector<int>& xs) {
  std::vector<std::string> out;
  for (int x : xs) out.push_back(g.label(x));
  return out;
}

Json spectrum_json(const std::vector<Eigenspace>& spaces) {
  Json out = Json::array();
  for (const auto& e : spaces) out.push_back({{"value", to_json(e.value)}, {"multiplicity", e.isometry.cols()}});
  return out;
}

Json components_json(const std::vector<Component>& comps) {
  Json out = Json::array();
  for (const auto& c : comps) out.push_back({{"dim", c.irrep.dim()}, {"multiplicity", c.multiplicity}});
  return out;
}

std::vector<int> all_elements(const FiniteGroup& g) {
  std::vector<int> out(g.order());
  for (int x = 0; x < g.order(); ++x) out[x] = x;
  return out;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) schema("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    schema(path.string() + ": " + e.what());
  }
}

Json to_json(Complex z) {
  const Complex c = clean(z);
  return Json::array({c.real(), c.imag()});
}

Complex complex_from(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    schema("complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const CMatrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

CMatrix matrix_from(const Json& j) {
  if (!j.is_array() || j.empty()) schema("matrices are non-empty arrays of rows");
  const Index rows = static_cast<Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) schema("matrix rows must be non-empty arrays");
  const Index cols = static_cast<Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Index>(j[i].size()) != cols) schema("matrix rows have different lengths");
    for (Index k = 0; k < cols; ++k) m(i, k) = complex_from(j[i][k]);
  }
  return m;
}

Json to_json(const FiniteGroup& g) {
  return {{"order", g.order()}, {"table", g.table()}, {"identity", g.identity()}, {"labels", element_labels(g, all_elements(g))}};
}

FiniteGroup group_from(const Json& j) {
  if (!j.is_object()) schema("group must be an object");
  if (j.contains("cyclic")) {
    const int n = as_int(j["cyclic"], "cyclic order");
    if (n < 1) schema("cyclic order must be positive");
    return make_cyclic_group(n);
  }
  if (j.contains("symmetric")) {
    if (as_int(j["symmetric"], "symmetric degree") != 3) schema("only the symmetric group on 3 points is built in");
    return make_symmetric_group_3();
  }
  if (j.contains("product")) {
    const Json& p = j["product"];
    if (!p.is_array() || p.size() != 2) schema("product takes two groups");
    return make_direct_product(group_from(p[0]), group_from(p[1]));
  }
  const Json& t = field(j, "table");
  std::vector<std::vector<int>> table;
  try {
    table = t.get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception&) {
    schema("group table must be an array of integer rows");
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    try {
      labels = j["labels"].get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception&) {
      schema("group labels must be strings");
    }
  }
  FiniteGroup g(std::move(table), std::move(labels));
  if (j.contains("order") && as_int(j["order"], "order") != g.order()) schema("group order does not match the table");
  if (j.contains("identity") && as_int(j["identity"], "identity") != g.identity())
    schema("declared identity is not the identity of the table");
  return g;
}

int element_from(const FiniteGroup& g, const Json& key) {
  if (key.is_number_integer()) {
    const int x = key.get<int>();
    if (x < 0 || x >= g.order()) schema("group element index out of range");
    return x;
  }
  if (!key.is_string()) schema("group elements are named by label or index");
  const std::string s = key.get<std::string>();
  const int found = g.find(s);
  if (found >= 0) return found;
  if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) {
    const int x = std::stoi(s);
    if (x < g.order()) return x;
  }
  schema("unknown group element \"" + s + "\"");
}

Json to_json(const MatAlg& a) { return {{"blocks", a.block_dims}}; }

MatAlg algebra_from(const Json& j) {
  MatAlg a;
  try {
    a.block_dims = field(j, "blocks").get<std::vector<int>>();
  } catch (const nlohmann::json::exception&) {
    schema("algebra blocks must be integers");
  }
  for (int n : a.block_dims)
    if (n < 1) schema("algebra block sizes must be positive");
  if (a.block_dims.empty()) schema("algebra needs at least one block");
  return a;
}

Json to_json(const AlgElement& x) {
  Json blocks = Json::array();
  for (const auto& b : x.blocks) blocks.push_back(to_json(b));
  return {{"blocks", blocks}};
}

AlgElement alg_element_from(const Json& j, const MatAlg& a) {
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_array() || blocks.size() != a.block_dims.size()) schema("algebra element needs one matrix per block");
  AlgElement x;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    x.blocks.push_back(matrix_from(blocks[k]));
    if (x.blocks.back().rows() != a.block_dims[k] || x.blocks.back().cols() != a.block_dims[k])
      schema("algebra element block " + std::to_string(k) + " has the wrong size");
  }
  return x;
}

Json to_json(const StarAut& s) {
  Json us = Json::array();
  for (const auto& u : s.unitaries) us.push_back(to_json(u));
  return {{"perm", s.perm}, {"unitaries", us}};
}

StarAut aut_from(const Json& j, const MatAlg& a) {
  StarAut s;
  const std::size_t b = a.block_dims.size();
  if (j.contains("perm")) {
    try {
      s.perm = j["perm"].get<std::vector<int>>();
    } catch (const nlohmann::json::exception&) {
      schema("automorphism perm must be integers");
    }
  } else {
    for (std::size_t k = 0; k < b; ++k) s.perm.push_back(static_cast<int>(k));
  }
  if (s.perm.size() != b) schema("automorphism perm must have one entry per block");
  if (j.contains("unitaries")) {
    const Json& us = j["unitaries"];
    if (!us.is_array() || us.size() != b) schema("automorphism needs one unitary per block");
    for (const auto& u : us) s.unitaries.push_back(matrix_from(u));
  } else {
    for (int n : a.block_dims) s.unitaries.push_back(CMatrix::Identity(n, n));
  }
  return s;
}

Json to_json(const GroupAction& a) {
  Json auts = Json::object();
  for (int g = 0; g < a.group.order(); ++g) auts[a.group.label(g)] = to_json(a.auts[g]);
  return {{"group", to_json(a.group)}, {"algebra", to_json(a.algebra)}, {"auts", auts}};
}

Json to_json(const GeneratorAction& a) {
  if (a.concrete) return to_json(*a.concrete);
  Json subs = Json::object();
  for (int g = 0; g < a.group.order(); ++g) subs[a.group.label(g)] = to_json(a.subs[g]);
  return {{"group", to_json(a.group)}, {"generators", a.labels}, {"substitutions", subs}};
}

ActionSpec action_from(const Json& j) {
  if (!j.is_object()) schema("action must be an object");
  const FiniteGroup g = group_from(field(j, "group"));
  const int e = g.identity();
  ActionSpec out;
  if (j.contains("algebra")) {
    GroupAction ga;
    ga.group = g;
    ga.algebra = algebra_from(j["algebra"]);
    std::vector<std::optional<StarAut>> auts(g.order());
    auts[e] = StarAut::identity(ga.algebra);
    const Json& given = field(j, "auts");
    if (!given.is_object()) schema("auts must be an object keyed by group element");
    for (const auto& [key, value] : given.items()) auts[element_from(g, Json(key))] = aut_from(value, ga.algebra);
    close_under_products(g, auts, compose_auts, "automorphism");
    for (auto& s : auts) ga.auts.push_back(std::move(*s));
    out.concrete = std::make_shared<const GroupAction>(std::move(ga));
    out.generators = std::make_shared<const GeneratorAction>(GeneratorAction::from(*out.concrete));
    return out;
  }
  GeneratorAction a;
  a.group = g;
  try {
    a.labels = field(j, "generators").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception&) {
    schema("generators must be a list of labels");
  }
  const Index n = static_cast<Index>(a.labels.size());
  std::vector<std::optional<CMatrix>> subs(g.order());
  subs[e] = CMatrix::Identity(n, n);
  if (j.contains("perms")) {
    if (!j["perms"].is_object()) schema("perms must be an object keyed by group element");
    for (const auto& [key, value] : j["perms"].items()) {
      std::vector<int> p;
      try {
        p = value.get<std::vector<int>>();
      } catch (const nlohmann::json::exception&) {
        schema("generator permutations must be integers");
      }
      if (static_cast<Index>(p.size()) != n) schema("generator permutation has the wrong length");
      CMatrix s = CMatrix::Zero(n, n);
      for (Index c = 0; c < n; ++c) {
        if (p[c] < 0 || p[c] >= n) schema("generator index out of range");
        s(p[c], c) = 1.0;
      }
      subs[element_from(g, Json(key))] = s;
    }
  } else {
    const Json& given = field(j, "substitutions");
    if (!given.is_object()) schema("substitutions must be an object keyed by group element");
    for (const auto& [key, value] : given.items()) subs[element_from(g, Json(key))] = matrix_from(value);
  }
  close_under_products(g, subs, [](const CMatrix& x, const CMatrix& y) -> CMatrix { return x * y; }, "substitution");
  for (auto& s : subs) a.subs.push_back(std::move(*s));
  out.generators = std::make_shared<const GeneratorAction>(std::move(a));
  return out;
}

Json to_json(const Rep& r) {
  Json gens = Json::object();
  for (const auto& [label, m] : r.gens()) gens[label] = to_json(m);
  return {{"dim", r.dim()}, {"generators", gens}};
}

Rep rep_from(const Json& j) {
  const Json& gens = field(j, "generators");
  if (!gens.is_object()) schema("generators must be an object keyed by label");
  std::vector<Rep::Gen> list;
  for (const auto& [label, value] : gens.items()) list.emplace_back(label, matrix_from(value));
  Index dim = 0;
  if (j.contains("dim")) dim = as_int(j["dim"], "dim");
  else if (!list.empty()) dim = list.front().second.rows();
  if (dim < 1) schema("representation dimension must be positive");
  for (const auto& [label, m] : list)
    if (m.rows() != dim || m.cols() != dim) schema("generator " + label + " is not " + std::to_string(dim) + "x" + std::to_string(dim));
  return Rep(dim, std::move(list));
}

Json to_json(const CovariantRep& c) {
  Json out = to_json(c.base);
  Json us = Json::object();
  for (int g = 0; g < c.group().order(); ++g) us[c.group().label(g)] = to_json(c.unitaries[g]);
  out["unitaries"] = us;
  out["action"] = to_json(*c.action);
  return out;
}

CovariantRep covariant_from(const Json& j, const std::filesystem::path& base_dir) {
  ActionSpec spec;
  if (j.contains("action")) spec = action_from(j["action"]);
  else if (j.contains("action_ref")) spec = action_from(read_json_file(base_dir / j["action_ref"].get<std::string>()));
  else schema("covariant representation needs \"action\" or \"action_ref\"");
  CovariantRep c;
  c.base = rep_from(j);
  c.action = spec.generators;
  const FiniteGroup& g = c.action->group;
  for (const auto& label : c.action->labels)
    if (!c.base.has(label)) schema("generator " + label + " of the action is missing from the representation");
  std::vector<std::optional<CMatrix>> us(g.order());
  us[g.identity()] = CMatrix::Identity(c.base.dim(), c.base.dim());
  const Json& given = field(j, "unitaries");
  if (!given.is_object()) schema("unitaries must be an object keyed by group element");
  for (const auto& [key, value] : given.items()) {
    CMatrix u = matrix_from(value);
    if (u.rows() != c.base.dim() || u.cols() != c.base.dim()) schema("unitary for " + key + " has the wrong size");
    us[element_from(g, Json(key))] = std::move(u);
  }
  close_under_products(g, us, [](const CMatrix& x, const CMatrix& y) -> CMatrix { return x * y; }, "unitary");
  for (auto& u : us) c.unitaries.push_back(std::move(*u));
  return c;
}

Json to_json(const CrossedElement& x) {
  Json coeffs = Json::object();
  for (int g = 0; g < x.action->group.order(); ++g) coeffs[x.action->group.label(g)] = to_json(x.coeffs[g]);
  return {{"coeffs", coeffs}};
}

CrossedElement crossed_element_from(const Json& j, GroupActionPtr action) {
  CrossedElement x = CrossedElement::zero(action);
  const Json& coeffs = field(j, "coeffs");
  if (!coeffs.is_object()) schema("coeffs must be an object keyed by group element");
  for (const auto& [key, value] : coeffs.items())
    x.coeffs[element_from(action->group, Json(key))] = alg_element_from(value, action->algebra);
  return x;
}

Json to_json(const IrrepDecomposition& d) {
  Json comps = Json::array();
  for (const auto& c : d.components)
    comps.push_back({{"dim", c.irrep.dim()}, {"multiplicity", c.multiplicity}, {"irrep", to_json(c.irrep)}});
  return {{"classes", d.components.size()}, {"components", comps}, {"basis_change", to_json(d.basis_change)}};
}

Json to_json(const ProjectiveRep& p) {
  const FiniteGroup& G = p.group.parent;
  Json mats = Json::object();
  for (int i = 0; i < p.group.size(); ++i) mats[G.label(p.group.members[i])] = to_json(p.mats[i]);
  Json coc = Json::array();
  for (const auto& row : p.cocycle) {
    Json r = Json::array();
    for (Complex c : row) r.push_back(to_json(c));
    coc.push_back(std::move(r));
  }
  return {{"elements", element_labels(G, p.group.members)},
          {"matrices", mats},
          {"cocycle", coc},
          {"cocycle_trivial", p.trivial_cocycle(1e-7)},
          {"modulus_residual", p.modulus_residual()},
          {"multiplier_residual", p.multiplier_residual()},
          {"cocycle_identity_residual", p.cocycle_identity_residual()}};
}

Json to_json(const StructureReport& r) {
  const FiniteGroup& G = r.H.parent;
  Json perms = Json::object();
  Json blocks = Json::object();
  for (int g = 0; g < G.order(); ++g) {
    perms[G.label(g)] = r.perms[g];
    Json bs = Json::array();
    for (const auto& b : r.block_unitaries[g]) bs.push_back(to_json(b));
    blocks[G.label(g)] = bs;
  }
  return {{"stabilizer", element_labels(G, r.H.members)},
          {"stabilizer_normal", r.H_normal},
          {"coset_representatives", element_labels(G, r.coset_reps)},
          {"orbit_length", r.m()},
          {"multiplicity", r.multiplicity},
          {"base_dim", r.base_irrep.dim()},
          {"base_irrep", to_json(r.base_irrep)},
          {"base_components", components_json(r.base_decomposition.components)},
          {"block_permutations", perms},
          {"block_unitaries", blocks},
          {"block_diagonal_iff_in_stabilizer", r.block_diagonal_iff_in_H},
          {"multiplicity_part", to_json(r.Lambda)},
          {"irrep_part", to_json(r.Vproj)},
          {"multiplicity_part_irreducible", r.lambda_irreducible},
          {"stabilizer_rep_irreducible", r.psi_irreducible},
          {"ergodic_dim", r.ergodic_dim},
          {"conjugator", to_json(r.conjugator)},
          {"residuals",
           {{"base", r.base_residual}, {"block", r.block_residual}, {"factor", r.factor_residual}, {"commutant", r.commutant_residual}}}};
}

Json to_json(const CyclicReport& r) {
  Json out = {{"n", r.n},
              {"generator", r.base.H.parent.label(r.generator)},
              {"m", r.m},
              {"k", r.k},
              {"multiplicity", r.base.multiplicity},
              {"minimal", r.minimal},
              {"pieces_inequivalent", r.pieces_inequivalent},
              {"V", to_json(r.V)},
              {"spectrum_of_V", spectrum_json(r.spectrum_of_V)},
              {"spectrum_of_U", spectrum_json(r.spectrum_of_U)},
              {"conjugator", to_json(r.conjugator)}};
  if (r.has_fixed_point_data) {
    Json diag = Json::array();
    for (const auto& a : r.alpha_diag) diag.push_back(a.dim());
    Json pieces = Json::array();
    for (const auto& a : r.minimal_pieces) pieces.push_back(a.dim());
    out["fixed_point"] = {{"dim", r.fixed_point_dim},
                          {"eigenspace_dims", diag},
                          {"eigenspace_reps_irreducible", r.alpha_diag_irreducible},
                          {"eigenspace_reps_pairwise_inequivalent", r.alpha_diag_pairwise_inequivalent},
                          {"base_piece_dims", pieces},
                          {"eta", r.eta},
                          {"irreps_in_restriction", components_json(r.fixed_pt_irreps)},
                          {"base_restriction_multiplicity_free", r.base_restriction_multiplicity_free}};
  }
  out["structure"] = to_json(r.base);
  return out;
}

Json to_json(const S3Class& s) {
  const FiniteGroup G = make_symmetric_group_3();
  Json out = {{"case", to_string(s.kind)},
              {"eta", G.label(s.eta)},
              {"tau", G.label(s.tau)},
              {"block_elements", element_labels(G, s.block_elements)},
              {"normal_part_irreducible", s.normal_part_irreducible},
              {"algebra_part_irreducible", s.algebra_part_irreducible}};
  out["tau_equivalent"] = s.tau_equivalent ? Json(*s.tau_equivalent) : Json(nullptr);
  out["multiplicity"] = s.multiplicity ? Json(*s.multiplicity) : Json(nullptr);
  out["reconstruction_residual"] = s.reconstruction_residual;
  out["base_irrep"] = to_json(s.pi1);
  out["conjugator"] = to_json(s.conjugator);
  return out;
}

Json to_json(const CrossedModel& m) {
  const FiniteGroup& G = m.action->group;
  Json vg = Json::object();
  for (int g = 0; g < G.order(); ++g) vg[G.label(g)] = to_json(m.vg[g]);
  Json psi = Json::object();
  for (const auto& [label, mat] : m.psi_images) psi[label] = to_json(mat);
  return {{"host_dim", m.host_dim},
          {"span_dim", m.span_dim()},
          {"algebra_dim", m.action->algebra.dimension()},
          {"group_order", G.order()},
          {"diagonal_order", element_labels(G, m.order)},
          {"psi", psi},
          {"V", vg},
          {"defining_rep", to_json(m.defining_rep())}};
}

namespace {

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

bool is_complex_pair(const Json& j) {
  return j.is_array() && j.size() == 2 && j[0].is_number_float() && j[1].is_number_float();
}

bool is_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty()) return false;
    for (const auto& x : row)
      if (!is_complex_pair(x)) return false;
  }
  return true;
}

bool is_inline(const Json& j) {
  if (j.is_primitive() || is_complex_pair(j)) return true;
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (!(x.is_primitive() || is_complex_pair(x))) return false;
  return true;
}

std::string scalar_text(const Json& j) {
  if (is_complex_pair(j)) return format_complex({j[0].get<double>(), j[1].get<double>()});
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) return format_real(j.get<double>());
  if (j.is_null()) return "n/a";
  return j.dump();
}

std::string inline_text(const Json& j) {
  if (!j.is_array() || is_complex_pair(j)) return scalar_text(j);
  std::string s = "[";
  for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar_text(j[i]);
  return s + "]";
}

void render(const Json& j, int depth, std::ostringstream& out) {
  const std::string pad(2 * depth, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (is_inline(value)) {
        out << pad << key << ": " << inline_text(value) << '\n';
      } else {
        out << pad << key << ":\n";
        render(value, depth + 1, out);
      }
    }
  } else if (is_matrix(j)) {
    for (const auto& row : j) out << pad << inline_text(row) << '\n';
  } else if (j.is_array()) {
    for (const auto& x : j) {
      if (is_inline(x)) {
        out << pad << "- " << inline_text(x) << '\n';
      } else {
        out << pad << "-\n";
        render(x, depth + 1, out);
      }
    }
  } else {
    out << pad << scalar_text(j) << '\n';
  }
}

}  // namespace

std::string format_complex(Complex z) {
  // Parts below this are round-off and would make golden files machine dependent.
  constexpr double kNoise = 1e-12;
  const std::string re = format_real(std::abs(z.real()) < kNoise ? 0.0 : z.real());
  const std::string im = format_real(std::abs(z.imag()) < kNoise ? 0.0 : z.imag());
  if (im.front() == '-') return re + im + "i";
  return re + "+" + im + "i";
}

std::string render_text(const Json& j) {
  std::ostringstream out;
  render(j, 0, out);
  return out.str();
}

}  // namespace crossprod::io
