#pragma once

#include "crossprod/fixtures.hpp"

#include "json.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace crossprod::io {

using Json = nlohmann::ordered_json;

// Input that parses but does not match the expected schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::filesystem::path& path);

Json to_json(Complex z);
Complex complex_from(const Json& j);
Json to_json(const CMatrix& m);
CMatrix matrix_from(const Json& j);

Json to_json(const FiniteGroup& g);
FiniteGroup group_from(const Json& j);
// Element named by label or by index.
int element_from(const FiniteGroup& g, const Json& key);

Json to_json(const MatAlg& a);
MatAlg algebra_from(const Json& j);
Json to_json(const AlgElement& x);
AlgElement alg_element_from(const Json& j, const MatAlg& a);
Json to_json(const StarAut& s);
StarAut aut_from(const Json& j, const MatAlg& a);
Json to_json(const GroupAction& a);
Json to_json(const GeneratorAction& a);

struct ActionSpec {
  ActionPtr generators;
  GroupActionPtr concrete;  // null for generator-level actions
};
// Either {"group","algebra","auts"} or {"group","generators","perms"|"substitutions"}.
// Elements missing from "auts"/"perms"/"substitutions" are filled in by composing given ones.
ActionSpec action_from(const Json& j);

Json to_json(const Rep& r);
Rep rep_from(const Json& j);
Json to_json(const CovariantRep& c);
// "action" inline or "action_ref" resolved against base_dir.
CovariantRep covariant_from(const Json& j, const std::filesystem::path& base_dir);

// {"coeffs": {"g": algebra element}}; missing elements are zero.
Json to_json(const CrossedElement& x);
CrossedElement crossed_element_from(const Json& j, GroupActionPtr action);

Json to_json(const IrrepDecomposition& d);
Json to_json(const ProjectiveRep& p);
Json to_json(const StructureReport& r);
Json to_json(const CyclicReport& r);
Json to_json(const S3Class& s);
Json to_json(const CrossedModel& m);

// Six significant digits, a+bi form, negative zero and parts below 1e-12 printed as 0.
std::string format_complex(Complex z);
// Human-readable rendering of a report: complex pairs and matrices are formatted.
std::string render_text(const Json& j);

}  // namespace crossprod::io
