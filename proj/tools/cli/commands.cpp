#include "cli/commands.hpp"

#include <fstream>
#include <functional>
#include <sstream>

namespace crossprod::cli {

using io::Json;

namespace {

// Raised inside a command when the input is reducible; carries the decomposition to attach.
struct Reducible {
  Json decomposition;
};

void emit(const RunConfig& cfg, const Json& report, std::ostream& out) {
  if (cfg.format == Format::Json) out << report.dump(2) << '\n';
  else out << io::render_text(report);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::LabelMismatch:
      return kSchema;
    case ErrorCode::NotIrreducible:
      return kNotIrreducible;
    case ErrorCode::DecompositionFailed:
      return kInternal;
    default:
      return kInvariant;
  }
}

int run(const RunConfig& cfg, const std::string& command, std::ostream& out, const std::function<Json()>& body) {
  Json report = {{"header", report_header(cfg, command)}};
  auto fail = [&](int code, const std::string& kind, const std::string& message) {
    report["status"] = "error";
    report["error"] = {{"exit_code", code}, {"kind", kind}, {"message", message}};
    emit(cfg, report, out);
    return code;
  };
  try {
    cfg.tol.validate();
    report["result"] = body();
  } catch (const Reducible& r) {
    report["decomposition"] = r.decomposition;
    return fail(kNotIrreducible, to_string(ErrorCode::NotIrreducible), "the input representation is reducible");
  } catch (const io::SchemaError& e) {
    return fail(kSchema, "SchemaError", e.what());
  } catch (const Error& e) {
    return fail(exit_code_for(e.code()), to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(kInternal, "Internal", e.what());
  }
  report["status"] = "ok";
  emit(cfg, report, out);
  return kOk;
}

std::filesystem::path parent_of(const std::string& path) {
  return std::filesystem::path(path).parent_path();
}

// A build-crossed report stands for its defining covariant representation.
Json unwrap_covariant(Json j) {
  if (j.contains("result") && j["result"].is_object() && j["result"].contains("defining_rep"))
    return j["result"]["defining_rep"];
  return j;
}

// A covariant representation if the file carries unitaries, a plain one otherwise.
Rep any_rep_from(const std::string& path) {
  const Json j = unwrap_covariant(io::read_json_file(path));
  if (j.contains("unitaries")) {
    CovariantRep c = io::covariant_from(j, parent_of(path));
    c.validate({});
    return c.as_rep();
  }
  return io::rep_from(j);
}

}  // namespace

Json report_header(const RunConfig& cfg, const std::string& command) {
  return {{"tool", "crossprod"},
          {"version", CROSSPROD_VERSION},
          {"command", command},
          {"seed", cfg.seed},
          {"tolerance", {{"abs_eps", cfg.tol.abs_eps}, {"rank_eps", cfg.tol.rank_eps}, {"eig_sep", cfg.tol.eig_sep}}}};
}

int cmd_build_crossed(const RunConfig& cfg, const std::string& action_path,
                      const std::optional<std::string>& algebra_path,
                      const std::optional<std::string>& output_path, std::ostream& out) {
  if (!output_path) {
    return run(cfg, "build-crossed", out, [&] {
      Json j = io::read_json_file(action_path);
      if (algebra_path) j["algebra"] = io::read_json_file(*algebra_path);
      const io::ActionSpec spec = io::action_from(j);
      if (!spec.concrete) throw io::SchemaError("build-crossed needs an action on a matrix algebra (\"algebra\" and \"auts\")");
      spec.concrete->validate(cfg.tol);
      return io::to_json(build_crossed_model(spec.concrete, cfg.tol));
    });
  }
  std::ostringstream buffer;
  const int code = cmd_build_crossed(cfg, action_path, algebra_path, std::nullopt, buffer);
  if (code != kOk) {
    out << buffer.str();
    return code;
  }
  std::ofstream file(*output_path);
  if (!file) {
    return run(cfg, "build-crossed", out, [&]() -> Json { throw io::SchemaError("cannot write " + *output_path); });
  }
  file << buffer.str();
  return kOk;
}

int cmd_equiv(const RunConfig& cfg, const std::string& rep1_path, const std::optional<std::string>& rep2_path,
              const std::optional<std::string>& action_path, const std::optional<std::string>& element,
              std::ostream& out) {
  return run(cfg, "equiv", out, [&] {
    const Rep r1 = any_rep_from(rep1_path);
    Rep r2 = rep2_path ? any_rep_from(*rep2_path) : r1;
    Json twist = nullptr;
    if (element) {
      if (!action_path) throw io::SchemaError("--element needs --action");
      const io::ActionSpec spec = io::action_from(io::read_json_file(*action_path));
      spec.generators->validate(cfg.tol);
      const int g = io::element_from(spec.generators->group, Json(*element));
      r2 = compose(r2, *spec.generators, g);
      twist = spec.generators->group.label(g);
    } else if (!rep2_path) {
      throw io::SchemaError("equiv needs a second representation or --element");
    }
    if (r1.labels() != r2.labels()) throw Error(ErrorCode::LabelMismatch, "the representations have different generators");
    const auto basis = intertwiners(r1, r2, cfg.tol);
    const bool irr1 = is_irreducible(r1, cfg.tol);
    const bool irr2 = is_irreducible(r2, cfg.tol);
    Json result = {{"twist", twist}, {"dims", {r1.dim(), r2.dim()}}, {"irreducible", {irr1, irr2}},
                   {"intertwiner_dim", basis.size()}};
    if (irr1 && irr2) {
      const Equivalence eq = equivalence_of_irreducibles(r1, r2, cfg.tol);
      result["verdict"] = eq.equivalent ? "equivalent" : "inequivalent";
      result["witness"] = eq.witness ? io::to_json(*eq.witness) : Json(nullptr);
    } else {
      const bool same = r1.dim() == r2.dim() &&
                        same_decomposition(decompose(r1, cfg.seed, cfg.tol), decompose(r2, cfg.seed, cfg.tol), cfg.tol);
      result["verdict"] = same ? "equivalent" : "inequivalent";
      result["witness"] = nullptr;
    }
    return result;
  });
}

int cmd_decompose(const RunConfig& cfg, const std::string& rep_path, std::ostream& out) {
  return run(cfg, "decompose", out, [&] {
    const Rep r = any_rep_from(rep_path);
    return io::to_json(decompose(r, cfg.seed, cfg.tol));
  });
}

int cmd_analyze(const RunConfig& cfg, const std::string& covrep_path, AnalyzeMode mode, std::ostream& out) {
  return run(cfg, "analyze", out, [&] {
    const CovariantRep pi = io::covariant_from(unwrap_covariant(io::read_json_file(covrep_path)), parent_of(covrep_path));
    pi.action->validate(cfg.tol);
    pi.validate(cfg.tol);
    const Rep whole = pi.as_rep();
    if (!is_irreducible(whole, cfg.tol)) throw Reducible{io::to_json(decompose(whole, cfg.seed, cfg.tol))};
    const FiniteGroup& G = pi.group();
    if (mode == AnalyzeMode::Auto) {
      if (G.cyclic_generator() >= 0) mode = AnalyzeMode::Cyclic;
      else if (G.order() == 6 && !G.is_abelian()) mode = AnalyzeMode::S3;
      else mode = AnalyzeMode::General;
    }
    switch (mode) {
      case AnalyzeMode::Cyclic:
        return Json{{"kind", "cyclic"}, {"report", io::to_json(cyclic_analyze(pi, cfg.seed, cfg.tol))}};
      case AnalyzeMode::S3: {
        const S3Class c = classify_s3(pi, cfg.seed, cfg.tol);
        return Json{{"kind", "s3"},
                    {"classification", io::to_json(c)},
                    {"report", io::to_json(analyze(pi, cfg.seed, cfg.tol))}};
      }
      default:
        return Json{{"kind", "general"}, {"report", io::to_json(analyze(pi, cfg.seed, cfg.tol))}};
    }
  });
}

namespace {

struct ExampleRow {
  std::string name;
  std::string expected;
  std::function<std::string(const RunConfig&)> compute;
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::size_t twist_dim(const Rep& pi, const GeneratorAction& action, int g, const Tolerance& tol) {
  return intertwiners(pi, compose(pi, action, g), tol).size();
}

std::vector<ExampleRow> example_rows() {
  constexpr int kEta = 1;
  constexpr int kTau = 3;
  std::vector<ExampleRow> rows;
  rows.push_back({"tau_symmetric", "tau=1 eta=0", [](const RunConfig& cfg) {
                    const auto a = fixtures::free_group_action();
                    const Rep pi = fixtures::tau_symmetric_rep();
                    return "tau=" + std::to_string(twist_dim(pi, *a, kTau, cfg.tol)) +
                           " eta=" + std::to_string(twist_dim(pi, *a, kEta, cfg.tol));
                  }});
  rows.push_back({"minimal", "minimal=true case=Minimal", [](const RunConfig& cfg) {
                    const auto a = fixtures::free_group_action();
                    const Rep pi = fixtures::minimal_rep();
                    bool all = true;
                    for (int g = 0; g < a->group.order(); ++g) all = all && twist_dim(pi, *a, g, cfg.tol) == 1;
                    const S3Class c = classify_s3(fixtures::minimal_covariant(), cfg.seed, cfg.tol);
                    return "minimal=" + yes_no(all) + " case=" + to_string(c.kind);
                  }});
  rows.push_back({"eta_symmetric", "eta=1 tau=0", [](const RunConfig& cfg) {
                    const auto a = fixtures::free_group_action();
                    const Rep pi = fixtures::eta_symmetric_rep();
                    return "eta=" + std::to_string(twist_dim(pi, *a, kEta, cfg.tol)) +
                           " tau=" + std::to_string(twist_dim(pi, *a, kTau, cfg.tol));
                  }});
  rows.push_back({"torus_regular", "irreducible=true inequivalent_translates=6 case=Regular6", [](const RunConfig& cfg) {
                    const auto a = fixtures::torus_action();
                    const Rep pi = fixtures::torus_evaluation();
                    const CovariantRep reg = fixtures::torus_regular();
                    std::vector<Rep> translates;
                    for (int g = 0; g < a->group.order(); ++g) translates.push_back(compose(pi, *a, g));
                    int distinct = 0;
                    for (std::size_t i = 0; i < translates.size(); ++i) {
                      bool fresh = true;
                      for (std::size_t j = 0; j < i; ++j)
                        fresh = fresh && intertwiners(translates[j], translates[i], cfg.tol).empty();
                      distinct += fresh;
                    }
                    const S3Class c = classify_s3(reg, cfg.seed, cfg.tol);
                    return "irreducible=" + yes_no(is_irreducible(reg.as_rep(), cfg.tol)) +
                           " inequivalent_translates=" + std::to_string(distinct) + " case=" + to_string(c.kind);
                  }});
  rows.push_back({"s3_multiplicity_two", "case=TauPair r=2 irreducible=true", [](const RunConfig& cfg) {
                    const CovariantRep p = fixtures::doubled_minimal_covariant();
                    const S3Class c = classify_s3(p, cfg.seed, cfg.tol);
                    return std::string("case=") + to_string(c.kind) + " r=" + std::to_string(c.multiplicity.value_or(0)) +
                           " irreducible=" + yes_no(is_irreducible(p.as_rep(), cfg.tol));
                  }});
  rows.push_back({"cute_example", "minimal=false m=2 k=2 phi_count=2", [](const RunConfig& cfg) {
                    const CyclicReport r = cyclic_analyze(fixtures::flip_swap_covariant(), cfg.seed, cfg.tol);
                    return "minimal=" + yes_no(r.minimal) + " m=" + std::to_string(r.m) + " k=" + std::to_string(r.k) +
                           " phi_count=" + std::to_string(r.fixed_pt_irreps.size());
                  }});
  for (int q : {2, 3, 5}) {
    rows.push_back({"quantum_mq q=" + std::to_string(q), "span=" + std::to_string(q * q) + " irreducible=true",
                    [q](const RunConfig& cfg) {
                      const CrossedModel m = build_crossed_model(fixtures::rotation_action(q), cfg.tol);
                      return "span=" + std::to_string(m.span_dim()) +
                             " irreducible=" + yes_no(is_irreducible(fixtures::rotation_covariant(q).as_rep(), cfg.tol));
                    }});
  }
  rows.push_back({"weyl_pair q=2", "r=2 multiplicity_part_irreducible=true", [](const RunConfig& cfg) {
                    const StructureReport r = analyze(fixtures::weyl_covariant(2), cfg.seed, cfg.tol);
                    return "r=" + std::to_string(r.multiplicity) + " multiplicity_part_irreducible=" + yes_no(r.lambda_irreducible);
                  }});
  rows.push_back({"diagonal_phase", "m=1 k=8 minimal=true", [](const RunConfig& cfg) {
                    const CyclicReport r = cyclic_analyze(fixtures::diagonal_phase_covariant(), cfg.seed, cfg.tol);
                    return "m=" + std::to_string(r.m) + " k=" + std::to_string(r.k) + " minimal=" + yes_no(r.minimal);
                  }});
  return rows;
}

}  // namespace

int cmd_verify_examples(const RunConfig& cfg, std::ostream& out) {
  bool all = true;
  const int code = run(cfg, "verify-examples", out, [&] {
    Json table = Json::array();
    for (const auto& row : example_rows()) {
      std::string computed;
      try {
        computed = row.compute(cfg);
      } catch (const std::exception& e) {
        computed = std::string("error: ") + e.what();
      }
      const bool pass = computed == row.expected;
      all = all && pass;
      table.push_back({{"name", row.name}, {"expected", row.expected}, {"computed", computed}, {"result", pass ? "PASS" : "FAIL"}});
    }
    return Json{{"examples", table}, {"all_pass", all}};
  });
  if (code != kOk) return code;
  return all ? kOk : kInvariant;
}

}  // namespace crossprod::cli
