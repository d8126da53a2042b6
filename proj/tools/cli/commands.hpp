#pragma once

#include "cli/json_io.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace crossprod::cli {

enum class Format { Json, Text };

enum ExitCode : int {
  kOk = 0,
  kSchema = 2,
  kInvariant = 3,
  kNotIrreducible = 4,
  kInternal = 5,
};

struct RunConfig {
  Tolerance tol;
  std::uint64_t seed = 42;
  Format format = Format::Json;
};

enum class AnalyzeMode { Auto, General, Cyclic, S3 };

// Every command prints one report (or one diagnostic) to `out` and returns the exit code.
int cmd_build_crossed(const RunConfig& cfg, const std::string& action_path,
                      const std::optional<std::string>& algebra_path,
                      const std::optional<std::string>& output_path, std::ostream& out);
// With `element`, the second representation is replaced by its composition with alpha_element.
int cmd_equiv(const RunConfig& cfg, const std::string& rep1_path, const std::optional<std::string>& rep2_path,
              const std::optional<std::string>& action_path, const std::optional<std::string>& element,
              std::ostream& out);
int cmd_decompose(const RunConfig& cfg, const std::string& rep_path, std::ostream& out);
int cmd_analyze(const RunConfig& cfg, const std::string& covrep_path, AnalyzeMode mode, std::ostream& out);
int cmd_verify_examples(const RunConfig& cfg, std::ostream& out);

io::Json report_header(const RunConfig& cfg, const std::string& command);

}  // namespace crossprod::cli
