#include "cli/commands.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using namespace crossprod::cli;
  CLI::App app{"crossprod: crossed products of finite-dimensional C*-algebras by finite groups"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "json";
  app.add_option("--seed", cfg.seed, "Seed for randomized decompositions")->capture_default_str();
  app.add_option("--abs-eps", cfg.tol.abs_eps, "Absolute tolerance")->capture_default_str();
  app.add_option("--rank-eps", cfg.tol.rank_eps, "Relative rank tolerance")->capture_default_str();
  app.add_option("--eig-sep", cfg.tol.eig_sep, "Eigenvalue cluster separation")->capture_default_str();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  auto* build = app.add_subcommand("build-crossed", "Build the matrix model of a crossed product");
  std::string action_path;
  std::optional<std::string> algebra_path, output_path;
  build->add_option("action", action_path, "Action JSON")->required();
  build->add_option("--algebra", algebra_path, "Algebra JSON, when the action file has none");
  build->add_option("-o,--output", output_path, "Write the model here instead of stdout");

  auto* equiv = app.add_subcommand("equiv", "Decide unitary equivalence of two representations");
  std::string rep1;
  std::optional<std::string> rep2, equiv_action, element;
  equiv->add_option("rep1", rep1, "Representation JSON")->required();
  equiv->add_option("rep2", rep2, "Second representation JSON (defaults to rep1)");
  equiv->add_option("--action", equiv_action, "Action JSON used with --element");
  equiv->add_option("--element", element, "Compare rep1 with rep2 composed with this automorphism");

  auto* decomp = app.add_subcommand("decompose", "Decompose a representation into irreducibles");
  std::string decomp_path;
  decomp->add_option("rep", decomp_path, "Representation JSON")->required();

  auto* analyze = app.add_subcommand("analyze", "Extract the structure of an irreducible covariant representation");
  std::string covrep_path, mode_name = "auto";
  analyze->add_option("covrep", covrep_path, "Covariant representation JSON")->required();
  analyze->add_option("--mode", mode_name, "Report kind")
      ->check(CLI::IsMember({"auto", "general", "cyclic", "s3"}))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify-examples", "Run the built-in worked examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kSchema;
  }
  cfg.format = format == "text" ? Format::Text : Format::Json;

  if (*build) return cmd_build_crossed(cfg, action_path, algebra_path, output_path, std::cout);
  if (*equiv) return cmd_equiv(cfg, rep1, rep2, equiv_action, element, std::cout);
  if (*decomp) return cmd_decompose(cfg, decomp_path, std::cout);
  if (*analyze) {
    AnalyzeMode mode = AnalyzeMode::Auto;
    if (mode_name == "general") mode = AnalyzeMode::General;
    else if (mode_name == "cyclic") mode = AnalyzeMode::Cyclic;
    else if (mode_name == "s3") mode = AnalyzeMode::S3;
    return cmd_analyze(cfg, covrep_path, mode, std::cout);
  }
  if (*verify) return cmd_verify_examples(cfg, std::cout);
  return kInternal;
}
