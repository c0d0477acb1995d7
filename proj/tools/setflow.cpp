#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "setflow/commands.hpp"

int main(int argc, char** argv) {
  namespace cli = setflow::cli;
  CLI::App app{"Set-valued ODEs integrated through support functions"};
  app.require_subcommand(1);

  std::string config, outdir, kind, set_a, set_b;
  long n = 256;

  auto* integrate = app.add_subcommand("integrate", "Integrate a scenario config");
  integrate->add_option("config", config, "Scenario JSON")->required();

  auto* example = app.add_subcommand("example", "Reproduce the three-rectangle example");
  example->add_option("outdir", outdir, "Output directory")->required();

  auto* check = app.add_subcommand("check", "Run a diagnostic on a scenario's field");
  check->add_option("kind", kind, "subtangent, osl, lipschitz or horizon")
      ->required()
      ->check(CLI::IsMember({"subtangent", "osl", "lipschitz", "horizon"}));
  check->add_option("config", config, "Scenario JSON")->required();

  auto* hausdorff = app.add_subcommand("hausdorff", "Hausdorff distance between two sets");
  hausdorff->add_option("a", set_a, "First set JSON")->required();
  hausdorff->add_option("b", set_b, "Second set JSON")->required();
  hausdorff->add_option("--n", n, "Grid size for the support-function estimate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return cli::exit_code::config_error;
  }

  if (*integrate) return cli::cmd_integrate(config, std::cout, std::cerr);
  if (*example) return cli::cmd_example(outdir, std::cout, std::cerr);
  if (*check) return cli::cmd_check(kind, config, std::cout, std::cerr);
  return cli::cmd_hausdorff(set_a, set_b, n, std::cout, std::cerr);
}
