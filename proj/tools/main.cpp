#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "patchcert/commands.hpp"
#include "patchcert/errors.hpp"

namespace {

struct ConfigArgs {
  std::string config_path;
  int height = -1;
  int width = -1;
  int num_classes = -1;
  int patch_side = -1;
  std::string strategies;  // "row:4,column:4,block:12"
  int64_t max_tuples = -1;
  int64_t max_assignments = -1;
};

void add_config_flags(CLI::App& cmd, ConfigArgs& args) {
  cmd.add_option("--config", args.config_path, "JSON config file");
  cmd.add_option("--height", args.height, "image height (rows)");
  cmd.add_option("--width", args.width, "image width (columns)");
  cmd.add_option("--classes", args.num_classes, "number of classes");
  cmd.add_option("--patch-side", args.patch_side, "adversarial patch side m");
  cmd.add_option("--strategies", args.strategies,
                 "comma-separated kind:size list, e.g. row:4,column:4,block:12");
  cmd.add_option("--oracle-max-tuples", args.max_tuples,
                 "oracle guard: max achievable-winner combinations per patch");
  cmd.add_option("--oracle-max-assignments", args.max_assignments,
                 "oracle guard: max exhaustive reassignments per window");
}

patchcert::RunConfig resolve_config(const ConfigArgs& args) {
  patchcert::RunConfig config;
  if (!args.config_path.empty())
    config = patchcert::load_config(args.config_path);
  if (args.height > 0) config.geometry.height = args.height;
  if (args.width > 0) config.geometry.width = args.width;
  if (args.num_classes > 0) config.num_classes = args.num_classes;
  if (args.patch_side > 0) config.patch_side = args.patch_side;
  if (!args.strategies.empty()) {
    config.strategies.clear();
    std::string rest = args.strategies;
    while (!rest.empty()) {
      const size_t comma = rest.find(',');
      config.strategies.push_back(
          patchcert::parse_strategy(rest.substr(0, comma)));
      rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
    }
  }
  if (args.max_tuples > 0) config.oracle.max_tuples_per_patch = args.max_tuples;
  if (args.max_assignments > 0)
    config.oracle.max_assignments = args.max_assignments;
  patchcert::validate(config);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "patchcert: certifies image samples robust against any square "
      "adversarial patch, from per-ablation prediction dumps"};
  app.require_subcommand(1);

  ConfigArgs certify_args, oracle_args, gen_args, report_args;
  std::string certify_input, certify_out = "out";
  std::string oracle_input;
  std::string gen_scenario = "uniform-random", gen_out;
  int gen_count = 100;
  uint64_t gen_seed = 0;
  std::string report_results, report_input, report_out;

  CLI::App* certify =
      app.add_subcommand("certify", "certify records and write results");
  add_config_flags(*certify, certify_args);
  certify->add_option("--input", certify_input, "records file")->required();
  certify->add_option("--out", certify_out, "output directory");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "brute-force soundness / conservativeness check");
  add_config_flags(*oracle, oracle_args);
  oracle->add_option("--input", oracle_input, "records file")->required();

  CLI::App* gen = app.add_subcommand("gen", "generate synthetic records");
  add_config_flags(*gen, gen_args);
  gen->add_option("--scenario", gen_scenario,
                  "uniform-random | near-unanimous | margin-sweep | "
                  "figure1-like");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--count", gen_count, "number of samples");
  gen->add_option("--out", gen_out, "output file (default: stdout)");

  CLI::App* report = app.add_subcommand(
      "report", "re-aggregate metrics from certificate rows");
  add_config_flags(*report, report_args);
  report->add_option("--results", report_results, "certificates.tsv file")
      ->required();
  report->add_option("--input", report_input, "records file")->required();
  report->add_option("--out", report_out, "metrics JSON output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (certify->parsed()) {
      patchcert::cmd_certify(resolve_config(certify_args), certify_input,
                             certify_out, std::cout);
    } else if (oracle->parsed()) {
      const patchcert::ConservativenessReport rep = patchcert::cmd_oracle(
          resolve_config(oracle_args), oracle_input, std::cout);
      if (rep.certified_attackable > 0) return 1;
    } else if (gen->parsed()) {
      patchcert::cmd_gen(resolve_config(gen_args), gen_scenario, gen_count,
                         gen_seed, gen_out, std::cout);
    } else if (report->parsed()) {
      patchcert::cmd_report(resolve_config(report_args), report_results,
                            report_input, report_out, std::cout);
    }
  } catch (const patchcert::GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
