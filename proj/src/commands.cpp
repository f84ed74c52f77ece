#include "patchcert/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "patchcert/errors.hpp"

namespace patchcert {

CertifyOutcome run_certify(const RunConfig& config,
                           std::span<const SampleRecord> records) {
  validate(config);
  CertifyOutcome outcome;
  outcome.certificates.reserve(records.size());
  for (const SampleRecord& record : records)
    outcome.certificates.push_back(
        certify_sample(to_ensemble(record, config), config.patch_side));
  outcome.metrics = compute_metrics(records, outcome.certificates);
  return outcome;
}

void print_metrics(const MetricsReport& report, std::ostream& log) {
  log << "samples:                   " << report.total << "\n"
      << "clean correct:             " << report.clean_correct << " ("
      << report.clean_accuracy << ")\n"
      << "certified total:           " << report.certified_total << "\n"
      << "certified and correct:     " << report.certified_and_correct << " ("
      << report.certified_robust_accuracy << ")\n"
      << "certified via majority:    " << report.method_majority << "\n"
      << "certified via invariant:   " << report.method_majority_invariant
      << "\n"
      << "uncertified:               " << report.method_none << "\n";
}

CertifyOutcome cmd_certify(const RunConfig& config,
                           const std::string& input_path,
                           const std::string& out_dir, std::ostream& log) {
  const std::vector<SampleRecord> records = load_records(input_path, config);
  CertifyOutcome outcome = run_certify(config, records);

  std::filesystem::create_directories(out_dir);
  const std::string rows_path = out_dir + "/certificates.tsv";
  std::ofstream rows(rows_path);
  if (!rows) throw ParseError("cannot write " + rows_path);
  for (size_t i = 0; i < records.size(); ++i)
    rows << format_certificate_row(records[i].id, outcome.certificates[i])
         << "\n";

  const std::string metrics_path = out_dir + "/metrics.json";
  std::ofstream metrics(metrics_path);
  if (!metrics) throw ParseError("cannot write " + metrics_path);
  metrics << to_json(outcome.metrics).dump(2) << "\n";

  log << "wrote " << rows_path << " and " << metrics_path << "\n";
  print_metrics(outcome.metrics, log);
  return outcome;
}

ConservativenessReport cmd_oracle(const RunConfig& config,
                                  const std::string& input_path,
                                  std::ostream& log) {
  const std::vector<SampleRecord> records = load_records(input_path, config);
  std::vector<EnsembleVotes> ensembles;
  ensembles.reserve(records.size());
  for (const SampleRecord& record : records)
    ensembles.push_back(to_ensemble(record, config));
  const ConservativenessReport report =
      conservativeness_report(ensembles, config.patch_side, config.oracle);
  log << "samples:                  " << report.total() << "\n"
      << "certified & robust:       " << report.certified_robust << "\n"
      << "certified & attackable:   " << report.certified_attackable
      << (report.certified_attackable == 0 ? "" : "  <-- SOUNDNESS VIOLATION")
      << "\n"
      << "uncertified & robust:     " << report.uncertified_robust
      << "  (certifier conservativeness)\n"
      << "uncertified & attackable: " << report.uncertified_attackable << "\n";
  return report;
}

void cmd_gen(const RunConfig& config, const std::string& scenario, int count,
             uint64_t seed, const std::string& out_path, std::ostream& log) {
  const std::vector<SampleRecord> records =
      generate_synthetic(config, count, seed, parse_scenario(scenario));
  if (out_path.empty()) {
    write_records(log, records);
    return;
  }
  save_records(out_path, records);
  log << "wrote " << records.size() << " records to " << out_path << "\n";
}

MetricsReport cmd_report(const RunConfig& config,
                         const std::string& results_path,
                         const std::string& input_path,
                         const std::string& out_path, std::ostream& log) {
  const std::vector<SampleRecord> records = load_records(input_path, config);
  const std::vector<CertificateRow> rows = load_certificate_rows(results_path);
  const MetricsReport report = metrics_from_rows(records, rows);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write " + out_path);
    out << to_json(report).dump(2) << "\n";
    log << "wrote " << out_path << "\n";
  }
  print_metrics(report, log);
  return report;
}

}  // namespace patchcert
