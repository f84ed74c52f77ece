#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "patchcert/metrics.hpp"
#include "patchcert/oracle.hpp"
#include "patchcert/synthetic.hpp"

namespace patchcert {

struct CertifyOutcome {
  std::vector<Certificate> certificates;
  MetricsReport metrics;
};

// Certifies every record; certificates align with the input order.
CertifyOutcome run_certify(const RunConfig& config,
                           std::span<const SampleRecord> records);

// Certifies, writes <out_dir>/certificates.tsv and <out_dir>/metrics.json,
// and prints a summary.
CertifyOutcome cmd_certify(const RunConfig& config,
                           const std::string& input_path,
                           const std::string& out_dir, std::ostream& log);

// Soundness / conservativeness sweep; returns the report and prints it.
ConservativenessReport cmd_oracle(const RunConfig& config,
                                  const std::string& input_path,
                                  std::ostream& log);

// Fixture generation to a file or (empty path) the log stream.
void cmd_gen(const RunConfig& config, const std::string& scenario, int count,
             uint64_t seed, const std::string& out_path, std::ostream& log);

// Metrics re-aggregation from certificate rows joined with the records.
MetricsReport cmd_report(const RunConfig& config,
                         const std::string& results_path,
                         const std::string& input_path,
                         const std::string& out_path, std::ostream& log);

void print_metrics(const MetricsReport& report, std::ostream& log);

}  // namespace patchcert
