#pragma once

#include <span>

#include <json.hpp>

#include "patchcert/records.hpp"

namespace patchcert {

struct MetricsReport {
  int64_t total = 0;
  int64_t clean_correct = 0;           // predicted == true_label
  int64_t certified_total = 0;
  int64_t certified_and_correct = 0;   // both correct and certified
  int64_t method_majority = 0;
  int64_t method_majority_invariant = 0;
  int64_t method_none = 0;
  double clean_accuracy = 0.0;
  double certified_robust_accuracy = 0.0;
};

MetricsReport compute_metrics(std::span<const SampleRecord> records,
                              std::span<const Certificate> certificates);

// Re-aggregation from serialized rows, joined with the records by id.
MetricsReport metrics_from_rows(std::span<const SampleRecord> records,
                                std::span<const CertificateRow> rows);

nlohmann::json to_json(const MetricsReport& report);

}  // namespace patchcert
