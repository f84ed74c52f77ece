#include "patchcert/metrics.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "patchcert/errors.hpp"

namespace patchcert {

namespace {

struct Verdict {
  Label predicted;
  bool certified;
  CertMethod method;
};

MetricsReport tally(std::span<const SampleRecord> records,
                    const std::vector<Verdict>& verdicts) {
  MetricsReport report;
  report.total = static_cast<int64_t>(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    const Verdict& v = verdicts[i];
    const bool correct = v.predicted == records[i].true_label;
    if (correct) ++report.clean_correct;
    if (v.certified) ++report.certified_total;
    if (correct && v.certified) ++report.certified_and_correct;
    switch (v.method) {
      case CertMethod::None:
        ++report.method_none;
        break;
      case CertMethod::Majority:
        ++report.method_majority;
        break;
      case CertMethod::MajorityInvariant:
        ++report.method_majority_invariant;
        break;
    }
  }
  if (report.total > 0) {
    report.clean_accuracy =
        static_cast<double>(report.clean_correct) / report.total;
    report.certified_robust_accuracy =
        static_cast<double>(report.certified_and_correct) / report.total;
  }
  return report;
}

}  // namespace

MetricsReport compute_metrics(std::span<const SampleRecord> records,
                              std::span<const Certificate> certificates) {
  if (records.size() != certificates.size())
    throw std::invalid_argument(
        "records and certificates differ in length: " +
        std::to_string(records.size()) + " vs " +
        std::to_string(certificates.size()));
  std::vector<Verdict> verdicts;
  verdicts.reserve(certificates.size());
  for (const Certificate& cert : certificates)
    verdicts.push_back({cert.predicted, cert.certified, cert.method});
  return tally(records, verdicts);
}

MetricsReport metrics_from_rows(std::span<const SampleRecord> records,
                                std::span<const CertificateRow> rows) {
  if (records.size() != rows.size())
    throw ParseError("certificate rows and records differ in length: " +
                     std::to_string(rows.size()) + " vs " +
                     std::to_string(records.size()));
  std::unordered_map<std::string, const CertificateRow*> by_id;
  for (const CertificateRow& row : rows)
    if (!by_id.emplace(row.id, &row).second)
      throw ParseError("duplicate certificate row id '" + row.id + "'");
  std::vector<Verdict> verdicts;
  verdicts.reserve(records.size());
  for (const SampleRecord& record : records) {
    const auto it = by_id.find(record.id);
    if (it == by_id.end())
      throw ParseError("no certificate row for record '" + record.id + "'");
    verdicts.push_back(
        {it->second->predicted, it->second->certified, it->second->method});
  }
  return tally(records, verdicts);
}

nlohmann::json to_json(const MetricsReport& report) {
  return {{"total", report.total},
          {"clean_correct", report.clean_correct},
          {"certified_total", report.certified_total},
          {"certified_and_correct", report.certified_and_correct},
          {"clean_accuracy", report.clean_accuracy},
          {"certified_robust_accuracy", report.certified_robust_accuracy},
          {"method_counts",
           {{"majority", report.method_majority},
            {"majority_invariant", report.method_majority_invariant},
            {"none", report.method_none}}}};
}

}  // namespace patchcert
