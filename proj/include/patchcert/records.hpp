#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "patchcert/certifiers.hpp"
#include "patchcert/config.hpp"

namespace patchcert {

// One sample's serialized votes: id, ground-truth label, and one label
// array per configured strategy (config order). See docs/formats.md.
struct SampleRecord {
  std::string id;
  Label true_label;
  std::vector<std::vector<Label>> votes;
};

std::string format_record(const SampleRecord& record);

std::vector<SampleRecord> parse_records(std::istream& in,
                                        const RunConfig& config);
std::vector<SampleRecord> load_records(const std::string& path,
                                       const RunConfig& config);

void write_records(std::ostream& out, std::span<const SampleRecord> records);
void save_records(const std::string& path,
                  std::span<const SampleRecord> records);

EnsembleVotes to_ensemble(const SampleRecord& record, const RunConfig& config);

// One certificate output row: id, predicted, certified, method.
struct CertificateRow {
  std::string id;
  Label predicted;
  bool certified = false;
  CertMethod method = CertMethod::None;
};

std::string format_certificate_row(const std::string& id,
                                   const Certificate& certificate);

std::vector<CertificateRow> parse_certificate_rows(std::istream& in);
std::vector<CertificateRow> load_certificate_rows(const std::string& path);

}  // namespace patchcert
