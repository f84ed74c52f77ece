#include "patchcert/records.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "patchcert/errors.hpp"

namespace patchcert {

namespace {

int32_t parse_int(std::string_view text, const std::string& where) {
  int32_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ParseError(where + ": '" + std::string(text) +
                     "' is not an integer");
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

Label parse_label(std::string_view text, int num_classes,
                  const std::string& where) {
  const int32_t raw = parse_int(text, where);
  if (raw == Label::kAbstainIndex) return Label::abstain();
  if (raw < 0 || raw >= num_classes)
    throw ParseError(where + ": label " + std::to_string(raw) +
                     " outside [0, " + std::to_string(num_classes) +
                     ") and not the abstain sentinel -1");
  return Label(raw);
}

}  // namespace

std::string format_record(const SampleRecord& record) {
  std::ostringstream out;
  out << record.id << '\t' << record.true_label.index();
  for (const std::vector<Label>& grid : record.votes) {
    out << '\t';
    for (size_t i = 0; i < grid.size(); ++i) {
      if (i) out << ',';
      out << grid[i].index();
    }
  }
  return out.str();
}

std::vector<SampleRecord> parse_records(std::istream& in,
                                        const RunConfig& config) {
  validate(config);
  std::vector<SampleRecord> records;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string_view> fields = split(line, '\t');
    if (fields.size() != 2 + config.strategies.size())
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(2 + config.strategies.size()) +
                       " tab-separated fields (id, true_label, one vote "
                       "array per strategy), got " +
                       std::to_string(fields.size()));
    SampleRecord record;
    record.id = std::string(fields[0]);
    if (record.id.empty())
      throw ParseError("line " + std::to_string(line_no) + ": empty id");
    if (!seen_ids.insert(record.id).second)
      throw ParseError("duplicate record id '" + record.id + "'");
    const std::string where = "record '" + record.id + "'";
    const int32_t truth = parse_int(fields[1], where + " true_label");
    if (truth < 0 || truth >= config.num_classes)
      throw ParseError(where + ": true_label " + std::to_string(truth) +
                       " outside [0, " + std::to_string(config.num_classes) +
                       ")");
    record.true_label = Label(truth);
    for (size_t s = 0; s < config.strategies.size(); ++s) {
      const AblationSpec& spec = config.strategies[s];
      const std::string field =
          where + " " + to_string(spec) + " votes";
      std::vector<Label> grid;
      for (std::string_view token : split(fields[2 + s], ','))
        grid.push_back(parse_label(token, config.num_classes, field));
      const int64_t expected = ablation_count(config.geometry, spec);
      if (static_cast<int64_t>(grid.size()) != expected)
        throw ParseError(field + ": " + std::to_string(grid.size()) +
                         " entries, expected " + std::to_string(expected));
      record.votes.push_back(std::move(grid));
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<SampleRecord> load_records(const std::string& path,
                                       const RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open records file " + path);
  return parse_records(in, config);
}

void write_records(std::ostream& out, std::span<const SampleRecord> records) {
  for (const SampleRecord& record : records)
    out << format_record(record) << '\n';
}

void save_records(const std::string& path,
                  std::span<const SampleRecord> records) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write records file " + path);
  write_records(out, records);
}

EnsembleVotes to_ensemble(const SampleRecord& record,
                          const RunConfig& config) {
  if (record.votes.size() != config.strategies.size())
    throw ParseError("record '" + record.id + "' has " +
                     std::to_string(record.votes.size()) +
                     " vote arrays, expected " +
                     std::to_string(config.strategies.size()));
  std::vector<VoteGrid> grids;
  grids.reserve(record.votes.size());
  for (size_t s = 0; s < config.strategies.size(); ++s)
    grids.push_back({config.geometry, config.strategies[s],
                     config.num_classes, record.votes[s]});
  return EnsembleVotes(std::move(grids));
}

std::string format_certificate_row(const std::string& id,
                                   const Certificate& certificate) {
  std::ostringstream out;
  out << id << '\t' << certificate.predicted.index() << '\t'
      << (certificate.certified ? 1 : 0) << '\t'
      << to_string(certificate.method);
  return out.str();
}

std::vector<CertificateRow> parse_certificate_rows(std::istream& in) {
  std::vector<CertificateRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string_view> fields = split(line, '\t');
    if (fields.size() != 4)
      throw ParseError("certificate row " + std::to_string(line_no) +
                       ": expected 4 fields, got " +
                       std::to_string(fields.size()));
    CertificateRow row;
    row.id = std::string(fields[0]);
    const std::string where = "certificate row '" + row.id + "'";
    row.predicted = Label(parse_int(fields[1], where + " predicted"));
    const int32_t certified = parse_int(fields[2], where + " certified");
    if (certified != 0 && certified != 1)
      throw ParseError(where + ": certified must be 0 or 1");
    row.certified = certified == 1;
    if (fields[3] == "none")
      row.method = CertMethod::None;
    else if (fields[3] == "majority")
      row.method = CertMethod::Majority;
    else if (fields[3] == "majority-invariant")
      row.method = CertMethod::MajorityInvariant;
    else
      throw ParseError(where + ": unknown method '" + std::string(fields[3]) +
                       "'");
    if (row.certified != (row.method != CertMethod::None))
      throw ParseError(where + ": certified flag disagrees with method");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CertificateRow> load_certificate_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open certificate rows file " + path);
  return parse_certificate_rows(in);
}

}  // namespace patchcert
