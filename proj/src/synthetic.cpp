#include "patchcert/synthetic.hpp"

#include <algorithm>
#include <random>

#include "patchcert/errors.hpp"

namespace patchcert {

Scenario parse_scenario(const std::string& name) {
  if (name == "uniform-random") return Scenario::UniformRandom;
  if (name == "near-unanimous") return Scenario::NearUnanimous;
  if (name == "margin-sweep") return Scenario::MarginSweep;
  if (name == "figure1-like") return Scenario::Figure1Like;
  throw ConfigError("unknown scenario '" + name +
                    "' (expected uniform-random, near-unanimous, "
                    "margin-sweep, or figure1-like)");
}

const char* to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::UniformRandom:
      return "uniform-random";
    case Scenario::NearUnanimous:
      return "near-unanimous";
    case Scenario::MarginSweep:
      return "margin-sweep";
    case Scenario::Figure1Like:
      return "figure1-like";
  }
  return "?";
}

namespace {

// Raw engine draws with modulo keep byte-for-byte determinism across
// standard libraries; std distributions do not guarantee that.
uint64_t draw(std::mt19937_64& rng, uint64_t n) { return rng() % n; }

Label other_label(std::mt19937_64& rng, int num_classes, int32_t avoid) {
  const int32_t pick =
      static_cast<int32_t>(draw(rng, static_cast<uint64_t>(num_classes - 1)));
  return Label(pick >= avoid ? pick + 1 : pick);
}

std::vector<Label> uniform_grid(std::mt19937_64& rng, int64_t n,
                                int num_classes) {
  std::vector<Label> labels(static_cast<size_t>(n));
  for (Label& label : labels) {
    if (draw(rng, 10) == 0)
      label = Label::abstain();
    else
      label = Label(
          static_cast<int32_t>(draw(rng, static_cast<uint64_t>(num_classes))));
  }
  return labels;
}

std::vector<Label> near_unanimous_grid(std::mt19937_64& rng, int64_t n,
                                       int num_classes, Label dominant) {
  std::vector<Label> labels(static_cast<size_t>(n), dominant);
  if (num_classes < 2) return labels;
  for (Label& label : labels)
    if (draw(rng, 100) >= 98)
      label = other_label(rng, num_classes, dominant.index());
  return labels;
}

// `rival_votes` rival entries in one contiguous run starting at a random
// offset; the rest vote `winner`. Contiguity makes a patch window consisting
// purely of winner votes reachable, the worst case for the margin check.
std::vector<Label> margin_grid(std::mt19937_64& rng, int64_t n, Label winner,
                               Label rival, int64_t rival_votes) {
  std::vector<Label> labels(static_cast<size_t>(n), winner);
  const int64_t offset = static_cast<int64_t>(draw(rng, static_cast<uint64_t>(n)));
  for (int64_t i = 0; i < rival_votes; ++i)
    labels[static_cast<size_t>((offset + i) % n)] = rival;
  return labels;
}

SampleRecord margin_sweep_sample(const RunConfig& config, int index,
                                 std::mt19937_64& rng) {
  SampleRecord record;
  if (config.num_classes < 2) {
    record.true_label = Label(0);
    for (const AblationSpec& spec : config.strategies)
      record.votes.emplace_back(
          static_cast<size_t>(ablation_count(config.geometry, spec)),
          Label(0));
    return record;
  }
  const Label winner = Label(index % 2);
  const Label rival = Label(1 - index % 2);
  const int64_t offset = index % 5 - 2;
  record.true_label = winner;
  for (const AblationSpec& spec : config.strategies) {
    const int64_t n = ablation_count(config.geometry, spec);
    const int64_t margin =
        2 * delta_closed_form(spec, config.patch_side) + offset;
    int64_t rival_votes = (n - margin) / 2;
    rival_votes = std::clamp<int64_t>(rival_votes, 0, n / 2);
    record.votes.push_back(margin_grid(rng, n, winner, rival, rival_votes));
  }
  return record;
}

// All-zero anchor grids certify on their own; each remaining strategy gets
// just enough of a distinct rival label to lose its margin while keeping
// label 0 the winner. Distinct rivals and the smallest-index tie rule keep
// every may-set combination's majority at 0.
SampleRecord figure1_sample(const RunConfig& config, std::mt19937_64& rng) {
  const int strategies = static_cast<int>(config.strategies.size());
  if (strategies < 2)
    throw ConfigError(
        "figure1-like needs at least two strategies: a lone defender either "
        "certifies by margin or fails the invariant too");
  if (config.num_classes < strategies)
    throw ConfigError("figure1-like needs num_classes >= strategy count so "
                      "each weak defender can use a distinct rival label");

  size_t anchor = 0;
  for (size_t s = 1; s < config.strategies.size(); ++s)
    if (ablation_count(config.geometry, config.strategies[s]) >
        ablation_count(config.geometry, config.strategies[anchor]))
      anchor = s;

  SampleRecord record;
  record.true_label = Label(0);
  int32_t next_rival = 1;
  for (size_t s = 0; s < config.strategies.size(); ++s) {
    const AblationSpec& spec = config.strategies[s];
    const int64_t n = ablation_count(config.geometry, spec);
    if (s == anchor) {
      record.votes.emplace_back(static_cast<size_t>(n), Label(0));
      continue;
    }
    const int64_t delta = delta_closed_form(spec, config.patch_side);
    // Uncertified iff n - 2*rival_votes < 2*delta; winner stays 0 while
    // rival_votes <= n/2.
    const int64_t uncertified_from = std::max<int64_t>(1, (n - 2 * delta) / 2 + 1);
    if (uncertified_from > n / 2)
      throw ConfigError("figure1-like cannot make " + to_string(spec) +
                        " lose its margin while keeping its winner");
    record.votes.push_back(
        margin_grid(rng, n, Label(0), Label(next_rival), uncertified_from));
    ++next_rival;
  }
  return record;
}

}  // namespace

std::vector<SampleRecord> generate_synthetic(const RunConfig& config,
                                             int count, uint64_t seed,
                                             Scenario scenario) {
  validate(config);
  if (count < 0) throw ConfigError("count must be non-negative");
  std::mt19937_64 rng(seed);
  std::vector<SampleRecord> records;
  records.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    SampleRecord record;
    switch (scenario) {
      case Scenario::UniformRandom: {
        record.true_label = Label(static_cast<int32_t>(
            draw(rng, static_cast<uint64_t>(config.num_classes))));
        for (const AblationSpec& spec : config.strategies)
          record.votes.push_back(uniform_grid(
              rng, ablation_count(config.geometry, spec), config.num_classes));
        break;
      }
      case Scenario::NearUnanimous: {
        const Label dominant = Label(static_cast<int32_t>(
            draw(rng, static_cast<uint64_t>(config.num_classes))));
        record.true_label = dominant;
        for (const AblationSpec& spec : config.strategies)
          record.votes.push_back(
              near_unanimous_grid(rng, ablation_count(config.geometry, spec),
                                  config.num_classes, dominant));
        break;
      }
      case Scenario::MarginSweep:
        record = margin_sweep_sample(config, i, rng);
        break;
      case Scenario::Figure1Like: {
        // Certifier in the loop: retry offsets until the sample separates.
        bool placed = false;
        for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
          record = figure1_sample(config, rng);
          const Certificate cert =
              certify_sample(to_ensemble(record, config), config.patch_side);
          placed = cert.method == CertMethod::MajorityInvariant;
        }
        if (!placed)
          throw ConfigError(
              "figure1-like could not build a majority-invariant sample for "
              "this configuration");
        break;
      }
    }
    record.id = std::string(to_string(scenario)) + "-" + std::to_string(i);
    records.push_back(std::move(record));
  }
  return records;
}

Label stub_classify(const ImageGrid& image, const AblationRegion& region,
                    int num_classes) {
  const Geometry& g = image.geometry;
  validate(g);
  if (num_classes < 1) throw ConfigError("num_classes must be >= 1");
  const int s = region.spec.size;
  int64_t sum = 0;
  auto add_cell = [&](int row, int col) {
    sum += image.pixels[static_cast<size_t>(row) * g.width + col];
  };
  switch (region.spec.kind) {
    case AblationKind::Row:
      for (int t = 0; t < std::min(s, g.height); ++t) {
        const int row = (region.start_index + t) % g.height;
        for (int col = 0; col < g.width; ++col) add_cell(row, col);
      }
      break;
    case AblationKind::Column:
      for (int t = 0; t < std::min(s, g.width); ++t) {
        const int col = (region.start_index + t) % g.width;
        for (int row = 0; row < g.height; ++row) add_cell(row, col);
      }
      break;
    case AblationKind::Block: {
      const int start_row = region.start_index / g.width;
      const int start_col = region.start_index % g.width;
      for (int tr = 0; tr < std::min(s, g.height); ++tr)
        for (int tc = 0; tc < std::min(s, g.width); ++tc)
          add_cell((start_row + tr) % g.height, (start_col + tc) % g.width);
      break;
    }
  }
  if (sum == 0) return Label::abstain();
  return Label(static_cast<int32_t>(sum % num_classes));
}

VoteGrid votes_from_image(const ImageGrid& image, const AblationSpec& spec,
                          int num_classes) {
  VoteGrid grid{image.geometry, spec, num_classes, {}};
  for (const AblationRegion& region :
       enumerate_ablations(image.geometry, spec))
    grid.labels.push_back(stub_classify(image, region, num_classes));
  return grid;
}

}  // namespace patchcert
