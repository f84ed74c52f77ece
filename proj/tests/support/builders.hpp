#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "patchcert/certifiers.hpp"

namespace patchcert::testing {

inline Label L(int32_t index) { return Label(index); }
inline Label A() { return Label::abstain(); }

inline std::vector<Label> labels_of(std::initializer_list<int32_t> raw) {
  std::vector<Label> out;
  for (int32_t v : raw) out.push_back(v < 0 ? Label::abstain() : Label(v));
  return out;
}

inline VoteGrid make_grid(Geometry g, AblationSpec spec, int num_classes,
                          std::vector<Label> labels) {
  VoteGrid grid{g, spec, num_classes, std::move(labels)};
  validate(grid);
  return grid;
}

inline VoteGrid make_grid(Geometry g, AblationSpec spec, int num_classes,
                          std::initializer_list<int32_t> raw) {
  return make_grid(g, spec, num_classes, labels_of(raw));
}

inline VoteGrid random_grid(std::mt19937_64& rng, Geometry g,
                            AblationSpec spec, int num_classes,
                            int abstain_percent = 10) {
  const int64_t n = ablation_count(g, spec);
  std::vector<Label> labels(static_cast<size_t>(n));
  for (Label& label : labels) {
    if (static_cast<int>(rng() % 100) < abstain_percent)
      label = Label::abstain();
    else
      label = Label(static_cast<int32_t>(rng() % num_classes));
  }
  return make_grid(g, spec, num_classes, std::move(labels));
}

// Random grid biased toward one label so certifications actually fire.
inline VoteGrid biased_grid(std::mt19937_64& rng, Geometry g,
                            AblationSpec spec, int num_classes,
                            int dominant_percent, Label dominant) {
  const int64_t n = ablation_count(g, spec);
  std::vector<Label> labels(static_cast<size_t>(n));
  for (Label& label : labels) {
    if (static_cast<int>(rng() % 100) < dominant_percent)
      label = dominant;
    else if (rng() % 8 == 0)
      label = Label::abstain();
    else
      label = Label(static_cast<int32_t>(rng() % num_classes));
  }
  return make_grid(g, spec, num_classes, std::move(labels));
}

inline EnsembleVotes random_ensemble(std::mt19937_64& rng, Geometry g,
                                     const std::vector<AblationSpec>& specs,
                                     int num_classes, int dominant_percent) {
  const Label dominant = Label(static_cast<int32_t>(rng() % num_classes));
  std::vector<VoteGrid> grids;
  for (const AblationSpec& spec : specs)
    grids.push_back(dominant_percent > 0
                        ? biased_grid(rng, g, spec, num_classes,
                                      dominant_percent, dominant)
                        : random_grid(rng, g, spec, num_classes));
  return EnsembleVotes(std::move(grids));
}

}  // namespace patchcert::testing
