#include "patchcert/votes.hpp"

#include <algorithm>
#include <string>

#include "patchcert/errors.hpp"

namespace patchcert {

void validate(const VoteGrid& grid) {
  validate(grid.geometry, grid.strategy);
  if (grid.num_classes < 1)
    throw ConfigError("vote grid needs at least one class");
  const int64_t expected = ablation_count(grid.geometry, grid.strategy);
  if (static_cast<int64_t>(grid.labels.size()) != expected)
    throw ConfigError("vote grid for " + to_string(grid.strategy) + " has " +
                      std::to_string(grid.labels.size()) + " labels, expected " +
                      std::to_string(expected));
  for (const Label label : grid.labels)
    if (!label.is_abstain() && label.index() >= grid.num_classes)
      throw ConfigError("vote grid label " + std::to_string(label.index()) +
                        " out of range for " +
                        std::to_string(grid.num_classes) + " classes");
}

LabelCounts count_votes(const VoteGrid& grid) {
  LabelCounts counts(grid.num_classes, 0);
  for (const Label label : grid.labels)
    if (!label.is_abstain()) ++counts[label.index()];
  return counts;
}

Label argmax_label(const LabelCounts& counts) {
  int32_t best = 0;
  for (int32_t c = 1; c < static_cast<int32_t>(counts.size()); ++c)
    if (counts[c] > counts[best]) best = c;
  return Label(best);
}

BoundPair bounds_for_patch(const VoteGrid& grid, const PatchRegion& patch) {
  const std::vector<int32_t> hit =
      overlapping_ablations(grid.geometry, grid.strategy, patch);
  BoundPair bounds{LabelCounts(grid.num_classes, 0),
                   LabelCounts(grid.num_classes, 0)};
  size_t next_hit = 0;
  for (int32_t i = 0; i < static_cast<int32_t>(grid.labels.size()); ++i) {
    if (next_hit < hit.size() && hit[next_hit] == i) {
      ++next_hit;  // overlapped: contributes to no lower bound
      continue;
    }
    const Label label = grid.labels[static_cast<size_t>(i)];
    if (!label.is_abstain()) ++bounds.lower[label.index()];
  }
  const int64_t overlapped = static_cast<int64_t>(hit.size());
  for (int c = 0; c < grid.num_classes; ++c)
    bounds.upper[c] = bounds.lower[c] + overlapped;
  return bounds;
}

std::vector<Label> local_from_bounds(const BoundPair& bounds, Label predicted) {
  if (predicted.is_abstain())
    throw std::invalid_argument("predicted label must not be ABSTAIN");
  std::vector<Label> out;
  const int32_t p = predicted.index();
  for (int32_t c = 0; c < static_cast<int32_t>(bounds.lower.size()); ++c) {
    if (c == p) continue;
    const int64_t tie = p > c ? 1 : 0;
    if (bounds.lower[p] < bounds.upper[c] + tie) out.push_back(Label(c));
  }
  return out;
}

std::vector<Label> local_malicious(const VoteGrid& grid,
                                   const PatchRegion& patch, Label predicted) {
  return local_from_bounds(bounds_for_patch(grid, patch), predicted);
}

std::vector<Label> may_set(const VoteGrid& grid, const PatchRegion& patch,
                           Label predicted) {
  std::vector<Label> out = local_malicious(grid, patch, predicted);
  out.insert(std::lower_bound(out.begin(), out.end(), predicted), predicted);
  return out;
}

}  // namespace patchcert
