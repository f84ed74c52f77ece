#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "patchcert/geometry.hpp"

namespace patchcert {

// A class index in [0, num_classes) or the ABSTAIN sentinel. Ties between
// labels always break toward the smaller index; ABSTAIN never wins anything.
class Label {
 public:
  static constexpr int32_t kAbstainIndex = -1;

  constexpr Label() = default;  // ABSTAIN
  constexpr explicit Label(int32_t index) : index_(index < 0 ? -1 : index) {}

  static constexpr Label abstain() { return Label(); }

  constexpr bool is_abstain() const { return index_ < 0; }
  constexpr int32_t index() const { return index_; }

  friend constexpr bool operator==(Label, Label) = default;
  friend constexpr auto operator<=>(Label, Label) = default;

 private:
  int32_t index_ = kAbstainIndex;
};

using LabelCounts = std::vector<int64_t>;  // per-class vote tallies

// Per-ablation labels for one sample under one strategy, aligned with
// enumerate_ablations(geometry, strategy).
struct VoteGrid {
  Geometry geometry;
  AblationSpec strategy;
  int num_classes = 0;
  std::vector<Label> labels;
};

void validate(const VoteGrid& grid);

// Per-class achievable vote range at one patch position: `lower[c]` counts
// the c-votes among ablations the patch cannot touch; `upper[c]` adds every
// overlapped ablation (each could be rewritten to c).
struct BoundPair {
  LabelCounts lower;
  LabelCounts upper;
};

// counts[c] = number of entries equal to c; ABSTAIN entries count nowhere.
LabelCounts count_votes(const VoteGrid& grid);

// Smallest-index argmax; all-zero counts resolve to label 0.
Label argmax_label(const LabelCounts& counts);

BoundPair bounds_for_patch(const VoteGrid& grid, const PatchRegion& patch);

// Labels c_l != predicted with lower[predicted] < upper[c_l] + 1[predicted >
// c_l]: those an adversary at this patch position might promote past the
// clean winner. Ascending index, never contains ABSTAIN.
std::vector<Label> local_from_bounds(const BoundPair& bounds, Label predicted);

std::vector<Label> local_malicious(const VoteGrid& grid,
                                   const PatchRegion& patch, Label predicted);

// local_malicious plus the predicted label itself; every label this grid's
// plurality winner may become under the patch. Ascending, non-empty.
std::vector<Label> may_set(const VoteGrid& grid, const PatchRegion& patch,
                           Label predicted);

}  // namespace patchcert
