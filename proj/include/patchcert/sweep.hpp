#pragma once

#include <cstdint>

#include "patchcert/votes.hpp"

namespace patchcert {

// Incremental per-patch vote bounds for one grid. Visits every patch
// position in enumerate_patches order (row-major) and maintains the
// per-label vote tally inside the patch-overlapped ablation window, updating
// only the window entries that change between neighbouring positions.
// Agrees bit-exactly with bounds_for_patch at every position.
class BoundsSweep {
 public:
  BoundsSweep(const VoteGrid& grid, int patch_side);

  bool done() const { return done_; }
  const PatchRegion& patch() const { return patch_; }
  void advance();

  // Ablations the current patch overlaps (abstaining ones included).
  int64_t overlapped_count() const { return window_size_; }
  // Votes for each label among the overlapped ablations.
  const LabelCounts& window_votes() const { return window_votes_; }
  const LabelCounts& totals() const { return totals_; }

  int64_t lower(int32_t c) const { return totals_[c] - window_votes_[c]; }
  int64_t upper(int32_t c) const { return lower(c) + window_size_; }
  BoundPair bounds() const;

 private:
  void rebuild_window();
  void slide_column(int old_col);
  void add_region(int index);
  void remove_region(int index);

  const VoteGrid* grid_;
  int side_;
  PatchRegion patch_;
  bool done_ = false;

  LabelCounts totals_;
  LabelCounts window_votes_;
  int64_t window_size_ = 0;
};

}  // namespace patchcert
