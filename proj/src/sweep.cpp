#include "patchcert/sweep.hpp"

#include <algorithm>

namespace patchcert {

BoundsSweep::BoundsSweep(const VoteGrid& grid, int patch_side)
    : grid_(&grid), side_(patch_side), patch_{0, 0, patch_side} {
  validate(grid);
  validate_patch_side(grid.geometry, patch_side);
  totals_ = count_votes(grid);
  window_votes_.assign(grid.num_classes, 0);
  rebuild_window();
}

void BoundsSweep::add_region(int index) {
  ++window_size_;
  const Label label = grid_->labels[static_cast<size_t>(index)];
  if (!label.is_abstain()) ++window_votes_[label.index()];
}

void BoundsSweep::remove_region(int index) {
  --window_size_;
  const Label label = grid_->labels[static_cast<size_t>(index)];
  if (!label.is_abstain()) --window_votes_[label.index()];
}

void BoundsSweep::rebuild_window() {
  window_size_ = 0;
  std::fill(window_votes_.begin(), window_votes_.end(), 0);
  const Geometry& g = grid_->geometry;
  const int s = grid_->strategy.size;
  switch (grid_->strategy.kind) {
    case AblationKind::Row: {
      const StartWindow w = overlap_window(g.height, s, patch_.row, side_);
      for (int t = 0; t < w.count; ++t)
        add_region((w.first + t) % g.height);
      break;
    }
    case AblationKind::Column: {
      const StartWindow w = overlap_window(g.width, s, patch_.col, side_);
      for (int t = 0; t < w.count; ++t)
        add_region((w.first + t) % g.width);
      break;
    }
    case AblationKind::Block: {
      const StartWindow wr = overlap_window(g.height, s, patch_.row, side_);
      const StartWindow wc = overlap_window(g.width, s, patch_.col, side_);
      for (int tr = 0; tr < wr.count; ++tr) {
        const int row = (wr.first + tr) % g.height;
        for (int tc = 0; tc < wc.count; ++tc)
          add_region(row * g.width + (wc.first + tc) % g.width);
      }
      break;
    }
  }
}

// One column step right: the column window [col-s+1, col+m-1] drops its first
// start and gains one past its last. Row windows are untouched.
void BoundsSweep::slide_column(int old_col) {
  const Geometry& g = grid_->geometry;
  const int s = grid_->strategy.size;
  switch (grid_->strategy.kind) {
    case AblationKind::Row:
      return;  // window depends on the patch row only
    case AblationKind::Column: {
      if (side_ + s - 1 >= g.width) return;  // window covers every column
      int out = (old_col - s + 1) % g.width;
      if (out < 0) out += g.width;
      remove_region(out);
      add_region((old_col + side_) % g.width);
      return;
    }
    case AblationKind::Block: {
      if (side_ + s - 1 >= g.width) return;
      int out = (old_col - s + 1) % g.width;
      if (out < 0) out += g.width;
      const int in = (old_col + side_) % g.width;
      const StartWindow wr = overlap_window(g.height, s, patch_.row, side_);
      for (int tr = 0; tr < wr.count; ++tr) {
        const int row = (wr.first + tr) % g.height;
        remove_region(row * g.width + out);
        add_region(row * g.width + in);
      }
      return;
    }
  }
}

void BoundsSweep::advance() {
  const Geometry& g = grid_->geometry;
  if (patch_.col + side_ < g.width) {
    const int old_col = patch_.col;
    ++patch_.col;
    slide_column(old_col);
    return;
  }
  if (patch_.row + side_ < g.height) {
    ++patch_.row;
    patch_.col = 0;
    rebuild_window();
    return;
  }
  done_ = true;
}

BoundPair BoundsSweep::bounds() const {
  const int k = grid_->num_classes;
  BoundPair out{LabelCounts(static_cast<size_t>(k), 0),
                LabelCounts(static_cast<size_t>(k), 0)};
  for (int32_t c = 0; c < k; ++c) {
    out.lower[c] = lower(c);
    out.upper[c] = upper(c);
  }
  return out;
}

}  // namespace patchcert
