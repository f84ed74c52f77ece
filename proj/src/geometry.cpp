#include "patchcert/geometry.hpp"

#include <algorithm>

#include "patchcert/errors.hpp"

namespace patchcert {

const char* to_string(AblationKind kind) {
  switch (kind) {
    case AblationKind::Row:
      return "row";
    case AblationKind::Column:
      return "column";
    case AblationKind::Block:
      return "block";
  }
  return "?";
}

std::string to_string(const AblationSpec& spec) {
  return std::string(to_string(spec.kind)) + ":" + std::to_string(spec.size);
}

void validate(const Geometry& geometry) {
  if (geometry.height < 1 || geometry.width < 1)
    throw ConfigError("geometry must be at least 1x1, got " +
                      std::to_string(geometry.height) + "x" +
                      std::to_string(geometry.width));
}

void validate(const Geometry& geometry, const AblationSpec& spec) {
  validate(geometry);
  if (spec.size < 1)
    throw ConfigError("ablation size must be positive, got " +
                      std::to_string(spec.size));
  const int limit = spec.kind == AblationKind::Row      ? geometry.height
                    : spec.kind == AblationKind::Column ? geometry.width
                        : std::min(geometry.height, geometry.width);
  if (spec.size > limit)
    throw ConfigError("ablation " + to_string(spec) +
                      " does not fit geometry " +
                      std::to_string(geometry.height) + "x" +
                      std::to_string(geometry.width));
}

void validate_patch_side(const Geometry& geometry, int patch_side) {
  validate(geometry);
  if (patch_side < 1)
    throw ConfigError("patch side must be positive, got " +
                      std::to_string(patch_side));
  if (patch_side > std::min(geometry.height, geometry.width))
    throw ConfigError("patch side " + std::to_string(patch_side) +
                      " exceeds geometry " + std::to_string(geometry.height) +
                      "x" + std::to_string(geometry.width));
}

void validate(const Geometry& geometry, const PatchRegion& patch) {
  validate_patch_side(geometry, patch.side);
  if (patch.row < 0 || patch.col < 0 ||
      patch.row + patch.side > geometry.height ||
      patch.col + patch.side > geometry.width)
    throw ConfigError("patch at (" + std::to_string(patch.row) + "," +
                      std::to_string(patch.col) + ") side " +
                      std::to_string(patch.side) + " out of bounds");
}

int64_t ablation_count(const Geometry& geometry, const AblationSpec& spec) {
  switch (spec.kind) {
    case AblationKind::Row:
      return geometry.height;
    case AblationKind::Column:
      return geometry.width;
    case AblationKind::Block:
      return int64_t{1} * geometry.height * geometry.width;
  }
  return 0;
}

std::vector<AblationRegion> enumerate_ablations(const Geometry& geometry,
                                                const AblationSpec& spec) {
  validate(geometry, spec);
  const int64_t n = ablation_count(geometry, spec);
  std::vector<AblationRegion> regions;
  regions.reserve(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i)
    regions.push_back({static_cast<int>(i), spec, geometry});
  return regions;
}

int64_t patch_count(const Geometry& geometry, int patch_side) {
  validate_patch_side(geometry, patch_side);
  return int64_t{1} * (geometry.height - patch_side + 1) *
         (geometry.width - patch_side + 1);
}

std::vector<PatchRegion> enumerate_patches(const Geometry& geometry,
                                           int patch_side) {
  validate_patch_side(geometry, patch_side);
  std::vector<PatchRegion> patches;
  patches.reserve(static_cast<size_t>(patch_count(geometry, patch_side)));
  for (int r = 0; r + patch_side <= geometry.height; ++r)
    for (int c = 0; c + patch_side <= geometry.width; ++c)
      patches.push_back({r, c, patch_side});
  return patches;
}

namespace {

// Does the wrapped span {start .. start+span-1 mod dim} intersect the plain
// interval [lo, hi] (0 <= lo <= hi < dim)?
bool span_hits(int dim, int start, int span, int lo, int hi) {
  if (span >= dim) return true;
  const int end = start + span - 1;
  if (end < dim) return start <= hi && lo <= end;
  // Wrapped: [start, dim-1] and [0, end-dim]. The first part always
  // intersects [lo, hi] when hi >= start; the second when lo <= end-dim.
  return hi >= start || lo <= end - dim;
}

}  // namespace

bool overlaps(const AblationRegion& region, const PatchRegion& patch) {
  const Geometry& g = region.geometry;
  const int s = region.spec.size;
  switch (region.spec.kind) {
    case AblationKind::Row:
      return span_hits(g.height, region.start_index, s, patch.row,
                       patch.row + patch.side - 1);
    case AblationKind::Column:
      return span_hits(g.width, region.start_index, s, patch.col,
                       patch.col + patch.side - 1);
    case AblationKind::Block: {
      const int start_row = region.start_index / g.width;
      const int start_col = region.start_index % g.width;
      return span_hits(g.height, start_row, s, patch.row,
                       patch.row + patch.side - 1) &&
             span_hits(g.width, start_col, s, patch.col,
                       patch.col + patch.side - 1);
    }
  }
  return false;
}

int64_t delta_closed_form(const AblationSpec& spec, int patch_side) {
  const int64_t reach = patch_side + spec.size - 1;
  return spec.kind == AblationKind::Block ? reach * reach : reach;
}

StartWindow overlap_window(int dim, int span, int patch_start, int patch_len) {
  const int reach = patch_len + span - 1;
  if (reach >= dim) return {0, dim};
  // Start positions i with span {i .. i+span-1 mod dim} meeting
  // [patch_start, patch_start+patch_len-1] form the circular interval
  // [patch_start-span+1, patch_start+patch_len-1] of length reach.
  int first = (patch_start - span + 1) % dim;
  if (first < 0) first += dim;
  return {first, reach};
}

namespace {

struct IndexRange {
  int start;
  int count;
};

// The circular window split into at most two ascending ranges, ordered by
// start so concatenation walks indices in ascending order.
int split_window(const StartWindow& w, int dim, IndexRange out[2]) {
  if (w.count >= dim) {
    out[0] = {0, dim};
    return 1;
  }
  const int tail = dim - w.first;
  if (w.count <= tail) {
    out[0] = {w.first, w.count};
    return 1;
  }
  out[0] = {0, w.count - tail};
  out[1] = {w.first, tail};
  return 2;
}

}  // namespace

std::vector<int32_t> overlapping_ablations(const Geometry& geometry,
                                           const AblationSpec& spec,
                                           const PatchRegion& patch) {
  validate(geometry, spec);
  validate(geometry, patch);
  std::vector<int32_t> out;
  IndexRange rows[2], cols[2];
  switch (spec.kind) {
    case AblationKind::Row: {
      const StartWindow w =
          overlap_window(geometry.height, spec.size, patch.row, patch.side);
      const int parts = split_window(w, geometry.height, rows);
      out.reserve(static_cast<size_t>(w.count));
      for (int p = 0; p < parts; ++p)
        for (int t = 0; t < rows[p].count; ++t)
          out.push_back(rows[p].start + t);
      break;
    }
    case AblationKind::Column: {
      const StartWindow w =
          overlap_window(geometry.width, spec.size, patch.col, patch.side);
      const int parts = split_window(w, geometry.width, cols);
      out.reserve(static_cast<size_t>(w.count));
      for (int p = 0; p < parts; ++p)
        for (int t = 0; t < cols[p].count; ++t)
          out.push_back(cols[p].start + t);
      break;
    }
    case AblationKind::Block: {
      const StartWindow wr =
          overlap_window(geometry.height, spec.size, patch.row, patch.side);
      const StartWindow wc =
          overlap_window(geometry.width, spec.size, patch.col, patch.side);
      const int row_parts = split_window(wr, geometry.height, rows);
      const int col_parts = split_window(wc, geometry.width, cols);
      out.reserve(static_cast<size_t>(wr.count) * wc.count);
      for (int rp = 0; rp < row_parts; ++rp)
        for (int tr = 0; tr < rows[rp].count; ++tr) {
          const int base = (rows[rp].start + tr) * geometry.width;
          for (int cp = 0; cp < col_parts; ++cp)
            for (int tc = 0; tc < cols[cp].count; ++tc)
              out.push_back(base + cols[cp].start + tc);
        }
      break;
    }
  }
  return out;
}

}  // namespace patchcert
