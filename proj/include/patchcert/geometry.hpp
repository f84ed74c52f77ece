#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace patchcert {

// Image dimensions: `height` pixel rows by `width` pixel columns.
struct Geometry {
  int height = 0;
  int width = 0;

  friend bool operator==(const Geometry&, const Geometry&) = default;
};

enum class AblationKind { Row, Column, Block };

const char* to_string(AblationKind kind);

// One ablation strategy: which region shape sweeps the image and its size
// (rows spanned, columns spanned, or block side).
struct AblationSpec {
  AblationKind kind = AblationKind::Row;
  int size = 1;

  friend bool operator==(const AblationSpec&, const AblationSpec&) = default;
  friend auto operator<=>(const AblationSpec&, const AblationSpec&) = default;
};

std::string to_string(const AblationSpec& spec);

// A single ablation region. `start_index` is the row for Row, the column
// for Column, and the row-major pixel index of the origin for Block.
// Spans wrap around the image borders.
struct AblationRegion {
  int start_index = 0;
  AblationSpec spec;
  Geometry geometry;
};

// An m x m adversarial patch anchored at (row, col). Patches never wrap:
// 0 <= row <= height - side and 0 <= col <= width - side.
struct PatchRegion {
  int row = 0;
  int col = 0;
  int side = 1;

  friend bool operator==(const PatchRegion&, const PatchRegion&) = default;
};

void validate(const Geometry& geometry);
void validate(const Geometry& geometry, const AblationSpec& spec);
void validate(const Geometry& geometry, const PatchRegion& patch);
void validate_patch_side(const Geometry& geometry, int patch_side);

// Number of regions the strategy generates: H, W, or H*W.
int64_t ablation_count(const Geometry& geometry, const AblationSpec& spec);

// All regions of the strategy in ascending start-index order (row-major for
// Block). This order is the canonical alignment for vote vectors.
std::vector<AblationRegion> enumerate_ablations(const Geometry& geometry,
                                                const AblationSpec& spec);

int64_t patch_count(const Geometry& geometry, int patch_side);

// All (H-m+1) x (W-m+1) patch positions in row-major order.
std::vector<PatchRegion> enumerate_patches(const Geometry& geometry,
                                           int patch_side);

// True iff the region's covered cells intersect the patch, decided by
// wrapped-interval intersection (no masks are materialized).
bool overlaps(const AblationRegion& region, const PatchRegion& patch);

// Closed-form count of ablations an m-sided patch can overlap:
// m+size-1 for Row/Column, (m+size-1)^2 for Block.
int64_t delta_closed_form(const AblationSpec& spec, int patch_side);

// The contiguous circular window of start positions (mod `dim`) whose
// wrapped span of `span` cells intersects the patch cells
// [patch_start, patch_start + patch_len - 1].
struct StartWindow {
  int first = 0;
  int count = 0;  // min(patch_len + span - 1, dim)
};

StartWindow overlap_window(int dim, int span, int patch_start, int patch_len);

// Indices (into enumerate_ablations order) of every region overlapping the
// patch, ascending. The complement is the set of patch-safe ablations.
std::vector<int32_t> overlapping_ablations(const Geometry& geometry,
                                           const AblationSpec& spec,
                                           const PatchRegion& patch);

}  // namespace patchcert
