#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "patchcert/certifiers.hpp"

namespace patchcert {

struct OracleGuard {
  // Refuse a patch whose product of achievable-winner set sizes exceeds this.
  int64_t max_tuples_per_patch = 10'000;
  // Refuse exhaustive reassignment enumeration past this many assignments.
  int64_t max_assignments = 1'000'000;
};

// The exact set of labels some rewrite of the patch-overlapped votes can
// turn into the grid's plurality winner. Decided per label by the all-in
// test: assigning every overlapped entry to a candidate simultaneously
// maximizes its count and minimizes every rival's, so it dominates all
// other reassignments.
std::vector<Label> achievable_winners(const VoteGrid& grid,
                                      const PatchRegion& patch);

// Same set by enumerating every reassignment of the overlapped entries over
// the K labels plus ABSTAIN. Cross-check for the closed form; guarded.
std::vector<Label> achievable_winners_exhaustive(
    const VoteGrid& grid, const PatchRegion& patch,
    const OracleGuard& guard = {});

// Exact vote-level robustness: true iff at every patch position, every
// combination of per-strategy achievable winners still yields the clean
// ensemble label. The adversary rewrites each strategy's overlapped votes
// independently.
bool brute_force_robust(const EnsembleVotes& ensemble, int patch_side,
                        const OracleGuard& guard = {});

struct ConservativenessReport {
  int64_t certified_robust = 0;
  int64_t certified_attackable = 0;  // soundness violations; must stay zero
  int64_t uncertified_robust = 0;
  int64_t uncertified_attackable = 0;

  int64_t total() const {
    return certified_robust + certified_attackable + uncertified_robust +
           uncertified_attackable;
  }
};

ConservativenessReport conservativeness_report(
    std::span<const EnsembleVotes> corpus, int patch_side,
    const OracleGuard& guard = {});

}  // namespace patchcert
