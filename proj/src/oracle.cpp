#include "patchcert/oracle.hpp"

#include <algorithm>
#include <string>

#include "patchcert/errors.hpp"
#include "patchcert/sweep.hpp"

namespace patchcert {

namespace {

// All-in test against the bounds at one patch position: candidate c wins
// some reassignment iff it wins the one sending every overlapped vote to c.
void collect_achievable(const LabelCounts& lower, int64_t overlapped,
                        std::vector<Label>& out) {
  out.clear();
  const int32_t k = static_cast<int32_t>(lower.size());
  for (int32_t c = 0; c < k; ++c) {
    const int64_t count = lower[c] + overlapped;
    bool wins = true;
    for (int32_t rival = 0; rival < k; ++rival) {
      if (rival == c) continue;
      if (count < lower[rival] + (c > rival ? 1 : 0)) {
        wins = false;
        break;
      }
    }
    if (wins) out.push_back(Label(c));
  }
}

}  // namespace

std::vector<Label> achievable_winners(const VoteGrid& grid,
                                      const PatchRegion& patch) {
  validate(grid);
  const BoundPair bounds = bounds_for_patch(grid, patch);
  const int64_t overlapped = bounds.upper.front() - bounds.lower.front();
  std::vector<Label> out;
  collect_achievable(bounds.lower, overlapped, out);
  return out;
}

std::vector<Label> achievable_winners_exhaustive(const VoteGrid& grid,
                                                 const PatchRegion& patch,
                                                 const OracleGuard& guard) {
  validate(grid);
  const std::vector<int32_t> hit =
      overlapping_ablations(grid.geometry, grid.strategy, patch);
  const int64_t alphabet = grid.num_classes + 1;  // every label plus ABSTAIN
  int64_t assignments = 1;
  for (size_t i = 0; i < hit.size(); ++i) {
    assignments *= alphabet;
    if (assignments > guard.max_assignments)
      throw GuardError("exhaustive reassignment needs " +
                       std::to_string(alphabet) + "^" +
                       std::to_string(hit.size()) + " assignments, above " +
                       std::to_string(guard.max_assignments));
  }

  VoteGrid scratch = grid;
  std::vector<bool> achievable(static_cast<size_t>(grid.num_classes), false);
  std::vector<int32_t> assignment(hit.size(), 0);  // num_classes == ABSTAIN
  while (true) {
    for (size_t i = 0; i < hit.size(); ++i)
      scratch.labels[static_cast<size_t>(hit[i])] =
          assignment[i] == grid.num_classes ? Label::abstain()
                                            : Label(assignment[i]);
    achievable[static_cast<size_t>(drs_predict(scratch).index())] = true;
    size_t i = hit.size();
    bool carry = true;
    while (i > 0 && carry) {
      --i;
      carry = ++assignment[i] > grid.num_classes;
      if (carry) assignment[i] = 0;
    }
    if (carry) break;  // wrapped past the last assignment (or no overlap)
  }
  std::vector<Label> out;
  for (int32_t c = 0; c < grid.num_classes; ++c)
    if (achievable[static_cast<size_t>(c)]) out.push_back(Label(c));
  return out;
}

bool brute_force_robust(const EnsembleVotes& ensemble, int patch_side,
                        const OracleGuard& guard) {
  validate_patch_side(ensemble.geometry(), patch_side);
  const Label clean = compute_label(ensemble);

  std::vector<BoundsSweep> sweeps;
  sweeps.reserve(ensemble.size());
  for (const VoteGrid& grid : ensemble.grids())
    sweeps.emplace_back(grid, patch_side);

  std::vector<std::vector<Label>> achievable(ensemble.size());
  std::vector<size_t> cursor(ensemble.size());
  std::vector<Label> tuple(ensemble.size());
  LabelCounts lower(static_cast<size_t>(ensemble.num_classes()), 0);
  while (!sweeps.front().done()) {
    int64_t tuples = 1;
    for (size_t a = 0; a < sweeps.size(); ++a) {
      for (int32_t c = 0; c < ensemble.num_classes(); ++c)
        lower[static_cast<size_t>(c)] = sweeps[a].lower(c);
      collect_achievable(lower, sweeps[a].overlapped_count(), achievable[a]);
      tuples *= static_cast<int64_t>(achievable[a].size());
    }
    if (tuples > guard.max_tuples_per_patch)
      throw GuardError("patch at (" +
                       std::to_string(sweeps.front().patch().row) + "," +
                       std::to_string(sweeps.front().patch().col) + ") has " +
                       std::to_string(tuples) +
                       " achievable-winner combinations, above " +
                       std::to_string(guard.max_tuples_per_patch));

    std::fill(cursor.begin(), cursor.end(), 0);
    while (true) {
      for (size_t a = 0; a < achievable.size(); ++a)
        tuple[a] = achievable[a][cursor[a]];
      if (majority_of_tuple(tuple) != clean) return false;
      size_t a = achievable.size();
      bool carry = true;
      while (a > 0 && carry) {
        --a;
        carry = ++cursor[a] >= achievable[a].size();
        if (carry) cursor[a] = 0;
      }
      if (carry) break;
    }
    for (BoundsSweep& sweep : sweeps) sweep.advance();
  }
  return true;
}

ConservativenessReport conservativeness_report(
    std::span<const EnsembleVotes> corpus, int patch_side,
    const OracleGuard& guard) {
  ConservativenessReport report;
  for (const EnsembleVotes& ensemble : corpus) {
    const bool certified = certify_sample(ensemble, patch_side).certified;
    const bool robust = brute_force_robust(ensemble, patch_side, guard);
    if (certified)
      ++(robust ? report.certified_robust : report.certified_attackable);
    else
      ++(robust ? report.uncertified_robust : report.uncertified_attackable);
  }
  return report;
}

}  // namespace patchcert
