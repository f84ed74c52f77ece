#pragma once

#include <optional>
#include <span>
#include <vector>

#include "patchcert/votes.hpp"

namespace patchcert {

// The per-strategy vote grids for one sample, validated to share one
// geometry and class count, held in canonical strategy order
// (row < column < block, then by size).
class EnsembleVotes {
 public:
  explicit EnsembleVotes(std::vector<VoteGrid> grids);

  const std::vector<VoteGrid>& grids() const { return grids_; }
  const Geometry& geometry() const { return grids_.front().geometry; }
  int num_classes() const { return grids_.front().num_classes; }
  size_t size() const { return grids_.size(); }

 private:
  std::vector<VoteGrid> grids_;
};

enum class CertMethod { None, Majority, MajorityInvariant };

const char* to_string(CertMethod method);

struct StrategyDiagnostics {
  AblationSpec strategy;
  Label prediction;        // the strategy's plurality winner
  bool margin_certified;   // the 2*Delta vote-margin inequality holds
  bool region_certified;   // empty local-malicious set at every patch
};

struct Certificate {
  Label predicted;
  bool certified = false;
  CertMethod method = CertMethod::None;
  std::vector<StrategyDiagnostics> per_strategy;
};

// Plurality winner of a grid, smallest index on ties. A grid whose entries
// all abstain resolves to label 0 and can never be certified.
Label drs_predict(const VoteGrid& grid);

// True iff the winner's votes exceed every rival's by 2*Delta plus the
// tie-break term: n_c >= 2*Delta + max_{c' != c}(n_c' + 1[c > c']).
bool drs_certify(const VoteGrid& grid, int patch_side);

// 1 iff drs_predict(grid) == c and drs_certify(grid, patch_side).
int theta(const VoteGrid& grid, int patch_side, Label c);

// Majority label over the per-strategy winners, smallest index on ties.
Label compute_label(const EnsembleVotes& ensemble);

// Same result computed as a double argmax over candidate labels; kept as an
// independent route for cross-checking.
Label compute_label_direct(const EnsembleVotes& ensemble);

// The label certified by strictly more than half of the per-strategy
// margin-certified defenders, when one exists (at most one can).
std::optional<Label> majority_certify(const EnsembleVotes& ensemble,
                                      int patch_side);

// True iff the grid's local-malicious set is empty at every patch position:
// no single patch placement can promote any rival past the winner.
bool region_certify(const VoteGrid& grid, int patch_side);

// Majority label of one winner combination, smallest index on ties.
Label majority_of_tuple(std::span<const Label> tuple);

// Cartesian product of the per-strategy may-sets at one patch position, in
// canonical strategy order; tuples are distinct and lexicographic.
std::vector<std::vector<Label>> enumerate_combinations(
    const EnsembleVotes& ensemble, const PatchRegion& patch);

// True iff for every patch position, every combination of per-strategy
// may-set labels keeps the ensemble majority on compute_label(ensemble).
// Stops at the first violating combination.
bool majority_invariant_certify(const EnsembleVotes& ensemble, int patch_side);

// Predicts via compute_label, then certifies via the defender majority or,
// failing that, the combination-majority invariant.
Certificate certify_sample(const EnsembleVotes& ensemble, int patch_side);

}  // namespace patchcert
