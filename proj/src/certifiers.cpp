#include "patchcert/certifiers.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

#include "patchcert/errors.hpp"
#include "patchcert/sweep.hpp"

namespace patchcert {

EnsembleVotes::EnsembleVotes(std::vector<VoteGrid> grids)
    : grids_(std::move(grids)) {
  if (grids_.empty())
    throw std::invalid_argument("ensemble needs at least one vote grid");
  for (const VoteGrid& grid : grids_) validate(grid);
  for (size_t i = 1; i < grids_.size(); ++i) {
    if (!(grids_[i].geometry == grids_.front().geometry))
      throw std::invalid_argument("ensemble grids must share one geometry");
    if (grids_[i].num_classes != grids_.front().num_classes)
      throw std::invalid_argument("ensemble grids must share one class count");
  }
  std::sort(grids_.begin(), grids_.end(),
            [](const VoteGrid& a, const VoteGrid& b) {
              return a.strategy < b.strategy;
            });
  for (size_t i = 1; i < grids_.size(); ++i)
    if (grids_[i].strategy == grids_[i - 1].strategy)
      throw std::invalid_argument("ensemble strategies must be distinct, " +
                                  to_string(grids_[i].strategy) + " repeats");
}

const char* to_string(CertMethod method) {
  switch (method) {
    case CertMethod::None:
      return "none";
    case CertMethod::Majority:
      return "majority";
    case CertMethod::MajorityInvariant:
      return "majority-invariant";
  }
  return "?";
}

Label drs_predict(const VoteGrid& grid) {
  return argmax_label(count_votes(grid));
}

bool drs_certify(const VoteGrid& grid, int patch_side) {
  validate_patch_side(grid.geometry, patch_side);
  const LabelCounts counts = count_votes(grid);
  const int32_t winner = argmax_label(counts).index();
  if (grid.num_classes == 1) return true;  // no rival label exists
  const int64_t delta = delta_closed_form(grid.strategy, patch_side);
  int64_t strongest_rival = 0;
  bool have_rival = false;
  for (int32_t c = 0; c < grid.num_classes; ++c) {
    if (c == winner) continue;
    const int64_t claim = counts[c] + (winner > c ? 1 : 0);
    if (!have_rival || claim > strongest_rival) strongest_rival = claim;
    have_rival = true;
  }
  return counts[winner] >= 2 * delta + strongest_rival;
}

int theta(const VoteGrid& grid, int patch_side, Label c) {
  return drs_predict(grid) == c && drs_certify(grid, patch_side) ? 1 : 0;
}

namespace {

std::vector<Label> strategy_winners(const EnsembleVotes& ensemble) {
  std::vector<Label> winners;
  winners.reserve(ensemble.size());
  for (const VoteGrid& grid : ensemble.grids())
    winners.push_back(drs_predict(grid));
  return winners;
}

}  // namespace

Label compute_label(const EnsembleVotes& ensemble) {
  LabelCounts tally(static_cast<size_t>(ensemble.num_classes()), 0);
  for (const Label winner : strategy_winners(ensemble))
    ++tally[winner.index()];
  return argmax_label(tally);
}

Label compute_label_direct(const EnsembleVotes& ensemble) {
  const std::vector<Label> winners = strategy_winners(ensemble);
  int32_t best = 0;
  int64_t best_support = -1;
  for (int32_t c = 0; c < ensemble.num_classes(); ++c) {
    int64_t support = 0;
    for (const Label winner : winners)
      if (winner == Label(c)) ++support;
    if (support > best_support) {
      best = c;
      best_support = support;
    }
  }
  return Label(best);
}

std::optional<Label> majority_certify(const EnsembleVotes& ensemble,
                                      int patch_side) {
  LabelCounts certified(static_cast<size_t>(ensemble.num_classes()), 0);
  for (const VoteGrid& grid : ensemble.grids())
    if (drs_certify(grid, patch_side)) ++certified[drs_predict(grid).index()];
  for (int32_t c = 0; c < ensemble.num_classes(); ++c)
    if (2 * certified[c] > static_cast<int64_t>(ensemble.size())) {
      assert(Label(c) == compute_label(ensemble));
      return Label(c);
    }
  return std::nullopt;
}

namespace {

// Local-malicious emptiness test on the sweep's current window.
bool window_is_safe(const BoundsSweep& sweep, int32_t winner, int32_t k) {
  const int64_t winner_lower = sweep.lower(winner);
  for (int32_t c = 0; c < k; ++c) {
    if (c == winner) continue;
    if (winner_lower < sweep.upper(c) + (winner > c ? 1 : 0)) return false;
  }
  return true;
}

}  // namespace

bool region_certify(const VoteGrid& grid, int patch_side) {
  const int32_t winner = drs_predict(grid).index();
  for (BoundsSweep sweep(grid, patch_side); !sweep.done(); sweep.advance())
    if (!window_is_safe(sweep, winner, grid.num_classes)) return false;
  return true;
}

Label majority_of_tuple(std::span<const Label> tuple) {
  Label best = tuple.front();
  int64_t best_count = -1;
  for (const Label candidate : tuple) {
    int64_t count = 0;
    for (const Label entry : tuple)
      if (entry == candidate) ++count;
    if (count > best_count || (count == best_count && candidate < best)) {
      best = candidate;
      best_count = count;
    }
  }
  return best;
}

namespace {

std::vector<Label> may_from_sweep(const BoundsSweep& sweep, Label predicted,
                                  int32_t k) {
  std::vector<Label> out;
  const int32_t p = predicted.index();
  const int64_t predicted_lower = sweep.lower(p);
  for (int32_t c = 0; c < k; ++c) {
    if (c == p) {
      out.push_back(predicted);
      continue;
    }
    if (predicted_lower < sweep.upper(c) + (p > c ? 1 : 0))
      out.push_back(Label(c));
  }
  return out;
}

// Runs fn(may_sets, patch) for every patch position; sweeps all grids in
// lockstep. fn returns false to stop early.
template <typename Fn>
void for_each_patch_may_sets(const EnsembleVotes& ensemble, int patch_side,
                             Fn&& fn) {
  const std::vector<Label> winners = strategy_winners(ensemble);
  std::vector<BoundsSweep> sweeps;
  sweeps.reserve(ensemble.size());
  for (const VoteGrid& grid : ensemble.grids())
    sweeps.emplace_back(grid, patch_side);

  std::vector<std::vector<Label>> may_sets(ensemble.size());
  const int32_t k = ensemble.num_classes();
  while (!sweeps.front().done()) {
    for (size_t a = 0; a < sweeps.size(); ++a)
      may_sets[a] = may_from_sweep(sweeps[a], winners[a], k);
    if (!fn(may_sets, sweeps.front().patch())) return;
    for (BoundsSweep& sweep : sweeps) sweep.advance();
  }
}

// Emits every element of the Cartesian product in lexicographic order;
// fn returns false to stop early.
template <typename Fn>
void for_each_combination(const std::vector<std::vector<Label>>& sets,
                          Fn&& fn) {
  std::vector<size_t> cursor(sets.size(), 0);
  std::vector<Label> tuple(sets.size());
  while (true) {
    for (size_t a = 0; a < sets.size(); ++a) tuple[a] = sets[a][cursor[a]];
    if (!fn(tuple)) return;
    size_t a = sets.size();
    while (a > 0) {
      --a;
      if (++cursor[a] < sets[a].size()) break;
      cursor[a] = 0;
      if (a == 0) return;
    }
  }
}

}  // namespace

std::vector<std::vector<Label>> enumerate_combinations(
    const EnsembleVotes& ensemble, const PatchRegion& patch) {
  validate(ensemble.geometry(), patch);
  std::vector<std::vector<Label>> may_sets;
  may_sets.reserve(ensemble.size());
  for (const VoteGrid& grid : ensemble.grids())
    may_sets.push_back(may_set(grid, patch, drs_predict(grid)));
  std::vector<std::vector<Label>> tuples;
  for_each_combination(may_sets, [&](const std::vector<Label>& tuple) {
    tuples.push_back(tuple);
    return true;
  });
  return tuples;
}

bool majority_invariant_certify(const EnsembleVotes& ensemble,
                                int patch_side) {
  validate_patch_side(ensemble.geometry(), patch_side);
  const Label ensemble_label = compute_label(ensemble);
  bool intact = true;
  for_each_patch_may_sets(
      ensemble, patch_side,
      [&](const std::vector<std::vector<Label>>& may_sets, const PatchRegion&) {
        bool all_fixed = true;
        for (const std::vector<Label>& set : may_sets)
          if (set.size() != 1) {
            all_fixed = false;
            break;
          }
        if (all_fixed) return true;  // the winners' own majority is the label
        for_each_combination(may_sets, [&](const std::vector<Label>& tuple) {
          if (majority_of_tuple(tuple) != ensemble_label) {
            intact = false;
            return false;
          }
          return true;
        });
        return intact;
      });
  return intact;
}

Certificate certify_sample(const EnsembleVotes& ensemble, int patch_side) {
  validate_patch_side(ensemble.geometry(), patch_side);
  Certificate cert;
  cert.predicted = compute_label(ensemble);
  cert.per_strategy.reserve(ensemble.size());
  for (const VoteGrid& grid : ensemble.grids())
    cert.per_strategy.push_back({grid.strategy, drs_predict(grid),
                                 drs_certify(grid, patch_side),
                                 region_certify(grid, patch_side)});
  if (majority_certify(ensemble, patch_side)) {
    cert.certified = true;
    cert.method = CertMethod::Majority;
  } else if (majority_invariant_certify(ensemble, patch_side)) {
    cert.certified = true;
    cert.method = CertMethod::MajorityInvariant;
  }
  return cert;
}

}  // namespace patchcert
