#include "patchcert/certifiers.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

#include "patchcert/errors.hpp"
#include "patchcert/sweep.hpp"
#include "support/builders.hpp"

using namespace patchcert;
using namespace patchcert::testing;

namespace {

const Geometry kG8{8, 8};
const AblationSpec kRow2{AblationKind::Row, 2};
const AblationSpec kCol2{AblationKind::Column, 2};
const AblationSpec kBlock3{AblationKind::Block, 3};

std::vector<Label> unanimous(int64_t n, int32_t label) {
  return std::vector<Label>(static_cast<size_t>(n), Label(label));
}

// Winner-vs-rival grid with the rival votes in one contiguous run from
// index 0, so a pure-winner patch window always exists.
std::vector<Label> run_grid(int64_t n, int32_t winner, int32_t rival,
                            int64_t rival_votes) {
  std::vector<Label> labels(static_cast<size_t>(n), Label(winner));
  for (int64_t i = 0; i < rival_votes; ++i)
    labels[static_cast<size_t>(i)] = Label(rival);
  return labels;
}

// The four-combination fixture: may-sets {0,1}, {1}, {1,2} at patch (0,0,1)
// with ensemble label 1.
EnsembleVotes four_combination_ensemble() {
  const Geometry g{4, 4};
  std::vector<Label> block(16);
  for (int i = 0; i < 16; ++i) block[i] = Label(i < 8 ? 1 : 2);
  return EnsembleVotes(
      {make_grid(g, {AblationKind::Row, 1}, 3, {1, 1, 0, 1}),
       make_grid(g, {AblationKind::Column, 1}, 3, {1, 1, 1, 1}),
       make_grid(g, {AblationKind::Block, 1}, 3, std::move(block))});
}

EnsembleVotes separation_ensemble() {
  return EnsembleVotes(
      {make_grid(kG8, kRow2, 3, run_grid(8, 0, 1, 2)),
       make_grid(kG8, kCol2, 3, run_grid(8, 0, 2, 2)),
       make_grid(kG8, kBlock3, 3, unanimous(64, 0))});
}

}  // namespace

TEST_CASE("drs_predict") {
  CHECK(drs_predict(make_grid({4, 4}, kRow2, 2, {0, 0, 1, 0})) == L(0));
  CHECK(drs_predict(make_grid({5, 4}, {AblationKind::Row, 1}, 3,
                              {0, 0, 1, 1, 2})) == L(0));
  CHECK(drs_predict(make_grid({10, 4}, {AblationKind::Row, 1}, 3,
                              {1, 1, 1, 1, 1, 2, 2, 2, 2, 2})) == L(1));
  // All abstained: argmax over zero counts resolves to label 0.
  CHECK(drs_predict(make_grid({4, 4}, kRow2, 3, {-1, -1, -1, -1})) == L(0));
}

TEST_CASE("drs_certify margin inequality") {
  const Geometry g{32, 32};
  const AblationSpec row4{AblationKind::Row, 4};
  // counts [30, 2], delta 8: 30 >= 16 + 2.
  CHECK(drs_certify(make_grid(g, row4, 2, run_grid(32, 0, 1, 2)), 5));
  // counts [17, 15]: 17 < 16 + 15.
  CHECK_FALSE(drs_certify(make_grid(g, row4, 2, run_grid(32, 0, 1, 15)), 5));
  // Unanimous with N >= 2*delta.
  CHECK(drs_certify(make_grid(g, row4, 2, unanimous(32, 0)), 5));
  CHECK(drs_certify(make_grid(kG8, kBlock3, 3, unanimous(64, 2)), 2));
  // Unanimous but N < 2*delta: 8 < 2*8.
  CHECK_FALSE(
      drs_certify(make_grid(kG8, {AblationKind::Row, 4}, 2, unanimous(8, 0)),
                  5));
}

TEST_CASE("drs_certify tie-break term: equal margins, opposite verdicts") {
  // Margin exactly 2*delta = 4 (delta = 2 for Row1, m=2).
  const AblationSpec row1{AblationKind::Row, 1};
  const VoteGrid winner_small =
      make_grid(kG8, row1, 2, run_grid(8, 0, 1, 2));  // counts [6,2]
  const VoteGrid winner_large =
      make_grid(kG8, row1, 2, run_grid(8, 1, 0, 2));  // counts [2,6]
  CHECK(drs_certify(winner_small, 2));        // 6 >= 4 + 2 + 0
  CHECK_FALSE(drs_certify(winner_large, 2));  // 6 <  4 + 2 + 1
}

TEST_CASE("theta") {
  const VoteGrid certified = make_grid({32, 32}, {AblationKind::Row, 4}, 2,
                                       unanimous(32, 0));
  CHECK(theta(certified, 5, L(0)) == 1);
  CHECK(theta(certified, 5, L(1)) == 0);
  const VoteGrid uncertified = make_grid({32, 32}, {AblationKind::Row, 4}, 2,
                                         run_grid(32, 0, 1, 15));
  CHECK(theta(uncertified, 5, L(0)) == 0);
}

TEST_CASE("fully abstained grids resolve to label 0 and never certify") {
  const VoteGrid grid =
      make_grid(kG8, kRow2, 3, std::vector<Label>(8, Label::abstain()));
  CHECK(drs_predict(grid) == L(0));
  CHECK(theta(grid, 2, L(0)) == 0);
  CHECK_FALSE(drs_certify(grid, 2));
  CHECK_FALSE(region_certify(grid, 2));
}

TEST_CASE("compute_label majority over strategy winners") {
  auto winners_ensemble = [&](int32_t a, int32_t b, int32_t c) {
    return EnsembleVotes({make_grid(kG8, kRow2, 3, unanimous(8, a)),
                          make_grid(kG8, kCol2, 3, unanimous(8, b)),
                          make_grid(kG8, kBlock3, 3, unanimous(64, c))});
  };
  CHECK(compute_label(winners_ensemble(0, 0, 1)) == L(0));
  CHECK(compute_label(winners_ensemble(0, 1, 2)) == L(0));  // 1-1-1 tie
  CHECK(compute_label(winners_ensemble(2, 2, 2)) == L(2));
  CHECK(compute_label_direct(winners_ensemble(0, 1, 2)) == L(0));
}

TEST_CASE("compute_label equals the double-argmax route on random input") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const EnsembleVotes ensemble =
        random_ensemble(rng, kG8, {kRow2, kCol2, kBlock3}, 4, 0);
    CHECK(compute_label(ensemble) == compute_label_direct(ensemble));
  }
}

TEST_CASE("majority_certify") {
  // Two of three margin-certified for label 0.
  const EnsembleVotes two_of_three(
      {make_grid(kG8, kRow2, 2, unanimous(8, 0)),
       make_grid(kG8, kCol2, 2, unanimous(8, 0)),
       make_grid(kG8, kBlock3, 2, run_grid(64, 0, 1, 32))});
  CHECK(majority_certify(two_of_three, 2) == Label(0));

  // Certified winners split 1-1: no strict majority.
  const EnsembleVotes split(
      {make_grid(kG8, kRow2, 2, unanimous(8, 0)),
       make_grid(kG8, kCol2, 2, unanimous(8, 1)),
       make_grid(kG8, kBlock3, 2, run_grid(64, 0, 1, 32))});
  CHECK_FALSE(majority_certify(split, 2).has_value());

  // Two strategies, one certified: 1 > 2/2 is false.
  const EnsembleVotes pair({make_grid(kG8, kRow2, 2, unanimous(8, 0)),
                            make_grid(kG8, kCol2, 2, run_grid(8, 0, 1, 3))});
  CHECK_FALSE(majority_certify(pair, 2).has_value());
}

TEST_CASE("region_certify") {
  CHECK(region_certify(make_grid(kG8, kRow2, 2, unanimous(8, 0)), 2));
  // Margin exactly 2*delta with the larger-index winner: a pure-winner
  // window makes the smaller-index rival local-malicious.
  CHECK_FALSE(region_certify(
      make_grid(kG8, {AblationKind::Row, 1}, 2, run_grid(8, 1, 0, 2)), 2));
  // Same votes with the smaller-index winner: safe everywhere.
  CHECK(region_certify(
      make_grid(kG8, {AblationKind::Row, 1}, 2, run_grid(8, 0, 1, 2)), 2));
}

TEST_CASE("margin certification implies region certification implies "
          "singleton may-sets") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    const AblationKind kind = static_cast<AblationKind>(rng() % 3);
    const AblationSpec spec{kind, static_cast<int>(1 + rng() % 3)};
    const VoteGrid grid =
        biased_grid(rng, kG8, spec, 3, 55 + static_cast<int>(rng() % 45),
                    Label(static_cast<int32_t>(rng() % 3)));
    const int m = static_cast<int>(1 + rng() % 3);
    const bool margin = drs_certify(grid, m);
    const bool region = region_certify(grid, m);
    if (margin) CHECK(region);
    const Label winner = drs_predict(grid);
    bool all_singleton = true;
    for (const PatchRegion& patch : enumerate_patches(kG8, m))
      if (may_set(grid, patch, winner).size() != 1) all_singleton = false;
    CHECK(region == all_singleton);
  }
}

TEST_CASE("majority_of_tuple") {
  const std::vector<Label> tie{L(0), L(1), L(2)};
  CHECK(majority_of_tuple(tie) == L(0));
  const std::vector<Label> two_one{L(1), L(1), L(2)};
  CHECK(majority_of_tuple(two_one) == L(1));
  const std::vector<Label> single{L(2)};
  CHECK(majority_of_tuple(single) == L(2));
  const std::vector<Label> late_tie{L(2), L(1), L(1), L(2)};
  CHECK(majority_of_tuple(late_tie) == L(1));
}

TEST_CASE("enumerate_combinations: the four-combination example") {
  const EnsembleVotes ensemble = four_combination_ensemble();
  const PatchRegion patch{0, 0, 1};

  // May-sets in canonical order: row {0,1}, column {1}, block {1,2}.
  const auto& grids = ensemble.grids();
  CHECK(may_set(grids[0], patch, drs_predict(grids[0])) ==
        std::vector<Label>{L(0), L(1)});
  CHECK(may_set(grids[1], patch, drs_predict(grids[1])) ==
        std::vector<Label>{L(1)});
  CHECK(may_set(grids[2], patch, drs_predict(grids[2])) ==
        std::vector<Label>{L(1), L(2)});

  const auto tuples = enumerate_combinations(ensemble, patch);
  const std::vector<std::vector<Label>> expected{
      {L(0), L(1), L(1)},
      {L(0), L(1), L(2)},
      {L(1), L(1), L(1)},
      {L(1), L(1), L(2)}};
  CHECK(tuples == expected);
}

TEST_CASE("enumerate_combinations: product sizes 2*3*2") {
  const Geometry g{6, 6};
  std::vector<Label> block(36, Label::abstain());
  for (int i = 0; i <= 10; ++i) block[static_cast<size_t>(i)] = Label(1);
  for (int i = 11; i <= 19; ++i) block[static_cast<size_t>(i)] = Label(2);
  for (int i = 20; i <= 29; ++i) block[static_cast<size_t>(i)] = Label(3);
  const EnsembleVotes ensemble(
      {make_grid(g, {AblationKind::Row, 1}, 4, {1, 0, 0, 1, 1, 1}),
       make_grid(g, {AblationKind::Column, 1}, 4, {1, 0, 1, 1, 2, 2}),
       make_grid(g, {AblationKind::Block, 1}, 4, std::move(block))});
  const PatchRegion patch{0, 0, 1};
  const auto& grids = ensemble.grids();
  CHECK(may_set(grids[0], patch, drs_predict(grids[0])).size() == 2);
  CHECK(may_set(grids[1], patch, drs_predict(grids[1])).size() == 3);
  CHECK(may_set(grids[2], patch, drs_predict(grids[2])).size() == 2);
  const auto tuples = enumerate_combinations(ensemble, patch);
  CHECK(tuples.size() == 12);
  // Distinct by construction.
  auto sorted = tuples;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("enumerate_combinations: all singleton sets give one tuple") {
  const EnsembleVotes ensemble(
      {make_grid(kG8, kRow2, 3, unanimous(8, 2)),
       make_grid(kG8, kCol2, 3, unanimous(8, 2)),
       make_grid(kG8, kBlock3, 3, unanimous(64, 2))});
  const auto tuples = enumerate_combinations(ensemble, {0, 0, 2});
  REQUIRE(tuples.size() == 1);
  CHECK(tuples.front() == std::vector<Label>{L(2), L(2), L(2)});
}

TEST_CASE("majority invariant fails on the four-combination example") {
  const EnsembleVotes ensemble = four_combination_ensemble();
  CHECK(compute_label(ensemble) == L(1));
  // Witness: (0,1,2) is a 1-1-1 tie broken to 0 != 1.
  CHECK(majority_of_tuple(std::vector<Label>{L(0), L(1), L(2)}) == L(0));
  CHECK_FALSE(majority_invariant_certify(ensemble, 1));
}

TEST_CASE("majority invariant holds when only one strategy wavers") {
  CHECK(majority_invariant_certify(separation_ensemble(), 2));
  const EnsembleVotes all_fixed(
      {make_grid(kG8, kRow2, 3, unanimous(8, 2)),
       make_grid(kG8, kCol2, 3, unanimous(8, 2)),
       make_grid(kG8, kBlock3, 3, unanimous(64, 2))});
  CHECK(majority_invariant_certify(all_fixed, 2));
}

TEST_CASE("certify_sample follows the majority-then-invariant cascade") {
  const EnsembleVotes majority(
      {make_grid(kG8, kRow2, 2, unanimous(8, 0)),
       make_grid(kG8, kCol2, 2, unanimous(8, 0)),
       make_grid(kG8, kBlock3, 2, run_grid(64, 0, 1, 32))});
  const Certificate c1 = certify_sample(majority, 2);
  CHECK(c1.predicted == L(0));
  CHECK(c1.certified);
  CHECK(c1.method == CertMethod::Majority);
  REQUIRE(c1.per_strategy.size() == 3);
  CHECK(c1.per_strategy[0].strategy == kRow2);
  CHECK(c1.per_strategy[0].margin_certified);
  CHECK(c1.per_strategy[2].strategy == kBlock3);
  CHECK_FALSE(c1.per_strategy[2].margin_certified);

  const Certificate c2 = certify_sample(separation_ensemble(), 2);
  CHECK(c2.predicted == L(0));
  CHECK(c2.certified);
  CHECK(c2.method == CertMethod::MajorityInvariant);

  const Certificate c3 = certify_sample(four_combination_ensemble(), 1);
  CHECK(c3.predicted == L(1));
  CHECK_FALSE(c3.certified);
  CHECK(c3.method == CertMethod::None);
}

TEST_CASE("majority certification implies the invariant holds") {
  std::mt19937_64 rng(41);
  int majority_hits = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const EnsembleVotes ensemble = random_ensemble(
        rng, kG8, {kRow2, kCol2, kBlock3}, 3,
        60 + static_cast<int>(rng() % 40));
    const auto certified_label = majority_certify(ensemble, 2);
    if (certified_label) {
      ++majority_hits;
      CHECK(*certified_label == compute_label(ensemble));
      CHECK(majority_invariant_certify(ensemble, 2));
    }
  }
  CHECK(majority_hits > 0);  // the sweep actually exercises the implication
}

TEST_CASE("predicted label never depends on the patch side") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const EnsembleVotes ensemble =
        random_ensemble(rng, kG8, {kRow2, kCol2, kBlock3}, 3, 50);
    const Certificate at1 = certify_sample(ensemble, 1);
    for (int m : {2, 3, 5}) CHECK(certify_sample(ensemble, m).predicted ==
                                  at1.predicted);
  }
}

TEST_CASE("ensemble validation") {
  CHECK_THROWS_AS(EnsembleVotes({}), std::invalid_argument);
  CHECK_THROWS_AS(
      EnsembleVotes({make_grid(kG8, kRow2, 2, unanimous(8, 0)),
                     make_grid({4, 4}, kCol2, 2, unanimous(4, 0))}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      EnsembleVotes({make_grid(kG8, kRow2, 2, unanimous(8, 0)),
                     make_grid(kG8, kRow2, 2, unanimous(8, 1))}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      EnsembleVotes({make_grid(kG8, kRow2, 2, unanimous(8, 0)),
                     make_grid(kG8, kCol2, 3, unanimous(8, 0))}),
      std::invalid_argument);

  // Canonical reordering: block-first input comes out row, column, block.
  const EnsembleVotes reordered(
      {make_grid(kG8, kBlock3, 2, unanimous(64, 0)),
       make_grid(kG8, kCol2, 2, unanimous(8, 0)),
       make_grid(kG8, kRow2, 2, unanimous(8, 0))});
  CHECK(reordered.grids()[0].strategy == kRow2);
  CHECK(reordered.grids()[1].strategy == kCol2);
  CHECK(reordered.grids()[2].strategy == kBlock3);
}

TEST_CASE("sweep handles windows saturating one axis only") {
  // Block reach 6 covers all 5 rows but not all 9 columns.
  const Geometry g{5, 9};
  const AblationSpec spec{AblationKind::Block, 4};
  std::mt19937_64 rng(73);
  const VoteGrid grid = random_grid(rng, g, spec, 3);
  const auto patches = enumerate_patches(g, 3);
  size_t index = 0;
  for (BoundsSweep sweep(grid, 3); !sweep.done(); sweep.advance(), ++index) {
    const BoundPair naive = bounds_for_patch(grid, patches[index]);
    CHECK(sweep.overlapped_count() ==
          naive.upper.front() - naive.lower.front());
    CHECK(sweep.bounds().lower == naive.lower);
  }
  CHECK(index == patches.size());
}

TEST_CASE("naive and sliding-window bounds agree bit-exactly") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 25; ++trial) {
    const Geometry g{static_cast<int>(5 + rng() % 6),
                     static_cast<int>(5 + rng() % 6)};
    const AblationKind kind = static_cast<AblationKind>(rng() % 3);
    const int dim = kind == AblationKind::Row      ? g.height
                    : kind == AblationKind::Column ? g.width
                        : std::min(g.height, g.width);
    const AblationSpec spec{kind, static_cast<int>(1 + rng() % dim)};
    const VoteGrid grid = random_grid(rng, g, spec, 3);
    const int m = static_cast<int>(1 + rng() % std::min(g.height, g.width));
    const auto patches = enumerate_patches(g, m);
    size_t index = 0;
    for (BoundsSweep sweep(grid, m); !sweep.done(); sweep.advance(), ++index) {
      REQUIRE(index < patches.size());
      CHECK(sweep.patch() == patches[index]);
      const BoundPair naive = bounds_for_patch(grid, patches[index]);
      const BoundPair incremental = sweep.bounds();
      CHECK(naive.lower == incremental.lower);
      CHECK(naive.upper == incremental.upper);
    }
    CHECK(index == patches.size());
  }
}
