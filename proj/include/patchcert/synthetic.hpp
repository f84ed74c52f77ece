#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "patchcert/records.hpp"

namespace patchcert {

enum class Scenario { UniformRandom, NearUnanimous, MarginSweep, Figure1Like };

Scenario parse_scenario(const std::string& name);
const char* to_string(Scenario scenario);

// Deterministic fixture generation: equal (config, count, seed, scenario)
// inputs produce byte-identical records.
//   uniform-random: iid labels with a 10% abstain rate.
//   near-unanimous: one label at a 98% rate, defects uniform elsewhere.
//   margin-sweep:   winner/runner-up margins swept across the certification
//                   threshold, rival votes contiguous so worst-case patch
//                   windows exist.
//   figure1-like:   engineered so no defender majority certifies but the
//                   combination-majority invariant can; searches with the
//                   certifier in the loop.
std::vector<SampleRecord> generate_synthetic(const RunConfig& config,
                                             int count, uint64_t seed,
                                             Scenario scenario);

// Row-major grid of non-negative pixel values.
struct ImageGrid {
  Geometry geometry;
  std::vector<int64_t> pixels;
};

// Toy deterministic classifier over the masked image: the sum of the pixels
// the region retains, mod K; a zero sum abstains.
Label stub_classify(const ImageGrid& image, const AblationRegion& region,
                    int num_classes);

// stub_classify over every region of the strategy, in enumeration order.
VoteGrid votes_from_image(const ImageGrid& image, const AblationSpec& spec,
                          int num_classes);

}  // namespace patchcert
