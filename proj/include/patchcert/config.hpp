#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "patchcert/geometry.hpp"
#include "patchcert/oracle.hpp"

namespace patchcert {

// One run's hyperparameters. Defaults match the usual 32x32 / 10-class
// setup with row and column spans of 4, block side 12, and a 5x5 patch.
struct RunConfig {
  Geometry geometry{32, 32};
  int num_classes = 10;
  std::vector<AblationSpec> strategies{{AblationKind::Row, 4},
                                       {AblationKind::Column, 4},
                                       {AblationKind::Block, 12}};
  int patch_side = 5;
  OracleGuard oracle;
};

void validate(const RunConfig& config);

AblationKind parse_ablation_kind(const std::string& text);

// "row:4", "column:4", "block:12"
AblationSpec parse_strategy(const std::string& text);

RunConfig config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const RunConfig& config);

RunConfig load_config(const std::string& path);
void save_config(const RunConfig& config, const std::string& path);

}  // namespace patchcert
