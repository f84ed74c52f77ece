#include "patchcert/config.hpp"

#include <fstream>

#include "patchcert/errors.hpp"

namespace patchcert {

void validate(const RunConfig& config) {
  validate(config.geometry);
  if (config.num_classes < 1) throw ConfigError("num_classes must be >= 1");
  if (config.strategies.empty())
    throw ConfigError("at least one ablation strategy is required");
  for (const AblationSpec& spec : config.strategies)
    validate(config.geometry, spec);
  for (size_t i = 0; i < config.strategies.size(); ++i)
    for (size_t j = i + 1; j < config.strategies.size(); ++j)
      if (config.strategies[i] == config.strategies[j])
        throw ConfigError("duplicate strategy " +
                          to_string(config.strategies[i]));
  validate_patch_side(config.geometry, config.patch_side);
  if (config.oracle.max_tuples_per_patch < 1 ||
      config.oracle.max_assignments < 1)
    throw ConfigError("oracle guard limits must be >= 1");
}

AblationKind parse_ablation_kind(const std::string& text) {
  if (text == "row") return AblationKind::Row;
  if (text == "column") return AblationKind::Column;
  if (text == "block") return AblationKind::Block;
  throw ParseError("unknown ablation kind '" + text +
                   "' (expected row, column, or block)");
}

AblationSpec parse_strategy(const std::string& text) {
  const size_t colon = text.find(':');
  if (colon == std::string::npos || colon + 1 >= text.size())
    throw ParseError("strategy '" + text + "' must look like kind:size");
  AblationSpec spec;
  spec.kind = parse_ablation_kind(text.substr(0, colon));
  try {
    spec.size = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw ParseError("strategy '" + text + "' has a non-numeric size");
  }
  return spec;
}

RunConfig config_from_json(const nlohmann::json& doc) {
  RunConfig config;
  try {
    if (doc.contains("geometry")) {
      config.geometry.height = doc["geometry"].value("height", 32);
      config.geometry.width = doc["geometry"].value("width", 32);
    }
    config.num_classes = doc.value("num_classes", config.num_classes);
    config.patch_side = doc.value("patch_side", config.patch_side);
    if (doc.contains("strategies")) {
      config.strategies.clear();
      for (const auto& entry : doc["strategies"]) {
        AblationSpec spec;
        spec.kind = parse_ablation_kind(entry.at("kind").get<std::string>());
        spec.size = entry.at("size").get<int>();
        config.strategies.push_back(spec);
      }
    }
    if (doc.contains("oracle")) {
      config.oracle.max_tuples_per_patch = doc["oracle"].value(
          "max_tuples_per_patch", config.oracle.max_tuples_per_patch);
      config.oracle.max_assignments =
          doc["oracle"].value("max_assignments", config.oracle.max_assignments);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad config: ") + e.what());
  }
  validate(config);
  return config;
}

nlohmann::json to_json(const RunConfig& config) {
  nlohmann::json strategies = nlohmann::json::array();
  for (const AblationSpec& spec : config.strategies)
    strategies.push_back(
        {{"kind", to_string(spec.kind)}, {"size", spec.size}});
  return {{"geometry",
           {{"height", config.geometry.height},
            {"width", config.geometry.width}}},
          {"num_classes", config.num_classes},
          {"strategies", strategies},
          {"patch_side", config.patch_side},
          {"oracle",
           {{"max_tuples_per_patch", config.oracle.max_tuples_per_patch},
            {"max_assignments", config.oracle.max_assignments}}}};
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("config " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(doc);
}

void save_config(const RunConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write config file " + path);
  out << to_json(config).dump(2) << "\n";
}

}  // namespace patchcert
