#pragma once

#include <json.hpp>

#include "emoarc/arcgen.hpp"
#include "emoarc/error.hpp"

namespace emoarc::detail {

inline nlohmann::json to_json(const ThresholdSpec& t) {
  return {{"tau", t.tau}, {"mode", std::string(to_string(t.mode))}};
}

inline nlohmann::json to_json(const ArcConfig& c) {
  nlohmann::json j = {
      {"bin_size", c.bin_size},
      {"stride", c.stride},
      {"oov", std::string(to_string(c.oov))},
      {"granularity", std::string(to_string(c.granularity))},
  };
  j["threshold"] = c.threshold ? to_json(*c.threshold) : nlohmann::json(nullptr);
  return j;
}

inline ArcConfig arc_config_from_json(const nlohmann::json& j) {
  ArcConfig c;
  c.bin_size = j.value("bin_size", std::size_t{1});
  c.stride = j.value("stride", std::size_t{1});
  c.oov = parse_oov_policy(j.value("oov", std::string("drop_na")));
  c.granularity = parse_granularity(j.value("granularity", std::string("instance_mean")));
  if (const auto it = j.find("threshold"); it != j.end() && it->is_object()) {
    c.threshold = ThresholdSpec{it->value("tau", 0.0),
                                parse_threshold_mode(it->value("mode", std::string("auto")))};
  }
  return c;
}

inline nlohmann::json parse_json_object(std::string_view text, std::string_view what) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCategory::format, std::string(what) + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) fail(ErrorCategory::format, std::string(what) + ": expected a JSON object");
  return j;
}

}  // namespace emoarc::detail
