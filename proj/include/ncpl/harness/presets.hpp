#pragma once

#include <string>
#include <vector>

#include "ncpl/harness/config.hpp"

namespace ncpl {

struct Preset {
  std::string name;
  std::string description;
  bool is_sweep = false;  ///< config carries a "sweep" block
  json config;
};

const std::vector<Preset>& presets();

/// Throws ConfigError for unknown names.
const Preset& find_preset(const std::string& name);

}  // namespace ncpl
