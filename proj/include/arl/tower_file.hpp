#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "arl/tower.hpp"
#include "json.hpp"

namespace arl {

inline constexpr const char* kTowerFormat = "arl-tower/1";

/// Contents of a .arl.json file: named towers over one prime.
struct TowerFile {
  Prime l = 2;
  std::vector<std::string> symbols;
  std::vector<std::string> order;  // tower names in file order
  std::map<std::string, Tower> towers;

  /// Throws Usage naming the available towers when `name` is missing.
  const Tower& tower(const std::string& name) const;
};

/// Throws Parse with the JSON path of the offending value (and row/col for matrices).
TowerFile parse_tower_file(const std::string& text);
TowerFile load_tower_file(const std::string& path);

/// Explicit description of the first `levels` levels, transitions, tail and operators.
nlohmann::ordered_json tower_to_json(const Tower& T, std::size_t levels);
std::string dump_tower_file(Prime l, const std::vector<std::pair<std::string, Tower>>& towers, std::size_t levels);

}  // namespace arl
