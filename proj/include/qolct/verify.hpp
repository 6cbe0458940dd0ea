#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qolct::verify {

enum class Suite { algebra, qft, qolct, oracle, uncertainty, all };

std::optional<Suite> parse_suite(std::string_view name);
std::string_view suite_name(Suite s);

/// One property evaluation. A check passes when `observed` is finite and
/// observed <= tolerance; inequality checks report the scaled violation.
struct Check {
  std::string check;
  nlohmann::json params;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Runs a suite under the currently injected fault. Deterministic given the seed.
std::vector<Check> run(Suite suite, std::uint64_t seed);

nlohmann::json to_json(const std::vector<Check>& checks);
bool all_pass(const std::vector<Check>& checks);

}  // namespace qolct::verify
