#pragma once

// JSON run configuration: system, potential and per-command blocks.
//
//   {
//     "schema_version": 1,
//     "system": {"family": "affine", "domain": [0, 1],
//                "maps": [{"ratio": "1/3", "offset": 0}, ...]},
//     "potential": {"kind": "bernoulli", "probabilities": ["1/4", "3/4"]},
//     "spectrum": {"q_min": -10, ...}, ...
//   }
//
// Numbers may be JSON numbers or strings holding a decimal or an exact
// ratio "p/q". Errors are ConfigError naming the offending field.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "holderspec/ifs.hpp"
#include "holderspec/potential.hpp"

namespace holderspec {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::shared_ptr<const IfsSystem> ifs;
  Potential psi;      // normalized unless "normalize": false
  Potential raw_psi;  // as written
  bool normalized = true;
  nlohmann::json document;
  std::optional<std::string> output;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

// Field accessors for command blocks. `where` names the field in messages.
double parse_number(const nlohmann::json& value, const std::string& where);
std::vector<double> parse_number_list(const nlohmann::json& value,
                                      const std::string& where);

// Block `name` of the document, or an empty object.
const nlohmann::json& command_block(const RunConfig& cfg, const std::string& name);

double block_number(const nlohmann::json& block, const std::string& block_name,
                    const std::string& key, double fallback);
long long block_integer(const nlohmann::json& block, const std::string& block_name,
                        const std::string& key, long long fallback);
std::string block_string(const nlohmann::json& block, const std::string& block_name,
                         const std::string& key, const std::string& fallback);

}  // namespace holderspec
