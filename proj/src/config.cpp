#include "holderspec/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include "holderspec/errors.hpp"
#include "holderspec/thermodynamics.hpp"

namespace holderspec {

using nlohmann::json;

namespace {

double parse_decimal(std::string_view text, const std::string& where) {
  // strtod accepts what JSON numbers accept plus "inf"/"nan", which are
  // rejected below.
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw ConfigError(where + ": '" + s + "' is not a finite number or ratio p/q");
  }
  return v;
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(where + "." + key + ": missing field");
  return *it;
}

Interval parse_domain(const json& sys) {
  const json& d = require(sys, "domain", "system");
  if (!d.is_array() || d.size() != 2) throw ConfigError("system.domain: expected [lo, hi]");
  const Interval iv{parse_number(d[0], "system.domain[0]"), parse_number(d[1], "system.domain[1]")};
  if (!(iv.lo < iv.hi)) throw ConfigError("system.domain: need lo < hi");
  return iv;
}

std::shared_ptr<const IfsSystem> parse_system(const json& doc) {
  const json& sys = require(doc, "system", "config");
  const json& fam = require(sys, "family", "system");
  if (!fam.is_string()) throw ConfigError("system.family: expected a string");
  const std::string family = fam.get<std::string>();
  const Interval domain = parse_domain(sys);
  const json& maps = require(sys, "maps", "system");
  if (!maps.is_array()) throw ConfigError("system.maps: expected an array");

  std::vector<ContractionMap> out;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const std::string where = "system.maps[" + std::to_string(i) + "]";
    const json& m = maps[i];
    try {
      if (family == "affine") {
        out.push_back(ContractionMap::affine(parse_number(require(m, "ratio", where), where + ".ratio"),
                                             parse_number(require(m, "offset", where), where + ".offset"),
                                             domain));
      } else if (family == "moebius") {
        out.push_back(ContractionMap::moebius(parse_number(require(m, "a", where), where + ".a"),
                                              parse_number(require(m, "b", where), where + ".b"),
                                              parse_number(require(m, "c", where), where + ".c"),
                                              parse_number(require(m, "d", where), where + ".d"),
                                              domain));
      } else {
        throw ConfigError("system.family: '" + family + "' is not one of affine, moebius");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  try {
    return std::make_shared<const IfsSystem>(domain, std::move(out));
  } catch (const Error& e) {
    throw ConfigError(std::string("system: ") + e.what());
  }
}

Potential parse_potential(const json& doc, const std::shared_ptr<const IfsSystem>& ifs) {
  const json& pot = require(doc, "potential", "config");
  const json& kind_field = require(pot, "kind", "potential");
  if (!kind_field.is_string()) throw ConfigError("potential.kind: expected a string");
  const std::string kind = kind_field.get<std::string>();
  try {
    if (kind == "bernoulli") {
      if (pot.contains("probabilities")) {
        return Potential::bernoulli_probabilities(
            parse_number_list(pot["probabilities"], "potential.probabilities"));
      }
      return Potential::bernoulli(
          parse_number_list(require(pot, "log_weights", "potential"), "potential.log_weights"));
    }
    if (kind == "finite_range") {
      const auto depth = block_integer(pot, "potential", "depth", 0);
      if (depth < 1) throw ConfigError("potential.depth: expected an integer >= 1");
      return Potential::finite_range(ifs->size(), static_cast<std::size_t>(depth),
                                     parse_number_list(require(pot, "table", "potential"),
                                                       "potential.table"));
    }
    if (kind == "geometric_multiple") {
      const double c = parse_number(require(pot, "multiple", "potential"), "potential.multiple");
      return Potential::combo(c, ifs, 0.0, nullptr, 0.0);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("potential: ") + e.what());
  }
  throw ConfigError("potential.kind: '" + kind +
                    "' is not one of bernoulli, finite_range, geometric_multiple");
}

}  // namespace

double parse_number(const json& value, const std::string& where) {
  if (value.is_number()) {
    const double v = value.get<double>();
    if (!std::isfinite(v)) throw ConfigError(where + ": not finite");
    return v;
  }
  if (!value.is_string()) throw ConfigError(where + ": expected a number or a string \"p/q\"");
  const std::string s = value.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_decimal(s, where);
  const double num = parse_decimal(std::string_view(s).substr(0, slash), where);
  const double den = parse_decimal(std::string_view(s).substr(slash + 1), where);
  if (den == 0.0) throw ConfigError(where + ": zero denominator in '" + s + "'");
  return num / den;
}

std::vector<double> parse_number_list(const json& value, const std::string& where) {
  if (!value.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<double> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(parse_number(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

const json& command_block(const RunConfig& cfg, const std::string& name) {
  static const json empty = json::object();
  auto it = cfg.document.find(name);
  if (it == cfg.document.end()) return empty;
  if (!it->is_object()) throw ConfigError(name + ": expected an object");
  return *it;
}

double block_number(const json& block, const std::string& block_name,
                    const std::string& key, double fallback) {
  auto it = block.find(key);
  if (it == block.end()) return fallback;
  return parse_number(*it, block_name + "." + key);
}

long long block_integer(const json& block, const std::string& block_name,
                        const std::string& key, long long fallback) {
  auto it = block.find(key);
  if (it == block.end()) return fallback;
  if (!it->is_number_integer()) throw ConfigError(block_name + "." + key + ": expected an integer");
  return it->get<long long>();
}

std::string block_string(const json& block, const std::string& block_name,
                         const std::string& key, const std::string& fallback) {
  auto it = block.find(key);
  if (it == block.end()) return fallback;
  if (!it->is_string()) throw ConfigError(block_name + "." + key + ": expected a string");
  return it->get<std::string>();
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  const json& version = require(doc, "schema_version", "config");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion) {
    throw ConfigError("config.schema_version: expected " + std::to_string(kSchemaVersion));
  }
  auto ifs = parse_system(doc);
  Potential raw = parse_potential(doc, ifs);
  const json& pot = doc["potential"];
  const bool normalized = pot.value("normalize", true);
  const auto depth = block_integer(pot, "potential", "pressure_depth",
                                   static_cast<long long>(kDefaultPressureDepth));
  if (depth < 2) throw ConfigError("potential.pressure_depth: expected an integer >= 2");
  Potential psi = normalized ? normalize(raw, *ifs, static_cast<std::size_t>(depth)) : raw;
  std::optional<std::string> output;
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) throw ConfigError("config.output: expected a path string");
    output = doc["output"].get<std::string>();
  }
  return RunConfig{std::move(ifs), std::move(psi), std::move(raw), normalized, doc, output};
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

}  // namespace holderspec
