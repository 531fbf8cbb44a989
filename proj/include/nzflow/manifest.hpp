#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nzflow/rng.hpp"
#include "nzflow/version.hpp"

namespace nzflow {

// One named check inside a run: a computed value against a target with a
// tolerance. `tolerance` is absolute unless `relative` is set.
struct CheckRecord {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool relative = false;
  bool pass = false;

  static CheckRecord make(std::string name, double value, double target, double tolerance,
                          bool relative = false) {
    CheckRecord c;
    c.name = std::move(name);
    c.value = value;
    c.target = target;
    c.tolerance = tolerance;
    c.relative = relative;
    const double scale = relative ? std::fabs(target) : 1.0;
    c.pass = std::fabs(value - target) <= tolerance * (scale == 0.0 ? 1.0 : scale);
    return c;
  }

  static CheckRecord flag(std::string name, bool pass) {
    CheckRecord c;
    c.name = std::move(name);
    c.value = pass ? 1.0 : 0.0;
    c.target = 1.0;
    c.tolerance = 0.0;
    c.pass = pass;
    return c;
  }
};

// Serialized record of one CLI run. Timestamps live in a separate object
// that is excluded from the determinism hash, so identical command + seed
// yields an identical `content` block byte for byte.
struct RunManifest {
  std::string command_line;
  std::uint64_t master_seed = 0;
  std::string library_version = NZFLOW_VERSION_STRING;
  std::string environment;
  std::vector<CheckRecord> checks;
  nlohmann::json artifacts = nlohmann::json::object();
  std::string started_at;
  std::string finished_at;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  nlohmann::json content_json() const {
    nlohmann::json j;
    j["command_line"] = command_line;
    j["master_seed"] = master_seed;
    j["library_version"] = library_version;
    j["environment"] = environment;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json cj;
      cj["name"] = c.name;
      cj["value"] = c.value;
      cj["target"] = c.target;
      cj["tolerance"] = c.tolerance;
      cj["relative"] = c.relative;
      cj["pass"] = c.pass;
      arr.push_back(std::move(cj));
    }
    j["checks"] = std::move(arr);
    j["artifacts"] = artifacts;
    return j;
  }

  std::string determinism_hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(content_json().dump())));
    return buf;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["content"] = content_json();
    j["determinism_hash"] = determinism_hash();
    j["timing"] = {{"started_at", started_at}, {"finished_at", finished_at}};
    return j;
  }

  static RunManifest from_json(const nlohmann::json& j) {
    RunManifest m;
    const auto& c = j.at("content");
    m.command_line = c.at("command_line").get<std::string>();
    m.master_seed = c.at("master_seed").get<std::uint64_t>();
    m.library_version = c.at("library_version").get<std::string>();
    m.environment = c.at("environment").get<std::string>();
    for (const auto& cj : c.at("checks")) {
      CheckRecord r;
      r.name = cj.at("name").get<std::string>();
      r.value = cj.at("value").get<double>();
      r.target = cj.at("target").get<double>();
      r.tolerance = cj.at("tolerance").get<double>();
      r.relative = cj.at("relative").get<bool>();
      r.pass = cj.at("pass").get<bool>();
      // pass flags must be consistent with the stored triple
      const double scale = r.relative ? std::fabs(r.target) : 1.0;
      const bool expect = std::fabs(r.value - r.target) <= r.tolerance * (scale == 0.0 ? 1.0 : scale);
      if (r.tolerance > 0.0 && r.pass != expect)
        throw std::invalid_argument("RunManifest: inconsistent pass flag for check '" + r.name + "'");
      m.checks.push_back(std::move(r));
    }
    m.artifacts = c.value("artifacts", nlohmann::json::object());
    if (j.contains("timing")) {
      m.started_at = j["timing"].value("started_at", "");
      m.finished_at = j["timing"].value("finished_at", "");
    }
    return m;
  }
};

}  // namespace nzflow
