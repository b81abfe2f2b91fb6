#pragma once

// JSON shapes for reports and traces. A packing report always carries the
// full cycle list so `verify` can re-validate every claim against the graph
// without re-running anything. Field set is stable across modes:
//   {instance_sha256, command, config, seed, target_met, phases[],
//    warnings[], cycles[][], uncovered[], wall_ms}

#include <string>

#include <nlohmann/json.hpp>

#include "oripack/nibble.hpp"
#include "oripack/packing.hpp"

namespace oripack {

using nlohmann::json;

inline json to_json(const PhaseStat& phase) {
  json j;
  j["name"] = phase.name;
  json metrics = json::object();
  for (const auto& [key, value] : phase.metrics) metrics[key] = value;
  j["metrics"] = metrics;
  return j;
}

inline json report_to_json(const PackingReport& report, const std::string& command,
                           const json& config) {
  json j;
  j["instance_sha256"] = report.instance_sha256;
  j["command"] = command;
  j["config"] = config;
  j["mode"] = report.mode;
  j["seed"] = report.seed;
  j["target_met"] = report.target_met;
  json phases = json::array();
  for (const auto& p : report.phases) phases.push_back(to_json(p));
  j["phases"] = phases;
  j["warnings"] = report.warnings;
  j["n"] = report.packing.host_n;
  json cycles = json::array();
  for (const auto& cyc : report.packing.cycles) cycles.push_back(cyc);
  j["cycles"] = cycles;
  j["uncovered"] = report.uncovered;
  j["wall_ms"] = report.wall_ms;
  return j;
}

inline json trace_to_json(const NibbleTrace& trace, Vertex n) {
  json j;
  j["n"] = n;
  json bites = json::array();
  for (const auto& b : trace.bites) {
    bites.push_back({{"p", b.p},
                     {"proposed", b.proposed},
                     {"conflicted", b.conflicted},
                     {"kept", b.kept}});
  }
  j["bites"] = bites;
  j["matching_size"] = trace.final_matching.size();
  j["matching"] = trace.final_matching;
  j["uncovered"] = trace.uncovered;
  j["regularity_warning"] = trace.regularity_warning;
  j["warning"] = trace.warning;
  return j;
}

}  // namespace oripack
