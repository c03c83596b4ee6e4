#ifndef QUADGRAPH_REPORT_HPP
#define QUADGRAPH_REPORT_HPP

#include <string>

#include <json.hpp>

#include "quadgraph/stats.hpp"

namespace quadgraph {

extern const char* const kVersion;

/// Full machine-readable report: meta / results / predicted (+ timing).
/// Everything except the timing block is deterministic for fixed inputs.
nlohmann::json build_report(const SweepConfig& cfg, const SweepAggregate& agg,
                            double wall_seconds, bool include_timing = true);

/// CSV rendering; histograms as "k,count" blocks, scalars as "name,value".
std::string report_to_csv(const nlohmann::json& report);

} // namespace quadgraph

#endif
