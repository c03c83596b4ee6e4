#include "quadgraph/report.hpp"

#include <algorithm>
#include <sstream>

namespace quadgraph {

using nlohmann::json;

const char* const kVersion = "1.0.0";

json build_report(const SweepConfig& cfg, const SweepAggregate& agg, double wall_seconds,
                  bool include_timing) {
    json report;

    json meta;
    meta["p"] = cfg.p;
    meta["version"] = kVersion;
    meta["groups"] = cfg.groups;
    meta["max_k"] = cfg.max_k;
    meta["exclude_special"] = cfg.exclude_special;
    meta["pretest_depth"] = cfg.pretest_depth;
    meta["deterministic"] = "results are independent of --threads";
    report["meta"] = meta;

    json results = agg.to_json();
    const double denom = static_cast<double>(cfg.p) - 2.0;
    if (cfg.groups & kStatCyclic) {
        results["mean_C"] = round3(static_cast<double>(agg.sum_C) / denom);
        results["mean_c"] = round3(static_cast<double>(agg.sum_c) / denom);
        if (cfg.groups & kStatConnected) {
            results["mean_c_star"] =
                agg.i_p == 0 ? 0.0
                             : round3(static_cast<double>(agg.sum_c_star) /
                                      static_cast<double>(agg.i_p));
        }
    }
    if (cfg.groups & kStatExtremal) {
        auto intersect = [](const std::vector<uint64_t>& x, const std::vector<uint64_t>& y) {
            std::vector<uint64_t> out;
            std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                                  std::back_inserter(out));
            return out;
        };
        results["A_and_B"] = intersect(agg.set_A, agg.set_B);
        results["A_and_Bstar"] = intersect(agg.set_A, agg.set_Bstar);
        results["B_and_Bstar"] = intersect(agg.set_B, agg.set_Bstar);
    }
    if (cfg.groups & kStatTrees) {
        json ratios = json::array();
        for (size_t j = 0; j < kHeightBins.size(); ++j) {
            json row;
            row["n"] = kHeightBins[j];
            row["count"] = agg.height_count[j];
            row["mean_ratio"] =
                agg.height_count[j] == 0
                    ? 0.0
                    : round3(static_cast<double>(agg.height_sum[j]) /
                             (static_cast<double>(agg.height_count[j]) *
                              tree_height_law(kHeightBins[j])));
            ratios.push_back(row);
        }
        results["height_ratios"] = ratios;
    }
    report["results"] = results;

    PredictedValues pv = predicted_values(cfg.p);
    json predicted;
    predicted["sqrt2p"] = round3(pv.sqrt_2p);
    predicted["sqrtPiP2"] = round3(pv.sqrt_pi_p_over_2);
    predicted["sqrt2POverPi"] = round3(pv.sqrt_2p_over_pi);
    predicted["nEvenEstimate"] = round3(pv.n_even_estimate);
    report["predicted"] = predicted;

    if (include_timing) {
        json timing;
        timing["wall_seconds"] = wall_seconds;
        report["timing"] = timing;
    }
    return report;
}

namespace {

void csv_scalar(std::ostream& out, const std::string& name, const json& v) {
    out << name << "," << v.dump() << "\n";
}

} // namespace

std::string report_to_csv(const json& report) {
    std::ostringstream out;
    const json& results = report.at("results");
    for (auto it = results.begin(); it != results.end(); ++it) {
        const std::string& key = it.key();
        if (it->is_array() && key.find("hist") != std::string::npos) {
            out << "\n" << key << "\nk,count\n";
            const auto& arr = *it;
            for (size_t k = 1; k < arr.size(); ++k) {
                out << k << "," << arr[k].dump() << "\n";
            }
        } else if (it->is_array()) {
            out << key << ",\"" << it->dump() << "\"\n";
        } else {
            csv_scalar(out, key, *it);
        }
    }
    if (report.contains("predicted")) {
        for (auto it = report["predicted"].begin(); it != report["predicted"].end(); ++it) {
            csv_scalar(out, "predicted." + it.key(), *it);
        }
    }
    return out.str();
}

} // namespace quadgraph
