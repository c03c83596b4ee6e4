#ifndef QUADGRAPH_STATS_HPP
#define QUADGRAPH_STATS_HPP

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "quadgraph/field.hpp"
#include "quadgraph/graph.hpp"

namespace quadgraph {

/// Statistic groups selectable in a sweep.
enum StatGroup : uint32_t {
    kStatConnected = 1u << 0,
    kStatCyclic = 1u << 1,
    kStatCycles = 1u << 2,
    kStatComponents = 1u << 3,
    kStatTrees = 1u << 4,
    kStatExtremal = 1u << 5,
    kStatIso = 1u << 6,
    kStatAll = (1u << 7) - 1,
};

/// Internal-node bins for the tree-height law; a tree of total size 2n or
/// 2n+1 belongs to bin n.
constexpr std::array<uint64_t, 6> kHeightBins = {50, 100, 500, 1000, 2000, 5000};

struct SweepConfig {
    uint64_t p = 0;
    uint32_t groups = kStatAll;
    uint64_t max_k = 100;
    unsigned pretest_depth = 5;
    // Drop a in {0, -2} from the cycle/component/tree histograms. The
    // cyclic-point group always excludes them; the connected count never does.
    bool exclude_special = false;
    unsigned threads = 0; // 0 = hardware parallelism
    std::string checkpoint_path;
    bool resume = false;
    uint64_t checkpoint_block = uint64_t{1} << 16;

    /// Digest of the result-relevant settings; guards checkpoint resume.
    uint64_t digest() const;
};

/// Merged statistics over a contiguous or merged range of a values.
/// Merging partial aggregates is exact and order-independent.
struct SweepAggregate {
    uint64_t p = 0;
    uint32_t groups = 0;
    uint64_t max_k = 0;
    bool exclude_special = false;
    uint64_t processed = 0; // number of a values folded in

    uint64_t i_p = 0;

    // Cyclic-point statistics over a not in {0, -2}.
    uint64_t sum_C = 0;
    uint64_t sum_c = 0;
    uint64_t sum_c_star = 0; // over connected a only
    uint64_t max_C = 0;
    uint64_t max_c = 0;
    uint64_t max_c_star = 0;
    std::vector<uint64_t> set_A;     // argmax of C_a, sorted
    std::vector<uint64_t> set_B;     // argmax of c_a
    std::vector<uint64_t> set_Bstar; // argmax of c_a over connected a

    std::vector<uint64_t> cycle_hist; // index k = cycle length, k <= max_k

    std::vector<uint64_t> comp_hist; // index k = component size, k <= max_k
    uint64_t n_components = 0;
    uint64_t n_even = 0;      // even-size components, all sizes
    uint64_t n_odd = 0;
    uint64_t n_even_half = 0; // even sizes up to (p-1)/2

    std::vector<uint64_t> tree_hist; // index k = tree size, k <= max_k
    std::vector<uint64_t> tree_hist_star;
    uint64_t trees_total = 0;
    uint64_t trees_total_star = 0;
    uint64_t tree_nodes_total = 0;
    std::array<uint64_t, kHeightBins.size()> height_sum{};   // summed heights per bin
    std::array<uint64_t, kHeightBins.size()> height_count{};

    std::set<Digest128> iso_digests;

    static SweepAggregate empty(const SweepConfig& cfg);
    void merge_from(const SweepAggregate& other);

    nlohmann::json to_json() const;
    static SweepAggregate from_json(const nlohmann::json& j);
};

/// Closed-form reference values from the random-mapping comparisons.
struct PredictedValues {
    double sqrt_2p = 0;
    double sqrt_pi_p_over_2 = 0;
    double sqrt_2p_over_pi = 0;
    double n_even_estimate = 0; // ((p-1)/2)(log(p-1) + 2*gamma - 1 - log 2)
};

PredictedValues predicted_values(uint64_t p);

/// Expected height of a random full binary tree with n internal nodes.
double tree_height_law(uint64_t n);

constexpr double kEulerGamma = 0.5772156649;

/// Full sweep over a = 0..p-1 with per-group exclusion policy, parallel
/// range partitioning and optional checkpoint/resume.
SweepAggregate run_sweep(const SweepConfig& cfg);

std::vector<uint64_t> cycle_histogram(const FieldCtx& ctx, uint64_t max_k,
                                      unsigned threads = 0);

struct ComponentCounts {
    std::vector<uint64_t> hist;
    uint64_t total = 0;
    uint64_t even = 0;
    uint64_t odd = 0;
    uint64_t even_half = 0;
};
ComponentCounts component_histogram(const FieldCtx& ctx, uint64_t max_k,
                                    unsigned threads = 0);

struct TreeStatistics {
    std::vector<uint64_t> hist;
    std::vector<uint64_t> hist_star;
    uint64_t total = 0;
    uint64_t total_star = 0;
    std::array<uint64_t, kHeightBins.size()> height_sum{};
    std::array<uint64_t, kHeightBins.size()> height_count{};
};
TreeStatistics tree_statistics(const FieldCtx& ctx, uint64_t max_k = 100,
                               unsigned threads = 0);

struct ExtremalSets {
    uint64_t max_C = 0, max_c = 0, max_c_star = 0;
    std::vector<uint64_t> set_A, set_B, set_Bstar;
    std::vector<uint64_t> A_and_B, A_and_Bstar, B_and_Bstar;
};
ExtremalSets extremal_sets(const FieldCtx& ctx, unsigned threads = 0);

uint64_t iso_class_count(const FieldCtx& ctx, unsigned threads = 0);

/// Round to 3 decimal places (table rendering convention).
double round3(double x);

} // namespace quadgraph

#endif
