#ifndef QUADGRAPH_ORACLE_HPP
#define QUADGRAPH_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "quadgraph/field.hpp"
#include "quadgraph/poly.hpp"

namespace quadgraph {

/// Brute-force validation twins for the fast paths. Intentionally simple,
/// shares no traversal code with the graph engine.
namespace oracle {

constexpr uint64_t kMaxOracleModulus = 1000000;

struct NaiveDecomposition {
    uint64_t p = 0;
    uint64_t a = 0;
    // Component label of each node: the smallest cyclic node it reaches.
    std::vector<uint64_t> component_label;
    std::vector<uint8_t> on_cycle;
    // (size, cycle length) per component, keyed by ascending label.
    std::vector<std::pair<uint64_t, uint64_t>> components;
};

/// Per-node forward iteration with set-based cycle detection.
NaiveDecomposition naive_decompose(const FieldCtx& ctx, uint64_t a);

bool naive_connected(const FieldCtx& ctx, uint64_t a);

/// Number of distinct roots, by evaluating at every field element.
uint64_t naive_root_count(const Poly& f, const FieldCtx& ctx);

/// counts[k] = number of cycles of length k in G_a, for k <= max_k.
std::vector<uint64_t> naive_cycle_census(const FieldCtx& ctx, uint64_t a, uint64_t max_k);

} // namespace oracle
} // namespace quadgraph

#endif
