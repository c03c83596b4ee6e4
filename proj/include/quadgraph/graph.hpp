#ifndef QUADGRAPH_GRAPH_HPP
#define QUADGRAPH_GRAPH_HPP

#include <compare>
#include <cstdint>
#include <vector>

#include "quadgraph/field.hpp"

namespace quadgraph {

struct ComponentSummary {
    uint64_t size = 0;
    uint64_t cycle_len = 0;
    bool contains_zero = false;
};

/// Per-node component/cycle labeling of the functional graph of x^2 + a.
struct GraphDecomposition {
    uint64_t p = 0;
    uint64_t a = 0;
    std::vector<uint32_t> component_id; // one label per node
    std::vector<uint8_t> on_cycle;      // 1 iff the node lies on its component's cycle
    std::vector<ComponentSummary> components;

    bool connected() const { return components.size() == 1; }
};

/// One binary tree hanging off a cyclic node.
struct TreeRecord {
    uint64_t size = 0;     // total node count
    uint64_t internal = 0; // nodes with at least one child
    uint64_t height = 0;   // edges on the longest root-to-leaf path; 0 for a single node
    bool contains_zero = false;
    uint64_t anchor_cycle_node = 0; // the cyclic node the root hangs from
};

struct Digest128 {
    uint64_t hi = 0;
    uint64_t lo = 0;
    auto operator<=>(const Digest128&) const = default;
};

/// Reusable scratch for per-a graph work; each concurrent task owns one.
struct GraphWorkspace {
    std::vector<uint32_t> pos;
    std::vector<uint32_t> path;
    std::vector<uint32_t> pred_off;
    std::vector<uint32_t> preds;
    std::vector<uint32_t> queue;
    std::vector<Digest128> digest;
};

/// Upper bound on p for traversal-backed operations (node arrays of size p).
constexpr uint64_t kMaxTraversalModulus = uint64_t{1} << 31;

/// O(p) component/cycle labeling by iterative successor chasing.
/// Walks start from node 0 upward; component numbering is deterministic.
GraphDecomposition decompose(const FieldCtx& ctx, uint64_t a, GraphWorkspace* ws = nullptr);

/// (C_a, c_a): total cyclic points and the largest cycle length.
std::pair<uint64_t, uint64_t> cyclic_counts(const GraphDecomposition& d);

/// One record per cyclic node v != a, measuring the tree rooted at the unique
/// non-cycle predecessor of v. Reverse adjacency built by counting sort.
std::vector<TreeRecord> extract_trees(const FieldCtx& ctx, uint64_t a,
                                      const GraphDecomposition& d,
                                      GraphWorkspace* ws = nullptr);

/// Isomorphism-invariant 128-bit digest: AHU digests of hanging trees,
/// minimal rotation per cycle, sorted multiset of component digests.
Digest128 canonical_hash(const FieldCtx& ctx, uint64_t a, const GraphDecomposition& d,
                         GraphWorkspace* ws = nullptr);

} // namespace quadgraph

#endif
