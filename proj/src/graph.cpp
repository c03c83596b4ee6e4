#include "quadgraph/graph.hpp"

#include <algorithm>

namespace quadgraph {

namespace {

constexpr uint32_t kUnset = 0xFFFFFFFFu;
constexpr uint32_t kInProgress = 0xFFFFFFFEu;

uint64_t step(uint64_t x, uint64_t a, uint64_t p) {
    uint64_t s = static_cast<uint64_t>(static_cast<unsigned __int128>(x) * x % p) + a;
    return s >= p ? s - p : s;
}

void require_traversal_size(uint64_t p) {
    if (p >= kMaxTraversalModulus) {
        throw ModulusTooLargeError("traversal operations require p < 2^31");
    }
}

// Reverse adjacency via counting sort of (f(x) -> x) pairs.
// Predecessor lists end up sorted by node index.
void build_predecessors(const FieldCtx& ctx, uint64_t a, GraphWorkspace& ws) {
    const uint64_t p = ctx.p();
    const size_t n = static_cast<size_t>(p);
    ws.pred_off.assign(n + 1, 0);
    for (uint64_t x = 0; x < p; ++x) {
        ++ws.pred_off[step(x, a, p) + 1];
    }
    for (size_t i = 1; i <= n; ++i) ws.pred_off[i] += ws.pred_off[i - 1];
    ws.preds.resize(n);
    std::vector<uint32_t> cursor(ws.pred_off.begin(), ws.pred_off.end() - 1);
    for (uint64_t x = 0; x < p; ++x) {
        ws.preds[cursor[step(x, a, p)]++] = static_cast<uint32_t>(x);
    }
}

uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Order-dependent 128-bit accumulator; distinct seeds separate the
// tree / cycle / graph hashing domains.
struct HashAcc {
    uint64_t lo;
    uint64_t hi;
    explicit HashAcc(uint64_t seed) : lo(mix64(seed)), hi(mix64(~seed)) {}
    void update(const Digest128& d) {
        lo = mix64(lo ^ d.lo) + d.hi;
        hi = mix64(hi + d.hi) ^ mix64(d.lo ^ 0xa5a5a5a55a5a5a5aull);
    }
    Digest128 finish(uint64_t count) const {
        return {mix64(hi ^ count), mix64(lo + count)};
    }
};

constexpr uint64_t kSeedTree = 0x7472656531323334ull;
constexpr uint64_t kSeedNoTree = 0x6e6f74726565ull;
constexpr uint64_t kSeedCycle = 0x6379636c65ull;
constexpr uint64_t kSeedGraph = 0x6772617068ull;

// Lexicographically least rotation, two-pointer method, O(n).
size_t least_rotation(const std::vector<Digest128>& s) {
    const size_t n = s.size();
    if (n <= 1) return 0;
    size_t i = 0, j = 1, k = 0;
    while (i < n && j < n && k < n) {
        const Digest128& x = s[(i + k) % n];
        const Digest128& y = s[(j + k) % n];
        if (x == y) {
            ++k;
            continue;
        }
        if (y < x) {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if (i == j) ++j;
        k = 0;
    }
    return std::min(i, j);
}

// AHU digest of the tree rooted at `root`, children taken from the reverse
// adjacency. Iterative: BFS order, then fold children before parents.
Digest128 tree_digest(uint32_t root, GraphWorkspace& ws) {
    ws.queue.clear();
    ws.queue.push_back(root);
    for (size_t head = 0; head < ws.queue.size(); ++head) {
        uint32_t u = ws.queue[head];
        for (uint32_t idx = ws.pred_off[u]; idx < ws.pred_off[u + 1]; ++idx) {
            ws.queue.push_back(ws.preds[idx]);
        }
    }
    for (size_t i = ws.queue.size(); i-- > 0;) {
        uint32_t u = ws.queue[i];
        Digest128 child[2];
        size_t nc = 0;
        for (uint32_t idx = ws.pred_off[u]; idx < ws.pred_off[u + 1]; ++idx) {
            child[nc++] = ws.digest[ws.preds[idx]];
        }
        if (nc == 2 && child[1] < child[0]) std::swap(child[0], child[1]);
        HashAcc acc(kSeedTree);
        for (size_t c = 0; c < nc; ++c) acc.update(child[c]);
        ws.digest[u] = acc.finish(nc);
    }
    return ws.digest[root];
}

} // namespace

GraphDecomposition decompose(const FieldCtx& ctx, uint64_t a, GraphWorkspace* ws) {
    const uint64_t p = ctx.p();
    require_traversal_size(p);
    const size_t n = static_cast<size_t>(p);

    GraphWorkspace local;
    GraphWorkspace& w = ws ? *ws : local;
    w.pos.resize(n);

    GraphDecomposition d;
    d.p = p;
    d.a = a;
    d.component_id.assign(n, kUnset);
    d.on_cycle.assign(n, 0);

    auto& comp = d.component_id;
    for (uint64_t s = 0; s < p; ++s) {
        if (comp[s] != kUnset) continue;
        w.path.clear();
        uint64_t x = s;
        while (comp[x] == kUnset) {
            comp[x] = kInProgress;
            w.pos[x] = static_cast<uint32_t>(w.path.size());
            w.path.push_back(static_cast<uint32_t>(x));
            x = step(x, a, p);
        }
        uint32_t cid;
        if (comp[x] == kInProgress) {
            // The walk re-entered its own stamp: a new cycle.
            uint32_t k = w.pos[x];
            cid = static_cast<uint32_t>(d.components.size());
            ComponentSummary cs;
            cs.size = w.path.size();
            cs.cycle_len = w.path.size() - k;
            d.components.push_back(cs);
            for (size_t j = k; j < w.path.size(); ++j) d.on_cycle[w.path[j]] = 1;
        } else {
            cid = comp[x];
            d.components[cid].size += w.path.size();
        }
        for (uint32_t y : w.path) comp[y] = cid;
    }
    d.components[comp[0]].contains_zero = true;
    return d;
}

std::pair<uint64_t, uint64_t> cyclic_counts(const GraphDecomposition& d) {
    uint64_t total = 0;
    uint64_t largest = 0;
    for (const auto& c : d.components) {
        total += c.cycle_len;
        largest = std::max(largest, c.cycle_len);
    }
    return {total, largest};
}

std::vector<TreeRecord> extract_trees(const FieldCtx& ctx, uint64_t a,
                                      const GraphDecomposition& d, GraphWorkspace* ws) {
    const uint64_t p = ctx.p();
    require_traversal_size(p);

    GraphWorkspace local;
    GraphWorkspace& w = ws ? *ws : local;
    build_predecessors(ctx, a, w);

    std::vector<TreeRecord> records;
    for (uint64_t v = 0; v < p; ++v) {
        if (!d.on_cycle[v] || v == a) continue;
        uint32_t root = kUnset;
        for (uint32_t idx = w.pred_off[v]; idx < w.pred_off[v + 1]; ++idx) {
            if (!d.on_cycle[w.preds[idx]]) root = w.preds[idx];
        }
        if (root == kUnset) continue; // only possible for v == a

        TreeRecord rec;
        rec.anchor_cycle_node = v;
        w.queue.clear();
        w.queue.push_back(root);
        size_t level_end = 1;
        uint64_t depth = 0;
        for (size_t head = 0; head < w.queue.size(); ++head) {
            if (head == level_end) {
                ++depth;
                level_end = w.queue.size();
            }
            uint32_t u = w.queue[head];
            if (u == 0) rec.contains_zero = true;
            uint32_t deg = w.pred_off[u + 1] - w.pred_off[u];
            if (deg > 0) ++rec.internal;
            for (uint32_t idx = w.pred_off[u]; idx < w.pred_off[u + 1]; ++idx) {
                w.queue.push_back(w.preds[idx]);
            }
        }
        rec.size = w.queue.size();
        rec.height = depth;
        records.push_back(rec);
    }
    return records;
}

Digest128 canonical_hash(const FieldCtx& ctx, uint64_t a, const GraphDecomposition& d,
                         GraphWorkspace* ws) {
    const uint64_t p = ctx.p();
    require_traversal_size(p);

    GraphWorkspace local;
    GraphWorkspace& w = ws ? *ws : local;
    build_predecessors(ctx, a, w);
    w.digest.resize(static_cast<size_t>(p));

    const Digest128 no_tree = HashAcc(kSeedNoTree).finish(0);

    // Smallest cyclic node per component gives a deterministic cycle entry.
    std::vector<uint32_t> entry(d.components.size(), kUnset);
    for (uint64_t v = 0; v < p; ++v) {
        if (d.on_cycle[v] && entry[d.component_id[v]] == kUnset) {
            entry[d.component_id[v]] = static_cast<uint32_t>(v);
        }
    }

    std::vector<Digest128> comp_digests;
    comp_digests.reserve(d.components.size());
    std::vector<Digest128> cycle_seq;
    for (uint32_t start : entry) {
        cycle_seq.clear();
        uint64_t v = start;
        do {
            Digest128 dv = no_tree;
            for (uint32_t idx = w.pred_off[v]; idx < w.pred_off[v + 1]; ++idx) {
                uint32_t u = w.preds[idx];
                if (!d.on_cycle[u]) dv = tree_digest(u, w);
            }
            cycle_seq.push_back(dv);
            v = step(v, a, p);
        } while (v != start);

        size_t rot = least_rotation(cycle_seq);
        HashAcc acc(kSeedCycle);
        for (size_t i = 0; i < cycle_seq.size(); ++i) {
            acc.update(cycle_seq[(rot + i) % cycle_seq.size()]);
        }
        comp_digests.push_back(acc.finish(cycle_seq.size()));
    }

    std::sort(comp_digests.begin(), comp_digests.end());
    HashAcc acc(kSeedGraph);
    for (const auto& cd : comp_digests) acc.update(cd);
    return acc.finish(comp_digests.size());
}

} // namespace quadgraph
