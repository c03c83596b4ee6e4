#include "quadgraph/oracle.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace quadgraph {
namespace oracle {

namespace {

void check_size(uint64_t p) {
    if (p > kMaxOracleModulus) {
        throw ModulusTooLargeError("oracle operations are limited to p <= 10^6");
    }
}

} // namespace

NaiveDecomposition naive_decompose(const FieldCtx& ctx, uint64_t a) {
    const uint64_t p = ctx.p();
    check_size(p);

    NaiveDecomposition d;
    d.p = p;
    d.a = a;
    d.component_label.resize(p);
    d.on_cycle.assign(p, 0);

    std::map<uint64_t, std::pair<uint64_t, uint64_t>> by_label; // label -> (size, cycle_len)
    std::unordered_map<uint64_t, uint64_t> seen;                // node -> step index
    for (uint64_t x = 0; x < p; ++x) {
        seen.clear();
        uint64_t y = x;
        while (!seen.count(y)) {
            seen[y] = seen.size();
            y = ctx.add(ctx.mul(y, y), a);
        }
        // y is the first node visited twice; the cycle is the walk's suffix
        // from y's first visit. x itself is cyclic exactly when y == x.
        if (y == x) d.on_cycle[x] = 1;
        uint64_t min_cyclic = y;
        uint64_t cycle_len = 0;
        uint64_t z = y;
        do {
            min_cyclic = std::min(min_cyclic, z);
            ++cycle_len;
            z = ctx.add(ctx.mul(z, z), a);
        } while (z != y);
        d.component_label[x] = min_cyclic;
        auto& entry = by_label[min_cyclic];
        entry.first += 1;
        entry.second = cycle_len;
    }
    for (const auto& [label, sc] : by_label) d.components.push_back(sc);
    return d;
}

bool naive_connected(const FieldCtx& ctx, uint64_t a) {
    return naive_decompose(ctx, a).components.size() == 1;
}

uint64_t naive_root_count(const Poly& f, const FieldCtx& ctx) {
    check_size(ctx.p());
    uint64_t count = 0;
    for (uint64_t x = 0; x < ctx.p(); ++x) {
        if (poly_eval(f, x, ctx) == 0) ++count;
    }
    return count;
}

std::vector<uint64_t> naive_cycle_census(const FieldCtx& ctx, uint64_t a, uint64_t max_k) {
    NaiveDecomposition d = naive_decompose(ctx, a);
    std::vector<uint64_t> counts(max_k + 1, 0);
    for (const auto& [size, cycle_len] : d.components) {
        (void)size;
        if (cycle_len <= max_k) ++counts[cycle_len];
    }
    return counts;
}

} // namespace oracle
} // namespace quadgraph
