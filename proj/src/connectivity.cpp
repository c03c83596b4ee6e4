#include "quadgraph/connectivity.hpp"

#include <atomic>
#include <thread>

#include "quadgraph/graph.hpp"
#include "quadgraph/poly.hpp"

namespace quadgraph {

PretestVerdict pretest(const FieldCtx& ctx, uint64_t a, unsigned L) {
    if (L < 1 || L > kMaxPretestDepth) {
        throw DepthTooLargeError("pretest depth outside [1, " +
                                 std::to_string(kMaxPretestDepth) + "]");
    }
    PretestVerdict v;
    Poly fi; // f_a^{(i)}
    const Poly addend = Poly::constant(a);
    for (unsigned i = 1; i <= L; ++i) {
        fi = (i == 1) ? Poly({a, 0, 1}) : poly_add(poly_mul(fi, fi, ctx), addend, ctx);
        Poly m = poly_sub(fi, Poly::x(), ctx);
        Poly g = poly_gcd(poly_sub(frobenius_power(m, ctx), Poly::x(), ctx), m, ctx);
        const int deg = g.degree();
        v.degrees.emplace_back(i, deg);
        if (i == 1) {
            if (deg == 2) {
                v.outcome = PretestOutcome::Disconnected;
                return v;
            }
            if (deg == 1) {
                v.cycles_found = 1;
                v.cycle_length = 1;
            }
        } else {
            if (deg > static_cast<int>(i)) {
                v.outcome = PretestOutcome::Disconnected;
                return v;
            }
            if (deg == static_cast<int>(i)) {
                ++v.cycles_found;
                v.cycle_length = i;
            }
            if (v.cycles_found > 1) {
                v.outcome = PretestOutcome::Disconnected;
                return v;
            }
        }
    }
    v.outcome = v.cycles_found == 1 ? PretestOutcome::OneSmallCycle
                                    : PretestOutcome::NoSmallCycle;
    return v;
}

bool oracle_connected(const FieldCtx& ctx, uint64_t a) {
    const uint64_t p = ctx.p();
    if (p >= kMaxTraversalModulus) {
        throw ModulusTooLargeError("connectivity traversal requires p < 2^31");
    }
    constexpr uint32_t kNew = 0;
    constexpr uint32_t kActive = 1;
    constexpr uint32_t kDone = 2;
    std::vector<uint8_t> state(static_cast<size_t>(p), kNew);
    std::vector<uint32_t> walk;
    unsigned cycles = 0;
    uint64_t visited = 0;
    for (uint64_t s = 0; s < p && visited < p; ++s) {
        if (state[s] != kNew) continue;
        walk.clear();
        uint64_t x = s;
        while (state[x] == kNew) {
            state[x] = kActive;
            walk.push_back(static_cast<uint32_t>(x));
            uint64_t sq = static_cast<uint64_t>(static_cast<unsigned __int128>(x) * x % p) + a;
            x = sq >= p ? sq - p : sq;
        }
        if (state[x] == kActive) {
            ++cycles;
            if (cycles >= 2) return false;
        }
        visited += walk.size();
        for (uint32_t y : walk) state[y] = kDone;
    }
    return cycles == 1;
}

bool is_connected(const FieldCtx& ctx, uint64_t a, unsigned L) {
    if (pretest(ctx, a, L).outcome == PretestOutcome::Disconnected) return false;
    return oracle_connected(ctx, a);
}

std::optional<uint64_t> single_one_cycle_scan(const FieldCtx& ctx, bool use_shortcut) {
    const uint64_t p = ctx.p();
    if (use_shortcut && (p % 12 == 5 || p % 12 == 11)) return std::nullopt;
    const uint64_t a = ctx.inv(4 % p);
    GraphDecomposition d = decompose(ctx, a);
    if (d.connected() && d.components[0].cycle_len == 1) return a;
    return std::nullopt;
}

namespace {

unsigned resolve_threads(unsigned threads) {
    if (threads != 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace

uint64_t count_connected(const FieldCtx& ctx, unsigned L, unsigned threads) {
    const uint64_t p = ctx.p();
    const unsigned t = resolve_threads(threads);
    std::atomic<uint64_t> next{0};
    std::atomic<uint64_t> total{0};
    constexpr uint64_t kChunk = 64;
    auto worker = [&] {
        uint64_t local = 0;
        for (;;) {
            uint64_t lo = next.fetch_add(kChunk);
            if (lo >= p) break;
            uint64_t hi = std::min(lo + kChunk, p);
            for (uint64_t a = lo; a < hi; ++a) {
                if (is_connected(ctx, a, L)) ++local;
            }
        }
        total += local;
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < t; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return total.load();
}

std::optional<uint64_t> first_connected(const FieldCtx& ctx, unsigned L) {
    for (uint64_t a = 0; a < ctx.p(); ++a) {
        if (is_connected(ctx, a, L)) return a;
    }
    return std::nullopt;
}

} // namespace quadgraph
