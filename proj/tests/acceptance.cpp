// Acceptance suite: one pass/fail line per criterion.
//
// Tiers:
//   fast   — criteria 1, 2, 3, 4, 5, 10 (minutes)
//   medium — criteria 6, 7 (tens of minutes worst case)
//   long   — criteria 8, 9 (full-scale table reproduction; hours)
//
// Exit status is the number of failed criteria in the selected tier.

#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "quadgraph/connectivity.hpp"
#include "quadgraph/field.hpp"
#include "quadgraph/graph.hpp"
#include "quadgraph/oracle.hpp"
#include "quadgraph/poly.hpp"
#include "quadgraph/report.hpp"
#include "quadgraph/stats.hpp"

namespace {

using nlohmann::json;
using namespace quadgraph;

#ifndef QUADGRAPH_DATA_DIR
#define QUADGRAPH_DATA_DIR "data"
#endif

json load_json(const std::string& name) {
    const std::string path = std::string(QUADGRAPH_DATA_DIR) + "/" + name;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing data file: " + path);
    json j;
    in >> j;
    return j;
}

std::vector<uint64_t> odd_primes_upto(uint64_t n) {
    std::vector<uint64_t> ps;
    for (uint64_t p = 3; p <= n; p += 2) {
        if (is_prime_u64(p)) ps.push_back(p);
    }
    return ps;
}

void parallel_for(uint64_t n, const std::function<void(uint64_t)>& body) {
    unsigned t = std::thread::hardware_concurrency();
    if (t == 0) t = 1;
    std::atomic<uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            uint64_t i = next.fetch_add(1);
            if (i >= n) break;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < t && i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

// 1. Exact propositions for every odd prime p <= 2003.
bool criterion1(std::string& detail) {
    std::atomic<uint64_t> bad{0};
    auto primes = odd_primes_upto(2003);
    parallel_for(primes.size(), [&](uint64_t idx) {
        const uint64_t p = primes[idx];
        FieldCtx ctx(p);
        GraphWorkspace ws;
        uint64_t c1 = 0, c2 = 0, n2 = 0;
        bool ok = true;
        for (uint64_t a = 0; a < p && ok; ++a) {
            GraphDecomposition d = decompose(ctx, a, &ws);
            uint64_t total = 0, odd = 0;
            for (const auto& c : d.components) {
                total += c.size;
                if (c.size % 2 == 1) ++odd;
                if (c.size == 2) ++n2;
                if (c.cycle_len == 1) ++c1;
                if (c.cycle_len == 2) ++c2;
            }
            ok = total == p && odd == 1;
        }
        ok = ok && c1 == p && c2 == (p - 1) / 2 && n2 == (p - 1) / 2;
        if (!ok) ++bad;
    });
    std::ostringstream os;
    os << "C_1=p, C_2=(p-1)/2, N_{p,2}=(p-1)/2, N_odd=p, sizes sum to p, all odd p <= 2003";
    if (bad != 0) os << " (" << bad << " primes violated)";
    detail = os.str();
    return bad == 0;
}

// 2. Oracle equivalence for p in {1009, 2003}.
bool criterion2(std::string& detail) {
    std::atomic<uint64_t> bad{0};
    for (uint64_t p : {1009, 2003}) {
        FieldCtx ctx(p);
        parallel_for(p, [&](uint64_t a) {
            static thread_local GraphWorkspace ws;
            GraphDecomposition d = decompose(ctx, a, &ws);
            auto nd = oracle::naive_decompose(ctx, a);

            bool ok = d.components.size() == nd.components.size();
            std::vector<uint64_t> min_cyclic(d.components.size(), p);
            for (uint64_t v = 0; v < p; ++v) {
                if (d.on_cycle[v] && min_cyclic[d.component_id[v]] == p) {
                    min_cyclic[d.component_id[v]] = v;
                }
            }
            for (uint64_t v = 0; v < p && ok; ++v) {
                ok = min_cyclic[d.component_id[v]] == nd.component_label[v] &&
                     d.on_cycle[v] == nd.on_cycle[v];
            }

            const bool conn = is_connected(ctx, a);
            ok = ok && conn == (nd.components.size() == 1);
            ok = ok && !(pretest(ctx, a).outcome == PretestOutcome::Disconnected && conn);

            for (unsigned i = 1; i <= 5 && ok; ++i) {
                Poly fi = poly_sub(iterate_poly(a, i, ctx), Poly::x(), ctx);
                ok = static_cast<uint64_t>(frobenius_gcd(a, i, ctx).degree()) ==
                     oracle::naive_root_count(fi, ctx);
            }
            if (!ok) ++bad;
        });
    }
    detail = "decompose/is_connected/frobenius_gcd/pretest match the oracle, p in {1009, 2003}";
    if (bad != 0) detail += " (" + std::to_string(bad) + " parameters disagreed)";
    return bad == 0;
}

// 3. Dynatomic product identity for n <= 5, all a, p in {101, 1009}.
bool criterion3(std::string& detail) {
    std::atomic<uint64_t> bad{0};
    for (uint64_t p : {101, 1009}) {
        FieldCtx ctx(p);
        parallel_for(p, [&](uint64_t a) {
            bool ok = true;
            for (unsigned n = 1; n <= 5 && ok; ++n) {
                Poly product = Poly::constant(1);
                for (unsigned ell = 1; ell <= n; ++ell) {
                    if (n % ell == 0) product = poly_mul(product, dynatomic(a, ell, ctx), ctx);
                }
                ok = product == poly_sub(iterate_poly(a, n, ctx), Poly::x(), ctx);
            }
            if (!ok) ++bad;
        });
    }
    detail = "prod_{l|n} F_a^{(l)} = f_a^{(n)} - X for n <= 5, all a, p in {101, 1009}";
    if (bad != 0) detail += " (" + std::to_string(bad) + " parameters disagreed)";
    return bad == 0;
}

// 4. Single-1-cycle scan over all odd primes p <= 10^4.
bool criterion4(std::string& detail) {
    std::atomic<uint64_t> bad{0};
    auto primes = odd_primes_upto(10000);
    parallel_for(primes.size(), [&](uint64_t idx) {
        const uint64_t p = primes[idx];
        FieldCtx ctx(p);
        auto fast = single_one_cycle_scan(ctx, true);
        auto full = single_one_cycle_scan(ctx, false);
        std::optional<uint64_t> expected;
        if (p == 3) expected = 1;
        if (p == 7) expected = 2;
        if (fast != full || fast != expected) ++bad;
    });
    detail = "single-1-cycle graphs exist only for p=3 (a=1) and p=7 (a=2), p <= 10^4; "
             "shortcut agrees with the full check";
    if (bad != 0) detail += " (" + std::to_string(bad) + " primes disagreed)";
    return bad == 0;
}

// 5. Closed-form predictors against the stored reference values.
bool criterion5(std::string& detail) {
    const json ref = load_json("tables.json")["predictors"];
    PredictedValues v = predicted_values(500009);
    bool ok = std::abs(v.sqrt_2p - ref["sqrt_2p_500009"].get<double>()) <= 0.001 &&
              std::abs(v.sqrt_pi_p_over_2 - ref["sqrt_pi_p_2_500009"].get<double>()) <= 0.001 &&
              std::abs(v.sqrt_2p_over_pi - ref["sqrt_2p_pi_500009"].get<double>()) <= 0.001;
    PredictedValues w = predicted_values(100003);
    ok = ok && std::abs(w.n_even_estimate -
                        ref["n_even_estimate_100003"].get<double>()) <= 1.0;
    detail = "sqrt(2p), sqrt(pi p/2), sqrt(2p/pi) at p=500009 within 0.001; "
             "N~_even(100003) within 1";
    return ok;
}

// 6. Iso-class count equals p for every odd prime p <= 1009 except 17.
bool criterion6(std::string& detail) {
    std::atomic<uint64_t> bad{0};
    std::atomic<uint64_t> classes17{0};
    auto primes = odd_primes_upto(1009);
    parallel_for(primes.size(), [&](uint64_t idx) {
        const uint64_t p = primes[idx];
        FieldCtx ctx(p);
        uint64_t classes = iso_class_count(ctx, 1);
        if (p == 17) {
            classes17 = classes;
            if (classes >= 17) ++bad;
        } else if (classes != p) {
            ++bad;
        }
    });
    std::ostringstream os;
    os << "iso_class_count(p) = p for odd p <= 1009 except p=17 (computed " << classes17
       << " classes at 17)";
    if (bad != 0) os << " (" << bad << " primes violated)";
    detail = os.str();
    return bad == 0;
}

// 7. I_p fixture near 10^4 plus the existence conjecture I_p >= 1 up to 10^4.
bool criterion7(std::string& detail) {
    const json fixture = load_json("ip_near_1e4.json");
    std::atomic<uint64_t> bad{0};
    const auto& entries = fixture.at("I_p");
    std::vector<std::pair<uint64_t, uint64_t>> expected;
    for (auto it = entries.begin(); it != entries.end(); ++it) {
        expected.emplace_back(std::stoull(it.key()), it->get<uint64_t>());
    }
    parallel_for(expected.size(), [&](uint64_t idx) {
        FieldCtx ctx(expected[idx].first);
        if (count_connected(ctx, kDefaultPretestDepth, 1) != expected[idx].second) ++bad;
    });
    auto primes = odd_primes_upto(10000);
    std::atomic<uint64_t> missing{0};
    parallel_for(primes.size(), [&](uint64_t idx) {
        FieldCtx ctx(primes[idx]);
        if (!first_connected(ctx).has_value()) ++missing;
    });
    std::ostringstream os;
    os << "count_connected matches the oracle-built fixture for " << expected.size()
       << " primes near 10^4; I_p >= 1 for all odd p <= 10^4";
    if (bad != 0) os << " (" << bad << " fixture mismatches)";
    if (missing != 0) os << " (" << missing << " primes with I_p = 0)";
    detail = os.str();
    return bad == 0 && missing == 0;
}

// 8. Full-scale table reproduction at p = 500009, 100003, 50111.
bool criterion8(std::string& detail) {
    const json ref = load_json("tables.json");
    std::ostringstream problems;

    {
        const json& t = ref["p500009"];
        SweepConfig cfg;
        cfg.p = 500009;
        cfg.groups = kStatConnected | kStatCyclic | kStatExtremal;
        cfg.max_k = 1;
        SweepAggregate g = run_sweep(cfg);
        const double denom = static_cast<double>(cfg.p) - 2.0;
        if (g.i_p != t["I_p"].get<uint64_t>()) problems << " I_p=" << g.i_p;
        double mean_C = static_cast<double>(g.sum_C) / denom;
        double mean_c = static_cast<double>(g.sum_c) / denom;
        if (std::abs(mean_C - t["mean_C"].get<double>()) > 0.001)
            problems << " mean_C=" << mean_C;
        if (std::abs(mean_c - t["mean_c"].get<double>()) > 0.001)
            problems << " mean_c=" << mean_c;
        if (g.max_C != t["max_C"].get<uint64_t>()) problems << " max_C=" << g.max_C;
        if (g.max_c_star != t["max_c_star"].get<uint64_t>())
            problems << " max_c_star=" << g.max_c_star;
    }
    {
        const json& t = ref["p100003"];
        SweepConfig cfg;
        cfg.p = 100003;
        cfg.groups = kStatCycles | kStatComponents;
        cfg.max_k = 2000;
        SweepAggregate g = run_sweep(cfg);
        for (auto it = t["cycle_hist"].begin(); it != t["cycle_hist"].end(); ++it) {
            size_t k = std::stoul(it.key());
            if (g.cycle_hist[k] != it->get<uint64_t>())
                problems << " C_" << k << "=" << g.cycle_hist[k];
        }
        for (auto it = t["comp_hist"].begin(); it != t["comp_hist"].end(); ++it) {
            size_t k = std::stoul(it.key());
            if (g.comp_hist[k] != it->get<uint64_t>())
                problems << " N_" << k << "=" << g.comp_hist[k];
        }
    }
    {
        const json& t = ref["p50111"];
        SweepConfig cfg;
        cfg.p = 50111;
        cfg.groups = kStatTrees;
        cfg.max_k = 1;
        SweepAggregate g = run_sweep(cfg);
        if (g.tree_hist[1] != t["T1"].get<uint64_t>()) problems << " T(1)=" << g.tree_hist[1];
        if (g.trees_total != t["T"].get<uint64_t>()) problems << " T=" << g.trees_total;
        if (g.tree_hist_star[1] != t["T1_star"].get<uint64_t>())
            problems << " T*(1)=" << g.tree_hist_star[1];
        if (g.trees_total_star != t["T_star"].get<uint64_t>())
            problems << " T*=" << g.trees_total_star;
    }

    detail = "p=500009 connectivity/cyclic tables, p=100003 cycle/component rows, "
             "p=50111 tree counts";
    std::string bad = problems.str();
    if (!bad.empty()) detail += " (mismatches:" + bad + ")";
    return bad.empty();
}

// 9. Tree-height law at p = 50111, per bin within 0.05 of the reference column.
bool criterion9(std::string& detail) {
    const json ref = load_json("tables.json")["p50111"];
    FieldCtx ctx(50111);
    TreeStatistics ts = tree_statistics(ctx, 1);
    std::ostringstream problems;
    for (size_t j = 0; j < kHeightBins.size(); ++j) {
        const double expected = ref["height_ratios"][j].get<double>();
        if (ts.height_count[j] == 0) {
            problems << " n=" << kHeightBins[j] << " empty";
            continue;
        }
        double mean = static_cast<double>(ts.height_sum[j]) /
                      static_cast<double>(ts.height_count[j]);
        double ratio = mean / tree_height_law(kHeightBins[j]);
        if (std::abs(ratio - expected) > 0.05) {
            problems << " n=" << kHeightBins[j] << " ratio=" << ratio;
        }
    }
    detail = "mean H/(2 sqrt(pi n)) per bin within 0.05 of the p=50111 reference column";
    std::string bad = problems.str();
    if (!bad.empty()) detail += " (off:" + bad + ")";
    return bad.empty();
}

// 10. Byte-identical reports across 1, 4 and 16 tasks at p = 10007.
bool criterion10(std::string& detail) {
    auto one_run = [](unsigned threads) {
        SweepConfig cfg;
        cfg.p = 10007;
        cfg.groups = kStatAll;
        cfg.max_k = 100;
        cfg.threads = threads;
        cfg.checkpoint_block = 512; // many blocks so scheduling actually varies
        SweepAggregate agg = run_sweep(cfg);
        return build_report(cfg, agg, 0.0, /*include_timing=*/false).dump();
    };
    std::string r1 = one_run(1);
    std::string r4 = one_run(4);
    std::string r16 = one_run(16);
    detail = "run_sweep(p=10007, all groups) reports are byte-identical for 1/4/16 tasks";
    return r1 == r4 && r1 == r16;
}

struct Criterion {
    int id;
    const char* tier;
    bool (*run)(std::string&);
};

} // namespace

int main(int argc, char** argv) {
    std::string tier = "fast";
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--tier") == 0 && i + 1 < argc) {
            tier = argv[++i];
        } else {
            std::cerr << "usage: acceptance [--tier fast|medium|long]\n";
            return 64;
        }
    }
    if (tier != "fast" && tier != "medium" && tier != "long") {
        std::cerr << "unknown tier: " << tier << "\n";
        return 64;
    }

    const Criterion criteria[] = {
        {1, "fast", criterion1},   {2, "fast", criterion2},  {3, "fast", criterion3},
        {4, "fast", criterion4},   {5, "fast", criterion5},  {6, "medium", criterion6},
        {7, "medium", criterion7}, {8, "long", criterion8},  {9, "long", criterion9},
        {10, "fast", criterion10},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (tier != c.tier) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail += std::string(" [exception: ") + e.what() + "]";
        }
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.id << " (" << c.tier
                  << "): " << detail << "\n";
        if (!ok) ++failures;
    }
    return failures;
}
