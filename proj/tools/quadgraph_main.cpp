#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
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

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailure = 2;

unsigned default_threads() {
    if (const char* env = std::getenv("QUADGRAPH_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0; // resolved to hardware parallelism downstream
}

void parallel_for(uint64_t n, unsigned threads, const std::function<void(uint64_t)>& body) {
    unsigned t = threads ? threads : std::thread::hardware_concurrency();
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
    for (unsigned i = 1; i < t; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

void emit(const json& j, const std::string& out_path, const std::string& format) {
    std::string text = format == "csv" ? report_to_csv(j) : j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::trunc);
        out << text;
    }
}

uint32_t parse_groups(const std::string& list) {
    uint32_t groups = 0;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "connected") groups |= kStatConnected;
        else if (item == "cyclic") groups |= kStatCyclic | kStatConnected;
        else if (item == "cycles") groups |= kStatCycles;
        else if (item == "components") groups |= kStatComponents;
        else if (item == "trees") groups |= kStatTrees | kStatConnected;
        else if (item == "extremal") groups |= kStatExtremal | kStatConnected;
        else if (item == "iso") groups |= kStatIso;
        else if (item == "all") groups |= kStatAll;
        else throw Error("--stats: unknown statistic group: " + item);
    }
    if (groups == 0) throw Error("--stats: no statistic groups selected");
    return groups;
}

struct VerifyState {
    std::mutex mu;
    int failures = 0;
    void report(bool ok, const std::string& what) {
        std::lock_guard<std::mutex> lock(mu);
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
        if (!ok) ++failures;
    }
};

// Exact-identity suite: per-a structural invariants plus the closed-form
// cycle/component counts, in one decomposition pass over all a.
void verify_identities(const FieldCtx& ctx, unsigned threads, VerifyState& vs) {
    const uint64_t p = ctx.p();
    std::atomic<uint64_t> c1{0}, c2{0}, n2{0};
    std::atomic<uint64_t> bad_size_sum{0}, bad_odd{0};
    parallel_for(p, threads, [&](uint64_t a) {
        static thread_local GraphWorkspace ws;
        GraphDecomposition d = decompose(ctx, a, &ws);
        uint64_t total = 0, odd = 0;
        for (const auto& c : d.components) {
            total += c.size;
            if (c.size % 2 == 1) ++odd;
            if (c.size == 2) ++n2;
            if (c.cycle_len == 1) ++c1;
            if (c.cycle_len == 2) ++c2;
        }
        if (total != p) ++bad_size_sum;
        if (odd != 1) ++bad_odd;
    });
    std::ostringstream tag;
    tag << "p=" << p << " ";
    vs.report(c1 == p, tag.str() + "C_1 = p");
    vs.report(c2 == (p - 1) / 2, tag.str() + "C_2 = (p-1)/2");
    vs.report(n2 == (p - 1) / 2, tag.str() + "N_{p,2} = (p-1)/2");
    vs.report(bad_odd == 0, tag.str() + "exactly one odd-size component per graph");
    vs.report(bad_size_sum == 0, tag.str() + "component sizes sum to p per graph");
}

// Oracle-equivalence suite against the brute-force module.
void verify_oracle(const FieldCtx& ctx, unsigned threads, VerifyState& vs) {
    const uint64_t p = ctx.p();
    std::atomic<uint64_t> partition_bad{0}, connect_bad{0}, frob_bad{0}, pretest_bad{0};
    parallel_for(p, threads, [&](uint64_t a) {
        static thread_local GraphWorkspace ws;
        GraphDecomposition d = decompose(ctx, a, &ws);
        auto nd = oracle::naive_decompose(ctx, a);

        // Canonical per-node label: smallest cyclic node of the component.
        std::vector<uint64_t> min_cyclic(d.components.size(), p);
        for (uint64_t v = 0; v < p; ++v) {
            if (d.on_cycle[v] && min_cyclic[d.component_id[v]] == p) {
                min_cyclic[d.component_id[v]] = v;
            }
        }
        bool same = true;
        for (uint64_t v = 0; v < p && same; ++v) {
            same = min_cyclic[d.component_id[v]] == nd.component_label[v] &&
                   d.on_cycle[v] == nd.on_cycle[v];
        }
        if (!same) ++partition_bad;

        bool conn = is_connected(ctx, a);
        if (conn != (nd.components.size() == 1)) ++connect_bad;
        if (pretest(ctx, a).outcome == PretestOutcome::Disconnected && conn) ++pretest_bad;

        for (unsigned i = 1; i <= 5; ++i) {
            Poly fi = poly_sub(iterate_poly(a, i, ctx), Poly::x(), ctx);
            if (static_cast<uint64_t>(frobenius_gcd(a, i, ctx).degree()) !=
                oracle::naive_root_count(fi, ctx)) {
                ++frob_bad;
            }
        }
    });
    std::ostringstream tag;
    tag << "p=" << p << " ";
    vs.report(partition_bad == 0, tag.str() + "decompose matches naive decomposition");
    vs.report(connect_bad == 0, tag.str() + "is_connected matches naive connectivity");
    vs.report(pretest_bad == 0, tag.str() + "pretest never rejects a connected graph");
    vs.report(frob_bad == 0, tag.str() + "frobenius gcd degree matches exhaustive root count");
}

std::vector<uint64_t> primes_in_range(uint64_t lo, uint64_t hi) {
    std::vector<uint64_t> ps;
    for (uint64_t p = std::max<uint64_t>(lo, 3); p <= hi; ++p) {
        if (p % 2 == 1 && is_prime_u64(p)) ps.push_back(p);
    }
    return ps;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadgraph: structural statistics of the functional graphs of x^2 + a over F_p"};
    app.require_subcommand(1);

    uint64_t p = 0;
    uint64_t a = 0;
    unsigned depth = kDefaultPretestDepth;
    unsigned threads = default_threads();
    uint64_t max_k = 100;
    std::string stats_list = "all";
    std::string out_path;
    std::string format = "json";
    std::string checkpoint_path;
    bool resume = false;
    bool exclude_special = false;
    std::string p_range;
    bool with_iso = false;

    auto* connected = app.add_subcommand("connected", "decide whether G_a is connected");
    connected->add_option("--p", p, "odd prime modulus")->required();
    connected->add_option("--a", a, "parameter a")->required();
    connected->add_option("--pretest-depth", depth, "gcd pretest depth L");

    auto* count = app.add_subcommand("count", "I_p = number of connected graphs modulo p");
    count->add_option("--p", p)->required();
    count->add_option("--pretest-depth", depth);
    count->add_option("--threads", threads);

    auto* sweep = app.add_subcommand("sweep", "full statistics sweep over a = 0..p-1");
    sweep->add_option("--p", p)->required();
    sweep->add_option("--stats", stats_list,
                      "comma list: connected,cyclic,cycles,components,trees,extremal,iso,all");
    sweep->add_option("--max-k", max_k, "histogram cutoff");
    sweep->add_option("--pretest-depth", depth);
    sweep->add_option("--threads", threads);
    sweep->add_option("--checkpoint", checkpoint_path, "checkpoint file path");
    sweep->add_flag("--resume", resume, "resume from the checkpoint file");
    sweep->add_flag("--exclude-special", exclude_special,
                    "drop a in {0,-2} from the selected histograms");
    sweep->add_option("--out", out_path, "write the report to a file");
    sweep->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* predict = app.add_subcommand("predict", "closed-form reference values");
    predict->add_option("--p", p)->required();

    auto* verify = app.add_subcommand("verify", "exact-identity and oracle-equivalence suites");
    verify->add_option("--p", p, "single prime");
    verify->add_option("--p-range", p_range, "inclusive prime range lo:hi");
    verify->add_flag("--iso", with_iso, "also check the isomorphism-class count");
    verify->add_option("--threads", threads);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (connected->parsed()) {
            FieldCtx ctx(p);
            json j;
            j["connected"] = is_connected(ctx, a % ctx.p(), depth);
            std::cout << j.dump() << "\n";
            return kExitOk;
        }
        if (count->parsed()) {
            FieldCtx ctx(p);
            json j;
            j["I_p"] = count_connected(ctx, depth, threads);
            j["sqrt2p"] = round3(predicted_values(p).sqrt_2p);
            std::cout << j.dump() << "\n";
            return kExitOk;
        }
        if (sweep->parsed()) {
            SweepConfig cfg;
            cfg.p = p;
            cfg.groups = parse_groups(stats_list);
            cfg.max_k = max_k;
            cfg.pretest_depth = depth;
            cfg.exclude_special = exclude_special;
            cfg.threads = threads;
            cfg.checkpoint_path = checkpoint_path;
            cfg.resume = resume;
            auto start = std::chrono::steady_clock::now();
            SweepAggregate agg = run_sweep(cfg);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                              .count();
            emit(build_report(cfg, agg, secs), out_path, format);
            return kExitOk;
        }
        if (predict->parsed()) {
            PredictedValues v = predicted_values(FieldCtx(p).p());
            json j;
            j["sqrt2p"] = round3(v.sqrt_2p);
            j["sqrtPiP2"] = round3(v.sqrt_pi_p_over_2);
            j["sqrt2POverPi"] = round3(v.sqrt_2p_over_pi);
            j["nEvenEstimate"] = round3(v.n_even_estimate);
            std::cout << j.dump() << "\n";
            return kExitOk;
        }
        if (verify->parsed()) {
            if ((p == 0) == p_range.empty()) {
                std::cerr << "verify needs exactly one of --p or --p-range\n";
                return kExitUsage;
            }
            std::vector<uint64_t> primes;
            if (!p_range.empty()) {
                auto colon = p_range.find(':');
                if (colon == std::string::npos) {
                    std::cerr << "--p-range must look like lo:hi\n";
                    return kExitUsage;
                }
                primes = primes_in_range(std::stoull(p_range.substr(0, colon)),
                                         std::stoull(p_range.substr(colon + 1)));
            } else {
                primes.push_back(p);
            }
            VerifyState vs;
            for (uint64_t q : primes) {
                FieldCtx ctx(q); // throws for composite --p
                verify_identities(ctx, threads, vs);
                if (q <= 2003) {
                    verify_oracle(ctx, threads, vs);
                }
                if (with_iso) {
                    uint64_t classes = iso_class_count(ctx, threads);
                    std::ostringstream what;
                    what << "p=" << q << " iso classes = " << classes;
                    if (q == 17) {
                        what << " (computed; the conjecture excepts p = 17)";
                        vs.report(true, what.str());
                    } else {
                        vs.report(classes == q, what.str() + ", expected p");
                    }
                }
            }
            return vs.failures == 0 ? kExitOk : kExitVerifyFailure;
        }
    } catch (const NotPrimeError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const EvenPrimeError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const OverflowError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
