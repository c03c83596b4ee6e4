#include "quadgraph/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

namespace quadgraph {

using nlohmann::json;

double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

PredictedValues predicted_values(uint64_t p) {
    PredictedValues v;
    const double pd = static_cast<double>(p);
    v.sqrt_2p = std::sqrt(2.0 * pd);
    v.sqrt_pi_p_over_2 = std::sqrt(M_PI * pd / 2.0);
    v.sqrt_2p_over_pi = std::sqrt(2.0 * pd / M_PI);
    v.n_even_estimate =
        (pd - 1.0) / 2.0 * (std::log(pd - 1.0) + 2.0 * kEulerGamma - 1.0 - std::log(2.0));
    return v;
}

double tree_height_law(uint64_t n) { return 2.0 * std::sqrt(M_PI * static_cast<double>(n)); }

namespace {

uint64_t fnv1a(uint64_t h, uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xFF;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex128(const Digest128& d) {
    char buf[33];
    std::snprintf(buf, sizeof(buf), "%016llx%016llx",
                  static_cast<unsigned long long>(d.hi),
                  static_cast<unsigned long long>(d.lo));
    return buf;
}

Digest128 parse_hex128(const std::string& s) {
    if (s.size() != 32) throw CheckpointError("malformed digest: " + s);
    Digest128 d;
    d.hi = std::stoull(s.substr(0, 16), nullptr, 16);
    d.lo = std::stoull(s.substr(16, 16), nullptr, 16);
    return d;
}

void bump_argmax(uint64_t& best, std::vector<uint64_t>& argmax, uint64_t val, uint64_t a) {
    if (val > best) {
        best = val;
        argmax.assign(1, a);
    } else if (val == best) {
        argmax.push_back(a);
    }
}

void merge_argmax(uint64_t& best, std::vector<uint64_t>& argmax, uint64_t other_best,
                  const std::vector<uint64_t>& other_argmax) {
    if (other_argmax.empty()) return;
    if (argmax.empty() || other_best > best) {
        best = other_best;
        argmax = other_argmax;
        return;
    }
    if (other_best < best) return;
    std::vector<uint64_t> merged;
    merged.reserve(argmax.size() + other_argmax.size());
    std::merge(argmax.begin(), argmax.end(), other_argmax.begin(), other_argmax.end(),
               std::back_inserter(merged));
    argmax = std::move(merged);
}

void add_vec(std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

unsigned resolve_threads(unsigned threads) {
    if (threads != 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void accumulate_one(const FieldCtx& ctx, uint64_t a, SweepAggregate& g, GraphWorkspace& ws) {
    const uint64_t p = ctx.p();
    GraphDecomposition d = decompose(ctx, a, &ws);
    const bool conn = d.connected();
    const bool special = (a == 0) || (a == p - 2);
    const bool hist_skip = g.exclude_special && special;

    ++g.processed;
    if (g.groups & kStatConnected) g.i_p += conn ? 1 : 0;

    if (g.groups & (kStatCyclic | kStatExtremal)) {
        auto [C, c] = cyclic_counts(d);
        if (!special) {
            g.sum_C += C;
            g.sum_c += c;
            bump_argmax(g.max_C, g.set_A, C, a);
            bump_argmax(g.max_c, g.set_B, c, a);
            if (conn) {
                g.sum_c_star += c;
                bump_argmax(g.max_c_star, g.set_Bstar, c, a);
            }
        }
    }

    if ((g.groups & kStatCycles) && !hist_skip) {
        for (const auto& cs : d.components) {
            if (cs.cycle_len <= g.max_k) ++g.cycle_hist[cs.cycle_len];
        }
    }

    if ((g.groups & kStatComponents) && !hist_skip) {
        for (const auto& cs : d.components) {
            ++g.n_components;
            if (cs.size % 2 == 0) {
                ++g.n_even;
                if (cs.size <= (p - 1) / 2) ++g.n_even_half;
            } else {
                ++g.n_odd;
            }
            if (cs.size <= g.max_k) ++g.comp_hist[cs.size];
        }
    }

    if ((g.groups & kStatTrees) && !hist_skip) {
        auto trees = extract_trees(ctx, a, d, &ws);
        for (const auto& t : trees) {
            ++g.trees_total;
            g.tree_nodes_total += t.size;
            if (t.size <= g.max_k) ++g.tree_hist[t.size];
            if (conn) {
                ++g.trees_total_star;
                if (t.size <= g.max_k) ++g.tree_hist_star[t.size];
            }
            for (size_t j = 0; j < kHeightBins.size(); ++j) {
                const uint64_t n = kHeightBins[j];
                if (t.size == 2 * n || t.size == 2 * n + 1) {
                    g.height_sum[j] += t.height;
                    ++g.height_count[j];
                }
            }
        }
    }

    if (g.groups & kStatIso) {
        g.iso_digests.insert(canonical_hash(ctx, a, d, &ws));
    }
}

} // namespace

uint64_t SweepConfig::digest() const {
    uint64_t h = 0xcbf29ce484222325ull;
    h = fnv1a(h, p);
    h = fnv1a(h, groups);
    h = fnv1a(h, max_k);
    h = fnv1a(h, exclude_special ? 1 : 0);
    h = fnv1a(h, checkpoint_block);
    return h;
}

SweepAggregate SweepAggregate::empty(const SweepConfig& cfg) {
    SweepAggregate g;
    g.p = cfg.p;
    g.groups = cfg.groups;
    g.max_k = cfg.max_k;
    g.exclude_special = cfg.exclude_special;
    g.cycle_hist.assign(cfg.max_k + 1, 0);
    g.comp_hist.assign(cfg.max_k + 1, 0);
    g.tree_hist.assign(cfg.max_k + 1, 0);
    g.tree_hist_star.assign(cfg.max_k + 1, 0);
    return g;
}

void SweepAggregate::merge_from(const SweepAggregate& o) {
    if (p != o.p || groups != o.groups || max_k != o.max_k ||
        exclude_special != o.exclude_special) {
        throw Error("cannot merge aggregates with different configurations");
    }
    processed += o.processed;
    i_p += o.i_p;
    sum_C += o.sum_C;
    sum_c += o.sum_c;
    sum_c_star += o.sum_c_star;
    merge_argmax(max_C, set_A, o.max_C, o.set_A);
    merge_argmax(max_c, set_B, o.max_c, o.set_B);
    merge_argmax(max_c_star, set_Bstar, o.max_c_star, o.set_Bstar);
    add_vec(cycle_hist, o.cycle_hist);
    add_vec(comp_hist, o.comp_hist);
    n_components += o.n_components;
    n_even += o.n_even;
    n_odd += o.n_odd;
    n_even_half += o.n_even_half;
    add_vec(tree_hist, o.tree_hist);
    add_vec(tree_hist_star, o.tree_hist_star);
    trees_total += o.trees_total;
    trees_total_star += o.trees_total_star;
    tree_nodes_total += o.tree_nodes_total;
    for (size_t j = 0; j < kHeightBins.size(); ++j) {
        height_sum[j] += o.height_sum[j];
        height_count[j] += o.height_count[j];
    }
    iso_digests.insert(o.iso_digests.begin(), o.iso_digests.end());
}

json SweepAggregate::to_json() const {
    json j;
    j["p"] = p;
    j["groups"] = groups;
    j["max_k"] = max_k;
    j["exclude_special"] = exclude_special;
    j["processed"] = processed;
    if (groups & kStatConnected) j["I_p"] = i_p;
    if (groups & (kStatCyclic | kStatExtremal)) {
        j["sum_C"] = sum_C;
        j["sum_c"] = sum_c;
        j["sum_c_star"] = sum_c_star;
        j["max_C"] = max_C;
        j["max_c"] = max_c;
        j["max_c_star"] = max_c_star;
        j["set_A"] = set_A;
        j["set_B"] = set_B;
        j["set_Bstar"] = set_Bstar;
    }
    if (groups & kStatCycles) j["cycle_hist"] = cycle_hist;
    if (groups & kStatComponents) {
        j["comp_hist"] = comp_hist;
        j["n_components"] = n_components;
        j["n_even"] = n_even;
        j["n_odd"] = n_odd;
        j["n_even_half"] = n_even_half;
    }
    if (groups & kStatTrees) {
        j["tree_hist"] = tree_hist;
        j["tree_hist_star"] = tree_hist_star;
        j["trees_total"] = trees_total;
        j["trees_total_star"] = trees_total_star;
        j["tree_nodes_total"] = tree_nodes_total;
        j["height_sum"] = height_sum;
        j["height_count"] = height_count;
    }
    if (groups & kStatIso) {
        std::vector<std::string> digs;
        digs.reserve(iso_digests.size());
        for (const auto& d : iso_digests) digs.push_back(hex128(d));
        j["iso_count"] = iso_digests.size();
        j["iso_digests"] = digs;
    }
    return j;
}

SweepAggregate SweepAggregate::from_json(const json& j) {
    SweepConfig cfg;
    cfg.p = j.at("p").get<uint64_t>();
    cfg.groups = j.at("groups").get<uint32_t>();
    cfg.max_k = j.at("max_k").get<uint64_t>();
    cfg.exclude_special = j.at("exclude_special").get<bool>();
    SweepAggregate g = empty(cfg);
    g.processed = j.at("processed").get<uint64_t>();
    auto opt = [&](const char* key, auto& dst) {
        if (j.contains(key)) dst = j.at(key).get<std::decay_t<decltype(dst)>>();
    };
    opt("I_p", g.i_p);
    opt("sum_C", g.sum_C);
    opt("sum_c", g.sum_c);
    opt("sum_c_star", g.sum_c_star);
    opt("max_C", g.max_C);
    opt("max_c", g.max_c);
    opt("max_c_star", g.max_c_star);
    opt("set_A", g.set_A);
    opt("set_B", g.set_B);
    opt("set_Bstar", g.set_Bstar);
    opt("cycle_hist", g.cycle_hist);
    opt("comp_hist", g.comp_hist);
    opt("n_components", g.n_components);
    opt("n_even", g.n_even);
    opt("n_odd", g.n_odd);
    opt("n_even_half", g.n_even_half);
    opt("tree_hist", g.tree_hist);
    opt("tree_hist_star", g.tree_hist_star);
    opt("trees_total", g.trees_total);
    opt("trees_total_star", g.trees_total_star);
    opt("tree_nodes_total", g.tree_nodes_total);
    opt("height_sum", g.height_sum);
    opt("height_count", g.height_count);
    if (j.contains("iso_digests")) {
        for (const auto& s : j.at("iso_digests")) {
            g.iso_digests.insert(parse_hex128(s.get<std::string>()));
        }
    }
    return g;
}

namespace {

struct Checkpoint {
    SweepAggregate aggregate;
    std::vector<uint8_t> blocks_done;
};

void write_checkpoint(const std::string& path, const SweepConfig& cfg,
                      const SweepAggregate& agg, const std::vector<uint8_t>& done) {
    json j;
    j["format_version"] = 1;
    j["p"] = cfg.p;
    j["config_digest"] = cfg.digest();
    j["block_size"] = cfg.checkpoint_block;
    std::vector<uint64_t> indices;
    for (size_t b = 0; b < done.size(); ++b) {
        if (done[b]) indices.push_back(b);
    }
    j["blocks_done"] = indices;
    j["aggregate"] = agg.to_json();
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw CheckpointError("cannot write checkpoint: " + path);
        out << j.dump();
    }
    std::rename(tmp.c_str(), path.c_str());
}

Checkpoint load_checkpoint(const std::string& path, const SweepConfig& cfg, size_t nblocks) {
    std::ifstream in(path);
    if (!in) throw CheckpointError("cannot read checkpoint: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw CheckpointError(std::string("corrupt checkpoint: ") + e.what());
    }
    if (j.value("format_version", -1) != 1) {
        throw CheckpointError("unsupported checkpoint format version");
    }
    if (j.at("p").get<uint64_t>() != cfg.p ||
        j.at("config_digest").get<uint64_t>() != cfg.digest() ||
        j.at("block_size").get<uint64_t>() != cfg.checkpoint_block) {
        throw CheckpointError("checkpoint does not match the requested configuration");
    }
    Checkpoint cp;
    cp.aggregate = SweepAggregate::from_json(j.at("aggregate"));
    cp.blocks_done.assign(nblocks, 0);
    for (uint64_t b : j.at("blocks_done").get<std::vector<uint64_t>>()) {
        if (b >= nblocks) throw CheckpointError("checkpoint block index out of range");
        cp.blocks_done[b] = 1;
    }
    return cp;
}

} // namespace

SweepAggregate run_sweep(const SweepConfig& cfg) {
    FieldCtx ctx(cfg.p);
    if (cfg.p >= kMaxTraversalModulus) {
        throw ModulusTooLargeError("sweeps require p < 2^31");
    }
    if (cfg.max_k >= cfg.p) throw Error("max_k must be smaller than p");
    if (cfg.checkpoint_block == 0) throw Error("checkpoint block size must be positive");

    const uint64_t nblocks = (cfg.p + cfg.checkpoint_block - 1) / cfg.checkpoint_block;
    SweepAggregate global = SweepAggregate::empty(cfg);
    std::vector<uint8_t> done(nblocks, 0);
    if (cfg.resume && !cfg.checkpoint_path.empty()) {
        Checkpoint cp = load_checkpoint(cfg.checkpoint_path, cfg, nblocks);
        global = std::move(cp.aggregate);
        done = std::move(cp.blocks_done);
    }

    std::atomic<uint64_t> next{0};
    std::mutex mu;
    auto worker = [&] {
        GraphWorkspace ws;
        for (;;) {
            uint64_t b = next.fetch_add(1);
            if (b >= nblocks) break;
            if (done[b]) continue;
            SweepAggregate local = SweepAggregate::empty(cfg);
            const uint64_t lo = b * cfg.checkpoint_block;
            const uint64_t hi = std::min(cfg.p, lo + cfg.checkpoint_block);
            for (uint64_t a = lo; a < hi; ++a) accumulate_one(ctx, a, local, ws);
            std::lock_guard<std::mutex> lock(mu);
            global.merge_from(local);
            done[b] = 1;
            if (!cfg.checkpoint_path.empty()) {
                write_checkpoint(cfg.checkpoint_path, cfg, global, done);
            }
        }
    };
    const unsigned t = resolve_threads(cfg.threads);
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < t; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return global;
}

namespace {

SweepAggregate sweep_group(const FieldCtx& ctx, uint32_t groups, uint64_t max_k,
                           unsigned threads) {
    SweepConfig cfg;
    cfg.p = ctx.p();
    cfg.groups = groups;
    cfg.max_k = max_k;
    cfg.threads = threads;
    return run_sweep(cfg);
}

} // namespace

std::vector<uint64_t> cycle_histogram(const FieldCtx& ctx, uint64_t max_k, unsigned threads) {
    return sweep_group(ctx, kStatCycles, max_k, threads).cycle_hist;
}

ComponentCounts component_histogram(const FieldCtx& ctx, uint64_t max_k, unsigned threads) {
    SweepAggregate g = sweep_group(ctx, kStatComponents, max_k, threads);
    return {g.comp_hist, g.n_components, g.n_even, g.n_odd, g.n_even_half};
}

TreeStatistics tree_statistics(const FieldCtx& ctx, uint64_t max_k, unsigned threads) {
    SweepAggregate g = sweep_group(ctx, kStatTrees, max_k, threads);
    TreeStatistics t;
    t.hist = g.tree_hist;
    t.hist_star = g.tree_hist_star;
    t.total = g.trees_total;
    t.total_star = g.trees_total_star;
    t.height_sum = g.height_sum;
    t.height_count = g.height_count;
    return t;
}

ExtremalSets extremal_sets(const FieldCtx& ctx, unsigned threads) {
    SweepAggregate g = sweep_group(ctx, kStatExtremal, 1, threads);
    ExtremalSets e;
    e.max_C = g.max_C;
    e.max_c = g.max_c;
    e.max_c_star = g.max_c_star;
    e.set_A = g.set_A;
    e.set_B = g.set_B;
    e.set_Bstar = g.set_Bstar;
    auto intersect = [](const std::vector<uint64_t>& x, const std::vector<uint64_t>& y) {
        std::vector<uint64_t> out;
        std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
        return out;
    };
    e.A_and_B = intersect(e.set_A, e.set_B);
    e.A_and_Bstar = intersect(e.set_A, e.set_Bstar);
    e.B_and_Bstar = intersect(e.set_B, e.set_Bstar);
    return e;
}

uint64_t iso_class_count(const FieldCtx& ctx, unsigned threads) {
    return sweep_group(ctx, kStatIso, 1, threads).iso_digests.size();
}

} // namespace quadgraph
