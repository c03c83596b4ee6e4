#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "quadgraph/graph.hpp"
#include "quadgraph/oracle.hpp"

using namespace quadgraph;

TEST_CASE("decompose, worked example p=5 a=4") {
    FieldCtx f(5);
    GraphDecomposition d = decompose(f, 4);
    // x^2 + 4 mod 5: 0->4, 1->0, 2->3, 3->3, 4->0.
    // Components: {0, 1, 4} with 2-cycle {0, 4}; {2, 3} with fixed point 3.
    REQUIRE(d.components.size() == 2);
    CHECK_FALSE(d.connected());
    CHECK(d.component_id[0] == d.component_id[1]);
    CHECK(d.component_id[0] == d.component_id[4]);
    CHECK(d.component_id[2] == d.component_id[3]);
    CHECK(d.component_id[0] != d.component_id[2]);
    CHECK(d.on_cycle[0] == 1);
    CHECK(d.on_cycle[4] == 1);
    CHECK(d.on_cycle[1] == 0);
    CHECK(d.on_cycle[2] == 0);
    CHECK(d.on_cycle[3] == 1);
    const ComponentSummary& zero_comp = d.components[d.component_id[0]];
    CHECK(zero_comp.size == 3);
    CHECK(zero_comp.cycle_len == 2);
    CHECK(zero_comp.contains_zero);
    const ComponentSummary& other = d.components[d.component_id[2]];
    CHECK(other.size == 2);
    CHECK(other.cycle_len == 1);
    CHECK_FALSE(other.contains_zero);
    auto [C, c] = cyclic_counts(d);
    CHECK(C == 3);
    CHECK(c == 2);
}

TEST_CASE("decompose matches the naive oracle partition") {
    GraphWorkspace ws;
    for (uint64_t p : {3, 5, 7, 13, 101, 509, 1009}) {
        FieldCtx f(p);
        for (uint64_t a = 0; a < p; ++a) {
            GraphDecomposition d = decompose(f, a, &ws);
            oracle::NaiveDecomposition nd = oracle::naive_decompose(f, a);
            REQUIRE(d.components.size() == nd.components.size());
            CHECK(std::equal(d.on_cycle.begin(), d.on_cycle.end(), nd.on_cycle.begin()));
            // Same partition: fast component ids refine to the same blocks.
            std::map<uint32_t, uint64_t> label_of;
            bool same_partition = true;
            for (uint64_t x = 0; x < p; ++x) {
                auto [it, fresh] = label_of.emplace(d.component_id[x], nd.component_label[x]);
                if (!fresh && it->second != nd.component_label[x]) same_partition = false;
            }
            CHECK(same_partition);
            // Same multiset of (size, cycle length).
            std::multiset<std::pair<uint64_t, uint64_t>> fast, naive;
            for (const auto& cs : d.components) fast.emplace(cs.size, cs.cycle_len);
            for (const auto& pr : nd.components) naive.insert(pr);
            CHECK(fast == naive);
        }
    }
}

TEST_CASE("structural invariants hold for every a") {
    GraphWorkspace ws;
    for (uint64_t p : {3, 7, 97, 2003}) {
        FieldCtx f(p);
        for (uint64_t a = 0; a < p; ++a) {
            GraphDecomposition d = decompose(f, a, &ws);
            uint64_t total = 0, odd = 0;
            for (const auto& cs : d.components) {
                total += cs.size;
                CHECK(cs.cycle_len >= 1);
                CHECK(cs.cycle_len <= cs.size);
                if (cs.size % 2 == 1) ++odd;
            }
            CHECK(total == p);
            CHECK(odd == 1); // exactly one odd component per graph
        }
    }
}

TEST_CASE("extract_trees accounts for every non-cyclic node") {
    GraphWorkspace ws;
    for (uint64_t p : {5, 13, 101, 1009}) {
        FieldCtx f(p);
        for (uint64_t a = 0; a < p; ++a) {
            GraphDecomposition d = decompose(f, a, &ws);
            auto trees = extract_trees(f, a, d, &ws);
            auto [C, c] = cyclic_counts(d);
            (void)c;
            uint64_t tree_nodes = 0;
            bool a_cyclic = d.on_cycle[a] == 1;
            for (const TreeRecord& t : trees) {
                CHECK(t.size >= 1);
                CHECK(t.internal < t.size);
                CHECK(t.height < t.size);
                CHECK(t.anchor_cycle_node != a);
                CHECK(d.on_cycle[t.anchor_cycle_node] == 1);
                tree_nodes += t.size;
            }
            // Trees hang off every cyclic node except a (when a is cyclic,
            // its sole predecessor 0 is forced onto the cycle as well).
            CHECK(trees.size() == C - (a_cyclic ? 1 : 0));
            // Every non-cyclic node lives in exactly one hanging tree.
            CHECK(tree_nodes == p - C);
        }
    }
}

TEST_CASE("tree sizes sum to the non-cyclic node count") {
    GraphWorkspace ws;
    FieldCtx f(509);
    for (uint64_t a = 0; a < 509; ++a) {
        GraphDecomposition d = decompose(f, a, &ws);
        auto trees = extract_trees(f, a, d, &ws);
        auto [C, c] = cyclic_counts(d);
        (void)c;
        uint64_t tree_nodes = 0;
        for (const TreeRecord& t : trees) tree_nodes += t.size;
        CHECK(tree_nodes == 509 - C);
    }
}

TEST_CASE("canonical_hash is deterministic and separates structures") {
    FieldCtx f(101);
    GraphWorkspace ws1, ws2;
    std::set<Digest128> seen;
    for (uint64_t a = 0; a < 101; ++a) {
        GraphDecomposition d = decompose(f, a, &ws1);
        Digest128 h1 = canonical_hash(f, a, d, &ws1);
        Digest128 h2 = canonical_hash(f, a, decompose(f, a, &ws2), &ws2);
        CHECK(h1 == h2); // independent of workspace history
        seen.insert(h1);
    }
    // Graphs over F_101 fall into exactly p isomorphism classes.
    CHECK(seen.size() == 101);
}

TEST_CASE("canonical_hash collapses the known p=17 coincidence") {
    FieldCtx f(17);
    std::set<Digest128> seen;
    for (uint64_t a = 0; a < 17; ++a) {
        GraphDecomposition d = decompose(f, a);
        seen.insert(canonical_hash(f, a, d));
    }
    CHECK(seen.size() < 17);
}

TEST_CASE("decompose rejects oversized moduli") {
    CHECK(kMaxTraversalModulus == (uint64_t{1} << 31));
    FieldCtx big(2305843009213693951ull); // 2^61 - 1, valid field, too big to walk
    CHECK_THROWS_AS(decompose(big, 1), ModulusTooLargeError);
}
