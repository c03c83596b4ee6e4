#ifndef QUADGRAPH_CONNECTIVITY_HPP
#define QUADGRAPH_CONNECTIVITY_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "quadgraph/field.hpp"

namespace quadgraph {

enum class PretestOutcome { Disconnected, OneSmallCycle, NoSmallCycle };

struct PretestVerdict {
    PretestOutcome outcome = PretestOutcome::NoSmallCycle;
    unsigned cycle_length = 0; // valid when outcome == OneSmallCycle
    unsigned cycles_found = 0;
    std::vector<std::pair<unsigned, int>> degrees; // (i, deg g_i) as observed
};

constexpr unsigned kDefaultPretestDepth = 5;
constexpr unsigned kMaxPretestDepth = 20;

/// Gcd-based small-cycle pretest: g_i = gcd(X^p - X, f_a^{(i)}(X) - X) for
/// i = 1..L. Certifies disconnection from small-cycle multiplicity; never
/// certifies connectivity.
PretestVerdict pretest(const FieldCtx& ctx, uint64_t a, unsigned L = kDefaultPretestDepth);

/// Rigorous connectivity by successor-chasing traversal, exiting as soon as
/// a second cycle is found or all nodes are visited.
bool oracle_connected(const FieldCtx& ctx, uint64_t a);

/// Pretest first; traversal only for survivors.
bool is_connected(const FieldCtx& ctx, uint64_t a, unsigned L = kDefaultPretestDepth);

/// The parameter a = 1/4 if G_{1/4} is connected with a single 1-cycle,
/// empty otherwise. The p mod 12 in {5, 11} shortcut answers immediately.
std::optional<uint64_t> single_one_cycle_scan(const FieldCtx& ctx, bool use_shortcut = true);

/// I_p = #{a : G_a connected}. Result is independent of the task count.
uint64_t count_connected(const FieldCtx& ctx, unsigned L = kDefaultPretestDepth,
                         unsigned threads = 0);

/// Smallest a with G_a connected, if any (early-exit existence check).
std::optional<uint64_t> first_connected(const FieldCtx& ctx,
                                        unsigned L = kDefaultPretestDepth);

} // namespace quadgraph

#endif
