// Regenerates data/ip_near_1e4.json: I_p for ten primes near 10^4, computed
// by the rigorous traversal alone (no gcd pretest), so the fixture stays
// independent of the fast path it later validates.

#include <fstream>
#include <iostream>

#include <json.hpp>

#include "quadgraph/connectivity.hpp"
#include "quadgraph/field.hpp"

int main(int argc, char** argv) {
    using namespace quadgraph;
    const std::string out_path = argc > 1 ? argv[1] : "data/ip_near_1e4.json";

    nlohmann::json counts;
    for (uint64_t p : {10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079, 10091, 10093}) {
        FieldCtx ctx(p);
        uint64_t i_p = 0;
        for (uint64_t a = 0; a < p; ++a) {
            if (oracle_connected(ctx, a)) ++i_p;
        }
        counts[std::to_string(p)] = i_p;
        std::cerr << "p=" << p << " I_p=" << i_p << "\n";
    }

    nlohmann::json j;
    j["method"] = "exhaustive successor-chasing traversal (oracle_connected), no pretest";
    j["I_p"] = counts;
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return 1;
    }
    out << j.dump(2) << "\n";
    return 0;
}
