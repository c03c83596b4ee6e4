#ifndef QUADGRAPH_FIELD_HPP
#define QUADGRAPH_FIELD_HPP

#include <cstdint>
#include <vector>

#include "quadgraph/errors.hpp"

namespace quadgraph {

/// Deterministic primality test valid for all 64-bit inputs.
bool is_prime_u64(uint64_t n);

/// Validated odd prime modulus with exact arithmetic mod p.
/// All inputs and outputs are canonical residues in [0, p).
/// Immutable after construction; safe to share across threads.
class FieldCtx {
public:
    /// Throws NotPrimeError, EvenPrimeError or OverflowError.
    explicit FieldCtx(uint64_t p);

    uint64_t p() const { return p_; }

    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }

    uint64_t sub(uint64_t a, uint64_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }

    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p_ - a; }

    uint64_t mul(uint64_t a, uint64_t b) const {
        return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
    }

    /// Canonical residue of an arbitrary signed integer.
    uint64_t reduce(int64_t v) const {
        int64_t r = v % static_cast<int64_t>(p_);
        if (r < 0) r += static_cast<int64_t>(p_);
        return static_cast<uint64_t>(r);
    }

    uint64_t pow(uint64_t base, uint64_t exp) const;

    /// Throws DivisionByZeroError for x = 0.
    uint64_t inv(uint64_t x) const;

    /// Euler's criterion: 0 for x = 0, +1 for nonzero squares, -1 otherwise.
    int legendre(uint64_t x) const;

    /// Square roots of x: {} if x is a non-residue, {0} for x = 0,
    /// {r, p-r} with r < p-r otherwise.
    std::vector<uint64_t> sqrt_mod(uint64_t x) const;

private:
    uint64_t p_;
};

} // namespace quadgraph

#endif
