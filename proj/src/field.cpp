#include "quadgraph/field.hpp"

#include <array>

namespace quadgraph {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

} // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for all 64-bit inputs (Sinclair).
    constexpr std::array<uint64_t, 7> witnesses = {2,      325,     9375,
                                                   28178,  450775,  9780504,
                                                   1795265022};
    for (uint64_t w : witnesses) {
        uint64_t a = w % n;
        if (a == 0) continue;
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FieldCtx::FieldCtx(uint64_t p) : p_(p) {
    if (p >= (uint64_t{1} << 61)) {
        throw OverflowError("modulus must be below 2^61");
    }
    if (p == 2) {
        throw EvenPrimeError("p = 2 is not supported; the modulus must be an odd prime");
    }
    if (p < 3 || !is_prime_u64(p)) {
        throw NotPrimeError("modulus " + std::to_string(p) + " is not prime");
    }
}

uint64_t FieldCtx::pow(uint64_t base, uint64_t exp) const {
    return powmod(base, exp, p_);
}

uint64_t FieldCtx::inv(uint64_t x) const {
    if (x == 0) throw DivisionByZeroError("inverse of zero");
    return pow(x, p_ - 2);
}

int FieldCtx::legendre(uint64_t x) const {
    if (x == 0) return 0;
    uint64_t e = pow(x, (p_ - 1) / 2);
    return e == 1 ? 1 : -1;
}

std::vector<uint64_t> FieldCtx::sqrt_mod(uint64_t x) const {
    if (x == 0) return {0};
    if (legendre(x) != 1) return {};

    uint64_t r;
    if (p_ % 4 == 3) {
        r = pow(x, (p_ + 1) / 4);
    } else {
        // Tonelli-Shanks. Non-residue found by deterministic scan.
        uint64_t q = p_ - 1;
        int s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        uint64_t z = 2;
        while (legendre(z) != -1) ++z;
        uint64_t m = static_cast<uint64_t>(s);
        uint64_t c = pow(z, q);
        uint64_t t = pow(x, q);
        r = pow(x, (q + 1) / 2);
        while (t != 1) {
            uint64_t i = 0;
            uint64_t tt = t;
            while (tt != 1) {
                tt = mul(tt, tt);
                ++i;
            }
            uint64_t b = c;
            for (uint64_t j = 0; j + i + 1 < m; ++j) b = mul(b, b);
            m = i;
            c = mul(b, b);
            t = mul(t, c);
            r = mul(r, b);
        }
    }
    uint64_t other = p_ - r;
    if (r > other) std::swap(r, other);
    return {r, other};
}

} // namespace quadgraph
