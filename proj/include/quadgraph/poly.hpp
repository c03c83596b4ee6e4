#ifndef QUADGRAPH_POLY_HPP
#define QUADGRAPH_POLY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "quadgraph/field.hpp"

namespace quadgraph {

/// Dense univariate polynomial over F_p, coefficients in ascending degree
/// order, no trailing zeros. The zero polynomial has an empty coefficient
/// vector and degree() == -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<uint64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(uint64_t v) { return v == 0 ? Poly{} : Poly{{v}}; }
    static Poly x() { return Poly{{0, 1}}; }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    uint64_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    uint64_t lead() const { return c_.back(); }
    const std::vector<uint64_t>& coeffs() const { return c_; }

    bool operator==(const Poly&) const = default;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<uint64_t> c_;

    friend Poly poly_trimmed(std::vector<uint64_t> coeffs);
};

Poly poly_add(const Poly& a, const Poly& b, const FieldCtx& ctx);
Poly poly_sub(const Poly& a, const Poly& b, const FieldCtx& ctx);
Poly poly_mul(const Poly& a, const Poly& b, const FieldCtx& ctx);
Poly poly_monic(const Poly& a, const FieldCtx& ctx);

/// Quotient and remainder; divisor must be nonzero.
std::pair<Poly, Poly> poly_divrem(const Poly& num, const Poly& den, const FieldCtx& ctx);

/// Monic gcd. gcd(f, 0) is f made monic. Throws BothZeroError.
Poly poly_gcd(const Poly& f, const Poly& g, const FieldCtx& ctx);

/// Division that must leave no remainder; throws InexactDivisionError.
Poly poly_exact_div(const Poly& num, const Poly& den, const FieldCtx& ctx);

uint64_t poly_eval(const Poly& f, uint64_t x, const FieldCtx& ctx);

/// Formal derivative.
Poly poly_derivative(const Poly& f, const FieldCtx& ctx);

constexpr unsigned kDefaultIterationCap = 25;

/// f_a composed with itself n times, f_a(X) = X^2 + a. Degree 2^n.
Poly iterate_poly(uint64_t a, unsigned n, const FieldCtx& ctx,
                  unsigned max_depth = kDefaultIterationCap);

/// X^p reduced modulo m (deg m >= 1), by square-and-multiply on p.
Poly frobenius_power(const Poly& m, const FieldCtx& ctx);

/// Monic gcd(X^p - X, f_a^{(i)}(X) - X); its degree is the number of
/// x in F_p with f_a^{(i)}(x) = x.
Poly frobenius_gcd(uint64_t a, unsigned i, const FieldCtx& ctx,
                   unsigned max_depth = kDefaultIterationCap);

/// Dynatomic polynomial: the Moebius product over divisors of ell of
/// (f_a^{(r)}(X) - X)^{mu(ell/r)}, with exact division.
Poly dynatomic(uint64_t a, unsigned ell, const FieldCtx& ctx,
               unsigned max_depth = kDefaultIterationCap);

/// Moebius function by trial factorization.
int mobius(unsigned n);

} // namespace quadgraph

#endif
