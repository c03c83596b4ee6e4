#include "quadgraph/poly.hpp"

#include <algorithm>

namespace quadgraph {

Poly poly_add(const Poly& a, const Poly& b, const FieldCtx& ctx) {
    std::vector<uint64_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = ctx.add(a.coeff(i), b.coeff(i));
    return Poly(std::move(c));
}

Poly poly_sub(const Poly& a, const Poly& b, const FieldCtx& ctx) {
    std::vector<uint64_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = ctx.sub(a.coeff(i), b.coeff(i));
    return Poly(std::move(c));
}

Poly poly_mul(const Poly& a, const Poly& b, const FieldCtx& ctx) {
    if (a.is_zero() || b.is_zero()) return {};
    // Schoolbook; pretest degrees stay tiny (<= 2^L).
    const uint64_t p = ctx.p();
    std::vector<uint64_t> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs().size(); ++j) {
            unsigned __int128 t = static_cast<unsigned __int128>(a.coeffs()[i]) * b.coeffs()[j];
            c[i + j] = ctx.add(c[i + j], static_cast<uint64_t>(t % p));
        }
    }
    return Poly(std::move(c));
}

Poly poly_monic(const Poly& a, const FieldCtx& ctx) {
    if (a.is_zero() || a.lead() == 1) return a;
    uint64_t s = ctx.inv(a.lead());
    std::vector<uint64_t> c = a.coeffs();
    for (auto& v : c) v = ctx.mul(v, s);
    return Poly(std::move(c));
}

std::pair<Poly, Poly> poly_divrem(const Poly& num, const Poly& den, const FieldCtx& ctx) {
    if (den.is_zero()) throw DivisionByZeroError("polynomial division by zero");
    if (num.degree() < den.degree()) return {Poly{}, num};
    std::vector<uint64_t> r = num.coeffs();
    std::vector<uint64_t> q(num.degree() - den.degree() + 1, 0);
    const uint64_t lead_inv = ctx.inv(den.lead());
    const int dd = den.degree();
    for (int i = num.degree(); i >= dd; --i) {
        uint64_t coef = r[static_cast<size_t>(i)];
        if (coef == 0) continue;
        uint64_t factor = ctx.mul(coef, lead_inv);
        q[static_cast<size_t>(i - dd)] = factor;
        for (int j = 0; j <= dd; ++j) {
            size_t idx = static_cast<size_t>(i - dd + j);
            r[idx] = ctx.sub(r[idx], ctx.mul(factor, den.coeff(static_cast<size_t>(j))));
        }
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly poly_gcd(const Poly& f, const Poly& g, const FieldCtx& ctx) {
    if (f.is_zero() && g.is_zero()) throw BothZeroError("gcd(0, 0) is undefined");
    Poly a = f;
    Poly b = g;
    while (!b.is_zero()) {
        Poly r = poly_divrem(a, b, ctx).second;
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a, ctx);
}

Poly poly_exact_div(const Poly& num, const Poly& den, const FieldCtx& ctx) {
    auto [q, r] = poly_divrem(num, den, ctx);
    if (!r.is_zero()) throw InexactDivisionError("polynomial division left a remainder");
    return q;
}

uint64_t poly_eval(const Poly& f, uint64_t x, const FieldCtx& ctx) {
    uint64_t acc = 0;
    for (size_t i = f.coeffs().size(); i-- > 0;) {
        acc = ctx.add(ctx.mul(acc, x), f.coeffs()[i]);
    }
    return acc;
}

Poly poly_derivative(const Poly& f, const FieldCtx& ctx) {
    if (f.degree() < 1) return {};
    std::vector<uint64_t> c(f.coeffs().size() - 1);
    for (size_t i = 1; i < f.coeffs().size(); ++i) {
        c[i - 1] = ctx.mul(f.coeffs()[i], i % ctx.p());
    }
    return Poly(std::move(c));
}

Poly iterate_poly(uint64_t a, unsigned n, const FieldCtx& ctx, unsigned max_depth) {
    if (n < 1 || n > max_depth) {
        throw DepthTooLargeError("iteration depth " + std::to_string(n) +
                                 " outside [1, " + std::to_string(max_depth) + "]");
    }
    Poly f({a, 0, 1}); // X^2 + a
    Poly addend = Poly::constant(a);
    for (unsigned i = 2; i <= n; ++i) {
        f = poly_add(poly_mul(f, f, ctx), addend, ctx);
    }
    return f;
}

Poly frobenius_power(const Poly& m, const FieldCtx& ctx) {
    // X^p mod m without materializing X^p: square-and-shift over the bits of p.
    Poly r = poly_divrem(Poly::x(), m, ctx).second;
    uint64_t p = ctx.p();
    int bit = 62;
    while (bit >= 0 && ((p >> bit) & 1) == 0) --bit;
    for (--bit; bit >= 0; --bit) {
        r = poly_divrem(poly_mul(r, r, ctx), m, ctx).second;
        if ((p >> bit) & 1) {
            std::vector<uint64_t> shifted(r.coeffs().size() + 1, 0);
            std::copy(r.coeffs().begin(), r.coeffs().end(), shifted.begin() + 1);
            r = poly_divrem(Poly(std::move(shifted)), m, ctx).second;
        }
    }
    return r;
}

Poly frobenius_gcd(uint64_t a, unsigned i, const FieldCtx& ctx, unsigned max_depth) {
    Poly m = poly_sub(iterate_poly(a, i, ctx, max_depth), Poly::x(), ctx);
    Poly h = frobenius_power(m, ctx);
    return poly_gcd(poly_sub(h, Poly::x(), ctx), m, ctx);
}

int mobius(unsigned n) {
    int result = 1;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            result = -result;
        }
    }
    if (n > 1) result = -result;
    return result;
}

Poly dynatomic(uint64_t a, unsigned ell, const FieldCtx& ctx, unsigned max_depth) {
    if (ell < 1 || ell > max_depth) {
        throw DepthTooLargeError("dynatomic index outside [1, " + std::to_string(max_depth) + "]");
    }
    Poly num = Poly::constant(1);
    Poly den = Poly::constant(1);
    for (unsigned r = 1; r <= ell; ++r) {
        if (ell % r != 0) continue;
        int mu = mobius(ell / r);
        if (mu == 0) continue;
        Poly term = poly_sub(iterate_poly(a, r, ctx, max_depth), Poly::x(), ctx);
        if (mu == 1) {
            num = poly_mul(num, term, ctx);
        } else {
            den = poly_mul(den, term, ctx);
        }
    }
    return poly_exact_div(num, den, ctx);
}

} // namespace quadgraph
