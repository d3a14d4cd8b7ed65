#include "qgraph/numeric.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cctype>
#include <limits>
#include <vector>

namespace qgraph {

BigInt ipow(const BigInt& base, unsigned exp) {
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        exp >>= 1u;
        if (exp) b *= b;
    }
    return r;
}

std::uint64_t ipow64(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            throw BudgetError("ipow64: modulus exceeds 64-bit range");
        r *= base;
    }
    return r;
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    for (int q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    return boost::multiprecision::miller_rabin_test(n, 32);
}

int valuation(BigInt n, const BigInt& p) {
    if (n == 0) throw DomainError("valuation: zero has no finite valuation");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int valuation(const Rational& r, const BigInt& p) {
    if (r == 0) throw DomainError("valuation: zero has no finite valuation");
    return valuation(num(r), p) - valuation(den(r), p);
}

Rational unit_part(const Rational& r, const BigInt& p) {
    int v = valuation(r, p);
    Rational scale(ipow(p, static_cast<unsigned>(v < 0 ? -v : v)));
    return v >= 0 ? r / scale : r * scale;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt r0 = m, r1 = mod_floor(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw DomainError("mod_inverse: arguments are not coprime");
    return mod_floor(s0, m);
}

BigInt mod_pow(BigInt base, BigInt exp, const BigInt& m) {
    base = mod_floor(base, m);
    BigInt r = 1;
    while (exp > 0) {
        if ((exp & 1) != 0) r = r * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return r;
}

int legendre(const BigInt& a, const BigInt& p) {
    BigInt r = mod_pow(a, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

int legendre_unit(const Rational& u, const BigInt& p) {
    BigInt n = mod_floor(num(u), p), d = mod_floor(den(u), p);
    if (n == 0 || d == 0) throw DomainError("legendre_unit: argument is not a p-adic unit");
    return legendre(n * mod_inverse(d, p) % p, p);
}

BigInt primitive_root(const BigInt& p, unsigned k) {
    if (p == 2) throw DomainError("primitive_root: odd p only");
    // Factor p-1 by trial division; p stays small enough in practice.
    std::vector<BigInt> factors;
    BigInt m = p - 1, q = 2;
    while (q * q <= m) {
        if (m % q == 0) {
            factors.push_back(q);
            while (m % q == 0) m /= q;
        }
        ++q;
    }
    if (m > 1) factors.push_back(m);

    BigInt g = 0;
    for (BigInt c = 2; c < p; ++c) {
        bool ok = true;
        for (const BigInt& f : factors)
            if (mod_pow(c, (p - 1) / f, p) == 1) { ok = false; break; }
        if (ok) { g = c; break; }
    }
    if (g == 0) throw DomainError("primitive_root: p is not prime");
    if (k <= 1) return g;
    // g generates (Z/p^k)^* iff g^{p-1} != 1 mod p^2; otherwise g + p does.
    if (mod_pow(g, p - 1, p * p) == 1) g += p;
    return g;
}

std::optional<BigInt> sqrt_mod_prime_power(const BigInt& c, const BigInt& p, unsigned k) {
    BigInt c0 = mod_floor(c, p);
    if (c0 == 0) throw DomainError("sqrt_mod_prime_power: unit argument required");
    if (legendre(c0, p) != 1) return std::nullopt;
    BigInt r = 0;
    for (BigInt x = 1; x < p; ++x)
        if (x * x % p == c0) { r = x; break; }
    // Newton lift, doubling the exponent each round.
    unsigned have = 1;
    BigInt mod = p;
    while (have < k) {
        have = std::min(2 * have, k);
        mod = ipow(p, have);
        BigInt inv2r = mod_inverse(2 * r, mod);
        r = mod_floor(r - (r * r - c) * inv2r, mod);
    }
    return r;
}

bool is_rational_square(const Rational& r) {
    if (r < 0) return false;
    if (r == 0) return true;
    BigInt sn = boost::multiprecision::sqrt(num(r));
    BigInt sd = boost::multiprecision::sqrt(den(r));
    return sn * sn == num(r) && sd * sd == den(r);
}

Rational parse_rational(const std::string& text) {
    std::size_t i = 0;
    auto fail = [&](const char* msg) -> Rational {
        throw DomainError("parse_rational: " + std::string(msg) + " at offset " +
                          std::to_string(i) + " in \"" + text + "\"");
    };
    auto read_int = [&]() -> BigInt {
        bool neg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) fail("expected digits");
        BigInt v(text.substr(start, i - start));
        return neg ? -v : v;
    };
    BigInt n = read_int();
    BigInt d = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        d = read_int();
        if (d == 0) fail("zero denominator");
    }
    if (i != text.size()) fail("trailing characters");
    return Rational(n, d);
}

std::string to_string(const Rational& r) {
    std::string s = num(r).str();
    if (den(r) != 1) s += "/" + den(r).str();
    return s;
}

} // namespace qgraph
