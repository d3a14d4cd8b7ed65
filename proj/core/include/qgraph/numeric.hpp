#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "qgraph/errors.hpp"

namespace qgraph {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

BigInt ipow(const BigInt& base, unsigned exp);
std::uint64_t ipow64(std::uint64_t base, unsigned exp); // throws BudgetError on overflow

bool is_prime(const BigInt& n);

// Largest e with p^e | n.  n must be nonzero.
int valuation(BigInt n, const BigInt& p);

// v_p(r) for nonzero rational r (negative when p divides the denominator).
int valuation(const Rational& r, const BigInt& p);

// r with the whole p-power part removed: r / p^{v_p(r)}.
Rational unit_part(const Rational& r, const BigInt& p);

BigInt mod_inverse(const BigInt& a, const BigInt& m); // gcd(a, m) must be 1
BigInt mod_pow(BigInt base, BigInt exp, const BigInt& m);

// a mod m normalized into [0, m).
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

// Legendre symbol (a|p) in {-1, 0, +1}; p an odd prime.
int legendre(const BigInt& a, const BigInt& p);

// Legendre symbol of a rational p-adic unit: (num * den^{-1} | p).
int legendre_unit(const Rational& u, const BigInt& p);

// Generator of the cyclic group (Z/p^k)^* for odd prime p.
BigInt primitive_root(const BigInt& p, unsigned k);

// Square root of a unit c modulo p^k (odd p): nullopt when c is a non-residue.
std::optional<BigInt> sqrt_mod_prime_power(const BigInt& c, const BigInt& p, unsigned k);

// Exact test for r = s^2 with s rational.
bool is_rational_square(const Rational& r);

// Parses "a" or "a/b" with optional sign; reports the byte offset of the
// first offending character on failure.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

} // namespace qgraph
