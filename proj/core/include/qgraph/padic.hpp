#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qgraph/numeric.hpp"

namespace qgraph {

// An element of Q_p held as p^val * unit with the unit known modulo p^prec.
// Exact zero carries its own flag; for nonzero values the unit is in
// [1, p^prec) and coprime to p, so digit 0 of the unit is nonzero.
//
// Every operation tracks how many unit digits of the result are actually
// determined by the inputs.  Additive cancellation shortens that window; when
// it empties entirely the value is indistinguishable from zero at the known
// precision and the operation refuses (PrecisionError) instead of guessing.
class PadicNumber {
public:
    static constexpr int default_precision = 64;

    static PadicNumber zero(const BigInt& p, int precision = default_precision);
    static PadicNumber from_rational(const Rational& r, const BigInt& p,
                                     int precision = default_precision);
    // p^val * unit, unit an integer coprime to p (reduced mod p^precision).
    static PadicNumber from_unit(const BigInt& p, int val, const BigInt& unit,
                                 int precision = default_precision);

    const BigInt& prime() const { return p_; }
    bool is_zero() const { return zero_; }
    int val() const; // PrecisionError on zero
    int precision() const { return prec_; }
    const BigInt& unit() const; // in [1, p^prec), coprime to p

    // Base-p digits d_0 .. d_{prec-1} of the unit part, d_0 != 0.
    std::vector<std::uint32_t> digits() const;
    // Digit of p^e in the expansion of the value itself (0 below val()).
    std::uint32_t digit_at(int exponent) const;

    // |x|_p = p^{-val}; 0 for zero.
    double norm() const;
    int norm_exponent() const { return -val(); } // |x|_p = p^{norm_exponent}

    PadicNumber operator-() const;
    PadicNumber operator+(const PadicNumber& o) const;
    PadicNumber operator-(const PadicNumber& o) const;
    PadicNumber operator*(const PadicNumber& o) const;
    PadicNumber operator/(const PadicNumber& o) const;
    PadicNumber inverse() const;

    bool operator==(const PadicNumber& o) const; // equal within shared precision

    // "p^v * (d0 d1 d2 ...)_p", digits capped for readability.
    std::string str(std::size_t max_digits = 12) const;

private:
    PadicNumber(BigInt p, bool zero, int val, int prec, BigInt unit)
        : p_(std::move(p)), zero_(zero), val_(val), prec_(prec), unit_(std::move(unit)) {}

    static void check_prime(const BigInt& p);

    BigInt p_;
    bool zero_ = true;
    int val_ = 0;
    int prec_ = 0;
    BigInt unit_ = 0;
};

// Additive character phase: a rational r/p^n reduced into [0, 1).  The value
// of the character is exp(2*pi*i * phase).
class CharacterPhase {
public:
    CharacterPhase() : phase_(0) {}
    explicit CharacterPhase(Rational r);

    const Rational& fraction() const { return phase_; }
    bool is_trivial() const { return phase_ == 0; }

    CharacterPhase operator+(const CharacterPhase& o) const;
    CharacterPhase operator-() const;
    bool operator==(const CharacterPhase& o) const { return phase_ == o.phase_; }

    double real() const { return std::cos(2.0 * pi() * static_cast<double>(phase_)); }
    double imag() const { return std::sin(2.0 * pi() * static_cast<double>(phase_)); }

    static double pi() { return 3.141592653589793238462643383279502884; }

private:
    Rational phase_; // in [0, 1)
};

// Phase of the standard character on Q_p: for x = p^{-n} * (r + Z_p) with
// n > 0 the phase is r/p^n; elements of Z_p map to phase 0.  Only the digits
// of x below p^0 matter, so the result is exact whenever those digits are
// inside the precision window.
CharacterPhase tate_character(const PadicNumber& x);

// Truncation sum_{-m <= j <= 0} b_j p^j of the digit expansion of x,
// returned as the digit list (b_{-m}, ..., b_0).
std::vector<std::uint32_t> digit_truncation(const PadicNumber& x, int m);

// Thin real-scalar wrapper so the archimedean place can be driven through the
// same norm/validation vocabulary as Q_p.
struct RealScalar {
    double value = 0.0;

    explicit RealScalar(double v);
    double norm() const { return std::fabs(value); }
};

} // namespace qgraph
