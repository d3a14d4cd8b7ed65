#include "qgraph/padic.hpp"

#include <algorithm>

namespace qgraph {

void PadicNumber::check_prime(const BigInt& p) {
    if (!is_prime(p)) throw DomainError("PadicNumber: p = " + p.str() + " is not prime");
}

PadicNumber PadicNumber::zero(const BigInt& p, int precision) {
    check_prime(p);
    if (precision < 1) throw DomainError("PadicNumber: precision must be >= 1");
    return PadicNumber(p, true, 0, precision, 0);
}

PadicNumber PadicNumber::from_unit(const BigInt& p, int val, const BigInt& unit, int precision) {
    check_prime(p);
    if (precision < 1) throw DomainError("PadicNumber: precision must be >= 1");
    BigInt u = mod_floor(unit, ipow(p, static_cast<unsigned>(precision)));
    if (u == 0 || u % p == 0) throw DomainError("PadicNumber: unit part must be coprime to p");
    return PadicNumber(p, false, val, precision, u);
}

PadicNumber PadicNumber::from_rational(const Rational& r, const BigInt& p, int precision) {
    check_prime(p);
    if (r == 0) return zero(p, precision);
    int v = valuation(r, p);
    Rational u = unit_part(r, p);
    BigInt mod = ipow(p, static_cast<unsigned>(precision));
    BigInt unit = mod_floor(num(u), mod) * mod_inverse(den(u), mod) % mod;
    return PadicNumber(p, false, v, precision, unit);
}

int PadicNumber::val() const {
    if (zero_) throw PrecisionError("PadicNumber: zero has no finite valuation");
    return val_;
}

const BigInt& PadicNumber::unit() const {
    if (zero_) throw PrecisionError("PadicNumber: zero has no unit part");
    return unit_;
}

std::vector<std::uint32_t> PadicNumber::digits() const {
    std::vector<std::uint32_t> d;
    d.reserve(static_cast<std::size_t>(prec_));
    BigInt u = zero_ ? BigInt(0) : unit_;
    for (int i = 0; i < prec_; ++i) {
        d.push_back(static_cast<std::uint32_t>(u % p_));
        u /= p_;
    }
    return d;
}

std::uint32_t PadicNumber::digit_at(int exponent) const {
    if (zero_) return 0;
    if (exponent < val_) return 0;
    int i = exponent - val_;
    if (i >= prec_)
        throw PrecisionError("PadicNumber: digit at p^" + std::to_string(exponent) +
                             " lies beyond the precision window");
    BigInt q = unit_ / ipow(p_, static_cast<unsigned>(i));
    return static_cast<std::uint32_t>(q % p_);
}

double PadicNumber::norm() const {
    if (zero_) return 0.0;
    return std::pow(static_cast<double>(p_), -static_cast<double>(val_));
}

PadicNumber PadicNumber::operator-() const {
    if (zero_) return *this;
    BigInt mod = ipow(p_, static_cast<unsigned>(prec_));
    return PadicNumber(p_, false, val_, prec_, mod - unit_);
}

PadicNumber PadicNumber::operator+(const PadicNumber& o) const {
    if (p_ != o.p_) throw DomainError("PadicNumber: mixed primes");
    if (zero_) return o;
    if (o.zero_) return *this;
    // Both summands are known modulo p^{val + prec}; so is the sum.
    int known = std::min(val_ + prec_, o.val_ + o.prec_);
    int v = std::min(val_, o.val_);
    int window = known - v;
    BigInt mod = ipow(p_, static_cast<unsigned>(window));
    BigInt s = ipow(p_, static_cast<unsigned>(val_ - v)) * unit_ +
               ipow(p_, static_cast<unsigned>(o.val_ - v)) * o.unit_;
    s = mod_floor(s, mod);
    if (s == 0)
        throw PrecisionError("PadicNumber: cancellation below p^" + std::to_string(known) +
                             "; sum is indistinguishable from zero");
    int shift = 0;
    while (s % p_ == 0) {
        s /= p_;
        ++shift;
    }
    return PadicNumber(p_, false, v + shift, window - shift, s);
}

PadicNumber PadicNumber::operator-(const PadicNumber& o) const { return *this + (-o); }

PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
    if (p_ != o.p_) throw DomainError("PadicNumber: mixed primes");
    if (zero_ || o.zero_) return zero(p_, std::min(prec_, o.prec_));
    int prec = std::min(prec_, o.prec_);
    BigInt mod = ipow(p_, static_cast<unsigned>(prec));
    return PadicNumber(p_, false, val_ + o.val_, prec, unit_ * o.unit_ % mod);
}

PadicNumber PadicNumber::inverse() const {
    if (zero_) throw DomainError("PadicNumber: division by zero");
    BigInt mod = ipow(p_, static_cast<unsigned>(prec_));
    return PadicNumber(p_, false, -val_, prec_, mod_inverse(unit_, mod));
}

PadicNumber PadicNumber::operator/(const PadicNumber& o) const { return *this * o.inverse(); }

bool PadicNumber::operator==(const PadicNumber& o) const {
    if (p_ != o.p_) return false;
    if (zero_ || o.zero_) return zero_ == o.zero_;
    if (val_ != o.val_) return false;
    int prec = std::min(prec_, o.prec_);
    BigInt mod = ipow(p_, static_cast<unsigned>(prec));
    return unit_ % mod == o.unit_ % mod;
}

std::string PadicNumber::str(std::size_t max_digits) const {
    if (zero_) return "0_" + p_.str();
    std::string s = p_.str() + "^" + std::to_string(val_) + " * (";
    auto d = digits();
    for (std::size_t i = 0; i < d.size() && i < max_digits; ++i) {
        if (i) s += ' ';
        s += std::to_string(d[i]);
    }
    if (d.size() > max_digits) s += " ...";
    return s + ")_" + p_.str();
}

CharacterPhase::CharacterPhase(Rational r) {
    BigInt n = num(r), d = den(r);
    phase_ = Rational(mod_floor(n, d), d);
}

CharacterPhase CharacterPhase::operator+(const CharacterPhase& o) const {
    return CharacterPhase(phase_ + o.phase_);
}

CharacterPhase CharacterPhase::operator-() const {
    return CharacterPhase(-phase_);
}

CharacterPhase tate_character(const PadicNumber& x) {
    if (x.is_zero() || x.val() >= 0) return CharacterPhase();
    int n = -x.val();
    if (n > x.precision())
        throw PrecisionError("tate_character: fractional digits exceed the precision window");
    BigInt pn = ipow(x.prime(), static_cast<unsigned>(n));
    return CharacterPhase(Rational(x.unit() % pn, pn));
}

std::vector<std::uint32_t> digit_truncation(const PadicNumber& x, int m) {
    if (m < 0) throw DomainError("digit_truncation: m must be >= 0");
    std::vector<std::uint32_t> out;
    out.reserve(static_cast<std::size_t>(m) + 1);
    for (int e = -m; e <= 0; ++e) out.push_back(x.is_zero() ? 0 : x.digit_at(e));
    return out;
}

RealScalar::RealScalar(double v) : value(v) {
    if (!std::isfinite(v)) throw DomainError("RealScalar: value must be finite");
}

} // namespace qgraph
