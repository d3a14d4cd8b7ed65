#include "qgraph/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qgraph {

namespace {

std::int64_t to_i64(const BigInt& v) {
    if (v > BigInt(std::numeric_limits<std::int64_t>::max()) ||
        v < BigInt(std::numeric_limits<std::int64_t>::min()))
        throw BudgetError("RootOfUnitySum: integer coefficient overflow");
    return static_cast<std::int64_t>(v);
}

std::size_t checked_size(const BigInt& p, unsigned level, std::size_t budget) {
    BigInt n = ipow(p, level);
    if (n > BigInt(budget))
        throw BudgetError("RootOfUnitySum: p^level = " + n.str() +
                          " exceeds the size budget " + std::to_string(budget));
    return static_cast<std::size_t>(n);
}

} // namespace

RootOfUnitySum::RootOfUnitySum(BigInt p, unsigned level, std::size_t size_budget)
    : p_(std::move(p)), level_(std::max(level, 1u)), size_budget_(size_budget) {
    if (p_ < 2) throw DomainError("RootOfUnitySum: p must be prime");
    coef_.assign(checked_size(p_, level_, size_budget_), 0);
}

void RootOfUnitySum::add_term(const BigInt& phase_num, unsigned phase_exp,
                              std::int64_t count, unsigned coef_exp) {
    if (phase_exp > level_ || coef_exp > level_)
        throw DomainError("RootOfUnitySum: term level exceeds the sum's level");
    BigInt pe = ipow(p_, phase_exp);
    std::size_t idx = static_cast<std::size_t>(mod_floor(phase_num, pe)) *
                      static_cast<std::size_t>(ipow(p_, level_ - phase_exp));
    std::int64_t scale = static_cast<std::int64_t>(ipow64(
        static_cast<std::uint64_t>(p_), level_ - coef_exp));
    coef_[idx] += count * scale;
}

void RootOfUnitySum::add_rational(const Rational& r) {
    BigInt d = den(r);
    unsigned e = 0;
    while (d > 1) {
        if (d % p_ != 0)
            throw DomainError("RootOfUnitySum: rational denominator is not a power of p");
        d /= p_;
        ++e;
    }
    if (e > level_) throw DomainError("RootOfUnitySum: rational denominator exceeds level");
    // num/p^e = p^{-level} * num * p^{level-e} at phase 0.
    coef_[0] += to_i64(num(r) * ipow(p_, level_ - e));
}

RootOfUnitySum RootOfUnitySum::raised_to(unsigned level, std::size_t size_budget) const {
    RootOfUnitySum out(p_, level, size_budget);
    if (level < level_) throw DomainError("RootOfUnitySum: cannot lower the level");
    std::size_t stride = static_cast<std::size_t>(ipow(p_, level - level_));
    std::int64_t scale = static_cast<std::int64_t>(ipow64(
        static_cast<std::uint64_t>(p_), level - level_));
    for (std::size_t j = 0; j < coef_.size(); ++j)
        if (coef_[j] != 0) out.coef_[j * stride] = coef_[j] * scale;
    return out;
}

RootOfUnitySum& RootOfUnitySum::operator+=(const RootOfUnitySum& o) {
    if (p_ != o.p_) throw DomainError("RootOfUnitySum: mixed primes");
    if (o.level_ > level_) *this = raised_to(o.level_, std::max(size_budget_, o.size_budget_));
    RootOfUnitySum rhs = o.level_ < level_ ? o.raised_to(level_, size_budget_) : o;
    for (std::size_t j = 0; j < coef_.size(); ++j) coef_[j] += rhs.coef_[j];
    return *this;
}

void RootOfUnitySum::canonicalize() {
    // zeta^{(p-1)p^{level-1} + s} = -sum_{t<p-1} zeta^{t p^{level-1} + s}.
    std::size_t block = coef_.size() / static_cast<std::size_t>(p_);
    std::size_t top = coef_.size() - block;
    for (std::size_t s = 0; s < block; ++s) {
        std::int64_t c = coef_[top + s];
        if (c == 0) continue;
        coef_[top + s] = 0;
        for (std::size_t t = 0; t + 1 < static_cast<std::size_t>(p_); ++t)
            coef_[t * block + s] -= c;
    }
}

bool RootOfUnitySum::equals(const RootOfUnitySum& o) const {
    if (p_ != o.p_) return false;
    unsigned lvl = std::max(level_, o.level_);
    std::size_t budget = std::max(size_budget_, o.size_budget_);
    RootOfUnitySum a = raised_to(lvl, budget), b = o.raised_to(lvl, budget);
    a.canonicalize();
    b.canonicalize();
    return a.coef_ == b.coef_;
}

bool RootOfUnitySum::is_zero() const {
    RootOfUnitySum a = *this;
    a.canonicalize();
    for (std::int64_t c : a.coef_)
        if (c != 0) return false;
    return true;
}

std::optional<Rational> RootOfUnitySum::as_rational() const {
    RootOfUnitySum a = *this;
    a.canonicalize();
    for (std::size_t j = 1; j < a.coef_.size(); ++j)
        if (a.coef_[j] != 0) return std::nullopt;
    return Rational(BigInt(a.coef_[0]), ipow(p_, level_));
}

double RootOfUnitySum::value_real() const {
    long double acc = 0;
    long double w = 2.0L * 3.141592653589793238462643383279502884L /
                    static_cast<long double>(coef_.size());
    for (std::size_t j = 0; j < coef_.size(); ++j)
        if (coef_[j] != 0) acc += static_cast<long double>(coef_[j]) * cosl(w * j);
    return static_cast<double>(acc / static_cast<long double>(coef_.size()));
}

double RootOfUnitySum::value_imag() const {
    long double acc = 0;
    long double w = 2.0L * 3.141592653589793238462643383279502884L /
                    static_cast<long double>(coef_.size());
    for (std::size_t j = 0; j < coef_.size(); ++j)
        if (coef_[j] != 0) acc += static_cast<long double>(coef_[j]) * sinl(w * j);
    return static_cast<double>(acc / static_cast<long double>(coef_.size()));
}

std::size_t RootOfUnitySum::term_count() const {
    std::size_t n = 0;
    for (std::int64_t c : coef_)
        if (c != 0) ++n;
    return n;
}

} // namespace qgraph
