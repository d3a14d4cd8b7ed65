#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qgraph/numeric.hpp"

namespace qgraph {

// Exact element of Z[1/p][zeta] for zeta a primitive p^level-th root of unity:
//
//   value = p^{-level} * sum_j coef[j] * zeta^j,   0 <= j < p^level.
//
// Terms with any p-power denominator up to p^level and integer multiplicities
// fit this shape, which covers every quantity the chopped p-adic integrals
// produce.  Equality is decided in the canonical basis {zeta^j : j < phi(p^level)}
// obtained by folding the top block through the minimal polynomial
// sum_{t=0}^{p-1} zeta^{t p^{level-1}} = 0, so it is exact, not numeric.
class RootOfUnitySum {
public:
    RootOfUnitySum(BigInt p, unsigned level, std::size_t size_budget = default_size_budget);

    static constexpr std::size_t default_size_budget = std::size_t(1) << 21;

    const BigInt& prime() const { return p_; }
    unsigned level() const { return level_; }

    // Adds count * p^{-coef_exp} * e(2*pi*i * phase_num / p^{phase_exp}).
    // Requires phase_exp <= level and coef_exp <= level.
    void add_term(const BigInt& phase_num, unsigned phase_exp,
                  std::int64_t count, unsigned coef_exp);

    void add_rational(const Rational& r); // denominator must divide p^level

    RootOfUnitySum& operator+=(const RootOfUnitySum& o); // levels may differ

    // Rewrites coefficients in the canonical basis (idempotent).
    void canonicalize();

    bool equals(const RootOfUnitySum& o) const; // exact
    bool is_zero() const;

    // Exact rational value if the canonical form is supported on zeta^0 alone.
    std::optional<Rational> as_rational() const;

    double value_real() const;
    double value_imag() const;

    std::size_t term_count() const; // nonzero coefficients (diagnostic)

private:
    RootOfUnitySum raised_to(unsigned level, std::size_t size_budget) const;

    BigInt p_;
    unsigned level_;
    std::size_t size_budget_;
    std::vector<std::int64_t> coef_; // size p^level
};

} // namespace qgraph
