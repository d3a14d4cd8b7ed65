#include "qgraph/oscint.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace qgraph::oscint {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;

void require_odd_prime(const BigInt& p) {
    if (p == 2)
        throw DomainError("oscint: the chopped p-adic machinery is odd-p only; p = 2 "
                          "needs the dyadic character normalization it deliberately omits");
    if (!is_prime(p)) throw DomainError("oscint: p = " + p.str() + " is not prime");
}

double terms_value(const std::vector<UnitSumTerm>& terms, const BigInt& p, unsigned D) {
    long double pD = powl(static_cast<long double>(p), static_cast<long double>(D));
    long double acc = 0;
    for (const UnitSumTerm& t : terms) {
        long double ph = static_cast<long double>(Rational(t.phase_num, ipow(p, D)));
        acc += static_cast<long double>(t.count) * cosl(2.0L * kPi * ph);
    }
    return static_cast<double>(acc / pD);
}

} // namespace

Rational shell_measure(const BigInt& p, int k) {
    require_odd_prime(p);
    unsigned a = static_cast<unsigned>(k >= 0 ? k : -k);
    Rational pk = k >= 0 ? Rational(ipow(p, a)) : Rational(1, ipow(p, a));
    return pk - pk / p;
}

PadicChoppedMeasure::PadicChoppedMeasure(BigInt prime, int chop) : p(std::move(prime)), T(chop) {
    require_odd_prime(p);
    if (T < 1) throw DomainError("PadicChoppedMeasure: T >= 1 required");
}

Rational PadicChoppedMeasure::L() const {
    return Rational(4 * T + 2) * (Rational(1) - Rational(1, p));
}

Rational PadicChoppedMeasure::annulus_mass() const { return L() / 2; }

Rational PadicChoppedMeasure::floor() const { return Rational(-4) / L(); }

Rational ball_character_integral(const PadicNumber& a, int k) {
    require_odd_prime(a.prime());
    Rational pk = k >= 0 ? Rational(ipow(a.prime(), static_cast<unsigned>(k)))
                         : Rational(1, ipow(a.prime(), static_cast<unsigned>(-k)));
    if (a.is_zero() || a.val() + k >= 0) return 1 / pk;
    return Rational(0);
}

Rational shell_character_integral(const PadicNumber& a, int k) {
    require_odd_prime(a.prime());
    if (a.is_zero())
        throw DomainError("shell_character_integral: a = 0 (the integrand is constant; "
                          "use the shell mass 1 - 1/p directly)");
    int n = -a.val(); // ||a|| = p^n
    if (k <= -n) return Rational(1) - Rational(1, a.prime());
    if (k == 1 - n) return Rational(-1, a.prime());
    return Rational(0);
}

std::vector<UnitSumTerm> kloosterman_unit_sum(const BigInt& p, unsigned D,
                                              const BigInt& alpha, const BigInt& beta,
                                              UnitSumStrategy strategy,
                                              std::uint64_t plain_budget) {
    require_odd_prime(p);
    if (D < 1) throw DomainError("kloosterman_unit_sum: D >= 1 required");
    BigInt pD = ipow(p, D);
    BigInt A = mod_floor(alpha, pD), B = mod_floor(beta, pD);

    // Common p-power of alpha and beta only rescales the phase level:
    // S(D, p^c A', p^c B') = p^c * S(D-c, A', B') with phases re-embedded.
    unsigned c = 0;
    {
        BigInt Aa = A, Bb = B;
        while (c < D && (Aa % p == 0) && (Bb % p == 0) && !(Aa == 0 && Bb == 0)) {
            Aa /= p;
            Bb /= p;
            ++c;
        }
        if (A == 0 && B == 0) c = D;
        if (c > 0 && c < D) {
            auto sub = kloosterman_unit_sum(p, D - c, A / ipow(p, c), B / ipow(p, c),
                                            strategy, plain_budget);
            BigInt lift = ipow(p, c);
            std::int64_t mult = static_cast<std::int64_t>(ipow64(
                static_cast<std::uint64_t>(p), c));
            for (UnitSumTerm& t : sub) {
                t.phase_num *= lift;
                t.count *= mult;
            }
            return sub;
        }
        if (c == D) {
            // Phase identically zero: the sum is just the unit count.
            std::int64_t phi = static_cast<std::int64_t>(ipow64(static_cast<std::uint64_t>(p), D) -
                                                         ipow64(static_cast<std::uint64_t>(p), D - 1));
            return {UnitSumTerm{BigInt(0), phi}};
        }
    }

    bool fits_plain = pD <= BigInt(plain_budget);
    bool use_plain = strategy == UnitSumStrategy::Plain ||
                     (strategy == UnitSumStrategy::Auto && (D == 1 || fits_plain));
    if (strategy == UnitSumStrategy::Collapsed && D == 1)
        use_plain = true; // the collapse needs D >= 2

    if (use_plain) {
        if (!fits_plain)
            throw BudgetError("kloosterman_unit_sum: plain enumeration over p^" +
                              std::to_string(D) + " exceeds the budget");
        std::uint64_t m = static_cast<std::uint64_t>(pD);
        std::uint64_t a64 = static_cast<std::uint64_t>(A);
        std::uint64_t b64 = static_cast<std::uint64_t>(B);
        std::uint64_t g = static_cast<std::uint64_t>(primitive_root(p, D));
        std::uint64_t ginv = static_cast<std::uint64_t>(mod_inverse(BigInt(g), pD));
        std::uint64_t phi = m - m / static_cast<std::uint64_t>(p);
        std::vector<std::int64_t> counts(m, 0);
        std::uint64_t u = 1, v = 1;
        for (std::uint64_t i = 0; i < phi; ++i) {
            counts[(a64 * u + b64 * v) % m] += 1;
            u = u * g % m;
            v = v * ginv % m;
        }
        std::vector<UnitSumTerm> out;
        for (std::uint64_t j = 0; j < m; ++j)
            if (counts[j] != 0) out.push_back({BigInt(j), counts[j]});
        return out;
    }

    // Exact collapse: write u = v + p^J h with J = ceil(D/2).  The remainder of
    // the u^{-1} expansion has valuation 2J >= D, so
    //   f(u) = f(v) + p^J h (A - B v^{-2})  (mod p^D)
    // exactly, and summing h over Z/p^{D-J} kills every v with
    // A v^2 != B mod p^{D-J}.  Hence
    //   S = p^{D-J} * sum over units v mod p^J, A v^2 = B mod p^{D-J}, of e(f(v)/p^D).
    unsigned J = (D + 1) / 2, e = D - J; // e = floor(D/2) >= 1 here
    bool a_unit = A % p != 0, b_unit = B % p != 0;
    if (!a_unit || !b_unit) return {}; // unit*v^2 can't meet a non-unit mod p
    BigInt pe = ipow(p, e), pJ = ipow(p, J);
    auto root = sqrt_mod_prime_power(B * mod_inverse(A, pe) % pe, p, e);
    if (!root) return {};
    std::int64_t mult = static_cast<std::int64_t>(ipow64(static_cast<std::uint64_t>(p), D - J));
    std::vector<UnitSumTerm> out;
    BigInt lift_count = pJ / pe; // 1 or p
    for (int sign = 0; sign < 2; ++sign) {
        BigInt base = sign == 0 ? *root : pe - *root;
        for (BigInt t = 0; t < lift_count; ++t) {
            BigInt v = base + pe * t;
            BigInt f = mod_floor(A * v + B * mod_inverse(v, pD), pD);
            out.push_back({f, mult});
        }
    }
    return out;
}

FKernelResult f_kernel(int r, const PadicNumber& w, UnitSumStrategy strategy) {
    const BigInt& p = w.prime();
    require_odd_prime(p);
    if (r < 1) throw DomainError("f_kernel: r >= 1 required");
    if (w.is_zero()) throw DomainError("f_kernel: w must be nonzero");

    int m = -w.val(); // ||w|| = p^m
    int dep2 = std::max(0, m - r);
    unsigned D = static_cast<unsigned>(std::max(r, dep2));
    if (dep2 > w.precision())
        throw PrecisionError("f_kernel: w needs at least " + std::to_string(dep2) +
                             " known digits");

    BigInt pD = ipow(p, D);
    BigInt alpha = ipow(p, D - static_cast<unsigned>(r));
    BigInt beta = dep2 == 0 ? BigInt(0)
                            : mod_floor(w.unit() * ipow(p, D - static_cast<unsigned>(dep2)), pD);

    FKernelResult res;
    res.r = r;
    res.m = m;
    auto terms = kloosterman_unit_sum(p, D, alpha, beta, strategy);
    res.value = terms_value(terms, p, D);
    double envelope = 1.0 - 1.0 / static_cast<double>(p);
    res.envelope_ok = std::fabs(res.value) <= envelope + 1e-12;

    if (ipow(p, D) <= BigInt(RootOfUnitySum::default_size_budget)) {
        RootOfUnitySum dense(p, D);
        for (const UnitSumTerm& t : terms) dense.add_term(t.phase_num, D, t.count, D);
        res.exact = std::move(dense);
    } // else: too deep to materialize densely; the compact term list stands alone
    res.terms = std::move(terms);
    res.level = D;
    return res;
}

namespace {

struct ShellRange {
    int lo, hi; // inclusive; empty when lo > hi
    int count() const { return hi >= lo ? hi - lo + 1 : 0; }
};

} // namespace

J1Result j1_exact(const PadicNumber& x, const PadicNumber& y, int T, UnitSumStrategy strategy) {
    const BigInt& p = x.prime();
    require_odd_prime(p);
    if (y.prime() != p) throw DomainError("j1_exact: mixed primes");
    if (T < 1) throw DomainError("j1_exact: T >= 1 required");

    PadicNumber one = PadicNumber::from_rational(Rational(1), p, PadicNumber::default_precision);
    Rational shells(0);
    std::vector<FKernelResult> kernels;
    J1Result res;

    if (x.is_zero() && y.is_zero()) {
        shells = Rational(2 * T + 1) * (Rational(1) - Rational(1, p));
        res.route = "both-zero";
        res.window_lo = -T;
        res.window_hi = T;
    } else if (x.is_zero() || y.is_zero()) {
        const PadicNumber& b = x.is_zero() ? y : x;
        for (int k = -T; k <= T; ++k) shells += shell_character_integral(b, k);
        res.route = x.is_zero() ? "x=0" : "y=0";
        res.window_lo = -T;
        res.window_hi = T;
    } else {
        PadicNumber a = x * y;
        int n2 = -y.val();
        int l1 = -T - n2, l2 = T - n2;
        int m = -a.val();
        res.window_lo = l1;
        res.window_hi = l2;
        int covered = 0;
        if (m <= 0) {
            res.route = "small-a";
            ShellRange i1{l1, std::min(0, l2)}, i2{std::max(1, l1), l2};
            for (int k = i1.lo; k <= i1.hi; ++k) shells += shell_character_integral(one, -k);
            for (int k = i2.lo; k <= i2.hi; ++k) shells += shell_character_integral(a, k);
            covered = i1.count() + i2.count();
        } else {
            res.route = "large-a";
            ShellRange o1{std::max(0, l1), l2};
            ShellRange o2{l1, std::min(-m, l2)};
            ShellRange o3{std::max(-m + 1, l1), std::min(-1, l2)};
            for (int k = o1.lo; k <= o1.hi; ++k) shells += shell_character_integral(a, k);
            for (int k = o2.lo; k <= o2.hi; ++k) shells += shell_character_integral(one, -k);
            for (int k = o3.lo; k <= o3.hi; ++k) kernels.push_back(f_kernel(k + m, a, strategy));
            covered = o1.count() + o2.count() + o3.count();
        }
        assert(covered == 2 * T + 1);
        (void)covered;
    }

    long double v = static_cast<long double>(shells);
    unsigned level = 1;
    for (const FKernelResult& f : kernels) {
        v += static_cast<long double>(f.value);
        level = std::max(level, f.level);
    }
    res.value = static_cast<double>(v);
    res.floor_ok = res.value >= -2.0 - 1e-9;

    bool dense = ipow(p, level) <= BigInt(RootOfUnitySum::default_size_budget);
    for (const FKernelResult& f : kernels) dense = dense && f.exact.has_value();
    if (dense) {
        RootOfUnitySum acc(p, level);
        acc.add_rational(shells);
        for (const FKernelResult& f : kernels)
            for (const UnitSumTerm& t : f.terms) acc.add_term(t.phase_num, f.level, t.count, f.level);
        res.exact = std::move(acc);
    }
    return res;
}

J1Result j1_bruteforce(const PadicNumber& x, const PadicNumber& y, int T,
                       std::uint64_t modulus_budget) {
    const BigInt& p = x.prime();
    require_odd_prime(p);
    if (y.prime() != p) throw DomainError("j1_bruteforce: mixed primes");
    if (T < 1) throw DomainError("j1_bruteforce: T >= 1 required");

    std::uint64_t p64 = static_cast<std::uint64_t>(p);
    // First pass: moduli per shell, and the common level.
    unsigned level = 1;
    std::vector<unsigned> Ms;
    for (int k = -T; k <= T; ++k) {
        int d1 = x.is_zero() ? 0 : std::max(0, k - x.val());
        int d2 = y.is_zero() ? 0 : std::max(0, -k - y.val());
        unsigned M = static_cast<unsigned>(std::max({1, d1, d2})) + 1;
        if (ipow(p, M) > BigInt(modulus_budget))
            throw BudgetError("j1_bruteforce: shell k = " + std::to_string(k) +
                              " needs modulus p^" + std::to_string(M) +
                              " beyond the configured budget");
        Ms.push_back(M);
        level = std::max(level, M);
    }

    RootOfUnitySum acc(p, level, std::max<std::size_t>(RootOfUnitySum::default_size_budget,
                                                       static_cast<std::size_t>(modulus_budget)));
    std::vector<std::int64_t> counts;
    for (int k = -T; k <= T; ++k) {
        unsigned M = Ms[static_cast<std::size_t>(k + T)];
        std::uint64_t pM = ipow64(p64, M);
        unsigned d1 = x.is_zero() ? 0 : static_cast<unsigned>(std::max(0, k - x.val()));
        unsigned d2 = y.is_zero() ? 0 : static_cast<unsigned>(std::max(0, -k - y.val()));
        if (d1 > static_cast<unsigned>(x.is_zero() ? 0 : x.precision()) ||
            d2 > static_cast<unsigned>(y.is_zero() ? 0 : y.precision()))
            throw PrecisionError("j1_bruteforce: operands carry too few digits for T");

        std::uint64_t pd1 = ipow64(p64, d1), pd2 = ipow64(p64, d2);
        std::uint64_t s1 = pM / pd1, s2 = pM / pd2;
        std::uint64_t ux = d1 == 0 ? 0 : static_cast<std::uint64_t>(x.unit() % BigInt(pd1));
        std::uint64_t uy = d2 == 0 ? 0 : static_cast<std::uint64_t>(y.unit() % BigInt(pd2));

        counts.assign(pM, 0);
        std::uint64_t g = static_cast<std::uint64_t>(primitive_root(p, M));
        std::uint64_t ginv = static_cast<std::uint64_t>(mod_inverse(BigInt(g), BigInt(pM)));
        std::uint64_t phi = pM - pM / p64;
        std::uint64_t u = 1, uinv = 1;
        for (std::uint64_t i = 0; i < phi; ++i) {
            // phase of conj(psi)(x s + y / s) at s = p^{-k} u
            std::uint64_t n1 = d1 == 0 ? 0 : (ux * (u % pd1)) % pd1;
            std::uint64_t n2 = d2 == 0 ? 0 : (uy * (uinv % pd2)) % pd2;
            std::uint64_t r = n1 * s1 + n2 * s2;
            if (r >= pM) r -= pM;
            counts[r == 0 ? 0 : pM - r] += 1;
            u = u * g % pM;
            uinv = uinv * ginv % pM;
        }
        for (std::uint64_t j = 0; j < pM; ++j)
            if (counts[j] != 0) acc.add_term(BigInt(j), M, counts[j], M);
    }

    J1Result res;
    res.value = acc.value_real();
    res.exact = std::move(acc);
    res.floor_ok = res.value >= -2.0 - 1e-9;
    res.window_lo = -T;
    res.window_hi = T;
    res.route = "bruteforce";
    return res;
}

MuHatPadicResult mu_hat_padic(const PadicNumber& x, const PadicNumber& y, int T) {
    PadicChoppedMeasure mu(x.prime(), T);
    MuHatPadicResult res;
    res.j1 = j1_exact(x, y, T);
    Rational L = mu.L();
    res.value = 2.0 * res.j1.value / static_cast<double>(L);
    res.floor = mu.floor();
    res.floor_ok = res.value >= static_cast<double>(res.floor) - 1e-9;
    if (res.j1.exact) {
        if (auto r = res.j1.exact->as_rational()) res.exact_value = 2 * *r / L;
    }
    return res;
}

} // namespace qgraph::oscint
