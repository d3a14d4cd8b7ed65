#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qgraph/cyclotomic.hpp"
#include "qgraph/numeric.hpp"
#include "qgraph/padic.hpp"

namespace qgraph::oscint {

// ---------------------------------------------------------------------------
// p-adic side.  All integrals run over the chopped annulus
// p^{-T} <= ||s|| <= p^T with the multiplicative measure ds/||s||.
// ---------------------------------------------------------------------------

// Additive Haar measure of the shell C_k = {||s|| = p^k}: p^k - p^{k-1}.
Rational shell_measure(const BigInt& p, int k);

struct PadicChoppedMeasure {
    BigInt p;
    int T;

    PadicChoppedMeasure(BigInt prime, int chop);

    Rational L() const;          // (4T+2)(1 - 1/p), the normalization constant
    Rational annulus_mass() const; // multiplicative mass of the annulus = L/2
    Rational floor() const;      // -4/L, the spectral floor for mu_hat
};

// int_{p^k Z_p} psi(a s) ds  =  p^{-k} if v(a) + k >= 0, else 0.
Rational ball_character_integral(const PadicNumber& a, int k);

// int_{C_k} psi(a s) ds/||s||  with ||a|| = p^n:
//   1 - 1/p  for k <= -n,   -1/p  for k = 1-n,   0 otherwise.
Rational shell_character_integral(const PadicNumber& a, int k);

enum class UnitSumStrategy { Auto, Plain, Collapsed };

// Exact evaluation of  sum over units u mod p^D of e((alpha*u + beta*u^{-1})/p^D),
// returned as multiplicities of p^D-th roots of unity.  Plain enumerates the
// unit group; Collapsed applies the exact coset collapse u = v + p^{ceil(D/2)} h
// (valid for p odd since the quadratic remainder has valuation >= D) and then
// solves alpha v^2 = beta mod p^{floor(D/2)} by Hensel lifting.  Both paths
// compute the same object; Plain is kept as the slow independent reference.
struct UnitSumTerm {
    BigInt phase_num;        // phase is phase_num / p^D
    std::int64_t count;
};
std::vector<UnitSumTerm> kloosterman_unit_sum(const BigInt& p, unsigned D,
                                              const BigInt& alpha, const BigInt& beta,
                                              UnitSumStrategy strategy = UnitSumStrategy::Auto,
                                              std::uint64_t plain_budget = 1u << 18);

struct FKernelResult {
    int r = 0;
    int m = 0;                      // ||w|| = p^m
    unsigned level = 1;             // phase denominator is p^level
    std::vector<UnitSumTerm> terms; // F = p^{-level} * sum count * e(num/p^level)
    std::optional<RootOfUnitySum> exact; // dense form, when p^level fits the budget
    double value = 0.0;
    bool envelope_ok = true;        // |F| <= 1 - 1/p
};

// F(r, w) = int_{C_r} psi(s) psi(w/s) ds/||s||, evaluated exactly as a finite
// character sum over units mod p^D, D = max(r, m-r, 1).
FKernelResult f_kernel(int r, const PadicNumber& w,
                       UnitSumStrategy strategy = UnitSumStrategy::Auto);

struct J1Result {
    std::optional<RootOfUnitySum> exact; // dense exact value when it fits the budget
    double value = 0.0;
    bool floor_ok = true;    // value >= -2
    int window_lo = 0;       // shell range actually integrated
    int window_hi = 0;
    std::string route;       // case label, for reports
};

// J1(x, y, T) = int over the chopped annulus of conj(psi)(xs + y/s) ds/||s||,
// by the exact case decomposition (shell identities + F kernels).
J1Result j1_exact(const PadicNumber& x, const PadicNumber& y, int T,
                  UnitSumStrategy strategy = UnitSumStrategy::Auto);

// Independent oracle: per shell k in [-T, T] enumerate units u mod p^{M_k},
// M_k = max(1, k - v(x), -k - v(y)) + 1, evaluate the character phase of
// x*s + y/s at s = p^{-k} u through PadicNumber arithmetic, and accumulate
// exact root-of-unity multiplicities with weight p^{-M_k}.  Shares no code
// with the decomposition route.
J1Result j1_bruteforce(const PadicNumber& x, const PadicNumber& y, int T,
                       std::uint64_t modulus_budget = std::uint64_t(1) << 21);

struct MuHatPadicResult {
    double value = 0.0;
    std::optional<Rational> exact_value; // when J1 reduces to a rational
    Rational floor;          // -4/L
    bool floor_ok = true;
    J1Result j1;
};

// mu_hat_T(x, y) = (2/L) * J1(x, y, T); p odd only.
MuHatPadicResult mu_hat_padic(const PadicNumber& x, const PadicNumber& y, int T);

// ---------------------------------------------------------------------------
// Real side: mu_hat_T(x,y) = (1/2T) int_{-T}^{T} cos(2 pi (x e^t + y e^{-t})) dt.
// ---------------------------------------------------------------------------

struct RealQuadratureConfig {
    double tol = 1e-9;
    double lambda_threshold = 48.0; // |phi'| above this switches to the boundary series
    int max_series_order = 8;
    long max_panels = 2000000;
    bool force_panels_only = false; // disable the series (cross-validation path)
};

struct RealChoppedMeasure {
    double T;
    explicit RealChoppedMeasure(double chop);
    double floor() const;   // -8 sqrt(2/pi) / T
};

// 8 sqrt(2/pi), the single-tail envelope constant.
double envelope_constant();

struct MuHatRealResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    long panels = 0;
    double floor = 0.0;
    bool floor_ok = true;
};

MuHatRealResult mu_hat_real(double x, double y, double T,
                            const RealQuadratureConfig& cfg = {});

struct VdcResult {
    std::complex<double> integral;
    double lambda = 0.0;     // min |phi''| = min |phi| on the interval
    double bound = 0.0;      // 8 / sqrt(lambda)
    bool holds = true;
};

// Checks |int_a^b e^{i phi}| <= 8 lambda^{-1/2} for phi(t) = 2 pi (x e^t + y e^{-t}).
// Errors when lambda = 0 (phi vanishes on [a, b]).
VdcResult vdc_envelope_check(double x, double y, double a, double b,
                             const RealQuadratureConfig& cfg = {});

} // namespace qgraph::oscint
