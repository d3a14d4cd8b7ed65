#include "qgraph/oscint.hpp"

#include "qgraph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

namespace qgraph::oscint {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;
using CplxL = std::complex<long double>;

// phi(t) = 2 pi (x e^t + y e^{-t}).  With A = 2 pi x e^t and B = 2 pi y e^{-t}:
// phi = A + B, phi' = A - B, phi'' = phi.  Everything below leans on that.
struct PhaseFn {
    long double x, y;

    long double A(long double t) const { return 2.0L * kPi * x * expl(t); }
    long double B(long double t) const { return 2.0L * kPi * y * expl(-t); }
    long double phi(long double t) const { return A(t) + B(t); }
    long double dphi(long double t) const { return A(t) - B(t); }

    // phi' = 0 at t = ln(y/x)/2, only when x and y share a sign.
    std::optional<long double> stationary() const {
        if (x != 0 && y != 0 && (x > 0) == (y > 0)) return 0.5L * logl(y / x);
        return std::nullopt;
    }
    // phi = 0 (equivalently phi'' = 0) at t = ln(-y/x)/2, only for opposite signs.
    std::optional<long double> phi_zero() const {
        if (x != 0 && y != 0 && (x > 0) != (y > 0)) return 0.5L * logl(-y / x);
        return std::nullopt;
    }

    long double min_abs_dphi(long double a, long double b) const {
        if (auto s = stationary(); s && *s > a && *s < b) return 0.0L;
        long double m = std::min(fabsl(dphi(a)), fabsl(dphi(b)));
        if (auto z = phi_zero(); z && *z > a && *z < b) m = std::min(m, fabsl(dphi(*z)));
        return m;
    }
    long double max_abs_phi(long double a, long double b) const {
        long double m = std::max(fabsl(phi(a)), fabsl(phi(b)));
        if (auto s = stationary(); s && *s > a && *s < b) m = std::max(m, fabsl(phi(*s)));
        return m;
    }
    long double min_abs_phi(long double a, long double b) const {
        if (auto z = phi_zero(); z && *z >= a && *z <= b) return 0.0L;
        long double m = std::min(fabsl(phi(a)), fabsl(phi(b)));
        if (auto s = stationary(); s && *s > a && *s < b) m = std::min(m, fabsl(phi(*s)));
        return m;
    }
    // Total variation of phi over [a, b]; phi is monotone away from the stationary point.
    long double variation(long double a, long double b) const {
        if (auto s = stationary(); s && *s > a && *s < b)
            return fabsl(phi(*s) - phi(a)) + fabsl(phi(b) - phi(*s));
        return fabsl(phi(b) - phi(a));
    }
};

// Bivariate polynomials driving the boundary series.  Repeated integration by
// parts against e^{i phi} gives
//   int_a^b e^{i phi} dt = sum_k i^{k-1} [ P_k(A,B) e^{i phi} / (A-B)^{2k+1} ]_a^b + R_K
// with P_0 = 1 and P_{k+1} = P_k^dot (A-B) - (2k+1) P_k (A+B), where
// P^dot = A dP/dA - B dP/dB is the t-derivative acting through A and B.
struct Poly2 {
    int deg = 0;
    std::vector<long double> c; // c[i * (deg + 1) + j] multiplies A^i B^j

    long double& at(int i, int j) { return c[static_cast<std::size_t>(i * (deg + 1) + j)]; }
    long double get(int i, int j) const {
        return c[static_cast<std::size_t>(i * (deg + 1) + j)];
    }
    long double eval(long double A, long double B) const {
        std::vector<long double> pa(static_cast<std::size_t>(deg) + 1, 1.0L),
            pb(static_cast<std::size_t>(deg) + 1, 1.0L);
        for (int i = 1; i <= deg; ++i) {
            pa[static_cast<std::size_t>(i)] = pa[static_cast<std::size_t>(i - 1)] * A;
            pb[static_cast<std::size_t>(i)] = pb[static_cast<std::size_t>(i - 1)] * B;
        }
        long double s = 0;
        for (int i = 0; i <= deg; ++i)
            for (int j = 0; j + i <= deg; ++j) {
                long double cc = get(i, j);
                if (cc != 0)
                    s += cc * pa[static_cast<std::size_t>(i)] * pb[static_cast<std::size_t>(j)];
            }
        return s;
    }
};

constexpr int kMaxSeriesOrder = 16;

const std::vector<Poly2>& series_polynomials() {
    static const std::vector<Poly2> table = [] {
        std::vector<Poly2> ps;
        Poly2 p0;
        p0.deg = 0;
        p0.c.assign(1, 1.0L);
        ps.push_back(p0);
        for (int k = 0; k + 1 <= kMaxSeriesOrder; ++k) {
            const Poly2& pk = ps.back();
            Poly2 nx;
            nx.deg = pk.deg + 1;
            nx.c.assign(static_cast<std::size_t>((nx.deg + 1) * (nx.deg + 1)), 0.0L);
            for (int i = 0; i <= pk.deg; ++i)
                for (int j = 0; j + i <= pk.deg; ++j) {
                    long double cc = pk.get(i, j);
                    if (cc == 0) continue;
                    long double dd = static_cast<long double>(i - j) * cc; // P^dot term
                    nx.at(i + 1, j) += dd;
                    nx.at(i, j + 1) -= dd;
                    long double mm = static_cast<long double>(2 * k + 1) * cc;
                    nx.at(i + 1, j) -= mm;
                    nx.at(i, j + 1) -= mm;
                }
            ps.push_back(std::move(nx));
        }
        return ps;
    }();
    return table;
}

long double pow_int(long double base, int n) {
    long double r = 1.0L;
    for (int i = 0; i < n; ++i) r *= base;
    return r;
}

// 16-point Gauss-Legendre on [-1, 1].
constexpr long double kGlNode[8] = {
    0.0950125098376374401853193L, 0.2816035507792589132304605L,
    0.4580167776572273863424194L, 0.6178762444026437484466718L,
    0.7554044083550030338951012L, 0.8656312023878317438804679L,
    0.9445750230732325760779884L, 0.9894009349916499325961542L};
constexpr long double kGlWeight[8] = {
    0.1894506104550684962853967L, 0.1826034150449235888667637L,
    0.1691565193950025381893121L, 0.1495959888165767320815017L,
    0.1246289712555338720524763L, 0.0951585116824927848099251L,
    0.0622535239386478928628438L, 0.0271524594117540948517806L};

struct Engine {
    PhaseFn f;
    RealQuadratureConfig cfg;
    bool real_only;          // integrate cos(phi) instead of e^{i phi}
    long double tol_density; // absolute tolerance per unit of t
    long double scale;

    CplxL total{0.0L, 0.0L};
    long double err_acc = 0.0L;
    long panels = 0;
    bool ok = true;

    CplxL gl16(long double a, long double b) const {
        long double half = 0.5L * (b - a), mid = 0.5L * (a + b);
        long double re = 0, im = 0;
        for (int i = 0; i < 8; ++i) {
            long double d = half * kGlNode[i];
            long double p1 = f.phi(mid + d), p2 = f.phi(mid - d);
            re += kGlWeight[i] * (cosl(p1) + cosl(p2));
            if (!real_only) im += kGlWeight[i] * (sinl(p1) + sinl(p2));
        }
        return {half * re, half * im};
    }

    void adaptive(long double a, long double b, long double eps, int depth) {
        if (panels > cfg.max_panels) {
            ok = false;
            total += gl16(a, b);
            return;
        }
        CplxL i0 = gl16(a, b);
        long double m = 0.5L * (a + b);
        CplxL i1 = gl16(a, m), i2 = gl16(m, b);
        long double err = std::abs(i1 + i2 - i0);
        panels += 2;
        if (err <= eps || (b - a) < 1e-13L * scale || depth > 48) {
            total += i1 + i2;
            err_acc += err;
            if (err > eps && (b - a) >= 1e-13L * scale) ok = false;
            return;
        }
        adaptive(a, m, 0.5L * eps, depth + 1);
        adaptive(m, b, 0.5L * eps, depth + 1);
    }

    // Boundary series on a stretch where |phi'| stays large.  Returns false
    // when the interval does not qualify or the tail refuses to shrink; the
    // caller then falls back to panels.
    bool try_series(long double a, long double b) {
        if (cfg.force_panels_only) return false;
        int K = std::clamp(cfg.max_series_order, 1, kMaxSeriesOrder);
        long double mn = f.min_abs_dphi(a, b);
        if (mn < cfg.lambda_threshold) return false;
        long double mx = f.max_abs_phi(a, b);
        // Pointwise term ratio (2k+1)|phi| / phi'^2 must stay below 1/16.
        if (static_cast<long double>(2 * K - 1) * mx > mn * mn / 16.0L) return false;

        const auto& ps = series_polynomials();
        long double eps_piece = tol_density * (b - a);
        CplxL acc{0.0L, 0.0L};
        long double last = 0.0L;
        bool converged = false;
        for (int k = 0; k < K; ++k) {
            auto g = [&](long double t) -> CplxL {
                long double Av = f.A(t), Bv = f.B(t), D = Av - Bv;
                long double ph = Av + Bv;
                long double amp = ps[static_cast<std::size_t>(k)].eval(Av, Bv) /
                                  pow_int(D, 2 * k + 1);
                return CplxL{amp * cosl(ph), amp * sinl(ph)};
            };
            CplxL term = g(b) - g(a);
            switch (((k - 1) % 4 + 4) % 4) { // multiply by i^{k-1}
            case 0: break;
            case 1: term = CplxL{-term.imag(), term.real()}; break;
            case 2: term = -term; break;
            case 3: term = CplxL{term.imag(), -term.real()}; break;
            }
            acc += term;
            last = std::abs(term);
            if (k >= 1 && last <= 0.05L * eps_piece) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            long double rem = last / 15.0L; // geometric tail at ratio <= 1/16
            if (rem > eps_piece) return false;
            err_acc += rem;
        }
        total += acc;
        err_acc += last;
        return true;
    }

    void piece(long double a, long double b, int depth) {
        if (!(b > a)) return;
        if ((b - a) < 1e-14L * scale) {
            CplxL mid{cosl(f.phi(0.5L * (a + b))), 0.0L};
            if (!real_only) mid.imag(sinl(f.phi(0.5L * (a + b))));
            total += (b - a) * mid;
            return;
        }
        if (try_series(a, b)) return;
        long double tv = f.variation(a, b);
        if (tv <= 256.0L || depth >= 60) {
            adaptive(a, b, tol_density * (b - a), 0);
            return;
        }
        long double m = 0.5L * (a + b);
        piece(a, m, depth + 1);
        piece(m, b, depth + 1);
    }

    void run(long double a, long double b) {
        scale = std::max({1.0L, fabsl(a), fabsl(b)});
        piece(a, b, 0);
    }
};

CplxL integrate_eiphi(double x, double y, double a, double b,
                      const RealQuadratureConfig& cfg, bool real_only,
                      Engine& out) {
    out.f = PhaseFn{static_cast<long double>(x), static_cast<long double>(y)};
    out.cfg = cfg;
    out.real_only = real_only;
    out.tol_density = static_cast<long double>(cfg.tol);
    out.run(a, b);
    return out.total;
}

} // namespace

RealChoppedMeasure::RealChoppedMeasure(double chop) : T(chop) {
    if (!(chop > 0)) throw DomainError("RealChoppedMeasure: T > 0 required");
}

double envelope_constant() { return 8.0 * std::sqrt(2.0 / static_cast<double>(kPi)); }

double RealChoppedMeasure::floor() const { return -envelope_constant() / T; }

MuHatRealResult mu_hat_real(double x, double y, double T, const RealQuadratureConfig& cfg) {
    RealChoppedMeasure mu(T);
    MuHatRealResult res;
    res.floor = mu.floor();
    if (!std::isfinite(x) || !std::isfinite(y))
        throw DomainError("mu_hat_real: non-finite argument");
    if (x == 0 && y == 0) {
        res.value = 1.0;
        res.error_estimate = 0.0;
        res.converged = true;
        res.panels = 0;
        res.floor_ok = true;
        return res;
    }
    // cos is even, so negating both arguments leaves the integral unchanged;
    // canonicalizing makes the symmetry exact in floating point too.
    if (x < 0 || (x == 0 && y < 0)) {
        x = -x;
        y = -y;
    }
    Engine eng;
    CplxL I = integrate_eiphi(x, y, -T, T, cfg, /*real_only=*/true, eng);
    res.value = static_cast<double>(I.real() / (2.0L * static_cast<long double>(T)));
    res.error_estimate =
        static_cast<double>(eng.err_acc / (2.0L * static_cast<long double>(T)));
    res.converged = eng.ok && eng.panels <= cfg.max_panels;
    res.panels = eng.panels;
    res.floor_ok = res.value >= res.floor - 1e-8;
    return res;
}

VdcResult vdc_envelope_check(double x, double y, double a, double b,
                             const RealQuadratureConfig& cfg) {
    if (!(b > a)) throw DomainError("vdc_envelope_check: empty interval");
    PhaseFn f{static_cast<long double>(x), static_cast<long double>(y)};
    if (x == 0 && y == 0)
        throw DomainError("vdc_envelope_check: phi'' vanishes identically");
    long double lambda = f.min_abs_phi(static_cast<long double>(a),
                                       static_cast<long double>(b));
    if (lambda <= 0)
        throw DomainError("vdc_envelope_check: phi'' has a zero inside the interval");

    Engine eng;
    CplxL I = integrate_eiphi(x, y, a, b, cfg, /*real_only=*/false, eng);
    VdcResult res;
    res.integral = {static_cast<double>(I.real()), static_cast<double>(I.imag())};
    res.lambda = static_cast<double>(lambda);
    res.bound = 8.0 / std::sqrt(res.lambda);
    res.holds = std::abs(res.integral) <= res.bound + 1e-9;
    return res;
}

} // namespace qgraph::oscint
