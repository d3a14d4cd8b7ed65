#include "qgraph/qform.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>

namespace qgraph::qform {

std::string Place::str() const {
    switch (kind) {
    case Kind::Real: return "R";
    case Kind::Complex: return "C";
    case Kind::Padic: return "Qp:" + p.str();
    case Kind::Global: return "Q";
    }
    return "?";
}

QuadraticSpace::QuadraticSpace(Place place, Matrix gram)
    : place_(std::move(place)), gram_(std::move(gram)) {
    std::size_t n = gram_.size();
    if (n < 2) throw DomainError("QuadraticSpace: dimension >= 2 required");
    for (const auto& row : gram_)
        if (row.size() != n) throw DomainError("QuadraticSpace: Gram matrix not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (gram_[i][j] != gram_[j][i])
                throw DomainError("QuadraticSpace: Gram matrix not symmetric");
    if (place_.kind == Place::Kind::Padic && !is_prime(place_.p))
        throw DomainError("QuadraticSpace: place Qp:" + place_.p.str() + " is not prime");
    if (det_gram(gram_) == 0) throw DomainError("QuadraticSpace: degenerate form");
}

QuadraticSpace QuadraticSpace::diagonal(Place place, std::vector<Rational> coeffs) {
    std::size_t n = coeffs.size();
    Matrix g(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) g[i][i] = std::move(coeffs[i]);
    return QuadraticSpace(std::move(place), std::move(g));
}

Rational QuadraticSpace::q(const std::vector<Rational>& x) const { return bilinear(x, x); }

Rational QuadraticSpace::bilinear(const std::vector<Rational>& x,
                                  const std::vector<Rational>& y) const {
    if (x.size() != n() || y.size() != n())
        throw DomainError("QuadraticSpace: vector dimension mismatch");
    Rational acc(0);
    for (std::size_t i = 0; i < n(); ++i) {
        if (x[i] == 0) continue;
        Rational row(0);
        for (std::size_t j = 0; j < n(); ++j)
            if (gram_[i][j] != 0) row += gram_[i][j] * y[j];
        acc += x[i] * row;
    }
    return acc;
}

Rational det_gram(const Matrix& g) {
    Matrix m = g;
    std::size_t n = m.size();
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

Diagonalization diagonalize(const QuadraticSpace& s) {
    auto [rows, diag] = detail::sym_diagonalize<Rational>(s.gram());
    std::size_t n = s.n();
    Diagonalization out;
    out.P.assign(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t r = 0; r < n; ++r) {
        if (diag[r] == 0)
            throw DomainError("diagonalize: zero diagonal entry on a non-degenerate form");
        for (std::size_t j = 0; j < n; ++j) out.P[j][r] = rows[r][j]; // P = rows^T
    }
    out.diag = std::move(diag);
    return out;
}

namespace {

// num * den^{-1} reduced into [0, m) for a p-adically integral rational.
BigInt unit_mod(const Rational& u, const BigInt& m) {
    return mod_floor(num(u) * mod_inverse(mod_floor(den(u), m), m), m);
}

int eps2(const BigInt& u8) { return (u8 == 3 || u8 == 7) ? 1 : 0; }   // (u-1)/2 mod 2
int omega2(const BigInt& u8) { return (u8 == 3 || u8 == 5) ? 1 : 0; } // (u^2-1)/8 mod 2

std::vector<BigInt> prime_divisors(BigInt n) {
    std::vector<BigInt> out;
    if (n < 0) n = -n;
    if (n % 2 == 0) {
        out.push_back(2);
        while (n % 2 == 0) n /= 2;
    }
    for (BigInt d = 3; d * d <= n; d += 2)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
    if (a == 0 || b == 0) throw DomainError("hilbert_symbol: zero argument");
    switch (v.kind) {
    case Place::Kind::Complex: return 1;
    case Place::Kind::Real: return (a < 0 && b < 0) ? -1 : 1;
    case Place::Kind::Global:
        throw DomainError("hilbert_symbol: symbols are local; pick a completion");
    case Place::Kind::Padic: break;
    }
    const BigInt& p = v.p;
    int alpha = valuation(a, p), beta = valuation(b, p);
    Rational ua = unit_part(a, p), ub = unit_part(b, p);
    if (p == 2) {
        BigInt a8 = unit_mod(ua, 8), b8 = unit_mod(ub, 8);
        int e = eps2(a8) * eps2(b8) + alpha * omega2(b8) + beta * omega2(a8);
        return (e % 2 + 2) % 2 == 0 ? 1 : -1;
    }
    int s = 1;
    if ((alpha % 2 != 0) && (beta % 2 != 0) && ((p - 1) / 2) % 2 == 1) s = -s;
    if (beta % 2 != 0) s *= legendre_unit(ua, p);
    if (alpha % 2 != 0) s *= legendre_unit(ub, p);
    return s;
}

bool is_square_at(const Rational& a, const Place& v) {
    if (a == 0) throw DomainError("is_square_at: zero has no square class");
    switch (v.kind) {
    case Place::Kind::Complex: return true;
    case Place::Kind::Real: return a > 0;
    case Place::Kind::Global: return is_rational_square(a);
    case Place::Kind::Padic: break;
    }
    const BigInt& p = v.p;
    if (valuation(a, p) % 2 != 0) return false;
    Rational u = unit_part(a, p);
    if (p == 2) return unit_mod(u, 8) == 1;
    return legendre_unit(u, p) == 1;
}

FormInvariants invariants(const QuadraticSpace& s) {
    FormInvariants inv;
    inv.diag = diagonalize(s).diag;
    inv.d = Rational(1);
    for (const Rational& a : inv.diag) inv.d *= a;
    if (s.place().kind != Place::Kind::Global) {
        for (std::size_t i = 0; i < inv.diag.size(); ++i)
            for (std::size_t j = i + 1; j < inv.diag.size(); ++j)
                inv.hasse *= hilbert_symbol(inv.diag[i], inv.diag[j], s.place());
    }
    if (s.place().kind == Place::Kind::Real)
        for (const Rational& a : inv.diag) (a > 0 ? inv.sig_pos : inv.sig_neg) += 1;
    return inv;
}

bool isotropic(const QuadraticSpace& s) {
    const Place& v = s.place();
    if (v.kind == Place::Kind::Global)
        throw DomainError("isotropic: global place; use global_anisotropy_witness");
    if (v.kind == Place::Kind::Complex) return true; // n >= 2 always
    FormInvariants inv = invariants(s);
    if (v.kind == Place::Kind::Real) return inv.sig_pos > 0 && inv.sig_neg > 0;
    std::size_t n = s.n();
    if (n == 2) return is_square_at(-inv.d, v);
    if (n == 3) return hilbert_symbol(Rational(-1), -inv.d, v) == inv.hasse;
    if (n == 4)
        return !is_square_at(inv.d, v) ||
               inv.hasse == hilbert_symbol(Rational(-1), Rational(-1), v);
    return true; // n >= 5
}

std::optional<Place> global_anisotropy_witness(const QuadraticSpace& s) {
    Rational d = det_gram(s.gram());
    {
        QuadraticSpace at_r(Place::real(), s.gram());
        if (!isotropic(at_r)) return Place::real();
    }
    BigInt radicand = 2 * num(d) * den(d);
    for (const BigInt& p : prime_divisors(radicand)) {
        QuadraticSpace at_p(Place::padic(p), s.gram());
        if (!isotropic(at_p)) return Place::padic(p);
    }
    return std::nullopt;
}

// --- QuadExt -----------------------------------------------------------

Rational merged_radicand(const QuadExt& x, const QuadExt& y) {
    if (x.b == 0) return y.k;
    if (y.b == 0) return x.k;
    if (x.k != y.k) throw DomainError("QuadExt: mixed radicands");
    return x.k;
}

QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    return {merged_radicand(x, y), x.a + y.a, x.b + y.b};
}
QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    return {merged_radicand(x, y), x.a - y.a, x.b - y.b};
}
QuadExt operator-(const QuadExt& x) { return {x.k, -x.a, -x.b}; }

QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    Rational k = merged_radicand(x, y);
    return {k, x.a * y.a + x.b * y.b * k, x.a * y.b + x.b * y.a};
}

QuadExt inverse(const QuadExt& x) {
    if (x.is_zero()) throw DomainError("QuadExt: division by zero");
    if (x.b == 0) return {x.k, 1 / x.a, Rational(0)};
    Rational nrm = x.a * x.a - x.b * x.b * x.k;
    if (nrm == 0)
        throw DomainError("QuadExt: zero norm (radicand " + to_string(x.k) +
                          " is a rational square; fold it first)");
    return {x.k, x.a / nrm, -x.b / nrm};
}

QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * inverse(y); }

bool operator==(const QuadExt& x, const QuadExt& y) {
    if (x.b == 0 && y.b == 0) return x.a == y.a;
    if (x.b == 0 || y.b == 0) return false;
    return x.k == y.k && x.a == y.a && x.b == y.b;
}

std::string QuadExt::str() const {
    if (b == 0) return to_string(a);
    return to_string(a) + " + " + to_string(b) + "*sqrt(" + to_string(k) + ")";
}

// --- isotropic vectors -------------------------------------------------

namespace {

// v = P * z for rational z in diagonal coordinates.
std::vector<Rational> map_back(const Matrix& P, const std::vector<Rational>& z) {
    std::size_t n = P.size();
    std::vector<Rational> v(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (P[i][j] != 0 && z[j] != 0) v[i] += P[i][j] * z[j];
    return v;
}

ExactVector combine_axes(const Diagonalization& d, std::size_t i, std::size_t j) {
    Rational k = -d.diag[i] / d.diag[j];
    std::size_t n = d.P.size();
    ExactVector out;
    if (is_rational_square(k)) {
        BigInt rn = boost::multiprecision::sqrt(num(k));
        BigInt rd = boost::multiprecision::sqrt(den(k));
        Rational r(rn, rd);
        out.k = Rational(0);
        for (std::size_t m = 0; m < n; ++m)
            out.v.emplace_back(QuadExt(d.P[m][i] + r * d.P[m][j]));
        return out;
    }
    out.k = k;
    for (std::size_t m = 0; m < n; ++m)
        out.v.emplace_back(QuadExt(k, d.P[m][i], d.P[m][j]));
    return out;
}

struct DiagLocal {
    std::vector<int> delta;     // v_p(d_i) mod 2
    std::vector<int> half;      // floor(v_p(d_i) / 2)
    std::vector<BigInt> unit;   // unit part of d_i mod p^3 (integer representative)
};

DiagLocal localize(const std::vector<Rational>& diag, const BigInt& p) {
    DiagLocal loc;
    // p = 2 needs many faithful bits for valuation detection in the box scan
    BigInt m = p == 2 ? BigInt(1) << 24 : p * p * p;
    for (const Rational& d : diag) {
        int v = valuation(d, p);
        loc.delta.push_back(((v % 2) + 2) % 2);
        loc.half.push_back((v - loc.delta.back()) / 2);
        loc.unit.push_back(unit_mod(unit_part(d, p), m));
    }
    return loc;
}

// Nontrivial zero mod p of sum_{i in idx} U_i t_i^2 (odd p, all U_i units).
std::optional<std::vector<std::pair<std::size_t, BigInt>>>
zero_mod_p(const std::vector<std::size_t>& idx, const DiagLocal& loc, const BigInt& p) {
    if (idx.size() < 2) return std::nullopt;
    if (idx.size() == 2) {
        BigInt rhs = mod_floor(-loc.unit[idx[0]] * mod_inverse(loc.unit[idx[1]], p), p);
        auto r = sqrt_mod_prime_power(rhs, p, 1);
        if (!r) return std::nullopt;
        return {{{idx[0], 1}, {idx[1], *r}}};
    }
    // ternary conic U_0 x^2 + U_1 y^2 = -U_2: always has a point mod p
    const BigInt &u0 = loc.unit[idx[0]], &u1 = loc.unit[idx[1]], &u2 = loc.unit[idx[2]];
    BigInt inv1 = mod_inverse(u1, p);
    for (BigInt x = 0; x < p; ++x) {
        BigInt rhs = mod_floor((-u2 - u0 * x * x) * inv1, p);
        if (rhs == 0) return {{{idx[0], x}, {idx[1], 0}, {idx[2], 1}}};
        if (legendre(rhs, p) == 1) {
            auto r = sqrt_mod_prime_power(rhs, p, 1);
            return {{{idx[0], x}, {idx[1], *r}, {idx[2], 1}}};
        }
    }
    throw DomainError("internal: conic over F_p without points"); // unreachable
}

struct Seed {
    std::vector<Rational> z; // diagonal coordinates
    std::size_t pivot;       // index with the certified gradient
};

Seed seed_odd(const std::vector<Rational>& diag, const DiagLocal& loc, const BigInt& p) {
    std::vector<std::size_t> grp[2];
    for (std::size_t i = 0; i < diag.size(); ++i)
        grp[static_cast<std::size_t>(loc.delta[i])].push_back(i);
    for (int side = 0; side < 2; ++side) {
        auto sol = zero_mod_p(grp[static_cast<std::size_t>(side)], loc, p);
        if (!sol) continue;
        Seed s;
        s.z.assign(diag.size(), Rational(0));
        s.pivot = diag.size();
        for (const auto& [i, val] : *sol) {
            int h = loc.half[i]; // z_i = y_i * p^{-half}
            s.z[i] = h >= 0 ? Rational(val, ipow(p, static_cast<unsigned>(h)))
                            : Rational(val * ipow(p, static_cast<unsigned>(-h)));
            if (s.pivot == diag.size() && val % p != 0) s.pivot = i;
        }
        return s;
    }
    throw DomainError("internal: isotropic p-adic form with no residue seed");
}

Seed seed_two(const std::vector<Rational>& diag, const DiagLocal& loc, unsigned depth) {
    std::size_t n = diag.size();
    unsigned box = 1u << std::max(3u, depth); // at least mod 8
    std::vector<std::int64_t> coeff(n);       // p^delta * U mod 2^24
    std::int64_t mask24 = (1 << 24) - 1;
    for (std::size_t i = 0; i < n; ++i)
        coeff[i] = static_cast<std::int64_t>(mod_floor(loc.unit[i], BigInt(1) << 24)
                                                 .convert_to<std::int64_t>())
                   << loc.delta[i];

    std::vector<std::uint32_t> y(n, 0);
    auto val2 = [](std::int64_t x) {
        int v = 0;
        while (x % 2 == 0) {
            x /= 2;
            if (++v >= 24) return 24;
        }
        return v;
    };
    while (true) {
        // advance odometer
        std::size_t d = 0;
        while (d < n && ++y[d] == box) y[d++] = 0;
        if (d == n) break;
        std::int64_t qv = 0;
        for (std::size_t i = 0; i < n; ++i)
            qv = (qv + coeff[i] * static_cast<std::int64_t>(y[i]) *
                           static_cast<std::int64_t>(y[i])) &
                 mask24;
        int vq = qv == 0 ? 24 : val2(qv);
        for (std::size_t i = 0; i < n; ++i) {
            if (y[i] == 0) continue;
            int vy = val2(static_cast<std::int64_t>(y[i]));
            // needs v(Q) > 2 v(2 <z,w>) - v(Q(w)) for w along coordinate i
            if (vq >= 3 + loc.delta[i] + 2 * vy) {
                Seed s;
                s.z.assign(n, Rational(0));
                for (std::size_t m = 0; m < n; ++m) {
                    if (y[m] == 0) continue;
                    s.z[m] = Rational(y[m]);
                    if (loc.half[m] > 0)
                        s.z[m] /= Rational(ipow(BigInt(2), static_cast<unsigned>(loc.half[m])));
                    else if (loc.half[m] < 0)
                        s.z[m] *= Rational(ipow(BigInt(2), static_cast<unsigned>(-loc.half[m])));
                }
                s.pivot = i;
                return s;
            }
        }
    }
    throw BudgetError("find_isotropic_vector: 2-adic residue search exhausted at depth " +
                      std::to_string(depth));
}

} // namespace

IsotropicWitness find_isotropic_vector(const QuadraticSpace& s, unsigned depth) {
    const Place& place = s.place();
    if (place.kind == Place::Kind::Global)
        throw DomainError("find_isotropic_vector: pick a completion of Q first");
    if (!isotropic(s))
        throw DomainError("find_isotropic_vector: form is anisotropic at " + place.str());

    Diagonalization d = diagonalize(s);
    std::size_t n = s.n();

    if (place.kind == Place::Kind::Real) {
        std::size_t ip = n, in = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (d.diag[i] > 0 && ip == n) ip = i;
            if (d.diag[i] < 0 && in == n) in = i;
        }
        return combine_axes(d, ip, in);
    }
    if (place.kind == Place::Kind::Complex) return combine_axes(d, 0, 1);

    // p-adic: a rational-square axis ratio gives an exact zero outright
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (is_rational_square(-d.diag[i] / d.diag[j])) return combine_axes(d, i, j);

    const BigInt& p = place.p;
    std::vector<Rational> diag = d.diag;
    Matrix P = d.P;
    if (n > 5) { // any 5 coordinates already carry an isotropic subform
        diag.resize(5);
        for (auto& row : P) row.resize(5);
    }
    DiagLocal loc = localize(diag, p);
    Seed seed = p == 2 ? seed_two(diag, loc, depth) : seed_odd(diag, loc, p);

    // Hensel refinement, done directly in exact rational arithmetic along the
    // scaled pivot direction w: v <- v - (Q(v) / (2<v,w>)) w.
    std::vector<Rational> zw(diag.size(), Rational(0));
    zw[seed.pivot] = Rational(1);
    if (loc.half[seed.pivot] > 0)
        zw[seed.pivot] /= Rational(ipow(p, static_cast<unsigned>(loc.half[seed.pivot])));
    else if (loc.half[seed.pivot] < 0)
        zw[seed.pivot] *= Rational(ipow(p, static_cast<unsigned>(-loc.half[seed.pivot])));

    std::vector<Rational> v = map_back(P, seed.z);
    std::vector<Rational> w = map_back(P, zw);
    std::size_t fulln = s.n();
    v.resize(fulln, Rational(0));
    w.resize(fulln, Rational(0));

    for (int round = 0; round < 64; ++round) {
        Rational qv = s.q(v);
        if (qv == 0) { // landed on an exact rational zero
            ExactVector out;
            out.k = Rational(0);
            for (const Rational& c : v) out.v.emplace_back(QuadExt(c));
            return out;
        }
        long vq = valuation(qv, p);
        long gv = 0;
        bool have_gv = false;
        for (std::size_t m = 0; m < fulln; ++m) {
            std::vector<Rational> em(fulln, Rational(0));
            em[m] = 1;
            Rational bm = s.bilinear(v, em);
            if (bm == 0) continue;
            long g = valuation(2 * bm, p);
            if (!have_gv || g < gv) gv = g;
            have_gv = true;
        }
        if (have_gv && vq > 2 * gv + 32) break;
        Rational bw = s.bilinear(v, w);
        Rational step = qv / (2 * bw);
        for (std::size_t m = 0; m < fulln; ++m) v[m] -= step * w[m];
    }

    // primitive rescale: integral entries, at least one p-unit
    long shift = 0;
    bool first = true;
    for (const Rational& c : v)
        if (c != 0) {
            long val = valuation(c, p);
            shift = first ? val : std::min(shift, val);
            first = false;
        }
    Rational scale = shift >= 0 ? Rational(1, ipow(p, static_cast<unsigned>(shift)))
                                : Rational(ipow(p, static_cast<unsigned>(-shift)));
    for (Rational& c : v) c *= scale;

    ResidueVector out;
    out.p = p;
    out.v = v;
    Rational qv = s.q(v);
    if (qv == 0) {
        ExactVector ex;
        ex.k = Rational(0);
        for (const Rational& c : v) ex.v.emplace_back(QuadExt(c));
        return ex;
    }
    out.qval = valuation(qv, p);
    bool have = false;
    for (std::size_t m = 0; m < fulln; ++m) {
        std::vector<Rational> em(fulln, Rational(0));
        em[m] = 1;
        Rational bm = s.bilinear(v, em);
        if (bm == 0) continue;
        long g = valuation(2 * bm, p);
        if (!have || g < out.grad_val) {
            out.grad_val = g;
            out.pivot = m;
        }
        have = true;
    }
    if (!have || out.qval <= 2 * out.grad_val)
        throw DomainError("internal: isotropic-vector certificate failed to converge");
    return out;
}

// --- parsing -----------------------------------------------------------

namespace {

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

Place parse_place(const std::string& t) {
    if (t == "R") return Place::real();
    if (t == "C") return Place::complex();
    if (t == "Q") return Place::global();
    if (t.rfind("Qp:", 0) == 0) {
        BigInt p(t.substr(3));
        return Place::padic(p);
    }
    throw DomainError("parse_quadratic_space: unknown place \"" + t + "\"");
}

std::vector<Rational> parse_list(const std::string& t) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= t.size()) {
        std::size_t comma = t.find(',', start);
        std::string item = strip(t.substr(start, comma == std::string::npos
                                                     ? std::string::npos
                                                     : comma - start));
        if (!item.empty()) out.push_back(parse_rational(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

Matrix parse_gram(const std::string& t) {
    Matrix rows;
    std::size_t i = 0;
    auto expect = [&](char c) {
        if (i >= t.size() || t[i] != c)
            throw DomainError("parse_quadratic_space: expected '" + std::string(1, c) +
                              "' at offset " + std::to_string(i) + " of gram");
        ++i;
    };
    auto skip_ws = [&] {
        while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
    };
    skip_ws();
    expect('[');
    skip_ws();
    while (i < t.size() && t[i] == '[') {
        std::size_t close = t.find(']', i);
        if (close == std::string::npos)
            throw DomainError("parse_quadratic_space: unterminated row in gram");
        rows.push_back(parse_list(t.substr(i + 1, close - i - 1)));
        i = close + 1;
        skip_ws();
        if (i < t.size() && t[i] == ',') {
            ++i;
            skip_ws();
        }
    }
    expect(']');
    return rows;
}

} // namespace

QuadraticSpace parse_quadratic_space(const std::string& text) {
    std::optional<Place> place;
    std::optional<std::vector<Rational>> diag;
    std::optional<Matrix> gram;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t semi = text.find(';', start);
        std::string part = strip(text.substr(
            start, semi == std::string::npos ? std::string::npos : semi - start));
        start = semi == std::string::npos ? text.size() : semi + 1;
        if (part.empty()) continue;
        std::size_t eq = part.find('=');
        if (eq == std::string::npos)
            throw DomainError("parse_quadratic_space: expected key=value in \"" + part + "\"");
        std::string key = strip(part.substr(0, eq)), val = strip(part.substr(eq + 1));
        if (key == "place")
            place = parse_place(val);
        else if (key == "diag")
            diag = parse_list(val);
        else if (key == "gram")
            gram = parse_gram(val);
        else
            throw DomainError("parse_quadratic_space: unknown key \"" + key + "\"");
    }
    if (!place) throw DomainError("parse_quadratic_space: missing place=");
    if (diag && gram)
        throw DomainError("parse_quadratic_space: give diag= or gram=, not both");
    if (diag) return QuadraticSpace::diagonal(*place, *diag);
    if (gram) return QuadraticSpace(*place, *gram);
    throw DomainError("parse_quadratic_space: missing diag= or gram=");
}

} // namespace qgraph::qform
