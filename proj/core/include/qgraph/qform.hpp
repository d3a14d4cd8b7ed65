#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qgraph/errors.hpp"
#include "qgraph/numeric.hpp"

namespace qgraph::qform {

// A completion of Q: the real or complex place, a p-adic place, or the global
// field itself (allowed on spaces, rejected by the local operations).
struct Place {
    enum class Kind { Real, Complex, Padic, Global };
    Kind kind = Kind::Global;
    BigInt p; // set when kind == Padic

    static Place real() { return {Kind::Real, 0}; }
    static Place complex() { return {Kind::Complex, 0}; }
    static Place padic(BigInt prime) { return {Kind::Padic, std::move(prime)}; }
    static Place global() { return {Kind::Global, 0}; }

    bool operator==(const Place& o) const { return kind == o.kind && p == o.p; }
    std::string str() const;
};

using Matrix = std::vector<std::vector<Rational>>;

// Non-degenerate quadratic space: Q(x) = x^T G x, <x,y> = x^T G y, n >= 2.
class QuadraticSpace {
public:
    QuadraticSpace(Place place, Matrix gram);
    static QuadraticSpace diagonal(Place place, std::vector<Rational> coeffs);

    const Place& place() const { return place_; }
    std::size_t n() const { return gram_.size(); }
    const Matrix& gram() const { return gram_; }

    Rational q(const std::vector<Rational>& x) const;
    Rational bilinear(const std::vector<Rational>& x, const std::vector<Rational>& y) const;

private:
    Place place_;
    Matrix gram_;
};

Rational det_gram(const Matrix& g);

struct Diagonalization {
    Matrix P;                    // invertible; P^T G P is diagonal
    std::vector<Rational> diag;  // its diagonal, all entries nonzero
};
Diagonalization diagonalize(const QuadraticSpace& s);

// +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution at the place.
// Standard valuation/residue formulas, including p = 2; complex place is
// constantly +1; the global place is rejected (symbols are local).
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

bool is_square_at(const Rational& a, const Place& v);

struct FormInvariants {
    std::vector<Rational> diag; // a_1..a_n after diagonalization
    Rational d;                 // discriminant = prod a_i
    int hasse = 1;              // prod_{i<j} (a_i, a_j)
    int sig_pos = 0, sig_neg = 0; // real signature (zero elsewhere)
};
FormInvariants invariants(const QuadraticSpace& s);

// Local isotropy verdict; rejects the global place.
bool isotropic(const QuadraticSpace& s);

// Scans R and every prime dividing 2 * num * den of det(G); returns the first
// place where the local rules say anisotropic, or nullopt when all pass.
std::optional<Place> global_anisotropy_witness(const QuadraticSpace& s);

// Element a + b sqrt(k) of Q(sqrt(k)).  Elements with b = 0 are plain
// rationals and combine with any radicand; division requires k nonsquare
// whenever a genuine radical part is involved.
struct QuadExt {
    Rational k, a, b;

    QuadExt() = default;
    QuadExt(const Rational& r) : k(0), a(r), b(0) {} // NOLINT: implicit by design
    QuadExt(Rational kk, Rational aa, Rational bb)
        : k(std::move(kk)), a(std::move(aa)), b(std::move(bb)) {}
    static QuadExt root_of(const Rational& k) { return {k, Rational(0), Rational(1)}; }

    bool is_zero() const { return a == 0 && b == 0; }
    std::string str() const;
};

Rational merged_radicand(const QuadExt& x, const QuadExt& y);
QuadExt operator+(const QuadExt& x, const QuadExt& y);
QuadExt operator-(const QuadExt& x, const QuadExt& y);
QuadExt operator-(const QuadExt& x);
QuadExt operator*(const QuadExt& x, const QuadExt& y);
QuadExt inverse(const QuadExt& x);
QuadExt operator/(const QuadExt& x, const QuadExt& y);
bool operator==(const QuadExt& x, const QuadExt& y);

// Witness shapes for find_isotropic_vector.  ExactVector: entries in
// Q(sqrt(k)) with Q(v) = 0 exactly (k = 0 marks an all-rational vector).
// ResidueVector: rational representative of a p-adic zero, certified by
// v_p(Q(v)) = qval > 2 * grad_val = 2 * v_p(2 <v, e_pivot>), which pins an
// exact zero within distance p^{qval - grad_val} by the usual quadratic lift.
struct ExactVector {
    Rational k;
    std::vector<QuadExt> v;
};
struct ResidueVector {
    BigInt p;
    std::vector<Rational> v;
    long qval = 0;
    std::size_t pivot = 0;
    long grad_val = 0;
};
using IsotropicWitness = std::variant<ExactVector, ResidueVector>;

// pre: isotropic(s).  depth bounds the residue search (mod p^depth boxes at
// p = 2; the odd-p search needs only the first level and ignores excess).
IsotropicWitness find_isotropic_vector(const QuadraticSpace& s, unsigned depth = 4);

// "place=R|C|Qp:<p>|Q; diag=a1,a2,..."  or  "place=...; gram=[[..],[..]]".
QuadraticSpace parse_quadratic_space(const std::string& text);

// ---------------------------------------------------------------------------
// Hyperbolic split, generic over an exact field F (Rational or QuadExt).
// ---------------------------------------------------------------------------

template <class F>
struct HyperbolicSplit {
    std::vector<F> e1, e2;                // Q(e1) = Q(e2) = 0, <e1,e2> = 1/2
    std::vector<std::vector<F>> complement; // n-2 vectors orthogonal to the plane
    std::vector<F> residual_diag;           // Q restricted to them, diagonalized
};

namespace detail {

template <class F>
F dot_q(const Matrix& g, const std::vector<F>& x, const std::vector<F>& y) {
    F acc = F(Rational(0));
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (g[i][j] == 0) continue;
            acc = acc + F(g[i][j]) * x[i] * y[j];
        }
    return acc;
}

template <class F>
bool fz(const F& x) {
    return x == F(Rational(0));
}

// Congruence diagonalization of a symmetric F-matrix; zero diagonal entries
// at the end flag radical directions (callers decide whether that is legal).
template <class F>
std::pair<std::vector<std::vector<F>>, std::vector<F>>
sym_diagonalize(std::vector<std::vector<F>> h) {
    std::size_t n = h.size();
    F zero = F(Rational(0));
    std::vector<std::vector<F>> rows(n, std::vector<F>(n, zero));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = F(Rational(1));

    auto add_row = [&](std::size_t dst, std::size_t src, const F& f) {
        // basis change x_dst += f * x_src, applied symmetrically to h
        for (std::size_t j = 0; j < n; ++j) {
            rows[dst][j] = rows[dst][j] + f * rows[src][j];
            h[dst][j] = h[dst][j] + f * h[src][j];
        }
        for (std::size_t j = 0; j < n; ++j) h[j][dst] = h[j][dst] + f * h[j][src];
    };
    auto swap_rows = [&](std::size_t a, std::size_t b) {
        std::swap(rows[a], rows[b]);
        std::swap(h[a], h[b]);
        for (std::size_t j = 0; j < n; ++j) std::swap(h[j][a], h[j][b]);
    };

    for (std::size_t r = 0; r < n; ++r) {
        std::size_t piv = n;
        for (std::size_t i = r; i < n && piv == n; ++i)
            if (!fz(h[i][i])) piv = i;
        if (piv == n) {
            // no diagonal pivot; manufacture one from an off-diagonal entry
            std::size_t a = n, b = n;
            for (std::size_t i = r; i < n && a == n; ++i)
                for (std::size_t j = i + 1; j < n && a == n; ++j)
                    if (!fz(h[i][j])) { a = i; b = j; }
            if (a == n) break; // remaining block is zero
            add_row(a, b, F(Rational(1))); // h[a][a] becomes 2 h[a][b]
            piv = a;
        }
        if (piv != r) swap_rows(piv, r);
        for (std::size_t i = r + 1; i < n; ++i) {
            if (fz(h[i][r])) continue;
            add_row(i, r, -(h[i][r] / h[r][r]));
        }
    }
    std::vector<F> diag;
    diag.reserve(n);
    for (std::size_t i = 0; i < n; ++i) diag.push_back(h[i][i]);
    return {std::move(rows), std::move(diag)};
}

} // namespace detail

// pre: v != 0 and Q(v) = 0 exactly.  e1 = v; e2 completes the hyperbolic
// plane (so Q(x e1 + y e2) = x y); the complement carries the residual form.
template <class F>
HyperbolicSplit<F> hyperbolic_pair(const QuadraticSpace& s, const std::vector<F>& v) {
    using detail::dot_q;
    const Matrix& g = s.gram();
    std::size_t n = s.n();
    if (v.size() != n) throw DomainError("hyperbolic_pair: dimension mismatch");
    F zero = F(Rational(0));
    bool nonzero = false;
    for (const F& c : v) nonzero = nonzero || !detail::fz(c);
    if (!nonzero) throw DomainError("hyperbolic_pair: v = 0");
    if (!detail::fz(dot_q(g, v, v))) throw DomainError("hyperbolic_pair: Q(v) != 0");

    // partner direction: any basis vector not orthogonal to v
    std::size_t iu = n;
    std::vector<F> bv(n, zero); // bv[i] = <v, e_i>
    for (std::size_t i = 0; i < n; ++i) {
        F acc = zero;
        for (std::size_t j = 0; j < n; ++j)
            if (g[i][j] != 0) acc = acc + F(g[i][j]) * v[j];
        bv[i] = acc;
        if (iu == n && !detail::fz(acc)) iu = i;
    }
    if (iu == n) throw DomainError("hyperbolic_pair: v is in the radical (degenerate form)");

    std::vector<F> w(n, zero);
    w[iu] = F(Rational(1)) / (F(Rational(2)) * bv[iu]); // <v, w> = 1/2
    F qw = dot_q(g, w, w);
    std::vector<F> e2(n, zero);
    for (std::size_t i = 0; i < n; ++i) e2[i] = w[i] - qw * v[i];

    HyperbolicSplit<F> out;
    out.e1 = v;
    out.e2 = e2;
    if (!detail::fz(dot_q(g, e2, e2)) ||
        !(dot_q(g, v, e2) == F(Rational(1, 2))))
        throw DomainError("hyperbolic_pair: Gram identities failed (degenerate input?)");

    // project the standard basis off the plane and diagonalize what remains
    std::vector<std::vector<F>> proj;
    for (std::size_t m = 0; m < n; ++m) {
        std::vector<F> x(n, zero);
        x[m] = F(Rational(1));
        F xv = bv[m]; // <x, e1>
        F xe2 = zero;
        for (std::size_t j = 0; j < n; ++j)
            if (g[m][j] != 0) xe2 = xe2 + F(g[m][j]) * e2[j];
        for (std::size_t i = 0; i < n; ++i)
            x[i] = x[i] - (xe2 + xe2) * v[i] - (xv + xv) * e2[i];
        proj.push_back(std::move(x));
    }
    std::vector<std::vector<F>> h(n, std::vector<F>(n, zero));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            h[a][b] = h[b][a] = dot_q(g, proj[a], proj[b]);
    auto [rows, diag] = detail::sym_diagonalize<F>(h);
    for (std::size_t r = 0; r < n; ++r) {
        if (detail::fz(diag[r])) continue;
        std::vector<F> vec(n, zero);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                vec[i] = vec[i] + rows[r][j] * proj[j][i];
        out.complement.push_back(std::move(vec));
        out.residual_diag.push_back(diag[r]);
    }
    if (out.complement.size() != n - 2)
        throw DomainError("hyperbolic_pair: complement rank " +
                          std::to_string(out.complement.size()) + ", expected n-2");
    return out;
}

} // namespace qgraph::qform
