#pragma once

// Dense complex polynomials in ascending coefficient order, plus an
// Aberth-Ehrlich simultaneous root finder. Everything is templated on the
// real type so the same code runs in double and in Extended precision.

#include "lastrow/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace lastrow {

template <typename T>
class Poly {
public:
    using complex_type = Complex<T>;

    Poly() = default;
    explicit Poly(std::vector<complex_type> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
    Poly(std::initializer_list<complex_type> coeffs) : coeffs_(coeffs) { normalize(); }

    static Poly constant(const complex_type& c) { return Poly({c}); }
    /// z - z0
    static Poly linear_factor(const complex_type& z0) { return Poly({-z0, complex_type(T(1))}); }

    static Poly from_roots(std::span<const complex_type> roots, const complex_type& lead = complex_type(T(1))) {
        Poly p = constant(lead);
        for (const auto& r : roots) p = p * linear_factor(r);
        return p;
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    const std::vector<complex_type>& coeffs() const { return coeffs_; }
    /// Coefficient of z^k; zero beyond the degree.
    complex_type operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : complex_type(); }
    complex_type leading() const { return is_zero() ? complex_type() : coeffs_.back(); }

    /// Horner evaluation.
    complex_type operator()(const complex_type& z) const {
        complex_type acc{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    /// Sum of |a_k| |z|^k, the natural scale for the rounding error of p(z).
    T magnitude_at(const complex_type& z) const {
        using std::abs;
        T r = abs(z), acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + abs(*it);
        return acc;
    }

    T max_abs_coeff() const {
        using std::abs;
        T m(0);
        for (const auto& c : coeffs_) m = std::max<T>(m, abs(c));
        return m;
    }

    Poly derivative() const {
        if (degree() < 1) return {};
        std::vector<complex_type> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * T(static_cast<double>(k));
        return Poly(std::move(d));
    }

    /// Drops trailing coefficients with |a_k| <= rel_tol * max|a|.
    Poly trimmed(const T& rel_tol) const {
        using std::abs;
        T thresh = rel_tol * max_abs_coeff();
        std::vector<complex_type> c = coeffs_;
        while (!c.empty() && abs(c.back()) <= thresh) c.pop_back();
        return Poly(std::move(c));
    }

    friend Poly operator+(const Poly& p, const Poly& q) {
        std::vector<complex_type> c(std::max(p.coeffs_.size(), q.coeffs_.size()));
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = p[k] + q[k];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& p, const Poly& q) {
        std::vector<complex_type> c(std::max(p.coeffs_.size(), q.coeffs_.size()));
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = p[k] - q[k];
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& p, const Poly& q) {
        if (p.is_zero() || q.is_zero()) return {};
        std::vector<complex_type> c(p.coeffs_.size() + q.coeffs_.size() - 1);
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < q.coeffs_.size(); ++j) c[i + j] += p.coeffs_[i] * q.coeffs_[j];
        return Poly(std::move(c));
    }
    friend Poly operator*(const complex_type& s, const Poly& p) {
        std::vector<complex_type> c = p.coeffs_;
        for (auto& x : c) x *= s;
        return Poly(std::move(c));
    }

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == complex_type()) coeffs_.pop_back();
    }

    std::vector<complex_type> coeffs_;
};

template <typename T>
Complex<T> eval(const Poly<T>& p, const Complex<T>& z) {
    return p(z);
}

/// Synthetic division by (z - z0). z0 must be a root of p: |p(z0)| may not
/// exceed tol times the evaluation scale sum |a_k||z0|^k.
template <typename T>
Poly<T> divided_by_linear(const Poly<T>& p, const Complex<T>& z0, const T& tol) {
    using std::abs;
    if (p.degree() < 1) throw InputError("divided_by_linear: degree must be >= 1");
    const auto& a = p.coeffs();
    const std::size_t n = a.size() - 1;
    std::vector<Complex<T>> q(n);
    Complex<T> carry = a[n];
    for (std::size_t k = n; k-- > 0;) {
        q[k] = carry;
        carry = a[k] + carry * z0;
    }
    // carry is now p(z0)
    if (abs(carry) > tol * p.magnitude_at(z0)) throw NotARoot("divided_by_linear: point is not a root");
    return Poly<T>(std::move(q));
}

// ---------------------------------------------------------------------------
// Root finding

template <typename T>
struct RootSet {
    std::vector<Complex<T>> roots;
    /// max |p(root)| over the returned roots
    double residual = 0.0;
};

struct RootOptions {
    double tol = 1e-10;
    int max_iterations = 200;
    int restarts = 3;
    std::uint64_t seed = 20040106;
};

namespace detail {

template <typename T>
bool backward_ok(const Poly<T>& p, const Complex<T>& z, const T& tol) {
    using std::abs;
    return abs(p(z)) <= tol * p.magnitude_at(z);
}

template <typename T>
bool aberth(const Poly<T>& p, std::vector<Complex<T>>& z, int max_iter, const T& stop_tol) {
    using std::abs;
    const Poly<T> dp = p.derivative();
    const std::size_t n = z.size();
    std::vector<char> done(n, 0);
    for (int it = 0; it < max_iter; ++it) {
        std::size_t active = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            Complex<T> pv = p(z[i]);
            if (abs(pv) <= stop_tol * p.magnitude_at(z[i])) {
                done[i] = 1;
                continue;
            }
            ++active;
            Complex<T> w = pv / dp(z[i]);
            Complex<T> s{};
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) s += Complex<T>(T(1)) / (z[i] - z[j]);
            Complex<T> delta = w / (Complex<T>(T(1)) - w * s);
            if (!is_finite(delta)) return false;
            z[i] -= delta;
            if (abs(delta) <= stop_tol * abs(z[i])) done[i] = 1;
        }
        if (active == 0) return true;
    }
    return std::all_of(done.begin(), done.end(), [](char d) { return d != 0; });
}

template <typename T>
bool laguerre(const Poly<T>& p, Complex<T>& x, int max_iter, const T& stop_tol) {
    using std::abs;
    using std::sqrt;
    const int n = p.degree();
    const Poly<T> d1 = p.derivative();
    const Poly<T> d2 = d1.derivative();
    const T nn(static_cast<double>(n));
    for (int it = 0; it < max_iter; ++it) {
        Complex<T> b = p(x);
        if (abs(b) <= stop_tol * p.magnitude_at(x)) return true;
        Complex<T> g = d1(x) / b;
        Complex<T> h = g * g - d2(x) / b;
        Complex<T> sq = sqrt((nn - T(1)) * (nn * h - g * g));
        Complex<T> gp = g + sq, gm = g - sq;
        Complex<T> den = abs(gp) >= abs(gm) ? gp : gm;
        Complex<T> dx = abs(den) > T(0) ? Complex<T>(nn) / den
                                         : Complex<T>(T(1) + abs(x)) * Complex<T>(cos(T(it)), sin(T(it)));
        x -= dx;
        if (abs(dx) <= stop_tol * abs(x)) return true;
    }
    return false;
}

}  // namespace detail

/// All complex roots of p (with multiplicity) by Aberth-Ehrlich iteration
/// with seeded random restarts, falling back to Laguerre with deflation.
/// Every returned root satisfies |p(r)| <= tol * sum|a_k||r|^k.
template <typename T>
RootSet<T> roots(const Poly<T>& p, const RootOptions& opt = {}) {
    using std::abs;
    using std::pow;
    if (p.degree() < 1) throw InputError("roots: polynomial degree must be >= 1");

    RootSet<T> out;
    // Exact zeros at the origin are split off first.
    std::vector<Complex<T>> c = p.coeffs();
    std::size_t zeros = 0;
    while (zeros < c.size() && c[zeros] == Complex<T>()) ++zeros;
    out.roots.assign(zeros, Complex<T>());
    Poly<T> q(std::vector<Complex<T>>(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end()));
    const int n = q.degree();

    const T tol(opt.tol);
    const T stop_tol = std::max<T>(T(4 * std::max(n, 1)) * eps_v<T>(), T(0));
    if (n >= 1) {
        T radius = pow(abs(q[0]) / abs(q.leading()), T(1) / T(n));
        if (!(radius > T(0))) radius = T(1);
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);

        std::vector<Complex<T>> z(static_cast<std::size_t>(n));
        bool ok = false;
        for (int attempt = 0; attempt <= opt.restarts && !ok; ++attempt) {
            const double offset = attempt == 0 ? 0.4 : unif(rng);
            for (int k = 0; k < n; ++k) {
                T r = radius;
                if (attempt > 0) r *= T(0.5 + unif(rng));
                z[static_cast<std::size_t>(k)] =
                    r * unit_from_turns<T>(T((static_cast<double>(k) + offset) / n));
            }
            ok = detail::aberth(q, z, opt.max_iterations, stop_tol);
            if (ok)
                ok = std::all_of(z.begin(), z.end(), [&](const auto& x) { return detail::backward_ok(q, x, tol); });
        }
        if (!ok) {
            // Laguerre with deflation, then polish against the full polynomial.
            Poly<T> work = q;
            z.clear();
            for (int k = 0; k < n; ++k) {
                Complex<T> x{};
                if (work.degree() == 1) {
                    x = -work[0] / work[1];
                } else if (!detail::laguerre(work, x, opt.max_iterations * 4, stop_tol)) {
                    throw NonConvergence("roots: iteration failed to converge");
                }
                detail::laguerre(q, x, 20, stop_tol);
                z.push_back(x);
                // divide out with a permissive tolerance; polishing moved x slightly
                std::vector<Complex<T>> qc(static_cast<std::size_t>(work.degree()));
                Complex<T> carry = work.leading();
                for (int i = work.degree(); i-- > 0;) {
                    qc[static_cast<std::size_t>(i)] = carry;
                    carry = work[static_cast<std::size_t>(i)] + carry * x;
                }
                work = Poly<T>(std::move(qc));
            }
        }
        for (const auto& x : z)
            if (!detail::backward_ok(q, x, tol)) throw NonConvergence("roots: residual above tolerance");
        out.roots.insert(out.roots.end(), z.begin(), z.end());
    }
    T res(0);
    for (const auto& x : out.roots) res = std::max<T>(res, abs(p(x)));
    out.residual = to_double(res);
    return out;
}

/// Sine of the angle between two coefficient vectors viewed as points of
/// projective space; 0 when one is a nonzero complex multiple of the other.
template <typename T>
double projective_distance(std::span<const Complex<T>> u, std::span<const Complex<T>> v) {
    using std::abs;
    using std::conj;
    using std::sqrt;
    const std::size_t n = std::max(u.size(), v.size());
    Complex<T> dot{};
    T nu(0), nv(0);
    for (std::size_t k = 0; k < n; ++k) {
        Complex<T> a = k < u.size() ? u[k] : Complex<T>();
        Complex<T> b = k < v.size() ? v[k] : Complex<T>();
        dot += conj(a) * b;
        nu += abs2(a);
        nv += abs2(b);
    }
    if (nu == T(0) || nv == T(0)) return (nu == nv) ? 0.0 : 1.0;
    // |v - proj_u v| / |v|, free of the cancellation in sqrt(1 - cos^2)
    const Complex<T> f = dot / nu;
    T r(0);
    for (std::size_t k = 0; k < n; ++k) {
        Complex<T> a = k < u.size() ? u[k] : Complex<T>();
        Complex<T> b = k < v.size() ? v[k] : Complex<T>();
        r += abs2(b - f * a);
    }
    return to_double(sqrt(r / nv));
}

}  // namespace lastrow
