#pragma once

#include "lastrow/model.hpp"
#include "lastrow/poly.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

namespace lastrow {

enum class Normalization { ConstantTermOne, MaxCoefficientOne };

inline const char* to_string(Normalization n) {
    return n == Normalization::ConstantTermOne ? "constant_term_one" : "max_coefficient_one";
}

template <typename T>
struct PadeApproximant {
    int n = 0;
    int m = 0;
    Poly<T> numerator;
    Poly<T> denominator;
    Normalization normalization = Normalization::ConstantTermOne;
    /// |T q| / (sigma_max |q|) for the Toeplitz matrix T.
    double residual = 0.0;
    /// m-th singular value relative to the largest; zero when the null
    /// space is more than one-dimensional.
    double conditioning = 1.0;
    bool degenerate = false;

    Complex<T> operator()(const Complex<T>& z) const { return numerator(z) / denominator(z); }
};

namespace detail {

template <typename T>
using Columns = std::vector<std::vector<Complex<T>>>;

/// Householder reflector for x: returns v and the new leading entry so that
/// (I - 2 v v^H / v^H v) x = alpha e_1.
template <typename T>
std::pair<std::vector<Complex<T>>, Complex<T>> householder(const std::vector<Complex<T>>& x, const T& xnorm) {
    using std::abs;
    const T ax0 = abs(x[0]);
    const Complex<T> ph = ax0 > T(0) ? x[0] / ax0 : Complex<T>(T(1));
    const Complex<T> alpha = -ph * xnorm;
    std::vector<Complex<T>> v = x;
    v[0] -= alpha;
    return {std::move(v), alpha};
}

template <typename T>
void reflect(const std::vector<Complex<T>>& v, const T& vv, std::vector<Complex<T>>& col, std::size_t offset) {
    using std::conj;
    if (vv == T(0)) return;
    Complex<T> w{};
    for (std::size_t i = 0; i < v.size(); ++i) w += conj(v[i]) * col[offset + i];
    const Complex<T> f = T(2) * w / vv;
    for (std::size_t i = 0; i < v.size(); ++i) col[offset + i] -= f * v[i];
}

/// Householder QR of column-major `a` (rows x cols), in place. With
/// `pivot`, columns are exchanged greedily and the factorization stops once
/// every remaining column norm is at or below sqrt(thresh). Returns the
/// rank reached and the reflectors.
template <typename T>
std::size_t householder_qr(Columns<T>& a, bool pivot, const T& thresh, std::vector<std::size_t>& perm,
                           std::vector<std::vector<Complex<T>>>& reflectors) {
    using std::sqrt;
    const std::size_t cols = a.size();
    const std::size_t rows = cols == 0 ? 0 : a[0].size();
    perm.resize(cols);
    std::iota(perm.begin(), perm.end(), 0);
    reflectors.clear();
    auto tail_norm = [&](std::size_t j, std::size_t k) {
        T acc(0);
        for (std::size_t i = k; i < rows; ++i) acc += abs2(a[j][i]);
        return acc;
    };
    // pivot norms are downdated and recomputed after heavy cancellation
    std::vector<T> nrm(cols), ref(cols);
    for (std::size_t j = 0; j < cols; ++j) ref[j] = nrm[j] = tail_norm(j, 0);
    const T cancel = sqrt(eps_v<T>());
    std::size_t r = 0;
    for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
        if (k > 0)
            for (std::size_t j = k; j < cols; ++j) {
                nrm[j] -= abs2(a[j][k - 1]);
                if (nrm[j] <= cancel * ref[j]) ref[j] = nrm[j] = tail_norm(j, k);
            }
        std::size_t piv = k;
        T best(-1);
        for (std::size_t j = k; j < (pivot ? cols : k + 1); ++j)
            if (nrm[j] > best) {
                best = nrm[j];
                piv = j;
            }
        best = tail_norm(piv, k);
        if (pivot && best <= thresh) break;
        std::swap(a[k], a[piv]);
        std::swap(perm[k], perm[piv]);
        std::swap(nrm[k], nrm[piv]);
        std::swap(ref[k], ref[piv]);
        std::vector<Complex<T>> x(a[k].begin() + static_cast<std::ptrdiff_t>(k), a[k].end());
        auto [v, alpha] = householder(x, sqrt(best));
        T vv(0);
        for (const auto& e : v) vv += abs2(e);
        for (std::size_t j = k + 1; j < cols; ++j) reflect(v, vv, a[j], k);
        a[k][k] = alpha;
        for (std::size_t i = k + 1; i < rows; ++i) a[k][i] = Complex<T>();
        reflectors.push_back(std::move(v));
        ++r;
    }
    return r;
}

/// Extreme singular values of an upper-triangular nonsingular r x r matrix
/// (column-major) by power and inverse iteration on S^H S.
template <typename T>
std::pair<T, T> triangular_extreme_singular_values(const Columns<T>& S) {
    using std::abs;
    using std::conj;
    using std::sqrt;
    const std::size_t r = S.size();
    auto mul = [&](const std::vector<Complex<T>>& x) {  // S x
        std::vector<Complex<T>> y(r);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i <= j; ++i) y[i] += S[j][i] * x[j];
        return y;
    };
    auto mul_h = [&](const std::vector<Complex<T>>& x) {  // S^H x
        std::vector<Complex<T>> y(r);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i <= j; ++i) y[j] += conj(S[j][i]) * x[i];
        return y;
    };
    auto solve = [&](std::vector<Complex<T>> b) {  // S^{-1} b
        for (std::size_t j = r; j-- > 0;) {
            b[j] /= S[j][j];
            for (std::size_t i = 0; i < j; ++i) b[i] -= S[j][i] * b[j];
        }
        return b;
    };
    auto solve_h = [&](std::vector<Complex<T>> b) {  // S^{-H} b
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t i = 0; i < j; ++i) b[j] -= conj(S[j][i]) * b[i];
            b[j] /= conj(S[j][j]);
        }
        return b;
    };
    auto norm = [](const std::vector<Complex<T>>& x) {
        T acc(0);
        for (const auto& e : x) acc += abs2(e);
        return sqrt(acc);
    };
    auto iterate = [&](auto&& step) {
        std::vector<Complex<T>> x(r);
        for (std::size_t i = 0; i < r; ++i) x[i] = Complex<T>(T(1), T(static_cast<int>(i % 7)) / T(7));
        T lam(0);
        for (int it = 0; it < 200; ++it) {
            const T nx = norm(x);
            for (auto& e : x) e /= nx;
            auto y = step(x);
            const T next = norm(y);
            x = std::move(y);
            if (it > 2 && abs(next - lam) <= T(1e-15) * next) return next;
            lam = next;
        }
        return lam;
    };
    const T big = iterate([&](const auto& x) { return mul_h(mul(x)); });
    const T inv = iterate([&](const auto& x) { return solve(solve_h(x)); });
    return {sqrt(big), T(1) / sqrt(inv)};
}

template <typename T>
struct NullVector {
    std::vector<Complex<T>> x;
    T sigma_max{0};
    T sigma_min{0};  // m-th singular value when the rank is full, else 0
    int rank = 0;
};

/// Null vector of a wide matrix given as columns (cols = rows + 1).
/// Pivoted QR truncated at rounding level gives R; an unpivoted QR of R^H
/// gives the row space, and a unit vector is projected onto its complement.
template <typename T>
NullVector<T> wide_null_vector(Columns<T> a) {
    using std::conj;
    const std::size_t cols = a.size();
    const std::size_t rows = cols == 0 ? 0 : a[0].size();
    NullVector<T> out;

    T total(0);
    for (const auto& c : a)
        for (const auto& x : c) total += abs2(x);
    if (total == T(0)) return out;
    const T e100 = T(100) * eps_v<T>();
    std::vector<std::size_t> perm;
    std::vector<std::vector<Complex<T>>> refl;
    const std::size_t r = householder_qr(a, true, e100 * e100 * total, perm, refl);
    out.rank = static_cast<int>(r);

    // R^H as r columns of length cols
    Columns<T> b(r, std::vector<Complex<T>>(cols));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) b[i][j] = conj(a[j][i]);
    std::vector<std::size_t> perm2;
    std::vector<std::vector<Complex<T>>> refl2;
    householder_qr(b, false, T(0), perm2, refl2);

    // triangular factor S of R^H = Q2 S; sigma(S) = sigma(A)
    Columns<T> S(r, std::vector<Complex<T>>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j <= i; ++j) S[i][j] = b[i][j];
    std::tie(out.sigma_max, out.sigma_min) = triangular_extreme_singular_values(S);
    if (r < rows) out.sigma_min = T(0);

    // project unit vectors onto the complement of the row space through Q2,
    // in original coordinate order; the first one keeping at least half the
    // average weight is used
    std::vector<T> vv(r, T(0));
    for (std::size_t k = 0; k < r; ++k)
        for (const auto& e : refl2[k]) vv[k] += abs2(e);
    const T accept = T(static_cast<int>(cols - r)) / T(static_cast<int>(2 * cols));
    std::vector<std::size_t> where(cols);
    for (std::size_t j = 0; j < cols; ++j) where[perm[j]] = j;
    std::vector<Complex<T>> x;
    for (std::size_t o = 0; o < cols; ++o) {
        const std::size_t j = where[o];
        std::vector<Complex<T>> y(cols);
        y[j] = Complex<T>(T(1));
        for (std::size_t k = 0; k < r; ++k) reflect(refl2[k], vv[k], y, k);
        T w(0);
        for (std::size_t i = r; i < cols; ++i) w += abs2(y[i]);
        if (w < accept && o + 1 < cols) continue;
        for (std::size_t i = 0; i < r; ++i) y[i] = Complex<T>();
        for (std::size_t k = r; k-- > 0;) reflect(refl2[k], vv[k], y, k);
        x = std::move(y);
        break;
    }
    out.x.assign(cols, Complex<T>());
    for (std::size_t j = 0; j < cols; ++j) out.x[perm[j]] = x[j];
    return out;
}

}  // namespace detail

/// Padé approximant [n/m] of a power series. The denominator spans the null
/// space of the m x (m+1) Toeplitz system sum_k q_k c_{n+j-k} = 0, j = 1..m.
template <typename T>
PadeApproximant<T> pade_approximant(const PowerSeries<T>& s, int n, int m, double tol = 1e-9) {
    using std::abs;
    using std::sqrt;
    if (n < 0 || m < 0) throw InputError("pade_approximant: n and m must be non-negative");
    if (s.size() < static_cast<std::size_t>(n + m + 1))
        throw InsufficientCoefficients("pade_approximant: need c_0..c_{n+m}");

    auto coeff = [&](int i) { return i < 0 ? Complex<T>() : s[static_cast<std::size_t>(i)]; };

    PadeApproximant<T> out;
    out.n = n;
    out.m = m;
    std::vector<Complex<T>> q(static_cast<std::size_t>(m) + 1);
    if (m == 0) {
        q[0] = Complex<T>(T(1));
    } else {
        // column k holds c_{n+j-k} for j = 1..m
        std::vector<std::vector<Complex<T>>> a(static_cast<std::size_t>(m) + 1,
                                               std::vector<Complex<T>>(static_cast<std::size_t>(m)));
        for (int k = 0; k <= m; ++k)
            for (int j = 1; j <= m; ++j) a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j - 1)] = coeff(n + j - k);
        auto nv = detail::wide_null_vector(a);
        if (nv.rank == 0) {
            // all coefficients vanish: every vector is a null vector
            out.residual = 0.0;
            out.conditioning = 0.0;
            out.degenerate = true;
            q[0] = Complex<T>(T(1));
        } else {
            q = nv.x;
            T qn(0), rn(0);
            for (const auto& x : q) qn += abs2(x);
            for (int j = 0; j < m; ++j) {
                Complex<T> acc{};
                for (int k = 0; k <= m; ++k) acc += a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(k)];
                rn += abs2(acc);
            }
            out.residual = to_double(sqrt(rn / qn) / nv.sigma_max);
            out.conditioning = to_double(nv.sigma_min / nv.sigma_max);
            out.degenerate = nv.sigma_min <= T(100) * eps_v<T>() * nv.sigma_max;
        }
    }

    T qmax(0);
    std::size_t kmax = 0;
    for (std::size_t k = 0; k < q.size(); ++k)
        if (abs(q[k]) > qmax) {
            qmax = abs(q[k]);
            kmax = k;
        }
    Complex<T> scale;
    if (abs(q[0]) > T(tol) * qmax) {
        scale = q[0];
        out.normalization = Normalization::ConstantTermOne;
    } else {
        scale = q[kmax];
        out.normalization = Normalization::MaxCoefficientOne;
    }
    for (auto& x : q) x /= scale;

    std::vector<Complex<T>> p(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        Complex<T> acc{};
        for (int k = 0; k <= std::min(i, m); ++k) acc += q[static_cast<std::size_t>(k)] * coeff(i - k);
        p[static_cast<std::size_t>(i)] = acc;
    }
    out.numerator = Poly<T>(std::move(p));
    out.denominator = Poly<T>(std::move(q));
    return out;
}

/// max_{i <= n+m} |[P - s Q]_i|, the defect in the Padé order condition.
template <typename T>
double order_condition_residual(const PowerSeries<T>& s, const PadeApproximant<T>& pa) {
    using std::abs;
    T worst(0);
    const int top = pa.n + pa.m;
    for (int i = 0; i <= top; ++i) {
        Complex<T> acc = pa.numerator[static_cast<std::size_t>(i)];
        for (int k = 0; k <= std::min(i, pa.m); ++k)
            acc -= pa.denominator[static_cast<std::size_t>(k)] * s[static_cast<std::size_t>(i - k)];
        worst = std::max<T>(worst, abs(acc));
    }
    return to_double(worst);
}

template <typename T>
struct PadePoles {
    std::vector<Complex<T>> roots;
    double residual = 0.0;
    /// roots that are also (near-)roots of the numerator
    std::vector<bool> spurious;
};

/// Roots of the denominator after trimming trailing coefficients below
/// tol * max|q_k|. A root is flagged spurious when the numerator also
/// vanishes there to relative accuracy `pair_tol`.
template <typename T>
PadePoles<T> pade_poles(const PadeApproximant<T>& pa, double tol = 1e-9, double pair_tol = 1e-6,
                        const RootOptions& opt = {}) {
    using std::abs;
    PadePoles<T> out;
    const Poly<T> q = pa.denominator.trimmed(T(tol));
    if (q.degree() < 1) return out;
    RootSet<T> rs = roots(q, opt);
    out.roots = std::move(rs.roots);
    out.residual = rs.residual;
    for (const auto& z : out.roots) {
        T scale = pa.numerator.magnitude_at(z);
        out.spurious.push_back(scale == T(0) || abs(pa.numerator(z)) <= T(pair_tol) * scale);
    }
    return out;
}

}  // namespace lastrow
