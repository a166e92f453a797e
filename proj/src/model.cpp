#include "lastrow/model.hpp"

#include <string>

namespace lastrow {

namespace {

/// Coefficients of P(z0 + w) in powers of w.
Poly<Extended> taylor_shift(const Poly<Extended>& p, const Cx& z0) {
    std::vector<Cx> a = p.coeffs();
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = n - 1; k > i; --k) a[k - 1] += z0 * a[k];
    return Poly<Extended>(std::move(a));
}

/// First `order` coefficients of the power series num / den, den[0] != 0.
std::vector<Cx> series_divide(const Poly<Extended>& num, const Poly<Extended>& den, std::size_t order) {
    std::vector<Cx> q(order);
    for (std::size_t k = 0; k < order; ++k) {
        Cx acc = num[k];
        for (std::size_t i = 1; i <= k; ++i) acc -= den[i] * q[k - i];
        q[k] = acc / den[0];
    }
    return q;
}

}  // namespace

MeromorphicModel::MeromorphicModel(double radius, std::vector<Cx> analytic_coeffs, Poly<Extended> numerator,
                                   std::vector<PoleSpec> poles)
    : radius_(radius), analytic_(std::move(analytic_coeffs)), numerator_(std::move(numerator)),
      poles_(std::move(poles)) {
    if (!(radius_ > 0.0)) throw InputError("model: radius must be positive");
    for (std::size_t j = 0; j < poles_.size(); ++j) {
        const auto& pj = poles_[j];
        if (pj.multiplicity < 1) throw InputError("model: pole multiplicity must be positive");
        if (!is_finite(pj.location)) throw InputError("model: non-finite pole location");
        if (pj.location == Cx()) throw PoleAtOrigin("model: pole at the origin");
        if (to_double(abs(pj.location)) >= radius_)
            throw InputError("model: pole " + std::to_string(j) + " lies outside the disk |z| < R");
        for (std::size_t k = 0; k < j; ++k)
            if (poles_[k].location == pj.location) throw InputError("model: poles must be distinct");
    }
    if (numerator_.degree() >= lambda()) throw InputError("model: rational part must be proper (deg p < deg D)");

    principal_.resize(poles_.size());
    for (std::size_t j = 0; j < poles_.size(); ++j) {
        const auto s = static_cast<std::size_t>(poles_[j].multiplicity);
        Poly<Extended> num = taylor_shift(numerator_, poles_[j].location);
        Poly<Extended> den = taylor_shift(denominator_without(j), poles_[j].location);
        std::vector<Cx> h = series_divide(num, den, s);
        // h_k multiplies w^{k - s}
        principal_[j].resize(s);
        for (std::size_t k = 0; k < s; ++k) principal_[j][s - 1 - k] = h[k];
    }
}

int MeromorphicModel::lambda() const {
    int l = 0;
    for (const auto& p : poles_) l += p.multiplicity;
    return l;
}

Poly<Extended> MeromorphicModel::denominator() const {
    Poly<Extended> d = Poly<Extended>::constant(Cx(1));
    for (const auto& p : poles_)
        for (int s = 0; s < p.multiplicity; ++s) d = d * Poly<Extended>::linear_factor(p.location);
    return d;
}

Poly<Extended> MeromorphicModel::denominator_without(std::size_t j) const {
    Poly<Extended> d = Poly<Extended>::constant(Cx(1));
    for (std::size_t k = 0; k < poles_.size(); ++k) {
        if (k == j) continue;
        for (int s = 0; s < poles_[k].multiplicity; ++s) d = d * Poly<Extended>::linear_factor(poles_[k].location);
    }
    return d;
}

const Cx& MeromorphicModel::laurent_coefficient(std::size_t j, int s) const {
    if (j >= principal_.size() || s < 1 || s > poles_[j].multiplicity)
        throw InputError("laurent_coefficient: index out of range");
    return principal_[j][static_cast<std::size_t>(s - 1)];
}

PowerSeries<Extended> MeromorphicModel::taylor_coefficients(int N) const {
    if (N < 0) throw InputError("taylor_coefficients: N must be >= 0");
    const auto len = static_cast<std::size_t>(N) + 1;
    PowerSeries<Extended> out;
    out.coeffs.assign(len, Cx());
    for (std::size_t k = 0; k < len && k < analytic_.size(); ++k) out.coeffs[k] = analytic_[k];

    // 1/(z - z_j)^s = (-1)^s z_j^{-s} sum_k binom(k+s-1, s-1) (z/z_j)^k
    for (std::size_t j = 0; j < poles_.size(); ++j) {
        const Cx inv = Cx(1) / poles_[j].location;
        for (int s = 1; s <= poles_[j].multiplicity; ++s) {
            Cx lead = principal_[j][static_cast<std::size_t>(s - 1)];
            for (int i = 0; i < s; ++i) lead *= -inv;
            Extended binom(1);  // binom(k+s-1, s-1) at k = 0
            Cx pw(1);
            for (std::size_t k = 0; k < len; ++k) {
                out.coeffs[k] += lead * binom * pw;
                pw *= inv;
                binom = binom * Extended(static_cast<double>(k + static_cast<std::size_t>(s))) /
                        Extended(static_cast<double>(k + 1));
            }
        }
    }
    return out;
}

Cx principal_coefficient(const MeromorphicModel& m, std::size_t j) {
    if (j >= m.pole_count()) throw InputError("principal_coefficient: pole index out of range");
    return m.laurent_coefficient(j, m.poles()[j].multiplicity);
}

}  // namespace lastrow
