#pragma once

#include "lastrow/poly.hpp"
#include "lastrow/scalar.hpp"

#include <optional>
#include <vector>

namespace lastrow {

/// A pole z_j of multiplicity s_j. When the pole was given in polar form the
/// exact argument in turns is kept so torus computations never have to
/// recover it from a rounded complex number.
struct PoleSpec {
    Cx location;
    int multiplicity = 1;
    std::optional<Extended> theta_turns;

    static PoleSpec cartesian(const Cx& z, int mult = 1) { return {z, mult, std::nullopt}; }
    static PoleSpec polar(const Extended& rho, const Extended& theta_turns, int mult = 1) {
        return {rho * unit_from_turns<Extended>(theta_turns), mult, theta_turns};
    }
};

template <typename T>
struct PowerSeries {
    std::vector<Complex<T>> coeffs;

    std::size_t size() const { return coeffs.size(); }
    const Complex<T>& operator[](std::size_t k) const { return coeffs[k]; }
    double sup_norm() const {
        double m = 0.0;
        for (const auto& c : coeffs) m = std::max(m, to_double(std::abs(c)));
        return m;
    }
};

/// a(z) = b(z) + p(z) / D(z),  D(z) = prod (z - z_j)^{s_j},
/// with b a polynomial and deg p < deg D. Immutable after construction.
class MeromorphicModel {
public:
    MeromorphicModel(double radius, std::vector<Cx> analytic_coeffs, Poly<Extended> numerator,
                     std::vector<PoleSpec> poles);

    double radius() const { return radius_; }
    const std::vector<Cx>& analytic_coeffs() const { return analytic_; }
    const Poly<Extended>& numerator() const { return numerator_; }
    const std::vector<PoleSpec>& poles() const { return poles_; }
    std::size_t pole_count() const { return poles_.size(); }
    /// Total pole count with multiplicity.
    int lambda() const;

    /// D(z)
    Poly<Extended> denominator() const;
    /// D(z) / (z - z_j)^{s_j}
    Poly<Extended> denominator_without(std::size_t j) const;

    /// Coefficient of (z - z_j)^{-s} in the Laurent expansion at z_j,
    /// 1 <= s <= s_j.
    const Cx& laurent_coefficient(std::size_t j, int s) const;

    /// Maclaurin coefficients c_0..c_N, computed in Extended.
    PowerSeries<Extended> taylor_coefficients(int N) const;

    template <typename T>
    PowerSeries<T> taylor_coefficients_as(int N) const;

    /// b(z) + p(z)/D(z). Throws NearPole within `exclusion` of a pole.
    template <typename T>
    Complex<T> evaluate(const Complex<T>& z, double exclusion = 1e-9) const;

private:
    double radius_;
    std::vector<Cx> analytic_;
    Poly<Extended> numerator_;
    std::vector<PoleSpec> poles_;
    // principal_[j][s-1] = coefficient of (z - z_j)^{-s}
    std::vector<std::vector<Cx>> principal_;
};

/// Leading Laurent coefficient A_j = p(z_j) / D_j(z_j).
Cx principal_coefficient(const MeromorphicModel& m, std::size_t j);

template <typename T>
PowerSeries<T> taylor_coefficients(const MeromorphicModel& m, int N) {
    return m.template taylor_coefficients_as<T>(N);
}

template <typename T>
Complex<T> eval_model(const MeromorphicModel& m, const Complex<T>& z, double exclusion = 1e-9) {
    return m.template evaluate<T>(z, exclusion);
}

// ---------------------------------------------------------------------------

template <typename T>
PowerSeries<T> MeromorphicModel::taylor_coefficients_as(int N) const {
    PowerSeries<Extended> x = taylor_coefficients(N);
    if constexpr (std::is_same_v<T, Extended>) {
        return x;
    } else {
        PowerSeries<T> out;
        out.coeffs.reserve(x.size());
        for (const auto& c : x.coeffs) out.coeffs.push_back(from_cx<T>(c));
        return out;
    }
}

template <typename T>
Complex<T> MeromorphicModel::evaluate(const Complex<T>& z, double exclusion) const {
    using std::abs;
    Complex<T> num{}, den(T(1)), ana{};
    for (const auto& pole : poles_) {
        Complex<T> d = z - from_cx<T>(pole.location);
        if (to_double(abs(d)) < exclusion) throw NearPole("eval_model: point too close to a pole");
        for (int s = 0; s < pole.multiplicity; ++s) den *= d;
    }
    const auto& nc = numerator_.coeffs();
    for (auto it = nc.rbegin(); it != nc.rend(); ++it) num = num * z + from_cx<T>(*it);
    for (auto it = analytic_.rbegin(); it != analytic_.rend(); ++it) ana = ana * z + from_cx<T>(*it);
    return ana + num / den;
}

}  // namespace lastrow
