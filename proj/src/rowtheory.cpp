#include "lastrow/rowtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lastrow {

DominantAnalysis analyze_poles(const MeromorphicModel& m, double modulus_tol) {
    if (m.pole_count() == 0) throw InputError("analyze_poles: model has no poles");
    const auto& poles = m.poles();
    std::vector<double> modulus(poles.size());
    for (std::size_t j = 0; j < poles.size(); ++j) modulus[j] = to_double(abs(poles[j].location));

    DominantAnalysis d;
    d.ell = static_cast<int>(poles.size());
    d.lambda = m.lambda();
    d.rho = *std::max_element(modulus.begin(), modulus.end());

    std::vector<std::size_t> top, rest;
    for (std::size_t j = 0; j < poles.size(); ++j)
        (std::abs(modulus[j] - d.rho) <= modulus_tol ? top : rest).push_back(j);
    std::stable_sort(top.begin(), top.end(),
                     [&](std::size_t a, std::size_t b) { return poles[a].multiplicity > poles[b].multiplicity; });
    std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
        return modulus[a] > modulus[b] + modulus_tol;
    });
    d.mu = static_cast<int>(top.size());
    d.nu = static_cast<int>(std::count_if(top.begin(), top.end(), [&](std::size_t j) {
        return poles[j].multiplicity == poles[top.front()].multiplicity;
    }));
    d.order = top;
    d.order.insert(d.order.end(), rest.begin(), rest.end());
    return d;
}

CjTable CjTable::scaled(const Cd& t) const {
    CjTable out = *this;
    for (auto& c : out.C) c *= t;
    return out;
}

CjTable compute_cj(const MeromorphicModel& m, const DominantAnalysis& d) {
    CjTable t;
    std::vector<Cd> zs;
    for (int j = 0; j < d.nu; ++j) {
        const std::size_t idx = d.dominant(j);
        const PoleSpec& pole = m.poles()[idx];
        const Cx A = principal_coefficient(m, idx);
        if (A == Cx() || !is_finite(A))
            throw ZeroPrincipalCoefficient("compute_cj: leading Laurent coefficient vanishes at a dominant pole");
        const Cx Dj = m.denominator_without(idx)(pole.location);
        Cx denom = Dj * Dj * A;
        for (int k = 1; k < pole.multiplicity; ++k) denom *= pole.location * Cx(Extended(k));
        const Cx C = Cx(1) / denom;
        if (!is_finite(C) || C == Cx())
            throw ZeroPrincipalCoefficient("compute_cj: C_j is zero or not finite");
        t.z.push_back(to_cd(pole.location));
        t.s.push_back(pole.multiplicity);
        t.A.push_back(to_cd(A));
        t.C.push_back(to_cd(C));
        t.Dj_at_zj.push_back(to_cd(Dj));
    }
    t.DeltaFull = Poly<double>::from_roots(t.z);
    for (int j = 0; j < d.nu; ++j) {
        std::vector<Cd> others;
        for (int k = 0; k < d.nu; ++k)
            if (k != j) others.push_back(t.z[static_cast<std::size_t>(k)]);
        t.Delta.push_back(Poly<double>::from_roots(others));
    }
    return t;
}

TorusSpec make_torus(const MeromorphicModel& m, const DominantAnalysis& d, TorusSpec::Rank rank,
                     std::vector<std::vector<long long>> relations) {
    TorusSpec t;
    t.rank = rank;
    t.relations = std::move(relations);
    for (const auto& row : t.relations)
        if (static_cast<int>(row.size()) != d.nu + 1)
            throw InputError("make_torus: each relation row needs nu + 1 integers");
    for (int j = 0; j < d.nu; ++j) {
        const PoleSpec& pole = m.poles()[d.dominant(j)];
        Extended theta;
        if (pole.theta_turns) {
            theta = *pole.theta_turns;
        } else {
            theta = frac(Extended(atan2(pole.location.imag(), pole.location.real())) / (2 * pi_v<Extended>()));
            t.thetas_inferred = true;
        }
        const Cx expect = Extended(d.rho) * unit_from_turns<Extended>(theta);
        if (to_double(abs(expect - pole.location)) >= 1e-9)
            throw InputError("make_torus: theta_turns inconsistent with pole location");
        t.thetas.push_back(theta);
        t.xi.push_back(to_cd(unit_from_turns<Extended>(theta)));
    }
    return t;
}

std::vector<Cd> orbit_point(const TorusSpec& t, std::int64_t n) {
    std::vector<Cd> out;
    out.reserve(t.thetas.size());
    const Extended nn(n);
    for (const auto& theta : t.thetas) out.push_back(unit_from_turns<double>(to_double(frac(nn * theta))));
    return out;
}

OmegaPoly omega_at(const CjTable& c, const std::vector<Cd>& tau, double unit_tol) {
    if (static_cast<int>(tau.size()) != c.nu()) throw InputError("omega_at: tau must have nu entries");
    for (const auto& x : tau)
        if (std::abs(std::abs(x) - 1.0) > unit_tol) throw InputError("omega_at: tau entries must be unit modulus");
    Poly<double> w;
    for (std::size_t j = 0; j < tau.size(); ++j) w = w + (c.C[j] * tau[j]) * c.Delta[j];
    return {tau, w};
}

std::vector<Cd> omega_zeros(const OmegaPoly& w, const CjTable& c, double rel_tol, const RootOptions& opt) {
    double scale = 0.0;
    for (std::size_t j = 0; j < c.C.size(); ++j) scale += std::abs(c.C[j]) * c.Delta[j].max_abs_coeff();
    std::vector<Cd> coeffs = w.poly.coeffs();
    while (!coeffs.empty() && std::abs(coeffs.back()) <= rel_tol * scale) coeffs.pop_back();
    Poly<double> p(std::move(coeffs));
    if (p.degree() < 1) return {};
    return roots(p, opt).roots;
}

PredictedLimitPoles predicted_limit_poles(const MeromorphicModel& m, const DominantAnalysis& d, const CjTable& c,
                                          const TorusSpec* torus) {
    PredictedLimitPoles out;
    out.nu = c.nu();
    for (std::size_t i = 0; i < d.order.size(); ++i) {
        const PoleSpec& pole = m.poles()[d.order[i]];
        const bool dominant = static_cast<int>(i) < d.nu;
        const int mult = pole.multiplicity - (dominant ? 1 : 0);
        if (mult > 0) out.isolated.push_back({to_cd(pole.location), mult, dominant});
    }
    out.nf_equals_n = torus != nullptr && torus->independent();
    return out;
}

}  // namespace lastrow
