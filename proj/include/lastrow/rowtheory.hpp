#pragma once

#include "lastrow/model.hpp"
#include "lastrow/poly.hpp"

#include <cstdint>
#include <vector>

namespace lastrow {

/// Pole ordering for the last intermediate row. `order[i]` is the model
/// index of the i-th pole in the ordering: first the maximal-modulus poles
/// by decreasing multiplicity, then the remaining poles by decreasing
/// modulus. Ties keep the model's input order.
struct DominantAnalysis {
    double rho = 0.0;
    int ell = 0;
    int mu = 0;
    int nu = 0;
    int lambda = 0;
    std::vector<std::size_t> order;

    std::size_t dominant(int j) const { return order[static_cast<std::size_t>(j)]; }
};

DominantAnalysis analyze_poles(const MeromorphicModel& m, double modulus_tol = 1e-9);

/// Constants attached to the dominant poles z_1..z_nu.
struct CjTable {
    std::vector<Cd> z;         // dominant pole locations
    std::vector<int> s;        // their (common) multiplicity
    std::vector<Cd> A;         // leading Laurent coefficients
    std::vector<Cd> C;         // C_j = 1 / ((s_j-1)! z_j^{s_j-1} D_j(z_j)^2 A_j)
    std::vector<Cd> Dj_at_zj;  // D_j(z_j)
    Poly<double> DeltaFull;    // prod_{j<=nu} (z - z_j)
    std::vector<Poly<double>> Delta;  // DeltaFull / (z - z_j)

    int nu() const { return static_cast<int>(C.size()); }
    /// Same table with every C_j multiplied by `t`.
    CjTable scaled(const Cd& t) const;
};

CjTable compute_cj(const MeromorphicModel& m, const DominantAnalysis& d);

/// The monothetic torus data: arguments of the dominant poles in turns.
struct TorusSpec {
    enum class Rank { IndependentOverQ, Relations };

    std::vector<Extended> thetas;
    Rank rank = Rank::Relations;
    /// Declared integer relations sum_j k_j Theta_j = k_0 (rows: k_0, k_1..k_nu).
    std::vector<std::vector<long long>> relations;
    std::vector<Cd> xi;
    /// True when some Theta had to be read off a Cartesian pole location.
    bool thetas_inferred = false;

    bool independent() const { return rank == Rank::IndependentOverQ; }
    int nu() const { return static_cast<int>(thetas.size()); }
};

/// Builds the torus data for the dominant poles. Poles given in polar form
/// contribute their exact Theta; Cartesian ones fall back to their argument.
/// Every Theta is checked against the pole: |z_j - rho e^{2 pi i Theta_j}| < 1e-9.
TorusSpec make_torus(const MeromorphicModel& m, const DominantAnalysis& d, TorusSpec::Rank rank,
                     std::vector<std::vector<long long>> relations = {});

/// xi^n, with n * Theta_j reduced modulo 1 in Extended before exponentiation.
std::vector<Cd> orbit_point(const TorusSpec& t, std::int64_t n);

struct OmegaPoly {
    std::vector<Cd> tau;
    Poly<double> poly;
};

/// omega(z, tau) = sum_j C_j Delta_j(z) tau_j.
OmegaPoly omega_at(const CjTable& c, const std::vector<Cd>& tau, double unit_tol = 1e-9);

/// Zeros of omega(., tau); leading coefficients below rel_tol * sum|C_j| are
/// treated as zero so a degree drop yields fewer (possibly no) zeros.
std::vector<Cd> omega_zeros(const OmegaPoly& w, const CjTable& c, double rel_tol = 1e-12,
                            const RootOptions& opt = {});

struct IsolatedLimitPoint {
    Cd location;
    int multiplicity = 0;
    bool dominant = false;
};

/// Predicted limit points of poles along the row m = lambda - 1, except for
/// the omega zero set: all poles, with dominant multiplicities lowered by
/// one (dominant simple poles drop out).
struct PredictedLimitPoles {
    std::vector<IsolatedLimitPoint> isolated;
    /// Zeros of the omega family form the remaining part of the limit set.
    /// With rationally independent arguments that set equals the region
    /// where every g_j <= 0.
    bool nf_equals_n = false;
    int nu = 0;
};

PredictedLimitPoles predicted_limit_poles(const MeromorphicModel& m, const DominantAnalysis& d, const CjTable& c,
                                          const TorusSpec* torus = nullptr);

}  // namespace lastrow
