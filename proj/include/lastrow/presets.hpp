#pragma once

#include "lastrow/model.hpp"

namespace lastrow::presets {

/// r(z) = (z^2 + z) / ((z - e^{2 pi i sqrt2})(z - e^{2 pi i sqrt3})(z - e^{2 pi i sqrt5})(z - 1/2)),
/// plus an optional polynomial analytic part.
inline MeromorphicModel irrational_three_pole(std::vector<Cx> analytic = {}) {
    using boost::multiprecision::sqrt;
    std::vector<PoleSpec> poles{
        PoleSpec::polar(Extended(1), sqrt(Extended(2))),
        PoleSpec::polar(Extended(1), sqrt(Extended(3))),
        PoleSpec::polar(Extended(1), sqrt(Extended(5))),
        PoleSpec::cartesian(Cx(Extended(1) / 2)),
    };
    return MeromorphicModel(2.0, std::move(analytic), Poly<Extended>({Cx(0), Cx(1), Cx(1)}), std::move(poles));
}

/// 2 / (1 - z^2) = -2 / ((z - 1)(z + 1))
inline MeromorphicModel symmetric_two_pole(std::vector<Cx> analytic = {}) {
    return MeromorphicModel(2.0, std::move(analytic), Poly<Extended>({Cx(-2)}),
                            {PoleSpec::cartesian(Cx(1)), PoleSpec::cartesian(Cx(-1))});
}

/// 1 / (z - 1)
inline MeromorphicModel single_pole(std::vector<Cx> analytic = {}) {
    return MeromorphicModel(2.0, std::move(analytic), Poly<Extended>({Cx(1)}), {PoleSpec::cartesian(Cx(1))});
}

}  // namespace lastrow::presets
