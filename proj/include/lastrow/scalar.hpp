#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lastrow {

/// Software real with 100 significant decimal digits. Used for runs where
/// Taylor coefficients grow or fail to decay and double loses the
/// information carried by the dominant poles.
using Extended = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<100>, boost::multiprecision::et_off>;

template <typename T>
using Complex = std::complex<T>;

using Cd = Complex<double>;
using Cx = Complex<Extended>;

enum class Precision { Double, Extended };

inline const char* to_string(Precision p) {
    return p == Precision::Double ? "double" : "extended";
}

// ---------------------------------------------------------------------------
// Errors. Every failure mode named by a module contract has its own type so
// callers (and the CLI exit-code mapping) can tell them apart.

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical failure; the CLI maps these to exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

class NonConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class NotARoot : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class NearPole : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class HorizonExhausted : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class ZeroPrincipalCoefficient : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Invalid input to an operation (bad model, mismatched sizes, ...).
class InputError : public Error {
public:
    using Error::Error;
};

class PoleAtOrigin : public InputError {
public:
    using InputError::InputError;
};
class InsufficientCoefficients : public InputError {
public:
    using InputError::InputError;
};
class RowMismatch : public InputError {
public:
    using InputError::InputError;
};

// ---------------------------------------------------------------------------
// Scalar helpers usable with both double and Extended.

template <typename T>
inline T to_real(double x) {
    return T(x);
}

inline double to_double(double x) { return x; }
inline double to_double(const Extended& x) { return x.template convert_to<double>(); }

inline Cd to_cd(const Cd& z) { return z; }
inline Cd to_cd(const Cx& z) { return {to_double(z.real()), to_double(z.imag())}; }

template <typename T>
inline Complex<T> from_cd(const Cd& z) {
    return {T(z.real()), T(z.imag())};
}

template <typename T>
inline Complex<T> from_cx(const Cx& z) {
    if constexpr (std::is_same_v<T, Extended>) {
        return z;
    } else {
        return to_cd(z);
    }
}

template <typename T>
inline T pi_v() {
    if constexpr (std::is_same_v<T, double>) {
        return 3.14159265358979323846264338327950288;
    } else {
        return boost::math::constants::pi<T>();
    }
}

template <typename T>
inline T eps_v() {
    return std::numeric_limits<T>::epsilon();
}

inline bool is_finite(const Cd& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
inline bool is_finite(const Cx& z) {
    return boost::multiprecision::isfinite(z.real()) && boost::multiprecision::isfinite(z.imag());
}

/// |z|^2 without the square root that std::norm takes for non-builtin T.
template <typename T>
inline T abs2(const Complex<T>& z) {
    return z.real() * z.real() + z.imag() * z.imag();
}

/// Fractional part in [0, 1).
template <typename T>
inline T frac(const T& x) {
    using std::floor;
    T f = x - floor(x);
    if (f >= T(1)) f -= T(1);
    return f;
}

/// e^{2 pi i t} for t in turns. The argument is reduced to the nearest
/// quarter turn first so that multiples of 1/4 map to exact +-1, +-i.
template <typename T>
inline Complex<T> unit_from_turns(const T& turns) {
    using std::cos;
    using std::round;
    using std::sin;
    T t = frac(turns);
    T q = round(t * 4);
    T r = t - q / 4;  // |r| <= 1/8
    T angle = 2 * pi_v<T>() * r;
    Complex<T> base(cos(angle), sin(angle));
    switch (static_cast<int>(to_double(q)) & 3) {
        case 0: return base;
        case 1: return {-base.imag(), base.real()};
        case 2: return {-base.real(), -base.imag()};
        default: return {base.imag(), -base.real()};
    }
}

}  // namespace lastrow
