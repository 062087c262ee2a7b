#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace elliptica {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// A function value that may be the point at infinity (a pole).
struct Value {
    cplx v{};
    bool pole = false;

    static Value at_pole() {
        const double inf = std::numeric_limits<double>::infinity();
        return Value{cplx(inf, inf), true};
    }
    static Value finite(cplx w) { return Value{w, false}; }
};

inline Value operator+(const Value& a, const Value& b) {
    if (a.pole || b.pole) return Value::at_pole();
    return Value::finite(a.v + b.v);
}

// ---- error taxonomy ----------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateLattice : Error { using Error::Error; };
struct EvaluationFailure : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct PoleProximity : Error { using Error::Error; };
struct DegenerateAddition : Error { using Error::Error; };
struct DegenerateShift : Error { using Error::Error; };
struct ConstraintViolation : Error { using Error::Error; };
struct Indeterminate : Error { using Error::Error; };
struct IncompatibleLattice : Error { using Error::Error; };
struct MissingParameter : Error { using Error::Error; };
struct NonRealCoefficients : Error { using Error::Error; };
struct AsymmetricQ : Error { using Error::Error; };
struct OddQForP4mg : Error { using Error::Error; };
struct SamplingExhausted : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

namespace detail {

/// Deterministic uniform double in [0,1) from a 64-bit generator state.
/// Avoids std::uniform_real_distribution, whose output is not pinned by the
/// standard across implementations.
template <typename Rng>
double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace detail

}  // namespace elliptica
