#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "elliptica/core.hpp"

namespace elliptica {

namespace detail {

inline double max_abs(const std::vector<cplx>& c) {
    double m = 0.0;
    for (const cplx& x : c) m = std::max(m, std::abs(x));
    return m;
}

inline void poly_trim(std::vector<cplx>& c, double rel_tol = 1e-14) {
    const double m = max_abs(c);
    while (c.size() > 1 && std::abs(c.back()) <= rel_tol * m) c.pop_back();
    if (c.size() == 1 && std::abs(c[0]) <= rel_tol * m) c[0] = cplx{};
}

inline std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> out(a.size() + b.size() - 1, cplx{});
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// Horner evaluation together with a magnitude estimate sum |c_k||w|^k used for
/// relative pole detection.
inline std::pair<cplx, double> poly_eval_scaled(const std::vector<cplx>& c, cplx w) {
    cplx acc{};
    double mag = 0.0;
    const double aw = std::abs(w);
    for (size_t k = c.size(); k-- > 0;) {
        acc = acc * w + c[k];
        mag = mag * aw + std::abs(c[k]);
    }
    return {acc, mag};
}

}  // namespace detail

/// Rational function in ascending-power coefficient form. Stored trimmed, with
/// the denominator normalized to leading coefficient 1. Callers are expected
/// to supply reduced representations (no common roots of num and den).
class RationalFunction {
public:
    RationalFunction(std::vector<cplx> num, std::vector<cplx> den)
        : num_(std::move(num)), den_(std::move(den)) {
        if (num_.empty()) num_ = {cplx{}};
        if (den_.empty()) throw ConstraintViolation("rational function needs a denominator");
        detail::poly_trim(num_);
        detail::poly_trim(den_);
        if (detail::max_abs(den_) == 0.0)
            throw ConstraintViolation("rational function denominator is identically zero");
        const cplx lead = den_.back();
        for (auto& c : den_) c /= lead;
        for (auto& c : num_) c /= lead;
    }

    /// The constant zero function.
    static RationalFunction zero() { return RationalFunction({cplx{}}, {cplx{1.0, 0.0}}); }
    static RationalFunction constant(cplx c) { return RationalFunction({c}, {cplx{1.0, 0.0}}); }
    /// The identity w.
    static RationalFunction identity() {
        return RationalFunction({cplx{}, cplx{1.0, 0.0}}, {cplx{1.0, 0.0}});
    }

    const std::vector<cplx>& num() const { return num_; }
    const std::vector<cplx>& den() const { return den_; }

    bool is_zero() const { return num_.size() == 1 && num_[0] == cplx{}; }

    int degree_difference() const {
        if (is_zero()) return std::numeric_limits<int>::min();
        return static_cast<int>(num_.size()) - static_cast<int>(den_.size());
    }

    /// Value at w, with a pole marker when the denominator vanishes. Throws
    /// Indeterminate when numerator and denominator vanish together.
    Value eval(cplx w) const {
        const auto [nv, nmag] = detail::poly_eval_scaled(num_, w);
        const auto [dv, dmag] = detail::poly_eval_scaled(den_, w);
        if (std::abs(dv) <= 1e-14 * dmag) {
            if (std::abs(nv) <= 1e-14 * std::max(nmag, 1e-300))
                throw Indeterminate("numerator and denominator vanish together");
            return Value::at_pole();
        }
        return Value::finite(nv / dv);
    }

    /// Limit as w -> infinity: ratio of leading coefficients by degree.
    Value limit_at_infinity() const {
        const int d = degree_difference();
        if (is_zero() || d < 0) return Value::finite(cplx{});
        if (d > 0) return Value::at_pole();
        return Value::finite(num_.back() / den_.back());
    }

    /// The function w * f(w).
    RationalFunction times_w() const {
        std::vector<cplx> n(num_.size() + 1, cplx{});
        for (size_t i = 0; i < num_.size(); ++i) n[i + 1] = num_[i];
        return RationalFunction(std::move(n), den_);
    }

    RationalFunction scaled(cplx factor) const {
        std::vector<cplx> n = num_;
        for (auto& c : n) c *= factor;
        return RationalFunction(std::move(n), den_);
    }

private:
    std::vector<cplx> num_, den_;
};

/// All coefficients conjugated; gives conj(f(conj w)) pointwise.
inline RationalFunction conjugate_coefficients(const RationalFunction& f) {
    auto conj_all = [](std::vector<cplx> c) {
        for (auto& x : c) x = std::conj(x);
        return c;
    };
    return RationalFunction(conj_all(f.num()), conj_all(f.den()));
}

namespace detail {

inline std::optional<std::vector<cplx>> strided_compress(const std::vector<cplx>& c, int stride,
                                                         double tol) {
    const double m = max_abs(c);
    for (size_t k = 0; k < c.size(); ++k)
        if (k % static_cast<size_t>(stride) != 0 && std::abs(c[k]) > tol * m) return std::nullopt;
    std::vector<cplx> out;
    for (size_t k = 0; k < c.size(); k += static_cast<size_t>(stride)) out.push_back(c[k]);
    return out;
}

}  // namespace detail

/// If f(w) = T(w^2), returns T; otherwise nullopt. A reduced even rational
/// function has even numerator and denominator, so a coefficient-stride check
/// suffices.
inline std::optional<RationalFunction> even_decompose(const RationalFunction& f, double tol = 1e-12) {
    auto n = detail::strided_compress(f.num(), 2, tol);
    auto d = detail::strided_compress(f.den(), 2, tol);
    if (!n || !d) return std::nullopt;
    return RationalFunction(std::move(*n), std::move(*d));
}

/// If f(w) = T(w^3), returns T; otherwise nullopt.
inline std::optional<RationalFunction> cube_decompose(const RationalFunction& f, double tol = 1e-12) {
    auto n = detail::strided_compress(f.num(), 3, tol);
    auto d = detail::strided_compress(f.den(), 3, tol);
    if (!n || !d) return std::nullopt;
    return RationalFunction(std::move(*n), std::move(*d));
}

/// True iff f can be rescaled (same factor on num and den) to have all-real
/// coefficients; equivalent to f being real on the real axis away from poles.
inline bool is_real_on_reals(const RationalFunction& f, double tol = 1e-9) {
    if (f.is_zero()) return true;
    // pick the largest-magnitude coefficient as the phase reference
    cplx ref{};
    for (const auto& c : f.den())
        if (std::abs(c) > std::abs(ref)) ref = c;
    for (const auto& c : f.num())
        if (std::abs(c) > std::abs(ref)) ref = c;
    const cplx lambda = std::conj(ref) / std::abs(ref);
    const double scale = std::abs(ref);
    for (const auto& c : f.num())
        if (std::abs((lambda * c).imag()) > tol * scale) return false;
    for (const auto& c : f.den())
        if (std::abs((lambda * c).imag()) > tol * scale) return false;
    return true;
}

enum class Variant : std::uint8_t { MinusOne, PlusOne };

inline const char* to_string(Variant v) { return v == Variant::MinusOne ? "minus" : "plus"; }

/// Factored symmetric family
///   Q(w) = C w^p prod_k ((w - a_k)(conj(a_k) w -/+ 1))^{lambda_k}
///              / prod_l ((w - b_l)(conj(b_l) w -/+ 1))^{mu_l}
/// (sign - for MinusOne, + for PlusOne), subject to sum mu = p + sum lambda,
/// C real nonzero, a_k, b_l nonzero.
struct FactoredSymmetricRational {
    double C = 1.0;
    int p = 0;
    std::vector<std::pair<cplx, int>> zeros;  // (a_k, lambda_k)
    std::vector<std::pair<cplx, int>> poles;  // (b_l, mu_l)
    Variant variant = Variant::MinusOne;
};

/// Expands the factored family into coefficient form. Throws
/// ConstraintViolation when the exponent balance sum mu = p + sum lambda fails
/// or a root parameter is invalid.
inline RationalFunction expand_factored(const FactoredSymmetricRational& q) {
    long lam = 0, mu = 0;
    for (const auto& [a, l] : q.zeros) {
        if (l < 1 || a == cplx{}) throw ConstraintViolation("zeros need a_k != 0 and lambda_k >= 1");
        lam += l;
    }
    for (const auto& [b, m] : q.poles) {
        if (m < 1 || b == cplx{}) throw ConstraintViolation("poles need b_l != 0 and mu_l >= 1");
        mu += m;
    }
    if (q.C == 0.0) throw ConstraintViolation("leading constant C must be nonzero");
    if (mu != q.p + lam)
        throw ConstraintViolation("exponent balance sum(mu) = p + sum(lambda) violated");

    const double sigma = (q.variant == Variant::MinusOne) ? -1.0 : 1.0;
    auto pair_factor = [&](cplx a) {
        // (w - a)(conj(a) w + sigma), ascending coefficients
        return std::vector<cplx>{-sigma * a, cplx{sigma, 0.0} - std::conj(a) * a, std::conj(a)};
    };
    std::vector<cplx> num{cplx{q.C, 0.0}};
    std::vector<cplx> den{cplx{1.0, 0.0}};
    for (const auto& [a, l] : q.zeros)
        for (int i = 0; i < l; ++i) num = detail::poly_mul(num, pair_factor(a));
    for (const auto& [b, m] : q.poles)
        for (int i = 0; i < m; ++i) den = detail::poly_mul(den, pair_factor(b));
    if (q.p > 0) {
        std::vector<cplx> shifted(num.size() + static_cast<size_t>(q.p), cplx{});
        std::copy(num.begin(), num.end(), shifted.begin() + q.p);
        num = std::move(shifted);
    } else if (q.p < 0) {
        std::vector<cplx> shifted(den.size() + static_cast<size_t>(-q.p), cplx{});
        std::copy(den.begin(), den.end(), shifted.begin() - q.p);
        den = std::move(shifted);
    }
    return RationalFunction(std::move(num), std::move(den));
}

namespace detail {

/// Deterministic sample points on the annulus 0.5 <= |w| <= 2, which the
/// involution w -> sigma / conj(w) maps to itself.
inline std::vector<cplx> symmetry_samples(int count, std::uint64_t seed = 0x5eedC0DEULL) {
    std::mt19937_64 rng(seed);
    std::vector<cplx> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double r = 0.5 + 1.5 * uniform01(rng);
        const double th = 2.0 * kPi * uniform01(rng);
        out.emplace_back(r * std::cos(th), r * std::sin(th));
    }
    return out;
}

}  // namespace detail

/// Samples with values beyond this cap sit too close to a pole for the
/// identity check to be meaningful in double precision.
inline constexpr double kSymmetryValueCap = 1e4;

/// Pointwise test of the symmetry f(w) = conj(f(sigma / conj(w))) with
/// sigma = +1 (MinusOne) or -1 (PlusOne); the coefficient-conjugated identity
/// f = fbar(sigma/w) in pointwise form. Pole neighborhoods are skipped.
inline bool check_inversion_symmetry(const RationalFunction& f, Variant variant, int samples = 200,
                                     double tol = 1e-9) {
    const double sigma = (variant == Variant::MinusOne) ? 1.0 : -1.0;
    for (const cplx w : detail::symmetry_samples(samples)) {
        Value lhs, rhs;
        try {
            lhs = f.eval(w);
            rhs = f.eval(sigma / std::conj(w));
        } catch (const Indeterminate&) {
            continue;
        }
        if (lhs.pole || rhs.pole) continue;
        if (std::abs(lhs.v) > kSymmetryValueCap || std::abs(rhs.v) > kSymmetryValueCap) continue;
        if (std::abs(lhs.v - std::conj(rhs.v)) > tol * (1.0 + std::abs(lhs.v))) return false;
    }
    return true;
}

/// Companion test for the wp'-weighted part: t qualifies iff
///   t(w) = -(1/w^2) conj(t(sigma / conj(w))),
/// the condition under which t(w) wp'(z) survives the glide. Equivalently
/// i w t(w) (not w t(w): the derivative of the half-period identity carries a
/// minus sign) satisfies the plain inversion symmetry for the variant.
inline bool weighted_T_check(const RationalFunction& t, Variant variant, int samples = 200,
                             double tol = 1e-9) {
    if (t.is_zero()) return true;
    const double sigma = (variant == Variant::MinusOne) ? 1.0 : -1.0;
    for (const cplx w : detail::symmetry_samples(samples)) {
        Value lhs, rhs;
        try {
            lhs = t.eval(w);
            rhs = t.eval(sigma / std::conj(w));
        } catch (const Indeterminate&) {
            continue;
        }
        if (lhs.pole || rhs.pole) continue;
        if (std::abs(lhs.v) > kSymmetryValueCap || std::abs(rhs.v) > kSymmetryValueCap) continue;
        const cplx want = -std::conj(rhs.v) / (w * w);
        if (std::abs(lhs.v - want) > tol * (1.0 + std::abs(lhs.v))) return false;
    }
    return true;
}

}  // namespace elliptica
