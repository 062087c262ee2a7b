#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "elliptica/core.hpp"
#include "elliptica/lattice.hpp"

namespace elliptica {

/// A (wp, wp') evaluation. If at_pole is set, both components carry the pole
/// marker and the argument was within pole_radius of a lattice point.
struct WpPair {
    cplx p{};
    cplx pprime{};
    bool at_pole = false;

    static WpPair pole() {
        const double inf = std::numeric_limits<double>::infinity();
        return WpPair{cplx(inf, inf), cplx(inf, inf), true};
    }
};

struct ShiftRecord {
    long m = 0, n = 0;
};

/// z_reduced = z - (m omega1 + n omega2) minimizing |z_reduced| over the 3x3
/// stencil around the rounded basis coordinates. Minimality is guaranteed for
/// reduced bases.
inline std::pair<cplx, ShiftRecord> reduce_argument(cplx z, const Lattice& lat) {
    const cplx w1 = lat.omega1(), w2 = lat.omega2();
    const double det = (std::conj(w1) * w2).imag();
    const double x = (z.real() * w2.imag() - z.imag() * w2.real()) / det;
    const double y = (w1.real() * z.imag() - w1.imag() * z.real()) / det;
    const long m0 = std::lround(x), n0 = std::lround(y);
    cplx best = z;
    ShiftRecord rec{0, 0};
    bool first = true;
    for (long dm = -1; dm <= 1; ++dm) {
        for (long dn = -1; dn <= 1; ++dn) {
            const long m = m0 + dm, n = n0 + dn;
            const cplx zr = z - (static_cast<double>(m) * w1 + static_cast<double>(n) * w2);
            if (first || std::abs(zr) < std::abs(best)) {
                best = zr;
                rec = {m, n};
                first = false;
            }
        }
    }
    return {best, rec};
}

/// Laurent coefficients c_k of wp(z) = z^-2 + sum_{k>=2} c_k z^{2k-2}:
/// c2 = g2/20, c3 = g3/28, c_k = 3/((2k+1)(k-3)) sum_{m=2}^{k-2} c_m c_{k-m}.
/// Returns [c_2 ... c_{count+1}].
inline std::vector<cplx> laurent_coefficients(cplx g2, cplx g3, int count) {
    if (count < 2) throw ConstraintViolation("laurent coefficient count must be >= 2");
    std::vector<cplx> c(static_cast<size_t>(count) + 2);
    c[2] = g2 / 20.0;
    c[3] = g3 / 28.0;
    for (int k = 4; k < count + 2; ++k) {
        cplx acc{};
        for (int m = 2; m <= k - 2; ++m) acc += c[static_cast<size_t>(m)] * c[static_cast<size_t>(k - m)];
        c[static_cast<size_t>(k)] = 3.0 * acc / static_cast<double>((2 * k + 1) * (k - 3));
    }
    return std::vector<cplx>(c.begin() + 2, c.end());
}

namespace detail {

/// Roots of 4t^3 - g2 t - g3 (depressed cubic, Cardano + Newton polish).
inline std::array<cplx, 3> wp_cubic_roots(cplx g2, cplx g3) {
    // t^3 + p t + q with p = -g2/4, q = -g3/4
    const cplx p = -g2 / 4.0, q = -g3 / 4.0;
    std::array<cplx, 3> roots;
    const double scale = std::max({1.0, std::abs(p), std::abs(q)});
    if (std::abs(p) <= 1e-30 * scale && std::abs(q) <= 1e-30 * scale) {
        roots = {cplx{}, cplx{}, cplx{}};
    } else {
        const cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        cplx u3 = -q / 2.0 + disc;
        if (std::abs(u3) < std::abs(-q / 2.0 - disc)) u3 = -q / 2.0 - disc;
        const cplx u = std::pow(u3, 1.0 / 3.0);
        const cplx zeta{-0.5, std::sqrt(3.0) / 2.0};
        for (int k = 0; k < 3; ++k) {
            const cplx uk = (k == 0 ? u : (k == 1 ? u * zeta : u * zeta * zeta));
            roots[static_cast<size_t>(k)] = (std::abs(uk) > 0) ? uk - p / (3.0 * uk) : cplx{};
        }
    }
    // Newton polish on 4t^3 - g2 t - g3
    for (auto& t : roots) {
        for (int it = 0; it < 3; ++it) {
            const cplx f = 4.0 * t * t * t - g2 * t - g3;
            const cplx df = 12.0 * t * t - g2;
            if (std::abs(df) == 0) break;
            t -= f / df;
        }
    }
    return roots;
}

}  // namespace detail

/// Direct truncated-sum evaluation of wp and wp' over index shells
/// max(|m|,|n|) <= cutoff (ascending; same order as the Eisenstein sums), plus
/// the analytic exterior-tail correction
///   wp tail  = 3 z^2 T4 + 5 z^4 T6 + 7 z^6 T8 + 9 z^8 T10,
///   wp' tail = 6 z T4 + 20 z^3 T6 + 42 z^5 T8 + 72 z^7 T10,
/// which follows from expanding the omitted terms in powers of z/w (odd powers
/// of 1/w cancel over the centrally symmetric exterior). Self-contained: the
/// slow oracle shares no code path with the series evaluator.
inline WpPair eval_oracle(cplx z, const Lattice& lat, int cutoff = 160) {
    if (cutoff < 1) throw ConstraintViolation("oracle cutoff must be >= 1");
    const auto reduced = normalize_basis(lat);
    const double pole_radius = 1e-3 * reduced.min_norm();
    if (std::abs(reduce_argument(z, reduced).first) < pole_radius)
        throw PoleProximity("eval_oracle argument within pole_radius of a lattice point");
    const cplx w1 = lat.omega1(), w2 = lat.omega2();
    cplx p = 1.0 / (z * z);
    cplx pp = -2.0 / (z * z * z);
    for (int s = 1; s <= cutoff; ++s) {
        cplx shp{}, shpp{};
        detail::for_shell_pairs(s, [&](int m, int n) {
            const cplx w = static_cast<double>(m) * w1 + static_cast<double>(n) * w2;
            const cplx iw2 = 1.0 / (w * w);
            const cplx dm = z - w, dp = z + w;
            const cplx id2m = 1.0 / (dm * dm), id2p = 1.0 / (dp * dp);
            shp += (id2m - iw2) + (id2p - iw2);
            shpp += id2m / dm + id2p / dp;
        });
        p += shp;
        pp += -2.0 * shpp;
    }
    const auto t = detail::tail_estimates(w1, w2, cutoff);
    const cplx z2 = z * z, z4 = z2 * z2, z6 = z4 * z2;
    p += 3.0 * z2 * t.t4 + 5.0 * z4 * t.t6 + 7.0 * z6 * t.t8 + 9.0 * z4 * z4 * t.t10;
    pp += 6.0 * z * t.t4 + 20.0 * z * z2 * t.t6 + 42.0 * z * z4 * t.t8 + 72.0 * z * z6 * t.t10;
    return {p, pp, false};
}

/// wp(z + omega_i/2) = e_i + (e_i-e_j)(e_i-e_k) / (wp(z) - e_i)
/// wp'(z + omega_i/2) = -(e_i-e_j)(e_i-e_k) wp'(z) / (wp(z) - e_i)^2
/// (the derivative of the first identity; index 3 shifts by (omega1+omega2)/2).
inline WpPair half_period_shift(cplx p_value, cplx pprime_value, int index,
                                const LatticeInvariants& inv) {
    if (index < 1 || index > 3) throw ConstraintViolation("half-period index must be 1, 2, or 3");
    const std::array<cplx, 3> e{inv.e1, inv.e2, inv.e3};
    const cplx ei = e[static_cast<size_t>(index - 1)];
    const cplx ej = e[static_cast<size_t>(index % 3)];
    const cplx ek = e[static_cast<size_t>((index + 1) % 3)];
    const cplx denom = p_value - ei;
    const double scale = 1.0 + std::abs(p_value) + std::abs(ei);
    if (std::abs(denom) < 1e-12 * scale)
        throw DegenerateShift("wp(z) coincides with e_i; shift formula is singular");
    const cplx b = (ei - ej) * (ei - ek);
    return {ei + b / denom, -b * pprime_value / (denom * denom), false};
}

/// Numeric knobs of the fast evaluator.
struct EvalOptions {
    int eisenstein_cutoff = 120;
    int laurent_count = 24;
    double pole_radius_frac = 1e-3;  // fraction of min period norm
    double series_frac = 0.4;        // direct-series region
    double shifted_frac = 0.58;      // accepted radius after a half-period shift
    int matching_cutoff = 40;        // oracle cutoff used to label cubic roots
    int fallback_cutoff = 80;        // oracle cutoff for the far-field fallback
};

/// Precomputed evaluation context: invariants, Laurent coefficients and
/// half-period data for the fast evaluator.
class WeierstrassContext {
public:
    using Options = EvalOptions;

    explicit WeierstrassContext(const Lattice& lattice, const Options& opt = {})
        : lat_(lattice), opt_(opt), rb_(detail::reduce_basis(lattice)) {
        min_norm_ = std::abs(rb_.r1);
        reduced_ = Lattice(rb_.r1, rb_.r2);
        auto [g2, g3] = eisenstein_invariants(reduced_, opt_.eisenstein_cutoff);
        inv_.g2 = g2;
        inv_.g3 = g3;
        coeffs_ = laurent_coefficients(g2, g3, opt_.laurent_count);

        // e_i = wp(omega_i/2) in the *given* basis: solve the cubic, then label
        // the roots by matching against coarse oracle values at the half periods.
        const auto roots = detail::wp_cubic_roots(g2, g3);
        const std::array<cplx, 3> halves{lat_.omega1() / 2.0, lat_.omega2() / 2.0,
                                         (lat_.omega1() + lat_.omega2()) / 2.0};
        std::array<cplx, 3> e{};
        for (int i = 0; i < 3; ++i) {
            const cplx est = eval_oracle(halves[static_cast<size_t>(i)], lat_, opt_.matching_cutoff).p;
            e[static_cast<size_t>(i)] =
                *std::min_element(roots.begin(), roots.end(), [&](cplx a, cplx b) {
                    return std::abs(a - est) < std::abs(b - est);
                });
        }
        inv_.e1 = e[0];
        inv_.e2 = e[1];
        inv_.e3 = e[2];

        // Half periods of the reduced basis, with their e-values recovered from
        // the mod-2 class of the unimodular transform. Nonzero classes (1,0),
        // (0,1), (1,1) correspond to e1, e2, e3 of the given basis.
        auto cls = [](long a, long b) {
            const int pa = static_cast<int>(((a % 2) + 2) % 2), pb = static_cast<int>(((b % 2) + 2) % 2);
            if (pa == 1 && pb == 0) return 0;
            if (pa == 0 && pb == 1) return 1;
            return 2;  // (1,1); (0,0) impossible for rows of a unimodular matrix
        };
        const std::array<cplx, 3> rhalves{rb_.r1 / 2.0, rb_.r2 / 2.0, (rb_.r1 + rb_.r2) / 2.0};
        const std::array<int, 3> ridx{cls(rb_.a, rb_.b), cls(rb_.c, rb_.d), cls(rb_.a + rb_.c, rb_.b + rb_.d)};
        for (int i = 0; i < 3; ++i) {
            const cplx ei = e[static_cast<size_t>(ridx[static_cast<size_t>(i)])];
            const cplx ej = e[static_cast<size_t>((ridx[static_cast<size_t>(i)] + 1) % 3)];
            const cplx ek = e[static_cast<size_t>((ridx[static_cast<size_t>(i)] + 2) % 3)];
            shifts_[static_cast<size_t>(i)] = {rhalves[static_cast<size_t>(i)], ei, (ei - ej) * (ei - ek)};
        }
    }

    const Lattice& lattice() const { return lat_; }
    const Lattice& reduced_lattice() const { return reduced_; }
    const LatticeInvariants& invariants() const { return inv_; }
    const std::vector<cplx>& laurent_coeffs() const { return coeffs_; }
    double min_period_norm() const { return min_norm_; }
    double pole_radius() const { return opt_.pole_radius_frac * min_norm_; }
    const Options& options() const { return opt_; }

    /// Fast evaluation: reduce, then Laurent series directly or through the
    /// nearest half-period shift; for cells too elongated for either region
    /// (covering radius beyond shifted_frac) fall back to the corrected oracle.
    WpPair eval(cplx z) const {
        const cplx zr = reduce_argument(z, reduced_).first;
        const double r = std::abs(zr);
        if (r < pole_radius()) return WpPair::pole();
        if (r <= opt_.series_frac * min_norm_) return series_at(zr);

        int best = -1;
        cplx zbest{};
        for (int i = 0; i < 3; ++i) {
            const cplx zp = reduce_argument(zr - shifts_[static_cast<size_t>(i)].half, reduced_).first;
            if (best < 0 || std::abs(zp) < std::abs(zbest)) {
                best = i;
                zbest = zp;
            }
        }
        if (std::abs(zbest) <= opt_.shifted_frac * min_norm_) {
            const auto& sh = shifts_[static_cast<size_t>(best)];
            if (std::abs(zbest) < 1e-14 * min_norm_) return {sh.e, cplx{}, false};
            const WpPair inner = series_at(zbest);
            const cplx denom = inner.p - sh.e;
            return {sh.e + sh.prod / denom, -sh.prod * inner.pprime / (denom * denom), false};
        }
        return eval_oracle(zr, reduced_, opt_.fallback_cutoff);
    }

private:
    struct Shift {
        cplx half{};
        cplx e{};
        cplx prod{};  // (e_i - e_j)(e_i - e_k)
    };

    WpPair series_at(cplx z) const {
        const cplx y = z * z;
        cplx acc{}, dacc{};
        for (size_t k = coeffs_.size(); k-- > 0;) {
            // coefficient c_{k+2} multiplies y^{k+1} in wp
            acc = acc * y + coeffs_[k] * static_cast<double>(2 * (k + 2) - 2);
            dacc = dacc * y + coeffs_[k];
        }
        // acc currently holds sum (2k-2) c_k y^{k-2}; dacc holds sum c_k y^{k-2}
        const cplx p = 1.0 / y + dacc * y;
        const cplx pp = -2.0 / (y * z) + acc * y / z;
        return {p, pp, false};
    }

    Lattice lat_;
    Options opt_;
    detail::ReducedBasis rb_;
    Lattice reduced_{cplx{1.0, 0.0}, cplx{0.0, 1.0}};
    LatticeInvariants inv_{};
    std::vector<cplx> coeffs_;
    double min_norm_ = 1.0;
    std::array<Shift, 3> shifts_{};
};

/// Accessor for the half-period values of a built context.
inline std::array<cplx, 3> half_period_values(const WeierstrassContext& ctx) {
    const auto& inv = ctx.invariants();
    return {inv.e1, inv.e2, inv.e3};
}

/// wp(z+w) from the addition formula
///   wp(z+w) = 1/4 ((wp'z - wp'w)/(wp z - wp w))^2 - wp z - wp w.
inline cplx add(cplx z, cplx w, const WeierstrassContext& ctx) {
    const WpPair a = ctx.eval(z), b = ctx.eval(w);
    if (a.at_pole || b.at_pole) throw PoleProximity("addition formula argument at a pole");
    const cplx diff = a.p - b.p;
    if (std::abs(diff) < 1e-9 * (1.0 + std::abs(a.p) + std::abs(b.p)))
        throw DegenerateAddition("wp(z) == wp(w); evaluate wp(z+w) directly instead");
    const cplx quot = (a.pprime - b.pprime) / diff;
    return 0.25 * quot * quot - a.p - b.p;
}

/// Normalized residual of the differential equation wp'^2 = 4 wp^3 - g2 wp - g3.
inline double diffeq_residual(const WpPair& pair, const LatticeInvariants& inv) {
    if (pair.at_pole) throw EvaluationFailure("diffeq_residual at a pole");
    const cplx lhs = pair.pprime * pair.pprime;
    const cplx rhs = 4.0 * pair.p * pair.p * pair.p - inv.g2 * pair.p - inv.g3;
    return std::abs(lhs - rhs) / (1.0 + std::pow(std::abs(pair.p), 3.0));
}

}  // namespace elliptica
