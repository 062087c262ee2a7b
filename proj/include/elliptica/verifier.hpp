#pragma once

#include <random>
#include <string>
#include <vector>

#include "elliptica/builder.hpp"
#include "elliptica/core.hpp"
#include "elliptica/groups.hpp"
#include "elliptica/weierstrass.hpp"

namespace elliptica {

/// Sampling-based invariance report. `pass` iff every generator's maximum
/// relative deviation is within tolerance.
struct VerifyReport {
    struct PerGenerator {
        std::string kind;
        double max_dev = 0.0;
        cplx worst_point{};
    };
    std::string group;
    std::vector<PerGenerator> generators;
    int samples_used = 0;
    double tol = 0.0;
    std::uint64_t seed = 0;
    bool pass = false;
    cplx worst_point{};  // of the worst generator
    double max_dev = 0.0;
};

inline constexpr double kVerifierValueCap = 1e4;

/// n deterministic pseudo-random points in the fundamental cell, rejecting
/// points within pole_radius of the lattice or the half-lattice and points
/// where |wp| exceeds the value cap.
inline std::vector<cplx> sample_points(const WeierstrassContext& ctx, int n, std::uint64_t seed) {
    if (n < 1) throw ConstraintViolation("sample count must be >= 1");
    std::mt19937_64 rng(seed);
    const cplx w1 = ctx.lattice().omega1(), w2 = ctx.lattice().omega2();
    const double guard = ctx.pole_radius();
    std::vector<cplx> pts;
    pts.reserve(static_cast<size_t>(n));
    long attempts = 0;
    const long max_attempts = 100L * n;
    while (static_cast<int>(pts.size()) < n) {
        if (++attempts > max_attempts)
            throw SamplingExhausted("rejection rate above 99% while sampling the cell");
        const cplx z = detail::uniform01(rng) * w1 + detail::uniform01(rng) * w2;
        // distance to the half-lattice = |reduce(2z)| / 2; this also covers
        // the lattice itself
        const cplx two_red = reduce_argument(2.0 * z, ctx.reduced_lattice()).first;
        if (0.5 * std::abs(two_red) < guard) continue;
        const WpPair wp = ctx.eval(z);
        if (wp.at_pole || std::abs(wp.p) > kVerifierValueCap) continue;
        pts.push_back(z);
    }
    return pts;
}

/// Checks the conjugation-twisted invariance per generator: for direct g,
/// |f(g.z) - f(z)|; for sense-reversing m, |conj(f(m.z)) - f(z)|; both
/// relative to 1 + |f(z)|.
inline VerifyReport verify_invariance(const WallpaperFunction& f, int n = 500, double tol = 1e-7,
                                      std::uint64_t seed = 20240901ULL) {
    VerifyReport rep;
    rep.group = f.group().name;
    rep.tol = tol;
    rep.seed = seed;
    const auto pts = sample_points(f.context(), n, seed);
    rep.samples_used = static_cast<int>(pts.size());
    rep.pass = true;
    for (const Isometry& g : f.generators()) {
        VerifyReport::PerGenerator pg;
        pg.kind = g.kind;
        for (const cplx z : pts) {
            const Value fz = f.evaluate(z);
            if (fz.pole) continue;
            const Value fgz = f.evaluate(apply_isometry(g, z));
            if (fgz.pole) continue;
            const double dev = std::abs(act_on_value(g, fgz.v) - fz.v) / (1.0 + std::abs(fz.v));
            if (dev > pg.max_dev) {
                pg.max_dev = dev;
                pg.worst_point = z;
            }
        }
        if (pg.max_dev > rep.max_dev) {
            rep.max_dev = pg.max_dev;
            rep.worst_point = pg.worst_point;
        }
        if (pg.max_dev > tol) rep.pass = false;
        rep.generators.push_back(std::move(pg));
    }
    return rep;
}

/// A deliberately broken function for a group, with the generator it must
/// fail. Each control passes the translations (it is still elliptic).
struct NegativeControl {
    WallpaperFunction fn;
    std::string expected_fail_generator;
};

/// Systematic falsification inputs: for each group with a constraint beyond
/// ellipticity, a function from the relaxed family violating exactly that
/// constraint. p1 imposes nothing extra and yields no control.
inline std::vector<NegativeControl> negative_controls(const GroupSpec& spec,
                                                      std::shared_ptr<const WeierstrassContext> ctx) {
    std::vector<NegativeControl> out;
    const std::string& g = spec.name;
    using Recipe = WallpaperFunction::Recipe;
    auto push = [&](Recipe r, const std::string& fail) {
        out.push_back({make_unchecked(spec, ctx, std::move(r)), fail});
    };
    const RationalFunction w_plus_i({cplx{0.0, 1.0}, cplx{1.0, 0.0}}, {cplx{1.0, 0.0}});
    const RationalFunction w_plus_1({cplx{1.0, 0.0}, cplx{1.0, 0.0}}, {cplx{1.0, 0.0}});

    if (g == "p2") {
        Recipe r;
        r.family = Family::RPlusSp;
        r.R = RationalFunction::identity();
        r.S = RationalFunction::constant({1.0, 0.0});  // odd part wp'
        push(std::move(r), "rotation2");
    } else if (g == "p3" || g == "p4") {
        Recipe r;
        r.family = Family::R;  // wp itself is not rotation-invariant
        r.R = RationalFunction::identity();
        push(std::move(r), g == "p3" ? "rotation3" : "rotation4");
    } else if (g == "p6") {
        Recipe r;
        r.family = Family::RPrime;  // wp' flips sign under the 6-fold rotation
        r.R = RationalFunction::identity();
        push(std::move(r), "rotation6");
    } else if (g == "pm" || g == "cm") {
        Recipe r;
        r.family = Family::RPlusSp;
        r.R = w_plus_i;  // imaginary coefficient: not real on the mirror
        push(std::move(r), "mirror");
    } else if (g == "p2mm" || g == "c2mm") {
        Recipe r;
        r.family = Family::R;
        r.R = w_plus_i;
        push(std::move(r), "mirror");
    } else if (g == "p4mm") {
        Recipe r;
        r.family = Family::RSquared;
        r.R = w_plus_i;
        push(std::move(r), "mirror");
    } else if (g == "p31m" || g == "p3m1") {
        Recipe r;
        r.family = Family::RPrime;
        r.R = w_plus_i;
        push(std::move(r), "mirror");
    } else if (g == "p6mm") {
        Recipe r;
        r.family = Family::RPrimeSq;
        r.R = w_plus_i;
        push(std::move(r), "mirror");
    } else if (g == "pg" || g == "p2mg" || g == "p2gg" || g == "p4mg") {
        const auto& inv = ctx->invariants();
        Recipe r;
        r.family = Family::Glide;
        if (g == "pg") {
            r.a = inv.e1;
            r.c = detail::principal_glide_scale(inv.e1, inv.e2, inv.e3);
            r.variant = Variant::MinusOne;
        } else if (g == "p2mg") {
            r.a = inv.e2;
            r.c = detail::principal_glide_scale(inv.e2, inv.e1, inv.e3);
            r.variant = Variant::MinusOne;
        } else {
            r.a = inv.e3;
            r.c = detail::principal_glide_scale_plus(inv);
            r.variant = Variant::PlusOne;
        }
        if (g == "p4mg") {
            // even but violating the exponent balance: passes the rotation,
            // fails the glide
            r.R = RationalFunction({cplx{1.0, 0.0}, cplx{}, cplx{1.0, 0.0}}, {cplx{1.0, 0.0}});
        } else {
            r.R = w_plus_1;  // violates the factored-family balance
        }
        push(std::move(r), g == "p2mg" ? "mirror" : "glide");
    }
    return out;
}

}  // namespace elliptica
