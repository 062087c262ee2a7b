#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elliptica/core.hpp"
#include "elliptica/groups.hpp"
#include "elliptica/rational.hpp"
#include "elliptica/weierstrass.hpp"

namespace elliptica {

/// Structural form of an invariant function.
enum class Family : std::uint8_t {
    RPlusSp,   // R(wp) + S(wp) wp'          (p1, pm, cm)
    R,         // R(wp)                      (p2, p2mm, c2mm)
    RSquared,  // R(wp^2)                    (p4, p4mm)
    RPrime,    // R(wp')                     (p3, p31m, p3m1)
    RPrimeSq,  // R(wp'^2)                   (p6, p6mm)
    UCubed,    // U(wp^3)                    (p6 alternative)
    Glide,     // Q((wp - a)/c) [+ T(.) wp'] (pg, p2mg, p2gg, p4mg)
};

/// Parameters handed to the builders. R/S serve the sensible and axial
/// families; Q (plus optional T for pg) serves the glide families, either in
/// coefficient form or as the factored symmetric family.
struct BuildParams {
    std::optional<RationalFunction> R;
    std::optional<RationalFunction> S;
    std::optional<RationalFunction> Q;
    std::optional<FactoredSymmetricRational> Q_factored;
    std::optional<RationalFunction> T;
    Family p6_form = Family::RPrimeSq;  // RPrimeSq or UCubed
};

/// Evaluable invariant function carrying its structural recipe. Immutable;
/// evaluation is pure and thread-safe.
class WallpaperFunction {
public:
    struct Recipe {
        Family family = Family::R;
        RationalFunction R = RationalFunction::identity();
        RationalFunction S = RationalFunction::zero();
        cplx a{};          // glide families: w = (wp - a)/c
        cplx c{1.0, 0.0};  // principal square root, positive on rectangular lattices
        Variant variant = Variant::MinusOne;
    };

    WallpaperFunction(const GroupSpec& spec, std::shared_ptr<const WeierstrassContext> ctx,
                      Recipe recipe)
        : spec_(&spec), ctx_(std::move(ctx)), recipe_(std::move(recipe)),
          generators_(spec.generators(ctx_->lattice())),
          lattice_limit_(structural_lattice_limit(recipe_)) {}

    const GroupSpec& group() const { return *spec_; }
    const WeierstrassContext& context() const { return *ctx_; }
    std::shared_ptr<const WeierstrassContext> context_ptr() const { return ctx_; }
    const Recipe& recipe() const { return recipe_; }
    const std::vector<Isometry>& generators() const { return generators_; }

    /// f(z); the pole marker is a legitimate value (poles of the function).
    Value evaluate(cplx z) const {
        const WpPair wp = ctx_->eval(z);
        if (wp.at_pole) return lattice_limit_;
        switch (recipe_.family) {
            case Family::RPlusSp: {
                const Value r = recipe_.R.eval(wp.p);
                if (recipe_.S.is_zero()) return r;
                const Value s = recipe_.S.eval(wp.p);
                if (r.pole || s.pole) return Value::at_pole();
                return Value::finite(r.v + s.v * wp.pprime);
            }
            case Family::R: return recipe_.R.eval(wp.p);
            case Family::RSquared: return recipe_.R.eval(wp.p * wp.p);
            case Family::RPrime: return recipe_.R.eval(wp.pprime);
            case Family::RPrimeSq: return recipe_.R.eval(wp.pprime * wp.pprime);
            case Family::UCubed: return recipe_.R.eval(wp.p * wp.p * wp.p);
            case Family::Glide: {
                const cplx w = (wp.p - recipe_.a) / recipe_.c;
                const Value q = recipe_.R.eval(w);
                if (recipe_.S.is_zero()) return q;
                const Value t = recipe_.S.eval(w);
                if (q.pole || t.pole) return Value::at_pole();
                return Value::finite(q.v + t.v * wp.pprime);
            }
        }
        return Value::at_pole();
    }

private:
    /// Limit of the family at lattice points (wp -> infinity). The weighted
    /// part S(wp) wp' has odd order in z there, so it contributes either a pole
    /// or zero, never a finite nonzero value; the two parts cannot cancel.
    static Value structural_lattice_limit(const Recipe& r) {
        Value base{};
        switch (r.family) {
            case Family::RPlusSp:
            case Family::R:
            case Family::RSquared:
            case Family::RPrime:
            case Family::RPrimeSq:
            case Family::UCubed:
            case Family::Glide: base = r.R.limit_at_infinity(); break;
        }
        if (base.pole) return base;
        if ((r.family == Family::RPlusSp || r.family == Family::Glide) && !r.S.is_zero()) {
            // S ~ w^{dS}: order of S(wp) wp' at z=0 is -(2 dS + 3)
            if (r.S.degree_difference() >= -1) return Value::at_pole();
        }
        return base;
    }

    const GroupSpec* spec_;
    std::shared_ptr<const WeierstrassContext> ctx_;
    Recipe recipe_;
    std::vector<Isometry> generators_;
    Value lattice_limit_;
};

namespace detail {

inline void require_compatible(const GroupSpec& spec, const WeierstrassContext& ctx) {
    if (!lattice_compatible(spec, ctx.lattice()))
        throw IncompatibleLattice("lattice shape incompatible with group " + spec.name);
}

inline const RationalFunction& require_R(const BuildParams& p, const std::string& group) {
    if (!p.R) throw MissingParameter("group " + group + " needs rational function R");
    return *p.R;
}

inline cplx principal_glide_scale(cplx ea, cplx eb, cplx ec) {
    // c = sqrt((ea - eb)(ea - ec)); positive real on rectangular lattices
    return std::sqrt((ea - eb) * (ea - ec));
}

inline cplx principal_glide_scale_plus(const LatticeInvariants& inv) {
    // the plus-variant transform is w -> a - c^2/(w - a) with a = e3 and
    // c = sqrt((e1 - e3)(e3 - e2)), again positive real on rectangular lattices
    return std::sqrt((inv.e1 - inv.e3) * (inv.e3 - inv.e2));
}

}  // namespace detail

/// Families of the sensible groups:
///   p1: R(wp) + S(wp) wp'   p2: R(wp)   p4: R(wp^2)   p3: R(wp')
///   p6: R(wp'^2) (or U(wp^3) via p6_form).
inline WallpaperFunction build_sensible(const GroupSpec& spec,
                                        std::shared_ptr<const WeierstrassContext> ctx,
                                        const BuildParams& params) {
    if (!spec.sensible) throw ConfigError("build_sensible called for group " + spec.name);
    detail::require_compatible(spec, *ctx);
    WallpaperFunction::Recipe r;
    r.R = detail::require_R(params, spec.name);
    if (spec.name == "p1") {
        r.family = Family::RPlusSp;
        if (params.S) r.S = *params.S;
    } else if (spec.name == "p2") {
        r.family = Family::R;
    } else if (spec.name == "p3") {
        r.family = Family::RPrime;
    } else if (spec.name == "p4") {
        r.family = Family::RSquared;
    } else {  // p6
        r.family = (params.p6_form == Family::UCubed) ? Family::UCubed : Family::RPrimeSq;
    }
    if (params.S && spec.name != "p1")
        throw ConstraintViolation("group " + spec.name + " admits no wp'-weighted part");
    return WallpaperFunction(spec, std::move(ctx), std::move(r));
}

/// Axial-reflexion groups: the family of the underlying sensible subgroup with
/// real-coefficient rational functions (real on the mirror lines).
inline WallpaperFunction build_axial(const GroupSpec& spec,
                                     std::shared_ptr<const WeierstrassContext> ctx,
                                     const BuildParams& params) {
    detail::require_compatible(spec, *ctx);
    WallpaperFunction::Recipe r;
    r.R = detail::require_R(params, spec.name);
    const std::string& g = spec.name;
    if (g == "pm" || g == "cm") {
        r.family = Family::RPlusSp;
        if (params.S) r.S = *params.S;
    } else if (g == "p2mm" || g == "c2mm") {
        r.family = Family::R;
    } else if (g == "p4mm") {
        r.family = Family::RSquared;
    } else if (g == "p31m" || g == "p3m1") {
        r.family = Family::RPrime;
    } else if (g == "p6mm") {
        r.family = (params.p6_form == Family::UCubed) ? Family::UCubed : Family::RPrimeSq;
    } else {
        throw ConfigError("build_axial called for group " + g);
    }
    if (params.S && !(g == "pm" || g == "cm"))
        throw ConstraintViolation("group " + g + " admits no wp'-weighted part");
    if (!is_real_on_reals(r.R)) throw NonRealCoefficients("R must be real for real w for " + g);
    if (!r.S.is_zero() && !is_real_on_reals(r.S))
        throw NonRealCoefficients("S must be real for real w for " + g);
    return WallpaperFunction(spec, std::move(ctx), std::move(r));
}

/// Glide families Q((wp - a)/c) (+ T((wp - a)/c) wp' for pg):
///   pg:   a = e1, c = sqrt((e1-e2)(e1-e3)), variant MinusOne
///   p2mg: a = e2, c = sqrt((e2-e1)(e2-e3)), variant MinusOne, T = 0
///   p2gg: a = e3, c = sqrt((e1-e3)(e3-e2)), variant PlusOne, T = 0
///   p4mg: as p2gg on a square lattice with Q even.
inline WallpaperFunction build_glide(const GroupSpec& spec,
                                     std::shared_ptr<const WeierstrassContext> ctx,
                                     const BuildParams& params) {
    const std::string& g = spec.name;
    if (!(g == "pg" || g == "p2mg" || g == "p2gg" || g == "p4mg"))
        throw ConfigError("build_glide called for group " + g);
    detail::require_compatible(spec, *ctx);

    RationalFunction Q = RationalFunction::zero();
    if (params.Q_factored)
        Q = expand_factored(*params.Q_factored);
    else if (params.Q)
        Q = *params.Q;
    else
        throw MissingParameter("group " + g + " needs Q (rational or factored)");

    WallpaperFunction::Recipe r;
    r.family = Family::Glide;
    r.R = Q;
    r.variant = (g == "p2gg" || g == "p4mg") ? Variant::PlusOne : Variant::MinusOne;

    const auto& inv = ctx->invariants();
    if (g == "pg") {
        r.a = inv.e1;
        r.c = detail::principal_glide_scale(inv.e1, inv.e2, inv.e3);
        if (params.T) r.S = *params.T;
    } else if (g == "p2mg") {
        r.a = inv.e2;
        r.c = detail::principal_glide_scale(inv.e2, inv.e1, inv.e3);
    } else {  // p2gg, p4mg
        r.a = inv.e3;
        r.c = detail::principal_glide_scale_plus(inv);
    }
    if (params.T && g != "pg")
        throw ConstraintViolation("group " + g + " admits no wp'-weighted part");

    if (!check_inversion_symmetry(Q, r.variant))
        throw AsymmetricQ("Q fails the inversion symmetry required by " + g);
    if (!r.S.is_zero() && !weighted_T_check(r.S, r.variant))
        throw AsymmetricQ("T fails the weighted inversion symmetry required by pg");
    if (g == "p4mg" && !even_decompose(Q))
        throw OddQForP4mg("p4mg requires an even Q (a function of w^2)");
    return WallpaperFunction(spec, std::move(ctx), std::move(r));
}

/// Validation-free construction; for negative controls and diagnostics only.
inline WallpaperFunction make_unchecked(const GroupSpec& spec,
                                        std::shared_ptr<const WeierstrassContext> ctx,
                                        WallpaperFunction::Recipe recipe) {
    return WallpaperFunction(spec, std::move(ctx), std::move(recipe));
}

/// One-stop construction: realigns the lattice for the group, builds the
/// evaluation context, and dispatches to the family builder.
inline WallpaperFunction make_wallpaper(const std::string& group_name, const Lattice& lattice,
                                        const BuildParams& params,
                                        const WeierstrassContext::Options& opt = {}) {
    const GroupSpec& spec = find_group(group_name);
    const Lattice aligned = realign_for_group(spec, lattice);
    auto ctx = std::make_shared<const WeierstrassContext>(aligned, opt);
    if (spec.sensible) return build_sensible(spec, std::move(ctx), params);
    if (spec.name == "pg" || spec.name == "p2mg" || spec.name == "p2gg" || spec.name == "p4mg")
        return build_glide(spec, std::move(ctx), params);
    return build_axial(spec, std::move(ctx), params);
}

}  // namespace elliptica
