#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "elliptica/core.hpp"
#include "elliptica/lattice.hpp"

namespace elliptica {

enum class Sense : std::uint8_t { Direct, Reversing };

/// Plane isometry z -> a z + b (Direct) or z -> a conj(z) + b (Reversing),
/// |a| = 1. `kind` labels the generator in reports.
struct Isometry {
    Sense sense = Sense::Direct;
    cplx a{1.0, 0.0};
    cplx b{};
    std::string kind = "identity";
};

inline cplx apply_isometry(const Isometry& g, cplx z) {
    return g.sense == Sense::Direct ? g.a * z + g.b : g.a * std::conj(z) + g.b;
}

/// Codomain half of the modified action: sense-reversing elements conjugate
/// the function value as well.
inline cplx act_on_value(const Isometry& g, cplx v) {
    return g.sense == Sense::Direct ? v : std::conj(v);
}

enum class BasisStyle : std::uint8_t { Rectiform, RhombicPair, NotApplicable };

/// Lattice-shape requirement; Rectangular admits Square, Rhombic admits the
/// equal-norm specializations (Square, Hexagonal).
enum class ShapeRequirement : std::uint8_t { Any, Rectangular, Square, Hexagonal, Rhombic };

inline bool class_satisfies(LatticeClass actual, ShapeRequirement req) {
    switch (req) {
        case ShapeRequirement::Any: return true;
        case ShapeRequirement::Rectangular:
            return actual == LatticeClass::Rectangular || actual == LatticeClass::Square;
        case ShapeRequirement::Square: return actual == LatticeClass::Square;
        case ShapeRequirement::Hexagonal: return actual == LatticeClass::Hexagonal;
        case ShapeRequirement::Rhombic:
            return actual == LatticeClass::Rhombic || actual == LatticeClass::Hexagonal ||
                   actual == LatticeClass::Square;
    }
    return false;
}

/// One of the 17 wallpaper groups as a named generator recipe. `generators`
/// expects a lattice already aligned for the group's basis style.
struct GroupSpec {
    std::string name;
    std::vector<std::string> aliases;
    bool sensible = false;
    ShapeRequirement requirement = ShapeRequirement::Any;
    BasisStyle basis_style = BasisStyle::NotApplicable;
    std::function<std::vector<Isometry>(const Lattice&)> generators;
};

namespace detail {

inline std::vector<Isometry> translations(const Lattice& lat) {
    return {Isometry{Sense::Direct, {1.0, 0.0}, lat.omega1(), "translation_omega1"},
            Isometry{Sense::Direct, {1.0, 0.0}, lat.omega2(), "translation_omega2"}};
}

inline Isometry rotation(int order) {
    const double th = 2.0 * kPi / order;
    return Isometry{Sense::Direct, cplx{std::cos(th), std::sin(th)}, {}, "rotation" + std::to_string(order)};
}

inline Isometry mirror_real_axis() {
    return Isometry{Sense::Reversing, {1.0, 0.0}, {}, "mirror"};
}

}  // namespace detail

/// All 17 wallpaper groups. Short crystallographic aliases (pmm, pmg, pgg,
/// cmm, p4g, p6m) are accepted alongside the full names.
inline const std::vector<GroupSpec>& catalog() {
    using detail::mirror_real_axis;
    using detail::rotation;
    using detail::translations;
    static const std::vector<GroupSpec> specs = [] {
        std::vector<GroupSpec> v;
        auto add = [&](std::string name, std::vector<std::string> aliases, bool sensible,
                       ShapeRequirement req, BasisStyle style,
                       std::function<std::vector<Isometry>(const Lattice&)> extra) {
            GroupSpec g;
            g.name = std::move(name);
            g.aliases = std::move(aliases);
            g.sensible = sensible;
            g.requirement = req;
            g.basis_style = style;
            g.generators = [extra = std::move(extra)](const Lattice& lat) {
                auto gens = translations(lat);
                if (extra) {
                    auto more = extra(lat);
                    gens.insert(gens.end(), more.begin(), more.end());
                }
                return gens;
            };
            v.push_back(std::move(g));
        };
        auto none = std::function<std::vector<Isometry>(const Lattice&)>{};

        add("p1", {}, true, ShapeRequirement::Any, BasisStyle::NotApplicable, none);
        add("p2", {}, true, ShapeRequirement::Any, BasisStyle::NotApplicable,
            [](const Lattice&) { return std::vector<Isometry>{rotation(2)}; });
        add("p3", {}, true, ShapeRequirement::Hexagonal, BasisStyle::NotApplicable,
            [](const Lattice&) { return std::vector<Isometry>{rotation(3)}; });
        add("p4", {}, true, ShapeRequirement::Square, BasisStyle::NotApplicable,
            [](const Lattice&) { return std::vector<Isometry>{rotation(4)}; });
        add("p6", {}, true, ShapeRequirement::Hexagonal, BasisStyle::NotApplicable,
            [](const Lattice&) { return std::vector<Isometry>{rotation(6)}; });

        add("pm", {}, false, ShapeRequirement::Rectangular, BasisStyle::Rectiform,
            [](const Lattice&) { return std::vector<Isometry>{mirror_real_axis()}; });
        add("pg", {}, false, ShapeRequirement::Rectangular, BasisStyle::Rectiform,
            [](const Lattice& lat) {
                return std::vector<Isometry>{
                    Isometry{Sense::Reversing, {1.0, 0.0}, lat.omega1() / 2.0, "glide"}};
            });
        add("cm", {}, false, ShapeRequirement::Rhombic, BasisStyle::RhombicPair,
            [](const Lattice&) { return std::vector<Isometry>{mirror_real_axis()}; });
        add("p2mm", {"pmm"}, false, ShapeRequirement::Rectangular, BasisStyle::Rectiform,
            [](const Lattice&) { return std::vector<Isometry>{rotation(2), mirror_real_axis()}; });
        add("p2mg", {"pmg"}, false, ShapeRequirement::Rectangular, BasisStyle::Rectiform,
            [](const Lattice& lat) {
                // reflexion in the quarter-translation line Im z = beta/4
                return std::vector<Isometry>{
                    rotation(2), Isometry{Sense::Reversing, {1.0, 0.0}, lat.omega2() / 2.0, "mirror"}};
            });
        add("p2gg", {"pgg"}, false, ShapeRequirement::Rectangular, BasisStyle::Rectiform,
            [](const Lattice& lat) {
                // glide z -> conj(z + (omega1+omega2)/2)
                return std::vector<Isometry>{
                    rotation(2), Isometry{Sense::Reversing, {1.0, 0.0},
                                          std::conj((lat.omega1() + lat.omega2()) / 2.0), "glide"}};
            });
        add("c2mm", {"cmm"}, false, ShapeRequirement::Rhombic, BasisStyle::RhombicPair,
            [](const Lattice&) { return std::vector<Isometry>{rotation(2), mirror_real_axis()}; });
        add("p4mm", {"p4m"}, false, ShapeRequirement::Square, BasisStyle::Rectiform,
            [](const Lattice&) { return std::vector<Isometry>{rotation(4), mirror_real_axis()}; });
        add("p4mg", {"p4g"}, false, ShapeRequirement::Square, BasisStyle::Rectiform,
            [](const Lattice& lat) {
                return std::vector<Isometry>{
                    rotation(4), Isometry{Sense::Reversing, {1.0, 0.0},
                                          std::conj((lat.omega1() + lat.omega2()) / 2.0), "glide"}};
            });
        add("p31m", {}, false, ShapeRequirement::Hexagonal, BasisStyle::Rectiform,
            [](const Lattice&) { return std::vector<Isometry>{rotation(3), mirror_real_axis()}; });
        add("p3m1", {}, false, ShapeRequirement::Hexagonal, BasisStyle::RhombicPair,
            [](const Lattice&) { return std::vector<Isometry>{rotation(3), mirror_real_axis()}; });
        add("p6mm", {"p6m"}, false, ShapeRequirement::Hexagonal, BasisStyle::Rectiform,
            [](const Lattice&) { return std::vector<Isometry>{rotation(6), mirror_real_axis()}; });
        return v;
    }();
    return specs;
}

/// Lookup by canonical name or alias; throws ConfigError for unknown names.
inline const GroupSpec& find_group(const std::string& name) {
    for (const auto& g : catalog()) {
        if (g.name == name) return g;
        for (const auto& a : g.aliases)
            if (a == name) return g;
    }
    throw ConfigError("unknown wallpaper group: " + name);
}

/// Shape compatibility between a group and a lattice (the basis style is
/// realized by realign_for_group, so shape is the only obstruction).
inline bool lattice_compatible(const GroupSpec& spec, const Lattice& lat) {
    return class_satisfies(classify_lattice(normalize_basis(lat)), spec.requirement);
}

namespace detail {

inline cplx unit_phase(cplx z) { return z / std::abs(z); }

/// Rotate/rebase the lattice for a rectiform basis: omega1 on the positive
/// real axis, omega2 = i beta (or alpha e^{i pi/3} for hexagonal lattices).
inline Lattice align_rectiform(const Lattice& lat, LatticeClass cls) {
    auto rb = reduce_basis(lat);
    if (cls == LatticeClass::Hexagonal) {
        cplx tau = rb.r2 / rb.r1;
        if (tau.real() < 0.0) rb.r2 += rb.r1;  // e^{2 i pi/3} -> e^{i pi/3}
        const double alpha = std::abs(rb.r1);
        return Lattice(cplx{alpha, 0.0}, alpha * cplx{0.5, std::sqrt(3.0) / 2.0});
    }
    // square / rectangular: reduced tau = i t
    const double alpha = std::abs(rb.r1);
    const double beta = std::abs(rb.r2);
    return Lattice(cplx{alpha, 0.0}, cplx{0.0, beta});
}

/// Rotate/rebase for a conjugate-pair basis (omega1, omega2) = (a - b i, a + b i).
/// For hexagonal lattices this picks the short pair (shortest vectors at
/// +-30 degrees), which puts every 3-fold centre on a mirror line.
inline Lattice align_rhombic_pair(const Lattice& lat, LatticeClass cls) {
    auto rb = reduce_basis(lat);
    if (cls == LatticeClass::Hexagonal && (rb.r2 / rb.r1).real() < 0.0)
        rb.r2 += rb.r1;  // force the 60-degree rhombus (short pair)
    cplx u = rb.r1, v = rb.r2;
    const cplx tau = v / u;
    if (std::abs(std::abs(tau) - 1.0) > 1e-9) {
        // reduced form with Re tau = +-1/2: switch to the equal-norm pair
        if (tau.real() > 0)
            u = v - u;
        else
            u = v + u;
        // keep orientation Im(v/u) > 0
        if ((std::conj(u) * v).imag() < 0) std::swap(u, v);
    }
    const cplx phase = std::conj(unit_phase(u + v));
    u *= phase;
    v *= phase;
    const double alpha = (u.real() + v.real()) / 2.0;
    const double beta = (std::abs(u.imag()) + std::abs(v.imag())) / 2.0;
    return Lattice(cplx{alpha, -beta}, cplx{alpha, beta});
}

}  // namespace detail

/// Realigns the lattice (same shape, possibly rotated/rebased) to the group's
/// basis convention. Throws IncompatibleLattice on a shape mismatch. Users may
/// hand in lattices in any orientation; invariant functions are built on the
/// aligned copy.
inline Lattice realign_for_group(const GroupSpec& spec, const Lattice& lat) {
    const LatticeClass cls = classify_lattice(normalize_basis(lat));
    if (!class_satisfies(cls, spec.requirement))
        throw IncompatibleLattice("group " + spec.name + " requires a different lattice shape (got " +
                                  to_string(cls) + ")");
    switch (spec.basis_style) {
        case BasisStyle::NotApplicable: return lat;
        case BasisStyle::Rectiform: return detail::align_rectiform(lat, cls);
        case BasisStyle::RhombicPair: return detail::align_rhombic_pair(lat, cls);
    }
    return lat;
}

}  // namespace elliptica
