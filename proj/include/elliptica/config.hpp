#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "elliptica/builder.hpp"
#include "elliptica/core.hpp"
#include "elliptica/render.hpp"
#include "elliptica/verifier.hpp"

namespace elliptica {

/// JSON schema (complex numbers are two-element arrays [re, im]):
/// {
///   "group": "pg",
///   "lattice": {"omega1": [2,0], "omega2": [0,3]},
///   "R": {"num": [[0,0],[1,0]], "den": [[1,0]]},      // rational functions
///   "S": ..., "T": ...,
///   "Q": rational form or factored form
///        {"C": 1.0, "p": -1, "variant": "minus",
///         "zeros": [{"a": [2,0], "lambda": 1}], "poles": []},
///   "p6_form": "pprime_squared" | "p_cubed",
///   "render": {"viewport": {"lower_left": [-1,-1], "upper_right": [1,1]},
///              "width": 64, "height": 64, "supersample": 1},
///   "verify": {"samples": 500, "tol": 1e-7, "seed": 42},
///   "numerics": {"eisenstein_cutoff": 120, "laurent_count": 24}
/// }
struct JobConfig {
    std::string group;
    std::optional<Lattice> lattice;
    BuildParams params;
    RenderConfig render;
    int verify_samples = 500;
    double verify_tol = 1e-7;
    std::optional<std::uint64_t> verify_seed;
    WeierstrassContext::Options numerics;
};

namespace detail {

using nlohmann::json;

inline cplx parse_cplx(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(what + " must be a two-element array [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline std::vector<cplx> parse_cplx_list(const json& j, const std::string& what) {
    if (!j.is_array()) throw ConfigError(what + " must be an array of [re, im] pairs");
    std::vector<cplx> out;
    for (const auto& e : j) out.push_back(parse_cplx(e, what + " entry"));
    return out;
}

inline RationalFunction parse_rational(const json& j, const std::string& what) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw ConfigError(what + " must be an object with \"num\" and \"den\"");
    try {
        return RationalFunction(parse_cplx_list(j["num"], what + ".num"),
                                parse_cplx_list(j["den"], what + ".den"));
    } catch (const ConstraintViolation& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

inline FactoredSymmetricRational parse_factored(const json& j, const std::string& what) {
    FactoredSymmetricRational q;
    if (!j.contains("C") || !j.contains("p") || !j.contains("variant"))
        throw ConfigError(what + " factored form needs \"C\", \"p\", \"variant\"");
    q.C = j["C"].get<double>();
    q.p = j["p"].get<int>();
    const std::string v = j["variant"].get<std::string>();
    if (v == "minus")
        q.variant = Variant::MinusOne;
    else if (v == "plus")
        q.variant = Variant::PlusOne;
    else
        throw ConfigError(what + ".variant must be \"minus\" or \"plus\"");
    for (const auto& z : j.value("zeros", json::array()))
        q.zeros.emplace_back(parse_cplx(z.at("a"), what + ".zeros.a"), z.at("lambda").get<int>());
    for (const auto& p : j.value("poles", json::array()))
        q.poles.emplace_back(parse_cplx(p.at("b"), what + ".poles.b"), p.at("mu").get<int>());
    return q;
}

}  // namespace detail

inline JobConfig parse_config(const nlohmann::json& j) {
    using detail::parse_cplx;
    JobConfig cfg;
    if (!j.contains("group") || !j["group"].is_string())
        throw ConfigError("config needs a \"group\" name");
    cfg.group = j["group"].get<std::string>();
    find_group(cfg.group);  // validate early
    if (j.contains("lattice")) {
        const auto& l = j["lattice"];
        if (!l.contains("omega1") || !l.contains("omega2"))
            throw ConfigError("lattice needs \"omega1\" and \"omega2\"");
        try {
            cfg.lattice = Lattice(parse_cplx(l["omega1"], "omega1"), parse_cplx(l["omega2"], "omega2"));
        } catch (const DegenerateLattice& e) {
            throw ConfigError(std::string("lattice: ") + e.what());
        }
    }
    if (j.contains("R")) cfg.params.R = detail::parse_rational(j["R"], "R");
    if (j.contains("S")) cfg.params.S = detail::parse_rational(j["S"], "S");
    if (j.contains("T")) cfg.params.T = detail::parse_rational(j["T"], "T");
    if (j.contains("Q")) {
        if (j["Q"].contains("num"))
            cfg.params.Q = detail::parse_rational(j["Q"], "Q");
        else
            cfg.params.Q_factored = detail::parse_factored(j["Q"], "Q");
    }
    if (j.contains("p6_form")) {
        const std::string f = j["p6_form"].get<std::string>();
        if (f == "p_cubed")
            cfg.params.p6_form = Family::UCubed;
        else if (f == "pprime_squared")
            cfg.params.p6_form = Family::RPrimeSq;
        else
            throw ConfigError("p6_form must be \"pprime_squared\" or \"p_cubed\"");
    }
    if (j.contains("render")) {
        const auto& r = j["render"];
        if (r.contains("viewport")) {
            cfg.render.lower_left = parse_cplx(r["viewport"].at("lower_left"), "viewport.lower_left");
            cfg.render.upper_right = parse_cplx(r["viewport"].at("upper_right"), "viewport.upper_right");
        }
        cfg.render.width = r.value("width", cfg.render.width);
        cfg.render.height = r.value("height", cfg.render.height);
        cfg.render.supersample = r.value("supersample", cfg.render.supersample);
    }
    if (j.contains("verify")) {
        const auto& v = j["verify"];
        cfg.verify_samples = v.value("samples", cfg.verify_samples);
        cfg.verify_tol = v.value("tol", cfg.verify_tol);
        if (v.contains("seed")) cfg.verify_seed = v["seed"].get<std::uint64_t>();
    }
    if (j.contains("numerics")) {
        const auto& n = j["numerics"];
        cfg.numerics.eisenstein_cutoff = n.value("eisenstein_cutoff", cfg.numerics.eisenstein_cutoff);
        cfg.numerics.laurent_count = n.value("laurent_count", cfg.numerics.laurent_count);
        cfg.numerics.pole_radius_frac = n.value("pole_radius_frac", cfg.numerics.pole_radius_frac);
        cfg.numerics.series_frac = n.value("series_frac", cfg.numerics.series_frac);
    }
    return cfg;
}

inline JobConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

/// Builds the invariant function a config describes.
inline WallpaperFunction build_from_config(const JobConfig& cfg) {
    if (!cfg.lattice) throw ConfigError("config needs a \"lattice\"");
    return make_wallpaper(cfg.group, *cfg.lattice, cfg.params, cfg.numerics);
}

inline nlohmann::json report_to_json(const VerifyReport& rep) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : rep.generators) {
        gens.push_back({{"kind", g.kind},
                        {"max_dev", g.max_dev},
                        {"worst_point", {g.worst_point.real(), g.worst_point.imag()}}});
    }
    return {{"group", rep.group}, {"pass", rep.pass},     {"generators", gens},
            {"n", rep.samples_used}, {"tol", rep.tol},    {"seed", rep.seed},
            {"max_dev", rep.max_dev}};
}

}  // namespace elliptica
