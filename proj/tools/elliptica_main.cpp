// Command-line front end: lattice invariants, point evaluation, invariance
// verification, and domain-colored wallpaper rendering.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "elliptica/elliptica.hpp"

namespace {

using namespace elliptica;
using nlohmann::json;

cplx parse_cplx_arg(const std::string& s, const std::string& what) {
    std::istringstream is(s);
    double re = 0, im = 0;
    char comma = 0;
    if (!(is >> re >> comma >> im) || comma != ',')
        throw ConfigError(what + " must be \"re,im\" (got \"" + s + "\")");
    return {re, im};
}

Lattice parse_lattice_arg(const std::string& s) {
    const auto semi = s.find(';');
    if (semi == std::string::npos)
        throw ConfigError("lattice must be \"re,im;re,im\" (got \"" + s + "\")");
    return Lattice(parse_cplx_arg(s.substr(0, semi), "omega1"),
                   parse_cplx_arg(s.substr(semi + 1), "omega2"));
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::uint64_t default_seed() {
    if (const char* env = std::getenv("ELLIPTICA_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw ConfigError("ELLIPTICA_SEED must be an unsigned integer");
        }
    }
    return 20240901ULL;
}

int run_invariants(const std::string& lattice_arg, int cutoff) {
    const Lattice lat = parse_lattice_arg(lattice_arg);
    const WeierstrassContext ctx(lat, [&] {
        WeierstrassContext::Options o;
        o.eisenstein_cutoff = cutoff;
        return o;
    }());
    const auto& inv = ctx.invariants();
    const json out = {{"g2", cplx_json(inv.g2)},
                      {"g3", cplx_json(inv.g3)},
                      {"e1", cplx_json(inv.e1)},
                      {"e2", cplx_json(inv.e2)},
                      {"e3", cplx_json(inv.e3)},
                      {"class", to_string(classify_lattice(normalize_basis(lat)))}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_eval(const std::string& lattice_arg, const std::string& z_arg) {
    const Lattice lat = parse_lattice_arg(lattice_arg);
    const WeierstrassContext ctx(lat);
    const WpPair wp = ctx.eval(parse_cplx_arg(z_arg, "z"));
    json out;
    if (wp.at_pole) {
        out = {{"at_pole", true}};
    } else {
        out = {{"p", cplx_json(wp.p)}, {"pprime", cplx_json(wp.pprime)}, {"at_pole", false}};
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_verify(const std::string& config_path, int samples, double tol, std::uint64_t seed,
               bool have_samples, bool have_tol, bool have_seed) {
    const JobConfig cfg = load_config(config_path);
    const WallpaperFunction f = build_from_config(cfg);
    const int n = have_samples ? samples : cfg.verify_samples;
    const double t = have_tol ? tol : cfg.verify_tol;
    const std::uint64_t s = have_seed ? seed : cfg.verify_seed.value_or(default_seed());
    const VerifyReport rep = verify_invariance(f, n, t, s);
    std::cout << report_to_json(rep).dump(2) << '\n';
    return rep.pass ? 0 : 1;
}

struct RenderOverrides {
    bool width = false, height = false, supersample = false;
};

int run_render(const std::string& config_path, const std::string& out_path, int width, int height,
               const std::string& viewport, int supersample, const RenderOverrides& given) {
    JobConfig cfg = load_config(config_path);
    if (given.width) cfg.render.width = width;
    if (given.height) cfg.render.height = height;
    if (given.supersample) cfg.render.supersample = supersample;
    if (!viewport.empty()) {
        const auto semi = viewport.find(';');
        if (semi == std::string::npos)
            throw ConfigError("viewport must be \"re,im;re,im\" (lower-left;upper-right)");
        cfg.render.lower_left = parse_cplx_arg(viewport.substr(0, semi), "viewport lower-left");
        cfg.render.upper_right = parse_cplx_arg(viewport.substr(semi + 1), "viewport upper-right");
    }
    const WallpaperFunction f = build_from_config(cfg);
    const Image img = render(cfg.render, f);
    write_ppm(img, out_path);
    return 0;
}

int run_families(const std::string& name) {
    const GroupSpec& spec = find_group(name);
    const char* lattice_text = "";
    switch (spec.requirement) {
        case ShapeRequirement::Any: lattice_text = "any lattice"; break;
        case ShapeRequirement::Rectangular: lattice_text = "rectangular lattice (omega1 = a, omega2 = b i)"; break;
        case ShapeRequirement::Square: lattice_text = "square lattice (omega1 = a, omega2 = a i)"; break;
        case ShapeRequirement::Hexagonal: lattice_text = "hexagonal lattice (omega2/omega1 = e^{i pi/3})"; break;
        case ShapeRequirement::Rhombic: lattice_text = "rhombic lattice (basis a -/+ b i)"; break;
    }
    std::cout << spec.name;
    if (!spec.aliases.empty()) {
        std::cout << " (alias";
        for (const auto& a : spec.aliases) std::cout << ' ' << a;
        std::cout << ')';
    }
    std::cout << "\n  lattice: " << lattice_text << '\n';
    const std::string& g = spec.name;
    if (g == "p1")
        std::cout << "  family: f = R(p) + S(p) p'   with R, S rational\n";
    else if (g == "p2")
        std::cout << "  family: f = R(p)             with R rational\n";
    else if (g == "p3")
        std::cout << "  family: f = R(p')            with R rational\n";
    else if (g == "p4")
        std::cout << "  family: f = R(p^2)           with R rational\n";
    else if (g == "p6")
        std::cout << "  family: f = R(p'^2) or U(p^3) with R, U rational\n";
    else if (g == "pm" || g == "cm")
        std::cout << "  family: f = R(p) + S(p) p'   with R, S real for real w\n";
    else if (g == "p2mm" || g == "c2mm")
        std::cout << "  family: f = R(p)             with R real for real w\n";
    else if (g == "p4mm")
        std::cout << "  family: f = R(p^2)           with R real for real w\n";
    else if (g == "p31m" || g == "p3m1")
        std::cout << "  family: f = R(p')            with R real for real w\n";
    else if (g == "p6mm")
        std::cout << "  family: f = R(p'^2) or U(p^3) with R, U real for real w\n";
    else if (g == "pg") {
        std::cout << "  family: f = Q(w) + T(w) p',  w = (p - e1)/c, c = sqrt((e1-e2)(e1-e3))\n"
                  << "  Q: real C times w^p prod (w-a)(conj(a)w-1) factors, exponent-balanced\n"
                  << "     (pointwise: Q(w) = conj(Q(1/conj w)))\n"
                  << "  T: t with t(w) = -(1/w^2) conj(t(1/conj w)), i.e. i*(such Q)/w\n";
    } else if (g == "p2mg") {
        std::cout << "  family: f = Q(w),  w = (p - e2)/c, c = sqrt((e2-e1)(e2-e3))\n"
                  << "  Q as for pg (pointwise Q(w) = conj(Q(1/conj w)))\n";
    } else if (g == "p2gg") {
        std::cout << "  family: f = Q(w),  w = (p - e3)/c, c = sqrt((e1-e3)(e3-e2))\n"
                  << "  Q: real C times w^p prod (w-a)(conj(a)w+1) factors, exponent-balanced\n"
                  << "     (pointwise: Q(w) = conj(Q(-1/conj w)))\n";
    } else if (g == "p4mg") {
        std::cout << "  family: f = Q(w) = P(w^2),  w = (p - e3)/c as for p2gg, Q even\n";
    }
    std::cout << "  generators: two lattice translations";
    const Lattice sample = [&] {
        switch (spec.requirement) {
            case ShapeRequirement::Square: return Lattice({1.0, 0.0}, {0.0, 1.0});
            case ShapeRequirement::Hexagonal: return Lattice({1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0});
            case ShapeRequirement::Rhombic: return Lattice({1.5, -1.0}, {1.5, 1.0});
            default: return Lattice({2.0, 0.0}, {0.0, 3.0});
        }
    }();
    for (const auto& gen : spec.generators(realign_for_group(spec, sample)))
        if (gen.kind.rfind("translation", 0) != 0) std::cout << ", " << gen.kind;
    std::cout << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weierstrass elliptic functions, wallpaper-group invariant families, "
                 "sampling verification and domain-colored rendering"};
    app.require_subcommand(1);

    std::string lattice_arg, z_arg, config_path, out_path, viewport, group_name;
    int cutoff = 120, samples = 0, width = 0, height = 0, supersample = 0;
    double tol = 0.0;
    std::uint64_t seed = 0;

    auto* inv = app.add_subcommand("invariants", "print g2, g3, e1..e3 and the lattice class as JSON");
    inv->add_option("--lattice", lattice_arg, "periods as \"re,im;re,im\"")->required();
    inv->add_option("--cutoff", cutoff, "Eisenstein shell cutoff");

    auto* ev = app.add_subcommand("eval", "evaluate (p, p') at a point");
    ev->add_option("--lattice", lattice_arg, "periods as \"re,im;re,im\"")->required();
    ev->add_option("--z", z_arg, "argument as \"re,im\"")->required();

    auto* ver = app.add_subcommand("verify", "verify invariance of a configured function");
    ver->add_option("--config", config_path, "JSON config file")->required();
    auto* opt_samples = ver->add_option("--samples", samples, "sample count");
    auto* opt_tol = ver->add_option("--tol", tol, "pass tolerance");
    auto* opt_seed = ver->add_option("--seed", seed, "sampling seed");

    auto* ren = app.add_subcommand("render", "render a domain-colored wallpaper to PPM (P6)");
    ren->add_option("--config", config_path, "JSON config file")->required();
    ren->add_option("--out", out_path, "output .ppm path")->required();
    auto* opt_width = ren->add_option("--width", width, "override width");
    auto* opt_height = ren->add_option("--height", height, "override height");
    ren->add_option("--viewport", viewport, "override viewport \"re,im;re,im\"");
    auto* opt_ss = ren->add_option("--supersample", supersample, "override supersampling factor");

    auto* fam = app.add_subcommand("families", "describe the invariant family of a group");
    fam->add_option("--group", group_name, "wallpaper group name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (inv->parsed()) return run_invariants(lattice_arg, cutoff);
        if (ev->parsed()) return run_eval(lattice_arg, z_arg);
        if (ver->parsed())
            return run_verify(config_path, samples, tol, seed, opt_samples->count() > 0,
                              opt_tol->count() > 0, opt_seed->count() > 0);
        if (ren->parsed()) {
            RenderOverrides given;
            given.width = opt_width->count() > 0;
            given.height = opt_height->count() > 0;
            given.supersample = opt_ss->count() > 0;
            return run_render(config_path, out_path, width, height, viewport, supersample, given);
        }
        if (fam->parsed()) return run_families(group_name);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
