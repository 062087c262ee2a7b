#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "elliptica/render.hpp"

using namespace elliptica;

namespace {
const cplx I{0.0, 1.0};
const cplx hex_tau{0.5, std::sqrt(3.0) / 2.0};

WallpaperFunction make_p4() {
    BuildParams p;
    p.R = RationalFunction::identity();
    return make_wallpaper("p4", Lattice(1.0, I), p);
}
}  // namespace

TEST_CASE("domain_color anchors") {
    CHECK(domain_color(Value::finite(cplx{})) == std::array<std::uint8_t, 3>{0, 0, 0});
    CHECK(domain_color(Value::at_pole()) == std::array<std::uint8_t, 3>{255, 255, 255});

    // equal modulus, different hue: same lightness
    const auto c1 = domain_color(Value::finite(cplx{1.0, 0.0}));
    const auto ci = domain_color(Value::finite(I));
    CHECK(c1 != ci);
    const auto lightness = [](const std::array<std::uint8_t, 3>& c) {
        int mx = std::max({c[0], c[1], c[2]}), mn = std::min({c[0], c[1], c[2]});
        return mx + mn;  // 2L in byte scale
    };
    CHECK(std::abs(lightness(c1) - lightness(ci)) <= 2);

    // large modulus tends to white, small to black
    const auto big = domain_color(Value::finite(cplx{1e8, 0.0}));
    CHECK(int(big[0]) + big[1] + big[2] > 3 * 250);
    const auto small = domain_color(Value::finite(cplx{1e-8, 0.0}));
    CHECK(int(small[0]) + small[1] + small[2] < 3);
}

TEST_CASE("render determinism and geometry") {
    const auto f = make_p4();
    RenderConfig cfg;
    cfg.lower_left = {-1.0, -1.0};
    cfg.upper_right = {1.0, 1.0};
    cfg.width = 32;
    cfg.height = 32;
    const Image a = render(cfg, f);
    const Image b = render(cfg, f);
    CHECK(a.pixels == b.pixels);
    CHECK(a.pixels.size() == 32u * 32u * 3u);

    // row 0 is the top: pixel (col 8, row 0) samples Im z > 0
    // probe geometry through a map that colors by sign of Im z
    const Image probe = render_map(cfg, [](cplx z) {
        return Value::finite(z.imag() > 0 ? cplx{1.0, 0.0} : cplx{1e-9, 0.0});
    });
    CHECK(probe.at(8, 0, 0) > probe.at(8, 31, 0));

    CHECK_THROWS_AS(render_map(RenderConfig{{0, 0}, {1, 1}, 0, 32, 1}, [](cplx) {
        return Value::finite(cplx{});
    }), ConfigError);
    CHECK_THROWS_AS(render_map(RenderConfig{{0, 0}, {1, 1}, 32, 0, 1}, [](cplx) {
        return Value::finite(cplx{});
    }), ConfigError);
    CHECK_THROWS_AS(render_map(RenderConfig{{1, 1}, {0, 0}, 32, 32, 1}, [](cplx) {
        return Value::finite(cplx{});
    }), ConfigError);
}

TEST_CASE("supersampling averages values; any pole subsample wins") {
    RenderConfig cfg;
    cfg.lower_left = {0.0, 0.0};
    cfg.upper_right = {1.0, 1.0};
    cfg.width = 1;
    cfg.height = 1;
    cfg.supersample = 2;
    // one of the four subsamples is a pole
    const Image img = render_map(cfg, [](cplx z) {
        if (z.real() < 0.5 && z.imag() < 0.5) return Value::at_pole();
        return Value::finite(cplx{1.0, 0.0});
    });
    CHECK(img.at(0, 0, 0) == 255);
    CHECK(img.at(0, 0, 1) == 255);
    CHECK(img.at(0, 0, 2) == 255);
}

TEST_CASE("pixel-grid rotation symmetry for sensible groups") {
    // render f(g.z) on the same grid; invariance makes the images nearly equal
    struct Case {
        const char* group;
        Lattice lat;
        cplx rot;
    };
    const Case cases[] = {
        {"p2", Lattice(1.0, cplx{0.3, 1.2}), cplx{-1.0, 0.0}},
        {"p3", Lattice(1.0, hex_tau), std::polar(1.0, 2.0 * kPi / 3.0)},
        {"p4", Lattice(1.0, I), I},
        {"p6", Lattice(1.0, hex_tau), std::polar(1.0, kPi / 3.0)},
    };
    for (const auto& c : cases) {
        BuildParams p;
        p.R = RationalFunction::identity();
        const auto f = make_wallpaper(c.group, c.lat, p);
        RenderConfig cfg;
        cfg.lower_left = {-1.2, -1.2};
        cfg.upper_right = {1.2, 1.2};
        cfg.width = 24;
        cfg.height = 24;
        const Image base = render(cfg, f);
        const Image rotated = render_map(cfg, [&](cplx z) { return f.evaluate(c.rot * z); });
        int worst = 0;
        for (size_t i = 0; i < base.pixels.size(); ++i)
            worst = std::max(worst, std::abs(int(base.pixels[i]) - int(rotated.pixels[i])));
        CHECK(worst <= 2);
    }
}

TEST_CASE("PPM round trip") {
    const auto f = make_p4();
    RenderConfig cfg;
    cfg.lower_left = {-1.0, -1.0};
    cfg.upper_right = {1.0, 1.0};
    cfg.width = 16;
    cfg.height = 8;
    const Image img = render(cfg, f);
    std::stringstream ss;
    write_ppm(img, ss);
    const std::string data = ss.str();
    CHECK(data.substr(0, 3) == "P6\n");
    std::stringstream in(data);
    const Image back = read_ppm(in);
    CHECK(back.width == img.width);
    CHECK(back.height == img.height);
    CHECK(back.pixels == img.pixels);
}
