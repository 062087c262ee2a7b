#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "elliptica/builder.hpp"
#include "elliptica/core.hpp"

namespace elliptica {

/// Row-major RGB image, row 0 at the top.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // 3 bytes per pixel

    std::uint8_t at(int col, int row, int channel) const {
        return pixels[3 * (static_cast<size_t>(row) * static_cast<size_t>(width) +
                           static_cast<size_t>(col)) +
                      static_cast<size_t>(channel)];
    }
};

struct RenderConfig {
    cplx lower_left{-1.0, -1.0};
    cplx upper_right{1.0, 1.0};
    int width = 256;
    int height = 256;
    int supersample = 1;
};

/// Domain coloring: hue from the argument, lightness from |v| through
/// (2/pi) atan(|v|); poles render white, zero renders black.
inline std::array<std::uint8_t, 3> domain_color(const Value& val) {
    if (val.pole) return {255, 255, 255};
    const double mag = std::abs(val.v);
    if (mag == 0.0) return {0, 0, 0};
    double h = std::atan2(val.v.imag(), val.v.real()) / (2.0 * kPi);
    if (h < 0.0) h += 1.0;
    if (h >= 1.0) h -= 1.0;
    const double light = (2.0 / kPi) * std::atan(mag);
    const double sat = 1.0;
    const double chroma = (1.0 - std::abs(2.0 * light - 1.0)) * sat;
    const double hp = 6.0 * h;
    const double x = chroma * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(hp)) {
        case 0: r = chroma; g = x; break;
        case 1: r = x; g = chroma; break;
        case 2: g = chroma; b = x; break;
        case 3: g = x; b = chroma; break;
        case 4: r = x; b = chroma; break;
        default: r = chroma; b = x; break;
    }
    const double m = light - chroma / 2.0;
    auto to_byte = [](double t) {
        const double v = std::round(255.0 * t);
        return static_cast<std::uint8_t>(v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v));
    };
    return {to_byte(r + m), to_byte(g + m), to_byte(b + m)};
}

/// Renders fn over the viewport; pixel (col, row) samples the pixel centre
/// with row 0 at the top (max Im). With supersample s, the s^2 subpixel
/// values are averaged before color mapping; a pole in any subpixel makes the
/// pixel a pole. Deterministic for a fixed configuration.
inline Image render_map(const RenderConfig& cfg, const std::function<Value(cplx)>& fn) {
    if (cfg.width < 1 || cfg.height < 1) throw ConfigError("image dimensions must be >= 1");
    if (cfg.supersample < 1) throw ConfigError("supersample must be >= 1");
    if (!(cfg.upper_right.real() > cfg.lower_left.real()) ||
        !(cfg.upper_right.imag() > cfg.lower_left.imag()))
        throw ConfigError("viewport is degenerate");
    Image img;
    img.width = cfg.width;
    img.height = cfg.height;
    img.pixels.resize(3 * static_cast<size_t>(cfg.width) * static_cast<size_t>(cfg.height));
    const double dx = (cfg.upper_right.real() - cfg.lower_left.real()) / cfg.width;
    const double dy = (cfg.upper_right.imag() - cfg.lower_left.imag()) / cfg.height;
    const int ss = cfg.supersample;
    size_t idx = 0;
    for (int row = 0; row < cfg.height; ++row) {
        for (int col = 0; col < cfg.width; ++col) {
            cplx acc{};
            bool pole = false;
            for (int sy = 0; sy < ss && !pole; ++sy) {
                for (int sx = 0; sx < ss && !pole; ++sx) {
                    const double fx = (sx + 0.5) / ss;
                    const double fy = (sy + 0.5) / ss;
                    const cplx z{cfg.lower_left.real() + (col + fx) * dx,
                                 cfg.upper_right.imag() - (row + fy) * dy};
                    const Value v = fn(z);
                    if (v.pole)
                        pole = true;
                    else
                        acc += v.v;
                }
            }
            const auto rgb = pole ? domain_color(Value::at_pole())
                                  : domain_color(Value::finite(acc / static_cast<double>(ss * ss)));
            img.pixels[idx++] = rgb[0];
            img.pixels[idx++] = rgb[1];
            img.pixels[idx++] = rgb[2];
        }
    }
    return img;
}

inline Image render(const RenderConfig& cfg, const WallpaperFunction& f) {
    return render_map(cfg, [&](cplx z) { return f.evaluate(z); });
}

/// Binary PPM (P6, maxval 255): the bit-stable output format.
inline void write_ppm(const Image& img, std::ostream& os) {
    os << "P6\n" << img.width << ' ' << img.height << "\n255\n";
    os.write(reinterpret_cast<const char*>(img.pixels.data()),
             static_cast<std::streamsize>(img.pixels.size()));
}

inline void write_ppm(const Image& img, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file: " + path);
    write_ppm(img, os);
}

inline Image read_ppm(std::istream& is) {
    std::string magic;
    is >> magic;
    if (magic != "P6") throw ConfigError("not a binary PPM (P6) stream");
    auto next_token = [&is]() {
        std::string tok;
        while (is >> tok) {
            if (tok[0] == '#') {
                std::string line;
                std::getline(is, line);
                continue;
            }
            return tok;
        }
        throw ConfigError("truncated PPM header");
    };
    Image img;
    img.width = std::stoi(next_token());
    img.height = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (maxval != 255) throw ConfigError("unsupported PPM maxval");
    is.get();  // single whitespace after maxval
    img.pixels.resize(3 * static_cast<size_t>(img.width) * static_cast<size_t>(img.height));
    is.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (!is) throw ConfigError("truncated PPM pixel data");
    return img;
}

inline Image read_ppm(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot open image file: " + path);
    return read_ppm(is);
}

}  // namespace elliptica
