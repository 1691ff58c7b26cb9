#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "nwall/wall.hpp"

namespace nwall {

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
/// Diamond of the tile tiling containing wall cell (m, n): anchors sit at
/// (K u, K v) with u + v even. Returns {u, v}.
inline std::pair<int, int> diamond_of(int m, int n, int K) {
    auto floordiv = [](int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
    for (int u = floordiv(m + K - 1, K); u >= floordiv(m - K + 1, K); --u) {
        const int ad = m >= K * u ? m - K * u : K * u - m;
        if (ad > K - 1) continue;
        for (int v = floordiv(n - ad, K); v >= floordiv(n - ad, K) - 1; --v) {
            if ((u + v) % 2 != 0) continue;
            if (n >= K * v + ad && n <= K * v + 2 * K - 1 - ad) return {u, v};
        }
    }
    return {0, 0};  // unreachable for a proper tiling
}
}  // namespace detail

/// Binary PPM (P6, maxval 255), one pixel per wall entry, rows -2..depth top
/// to bottom. Zeros are pure red, nonzero v is the gray 255*v/(p-1) so 1 is
/// darkest and p-1 lightest, cells outside the triangle are white. With
/// `tile_overlay` = 2k, tiles get alternating tints (presentation aid, not
/// golden-tested).
inline void render_ppm(const WallGrid& g, std::ostream& os, unsigned tile_overlay = 0) {
    const int height = g.depth + 3, width = g.cols;
    os << "P6\n" << width << ' ' << height << "\n255\n";
    const int K = tile_overlay ? static_cast<int>(tile_overlay / 2) : 0;
    for (int m = -2; m <= g.depth; ++m) {
        for (int n = 0; n < width; ++n) {
            unsigned char rgb[3];
            const int v = g.get(m, n);
            if (v < 0) {
                rgb[0] = rgb[1] = rgb[2] = 255;
            } else if (v == 0) {
                rgb[0] = 255; rgb[1] = 0; rgb[2] = 0;
            } else {
                const unsigned gray = g.p == 2
                    ? 255u
                    : static_cast<unsigned>(std::lround(255.0 * v / (g.p - 1)));
                rgb[0] = rgb[1] = rgb[2] = static_cast<unsigned char>(gray);
            }
            if (K > 0 && v >= 0) {
                auto [u, vv] = detail::diamond_of(m, n, K);
                const int cls = ((u % 2 + 2) % 2) * 2 + (((u + vv) / 2 % 2) + 2) % 2;
                rgb[2] = static_cast<unsigned char>(rgb[2] ^ (0x10 * (cls + 1)));
            }
            os.write(reinterpret_cast<const char*>(rgb), 3);
        }
    }
    if (!os) throw IoError("ppm write failed");
}

}  // namespace nwall
