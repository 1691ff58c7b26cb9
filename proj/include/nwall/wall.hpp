#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nwall/ff.hpp"

namespace nwall {

struct WindowTooLarge : std::runtime_error {
    int row, col;
    WindowTooLarge(int m, int n)
        : std::runtime_error("frame constraints need an entry outside the available region at (" +
                             std::to_string(m) + "," + std::to_string(n) + ")"),
          row(m), col(n) {}
};
struct NonSquareZeroRegion : std::logic_error {
    NonSquareZeroRegion() : std::logic_error("non-square zero region in a number wall") {}
};
struct NotGeometric : std::logic_error {
    NotGeometric() : std::logic_error("inner frame edge is not a geometric sequence") {}
};
struct OutOfRange : std::out_of_range {
    explicit OutOfRange(const std::string& what) : std::out_of_range(what) {}
};

/// Rectangular slab of number-wall entries. Row m ranges over [-2, depth];
/// rows -2/-1 are the degenerate constant rows, row 0 is the sequence, and
/// row m >= 0 is valid over columns [m, cols-1-m] (the triangle of a finite
/// sequence). Storage is one byte per entry, row major, full width per row.
struct WallGrid {
    unsigned p = 0;
    int cols = 0;
    int depth = -1;
    std::vector<Fp> data;  // (depth + 3) * cols

    WallGrid() = default;
    WallGrid(unsigned p_, int cols_, int depth_)
        : p(p_), cols(cols_), depth(depth_), data(static_cast<std::size_t>(depth_ + 3) * cols_, 0) {
        for (int n = 0; n < cols; ++n) set(-1, n, 1);
    }

    Fp at(int m, int n) const { return data[static_cast<std::size_t>(m + 2) * cols + n]; }
    void set(int m, int n, Fp v) { data[static_cast<std::size_t>(m + 2) * cols + n] = v; }

    bool in_grid(int m, int n) const {
        if (n < 0 || n >= cols || m < -2 || m > depth) return false;
        if (m < 0) return true;
        return n >= m && n <= cols - 1 - m;
    }
    /// -1 when outside the triangle, else the entry value. The degenerate
    /// rows extend to every column (the infinite wall has them everywhere).
    int get(int m, int n) const {
        if (m == -1) return 1;
        if (m < -1) return 0;
        if (m > depth || n < m || n > cols - 1 - m) return -1;
        return at(m, n);
    }
};

/// det of the (m+1)x(m+1) Toeplitz matrix T[i][j] = s[n+j-i] over F_p,
/// out-of-range sequence indices read as 0. The brute-force oracle.
inline Fp toeplitz_det(std::span<const Fp> s, int n, int m, const PrimeField& field) {
    if (m == -1) return 1;
    if (m < -1) return 0;
    const int size = m + 1;
    std::vector<Fp> M(static_cast<std::size_t>(size) * size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) {
            int idx = n + j - i;
            M[i * size + j] = (idx >= 0 && idx < static_cast<int>(s.size())) ? s[idx] : Fp{0};
        }
    Fp det = 1;
    for (int c = 0; c < size; ++c) {
        int piv = -1;
        for (int r = c; r < size; ++r)
            if (M[r * size + c] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int j = c; j < size; ++j) std::swap(M[piv * size + j], M[c * size + j]);
            det = field.neg(det);
        }
        det = field.mul(det, M[c * size + c]);
        Fp ic = field.inv(M[c * size + c]);
        for (int r = c + 1; r < size; ++r) {
            Fp f = field.mul(M[r * size + c], ic);
            if (f == 0) continue;
            for (int j = c; j < size; ++j)
                M[r * size + j] = field.sub(M[r * size + j], field.mul(f, M[c * size + j]));
        }
    }
    return det;
}

inline int triangle_depth(std::size_t len) { return (static_cast<int>(len) - 1) / 2; }

/// Full triangle computed entry by entry from the determinant definition.
inline WallGrid oracle_wall(std::span<const Fp> s, const PrimeField& field) {
    WallGrid g(field.p(), static_cast<int>(s.size()), triangle_depth(s.size()));
    for (int n = 0; n < g.cols; ++n) g.set(0, n, s[n]);
    for (int m = 1; m <= g.depth; ++m)
        for (int n = m; n <= g.cols - 1 - m; ++n) g.set(m, n, toeplitz_det(s, n, m, field));
    return g;
}

// ---------------------------------------------------------------------------
// Frame-constraints engine. fc_value computes one entry of row m (m >= 1)
// from earlier rows through a lookup that returns -1 for cells outside the
// available region. Rules, first applicable wins:
//   cross     W = (up^2 - upl*upr) / upup                 if upup != 0
//   window    W = 0 inside the square extent of the run
//   inner     D_j = (-1)^(l j) B_(l+1-j) C_j / A_(l+1-j)  on the row below
//   outer     H_j from the third constraint               two rows below
// Right/bottom frame edges are indexed from the bottom-right origin, hence
// the reflected indices; this is the convention that closes over a triangle.
// With clipped_zero, a run hitting unavailable cells marks the region clipped
// and the entry is interior zero (triangle boundary); otherwise the lookup
// miss raises WindowTooLarge (stitched-patch boundary).
// ---------------------------------------------------------------------------

template <typename Lookup>
Fp fc_value(const PrimeField& field, Lookup&& get, int m, int n, bool clipped_zero) {
    auto g = [&](int mm, int nn) -> Fp {
        int v = get(mm, nn);
        if (v < 0) throw WindowTooLarge(mm, nn);
        return static_cast<Fp>(v);
    };
    const Fp divisor = g(m - 2, n);
    if (divisor != 0) {
        const Fp up = g(m - 1, n);
        return field.div(field.sub(field.mul(up, up), field.mul(g(m - 1, n - 1), g(m - 1, n + 1))),
                         divisor);
    }
    if (g(m - 1, n) == 0) {
        // inside or directly below a zero region: find its top and its run
        int t = m - 1;
        while (g(t - 1, n) == 0) --t;
        int a = n;
        bool bounded_left = true;
        for (;;) {
            int v = get(t, a - 1);
            if (v < 0) { bounded_left = false; break; }
            if (v != 0) break;
            --a;
        }
        int b = n;
        bool bounded_right = true;
        for (;;) {
            int v = get(t, b + 1);
            if (v < 0) { bounded_right = false; break; }
            if (v != 0) break;
            ++b;
        }
        if (!bounded_left || !bounded_right) {
            if (clipped_zero) return 0;
            // side >= confirmed width, so rows t .. t+(b-a) are interior
            if (m - t <= b - a) return 0;
            throw WindowTooLarge(t, bounded_right ? a - 1 : b + 1);
        }
        const int l = b - a + 1;
        if (m <= t + l - 1) return 0;
        assert(m == t + l && "zero entry below the inner frame");
        const int j = n - (a - 1);
        auto A = [&](int i) { return g(t - 1, a - 1 + i); };
        auto B = [&](int i) { return g(t - 1 + i, a - 1); };
        auto C = [&](int i) { return g(t - 1 + i, b + 1); };
        return field.mul(field.sign(static_cast<long long>(l) * j),
                         field.div(field.mul(B(l + 1 - j), C(j)), A(l + 1 - j)));
    }
    // two above is zero, one above is not: outer frame row below a window
    int t = m - 2;
    while (g(t - 1, n) == 0) --t;
    int a = n;
    while (g(t, a - 1) == 0) --a;
    int b = n;
    while (g(t, b + 1) == 0) ++b;
    const int l = b - a + 1;
    assert(m == t + l + 1 && "outer frame rule away from the H row");
    const int j = n - (a - 1);
    auto A = [&](int i) { return g(t - 1, a - 1 + i); };
    auto B = [&](int i) { return g(t - 1 + i, a - 1); };
    auto C = [&](int i) { return g(t - 1 + i, b + 1); };
    auto D = [&](int i) { return g(t + l, a - 1 + i); };
    auto E = [&](int i) { return g(t - 2, a - 1 + i); };
    auto F = [&](int i) { return g(t - 1 + i, a - 2); };
    auto G = [&](int i) { return g(t - 1 + i, b + 2); };
    // ratios from the always-present pairs; S via P*S = (-1)^l Q*R
    const Fp P = field.div(A(1), A(0));
    const Fp Q = field.div(B(1), B(0));
    const Fp R = field.div(C(0), C(1));
    const Fp S = field.mul(field.sign(l), field.div(field.mul(Q, R), P));
    const int jr = l + 1 - j;
    const Fp sg = field.sign(jr);
    Fp total = field.div(field.mul(Q, E(jr)), A(jr));
    total = field.add(total, field.mul(sg, field.div(field.mul(P, F(jr)), B(jr))));
    total = field.sub(total, field.mul(sg, field.div(field.mul(S, G(j)), C(j))));
    return field.div(field.mul(total, D(j)), R);
}

/// Full triangle via the frame-constraints recurrence (Frame Constraints engine).
inline WallGrid generate_wall(std::span<const Fp> s, const PrimeField& field) {
    if (s.empty()) throw std::invalid_argument("generate_wall: empty sequence");
    WallGrid g(field.p(), static_cast<int>(s.size()), triangle_depth(s.size()));
    for (int n = 0; n < g.cols; ++n) g.set(0, n, s[n]);
    auto look = [&](int m, int n) { return g.get(m, n); };
    for (int m = 1; m <= g.depth; ++m)
        for (int n = m; n <= g.cols - 1 - m; ++n)
            g.set(m, n, fc_value(field, look, m, n, /*clipped_zero=*/true));
    return g;
}

// ---------------------------------------------------------------------------
// Window geometry.
// ---------------------------------------------------------------------------

struct Window {
    int top = 0;
    int left = 0;
    int side = 0;      // for clipped regions this is min(height, width): a lower bound
    bool clipped = false;
};

/// Maximal zero regions of rows >= 0. Non-clipped regions must be square
/// (NonSquareZeroRegion otherwise); regions touching the triangle boundary
/// are flagged clipped and report the bounding-box short side.
inline std::vector<Window> find_windows(const WallGrid& g) {
    std::vector<Window> out;
    std::vector<char> seen(static_cast<std::size_t>(g.depth + 1) * g.cols, 0);
    auto idx = [&](int m, int n) { return static_cast<std::size_t>(m) * g.cols + n; };
    std::vector<std::pair<int, int>> stack;
    for (int m0 = 0; m0 <= g.depth; ++m0)
        for (int n0 = m0; n0 <= g.cols - 1 - m0; ++n0) {
            if (g.at(m0, n0) != 0 || seen[idx(m0, n0)]) continue;
            int top = m0, bot = m0, left = n0, right = n0;
            std::size_t count = 0;
            bool clipped = false;
            stack.push_back({m0, n0});
            seen[idx(m0, n0)] = 1;
            while (!stack.empty()) {
                auto [m, n] = stack.back();
                stack.pop_back();
                ++count;
                top = std::min(top, m); bot = std::max(bot, m);
                left = std::min(left, n); right = std::max(right, n);
                if (n == m || n == g.cols - 1 - m || m == g.depth) clipped = true;
                constexpr int dm[4] = {0, 0, 1, -1}, dn[4] = {1, -1, 0, 0};
                for (int d = 0; d < 4; ++d) {
                    int mm = m + dm[d], nn = n + dn[d];
                    if (mm < 0 || mm > g.depth || nn < mm || nn > g.cols - 1 - mm) continue;
                    if (g.at(mm, nn) != 0 || seen[idx(mm, nn)]) continue;
                    seen[idx(mm, nn)] = 1;
                    stack.push_back({mm, nn});
                }
            }
            const int h = bot - top + 1, w = right - left + 1;
            if (!clipped) {
                if (h != w || count != static_cast<std::size_t>(h) * w) throw NonSquareZeroRegion{};
                out.push_back({top, left, h, false});
            } else {
                out.push_back({top, left, std::min(h, w), true});
            }
        }
    return out;
}

/// Geometric ratios of the inner frame, oriented as in the frame theorem:
/// P along the top (left to right), Q down the left edge, R up the right
/// edge, S along the bottom (right to left); P*S/(Q*R) = (-1)^side.
struct FrameRatios {
    Fp P = 0, Q = 0, R = 0, S = 0;
};

inline FrameRatios frame_ratios(const WallGrid& g, const Window& w, const PrimeField& field) {
    const int t = w.top, a = w.left, l = w.side, b = a + l - 1;
    if (w.clipped || !g.in_grid(t - 1, a - 1) || !g.in_grid(t + l, b + 1) ||
        !g.in_grid(t + l, a - 1) || !g.in_grid(t - 1, b + 1))
        throw OutOfRange("frame_ratios: inner frame not fully inside the grid");
    auto edge_ratio = [&](int m0, int n0, int dm, int dn) {
        Fp first = g.at(m0, n0), second = g.at(m0 + dm, n0 + dn);
        if (first == 0) throw NotGeometric{};
        Fp r = field.div(second, first);
        Fp prev = second;
        for (int i = 2; i <= l + 1; ++i) {
            Fp cur = g.at(m0 + i * dm, n0 + i * dn);
            if (prev == 0 || cur != field.mul(prev, r)) throw NotGeometric{};
            prev = cur;
        }
        return r;
    };
    FrameRatios r;
    r.P = edge_ratio(t - 1, a - 1, 0, 1);
    r.Q = edge_ratio(t - 1, a - 1, 1, 0);
    r.R = edge_ratio(t + l, b + 1, -1, 0);
    r.S = edge_ratio(t + l, b + 1, 0, -1);
    return r;
}

struct LcQuality {
    int max_side = 0;            // largest non-clipped window side
    int max_clipped_extent = 0;  // largest short side among clipped regions
};

/// Bounded-window summary of a wall: clipped regions are excluded from the
/// max side (their true side is unknowable from a prefix) but reported
/// separately so unbounded growth is visible.
inline LcQuality lc_quality(const WallGrid& g) {
    LcQuality q;
    for (const Window& w : find_windows(g)) {
        if (w.clipped)
            q.max_clipped_extent = std::max(q.max_clipped_extent, w.side);
        else
            q.max_side = std::max(q.max_side, w.side);
    }
    return q;
}

/// True when the triangle contains an all-zero square of the given side.
inline bool has_zero_square(const WallGrid& g, int side) {
    if (side <= 0) return true;
    // zup[n]: consecutive zeros ending at the current row in column n
    std::vector<int> zup(g.cols, 0);
    for (int m = 0; m <= g.depth; ++m) {
        int run = 0;
        for (int n = m; n <= g.cols - 1 - m; ++n) {
            zup[n] = g.at(m, n) == 0 ? zup[n] + 1 : 0;
            run = zup[n] >= side ? run + 1 : 0;
            if (run >= side) return true;
        }
    }
    return false;
}

struct SearchResult {
    enum class Status { Witness, AllHaveWindow, BudgetExceeded } status;
    std::vector<Fp> witness;  // set when status == Witness
};

/// Scan all p^len sequences of the given length; a witness is a sequence
/// whose wall contains no zero square of the given side.
inline SearchResult exhaustive_window_search(const PrimeField& field, unsigned len, int side,
                                             unsigned long long budget) {
    const unsigned p = field.p();
    long double total = 1;
    for (unsigned i = 0; i < len; ++i) total *= p;
    if (total > static_cast<long double>(budget))
        return {SearchResult::Status::BudgetExceeded, {}};
    std::vector<Fp> s(len, 0);
    for (;;) {
        WallGrid g = generate_wall(s, field);
        if (!has_zero_square(g, side)) return {SearchResult::Status::Witness, s};
        unsigned i = 0;
        while (i < len && s[i] == p - 1) s[i++] = 0;
        if (i == len) break;
        ++s[i];
    }
    return {SearchResult::Status::AllHaveWindow, {}};
}

/// Text dump: header "p cols depth", then rows -2..depth, only the valid
/// span of each row, entries space separated.
inline void dump_wall(const WallGrid& g, std::ostream& os) {
    os << g.p << ' ' << g.cols << ' ' << g.depth << '\n';
    for (int m = -2; m <= g.depth; ++m) {
        const int lo = m < 0 ? 0 : m, hi = m < 0 ? g.cols - 1 : g.cols - 1 - m;
        for (int n = lo; n <= hi; ++n) {
            if (n > lo) os << ' ';
            os << static_cast<unsigned>(g.at(m, n));
        }
        os << '\n';
    }
}

}  // namespace nwall
