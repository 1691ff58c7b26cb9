#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nwall/ff.hpp"
#include "nwall/seq.hpp"
#include "nwall/wall.hpp"

namespace nwall {

using TileId = std::uint32_t;
inline constexpr TileId kNoTile = 0xFFFFFFFFu;

// Ids of the two hard-coded tiles (Step 1.1.1).
inline constexpr TileId kSigmaMinus1 = 0;  // bottom row at wall row -1, ones there, zeros above
inline constexpr TileId kSigmaZero = 1;    // all zeros

/// Diamond-shaped tile geometry for tile_length = 2k: rows -(k-1)..(k-1)
/// relative to the anchor row, row d spanning columns |d| .. 2k-1-|d|
/// relative to the anchor column (the leftmost column of the longest row).
/// Values are stored row major in this order; 2k^2 entries total.
struct Diamond {
    int k;
    explicit Diamond(unsigned tile_length) : k(static_cast<int>(tile_length / 2)) {
        if (tile_length < 2 || tile_length % 2 != 0)
            throw std::invalid_argument("tile_length must be even and >= 2");
    }
    std::size_t cells() const { return 2 * static_cast<std::size_t>(k) * k; }
    template <typename Fn>
    void for_each(Fn&& fn) const {  // fn(drow, dcol) in storage order
        for (int d = -(k - 1); d <= k - 1; ++d) {
            int ad = d < 0 ? -d : d;
            for (int c = ad; c <= 2 * k - 1 - ad; ++c) fn(d, c);
        }
    }
};

/// Deduplicating tile registry: packed byte values (the hash key), image ids
/// under the [2,2]-morphism in (west, north, south, east) order, scaffolding
/// ids in (east, north, west) order. Ids are assigned in creation order and
/// the incomplete-tile frontier is the id range [cursor, size).
class TileStore {
public:
    TileStore(const PrimeField& field, unsigned tile_length)
        : field_(field), tile_length_(tile_length), shape_(tile_length),
          value_bytes_(shape_.cells()) {
        rehash(1024);
        // sigma_{-1}: ones on the bottom diamond row, zeros elsewhere
        std::vector<Fp> v(value_bytes_, 0);
        std::size_t i = 0;
        shape_.for_each([&](int d, int) { v[i++] = (d == shape_.k - 1) ? Fp{1} : Fp{0}; });
        intern(v.data(), {kNoTile, kNoTile, kNoTile});
        std::fill(v.begin(), v.end(), Fp{0});
        intern(v.data(), {kNoTile, kNoTile, kNoTile});
    }

    const PrimeField& field() const { return field_; }
    unsigned tile_length() const { return tile_length_; }
    const Diamond& shape() const { return shape_; }
    std::size_t value_bytes() const { return value_bytes_; }
    std::size_t size() const { return images_.size(); }

    const Fp* value(TileId id) const {
        return chunks_[id >> kChunkShift].get() +
               static_cast<std::size_t>(id & kChunkMask) * value_bytes_;
    }
    std::array<TileId, 4>& images(TileId id) { return images_[id]; }
    const std::array<TileId, 4>& images(TileId id) const { return images_[id]; }
    std::array<TileId, 3>& scaffolding(TileId id) { return scaf_[id]; }
    const std::array<TileId, 3>& scaffolding(TileId id) const { return scaf_[id]; }

    bool complete(TileId id) const {
        const auto& im = images_[id];
        return im[0] != kNoTile && im[1] != kNoTile && im[2] != kNoTile && im[3] != kNoTile;
    }

    /// Value -> id, inserting a new incomplete tile (with the given
    /// scaffolding) when unseen. First-seen scaffolding is kept.
    TileId intern(const Fp* v, const std::array<TileId, 3>& scaf) {
        std::uint64_t h = hash_bytes(v);
        std::size_t mask = table_.size() - 1;
        std::size_t slot = h & mask;
        while (table_[slot] != kNoTile) {
            TileId cand = table_[slot];
            if (std::memcmp(value(cand), v, value_bytes_) == 0) return cand;
            slot = (slot + 1) & mask;
        }
        TileId id = static_cast<TileId>(images_.size());
        if ((id & kChunkMask) == 0)
            chunks_.push_back(std::make_unique<Fp[]>((kChunkMask + 1) * value_bytes_));
        std::memcpy(chunks_[id >> kChunkShift].get() +
                        static_cast<std::size_t>(id & kChunkMask) * value_bytes_,
                    v, value_bytes_);
        images_.push_back({kNoTile, kNoTile, kNoTile, kNoTile});
        scaf_.push_back(scaf);
        table_[slot] = id;
        if (images_.size() * 2 > table_.size()) rehash(table_.size() * 2);
        return id;
    }

    TileId find(const Fp* v) const {
        std::uint64_t h = hash_bytes(v);
        std::size_t mask = table_.size() - 1;
        std::size_t slot = h & mask;
        while (table_[slot] != kNoTile) {
            TileId cand = table_[slot];
            if (std::memcmp(value(cand), v, value_bytes_) == 0) return cand;
            slot = (slot + 1) & mask;
        }
        return kNoTile;
    }

    /// FIFO frontier position: every id below the cursor is complete.
    std::uint64_t cursor = 2;

private:
    static constexpr unsigned kChunkShift = 16;
    static constexpr std::uint32_t kChunkMask = (1u << kChunkShift) - 1;

    std::uint64_t hash_bytes(const Fp* v) const {  // FNV-1a 64
        std::uint64_t h = 1469598103934665603ull;
        for (std::size_t i = 0; i < value_bytes_; ++i) {
            h ^= v[i];
            h *= 1099511628211ull;
        }
        return h;
    }
    void rehash(std::size_t cap) {
        table_.assign(cap, kNoTile);
        std::size_t mask = cap - 1;
        for (TileId id = 0; id < images_.size(); ++id) {
            std::size_t slot = hash_bytes(value(id)) & mask;
            while (table_[slot] != kNoTile) slot = (slot + 1) & mask;
            table_[slot] = id;
        }
    }

    PrimeField field_;
    unsigned tile_length_;
    Diamond shape_;
    std::size_t value_bytes_;
    std::vector<std::unique_ptr<Fp[]>> chunks_;
    std::vector<std::array<TileId, 4>> images_;  // (w, n, s, e)
    std::vector<std::array<TileId, 3>> scaf_;    // (e, n, w)
    std::vector<TileId> table_;                  // open addressing, linear probing
};

// ---------------------------------------------------------------------------
// The wall-orientation permutation: entry (m, n) of a rectangular sequence
// lands at row -n + floor(m/2), column n + ceil(m/2).
// ---------------------------------------------------------------------------

template <typename T>
std::map<std::pair<int, int>, T> permute_P(const std::vector<std::vector<T>>& in) {
    std::map<std::pair<int, int>, T> out;
    for (int m = 0; m < static_cast<int>(in.size()); ++m)
        for (int n = 0; n < static_cast<int>(in[m].size()); ++n) {
            int row = -n + (m >= 0 ? m / 2 : (m - 1) / 2);
            int col = n + (m + 1) / 2;
            out[{row, col}] = in[m][n];
        }
    return out;
}

/// Diamond of wall entries anchored at (anchor_row, anchor_col); rows below
/// -2 read as 0 and row -1 as 1 even left/right of the stored grid.
inline std::vector<Fp> extract_tile(const WallGrid& g, int anchor_row, int anchor_col,
                                    unsigned tile_length) {
    Diamond shape(tile_length);
    std::vector<Fp> v(shape.cells());
    std::size_t i = 0;
    shape.for_each([&](int d, int c) {
        int val = g.get(anchor_row + d, anchor_col + c);
        if (val < 0)
            throw OutOfRange("extract_tile: diamond does not fit the populated grid");
        v[i++] = static_cast<Fp>(val);
    });
    return v;
}

// ---------------------------------------------------------------------------
// Scaffolding-tile generation. The diamonds of the images of the three tiles
// above an incomplete tile are stitched into one patch; the four child
// diamonds are then filled row by row with the frame constraints. Relative
// anchors, with the west child at (0, 0) and K = tile_length/2 at the
// doubled scale:
//
//     N.n(-5K, K)
//   N.w(-4K,0)  N.e(-4K,2K)
//     N.s(-3K, K)
//   W.n(-3K,-K)  E.n(-3K,3K)
//  W.w(-2K,-2K) W.e(-2K,0) E.w(-2K,2K) E.e(-2K,4K)
//     W.s(-K,-K)  child.n(-K,K)  E.s(-K,3K)
//        child.w(0,0)  child.e(0,2K)
//           child.s(K,K)
// ---------------------------------------------------------------------------

class PatchScratch {
public:
    void reset(int k) {
        k_ = k;
        row_lo_ = -6 * k + 1;  // top row of the north scaffold's north child
        row_hi_ = 2 * k - 1;
        col_lo_ = -2 * k;
        col_hi_ = 6 * k - 1;
        width_ = col_hi_ - col_lo_ + 1;
        cells_.assign(static_cast<std::size_t>(row_hi_ - row_lo_ + 1) * width_, -1);
    }
    int get(int m, int n) const {
        if (m < row_lo_ || m > row_hi_ || n < col_lo_ || n > col_hi_) return -1;
        return cells_[static_cast<std::size_t>(m - row_lo_) * width_ + (n - col_lo_)];
    }
    void set(int m, int n, Fp v) {
        assert(m >= row_lo_ && m <= row_hi_ && n >= col_lo_ && n <= col_hi_);
        cells_[static_cast<std::size_t>(m - row_lo_) * width_ + (n - col_lo_)] = v;
    }
    void paste(const TileStore& st, TileId id, int R, int C) {
        const Fp* v = st.value(id);
        std::size_t i = 0;
        st.shape().for_each([&](int d, int c) { set(R + d, C + c, v[i++]); });
    }

private:
    int k_ = 0, row_lo_ = 0, row_hi_ = 0, col_lo_ = 0, col_hi_ = 0, width_ = 0;
    std::vector<std::int16_t> cells_;
};

struct ChildValues {
    std::vector<Fp> w, n, s, e;
};

/// Children of the tile whose scaffolding is (east, north, west). All three
/// scaffolding tiles must be complete. Throws WindowTooLarge when the patch
/// lacks a needed entry (unbounded windows / undersized tile_length).
inline ChildValues scaffold_generate(const TileStore& st, TileId east, TileId north, TileId west,
                                     PatchScratch& scratch) {
    const int K = st.shape().k;
    if (west == kSigmaZero && east == kSigmaZero &&
        (north == kSigmaZero || north == kSigmaMinus1)) {
        // degenerate upper region of the wall: the patch carries no frame to
        // anchor a fill, but the children are the continuation of the zero
        // context (the built-ins' own images are pinned separately)
        ChildValues out;
        out.w = out.n = out.s = out.e = std::vector<Fp>(st.value_bytes(), 0);
        return out;
    }
    const auto& We = st.images(west);
    const auto& Nn = st.images(north);
    const auto& Ee = st.images(east);
    if (!st.complete(west) || !st.complete(north) || !st.complete(east))
        throw std::logic_error("scaffold_generate: incomplete scaffolding tile");
    scratch.reset(K);
    scratch.paste(st, We[0], -2 * K, -2 * K);
    scratch.paste(st, We[1], -3 * K, -K);
    scratch.paste(st, We[2], -K, -K);
    scratch.paste(st, We[3], -2 * K, 0);
    scratch.paste(st, Nn[0], -4 * K, 0);
    scratch.paste(st, Nn[1], -5 * K, K);
    scratch.paste(st, Nn[2], -3 * K, K);
    scratch.paste(st, Nn[3], -4 * K, 2 * K);
    scratch.paste(st, Ee[0], -2 * K, 2 * K);
    scratch.paste(st, Ee[1], -3 * K, 3 * K);
    scratch.paste(st, Ee[2], -K, 3 * K);
    scratch.paste(st, Ee[3], -2 * K, 4 * K);

    auto look = [&](int m, int n) { return scratch.get(m, n); };
    const std::array<std::pair<int, int>, 4> anchors{{{0, 0}, {-K, K}, {K, K}, {0, 2 * K}}};
    // row by row across all four children so every lookup above is resolved
    for (int m = -2 * K + 1; m <= 2 * K - 1; ++m) {
        for (const auto& [R, C] : anchors) {
            int d = m - R;
            if (d < -(K - 1) || d > K - 1) continue;
            int ad = d < 0 ? -d : d;
            for (int c = ad; c <= 2 * K - 1 - ad; ++c)
                scratch.set(m, C + c, fc_value(st.field(), look, m, C + c, /*clipped_zero=*/false));
        }
    }
    ChildValues out;
    auto grab = [&](int R, int C) {
        std::vector<Fp> v(st.value_bytes());
        std::size_t i = 0;
        st.shape().for_each([&](int d, int c) { v[i++] = static_cast<Fp>(scratch.get(R + d, C + c)); });
        return v;
    };
    out.w = grab(0, 0);
    out.n = grab(-K, K);
    out.s = grab(K, K);
    out.e = grab(0, 2 * K);
    return out;
}

// ---------------------------------------------------------------------------
// Algorithm 1.1: built-ins, one tile per letter from the zeroth row, the
// second-order southern tiles, and the morphism on all of them.
// ---------------------------------------------------------------------------

struct DiscoveryInit {
    std::unique_ptr<TileStore> store;
    TileId start = kNoTile;                // tile of the prolongable start letter
    std::vector<TileId> letter_tiles;      // per letter of the input alphabet
};

inline DiscoveryInit algorithm_1_1(const SequenceSpec& spec, const PrimeField& field,
                                   unsigned tile_length) {
    if (spec.morphism.k != 2)
        throw std::invalid_argument("tile discovery handles 2-morphisms only");
    Coding coding = compress_to_block(spec.morphism, spec.coding, tile_length);
    const int K = static_cast<int>(tile_length / 2);

    DiscoveryInit init;
    init.store = std::make_unique<TileStore>(field, tile_length);
    TileStore& st = *init.store;

    const unsigned letters = spec.morphism.alphabet_size;
    init.letter_tiles.resize(letters);
    for (Letter g = 0; g < letters; ++g) {
        WallGrid wg = generate_wall(coding.images[g], field);
        auto v = extract_tile(wg, 0, 0, tile_length);
        init.letter_tiles[g] = st.intern(v.data(), {kNoTile, kNoTile, kNoTile});
    }
    for (Letter g = 0; g < letters; ++g) {
        const Letter g0 = spec.morphism.images[g][0], g1 = spec.morphism.images[g][1];
        std::vector<Fp> word = coding.images[g0];
        word.insert(word.end(), coding.images[g1].begin(), coding.images[g1].end());
        WallGrid wg = generate_wall(word, field);
        auto south = extract_tile(wg, K, K, tile_length);
        TileId sid = st.intern(south.data(),
                               {init.letter_tiles[g1], kSigmaMinus1, init.letter_tiles[g0]});
        std::array<TileId, 4> img{init.letter_tiles[g0], kSigmaMinus1, sid, init.letter_tiles[g1]};
        auto& cur = st.images(init.letter_tiles[g]);
        if (cur[0] != kNoTile && cur != img)
            throw std::logic_error("tile value does not determine its image; tile_length too small");
        cur = img;
    }
    st.images(kSigmaMinus1) = {kSigmaZero, kSigmaZero, kSigmaMinus1, kSigmaZero};
    st.images(kSigmaZero) = {kSigmaZero, kSigmaZero, kSigmaZero, kSigmaZero};
    init.start = init.letter_tiles[spec.start];
    return init;
}

/// Zeroth-row tiles are recognizable from the morphism: their north image is
/// sigma_{-1}. Together with the built-ins these are the position-pinned
/// tiles that frame constraints alone cannot regenerate.
inline bool position_pinned(const TileStore& st, TileId id) {
    return id == kSigmaMinus1 || id == kSigmaZero || st.images(id)[1] == kSigmaMinus1;
}

// ---------------------------------------------------------------------------
// Algorithm 1.2: FIFO closure. Children are computed in the order north,
// west, east, south; their scaffolding references come from the patch
// layout. Ids and images are a pure function of (sequence, p, tile_length).
// ---------------------------------------------------------------------------

/// Process frontier tiles until closure. `hook(store)` runs after each
/// processed tile and may return false to pause (checkpointing / limits);
/// run with the same store again to resume. Returns true when closed.
template <typename Hook>
bool algorithm_1_2(TileStore& st, Hook&& hook) {
    PatchScratch scratch;
    while (st.cursor < st.size()) {
        TileId tid = static_cast<TileId>(st.cursor);
        ++st.cursor;
        if (!st.complete(tid)) {
            const auto scaf = st.scaffolding(tid);  // (e, n, w)
            ChildValues ch = scaffold_generate(st, scaf[0], scaf[1], scaf[2], scratch);
            const auto We = st.images(scaf[2]);
            const auto Nn = st.images(scaf[1]);
            const auto Ee = st.images(scaf[0]);
            TileId id_n = st.intern(ch.n.data(), {Ee[0], Nn[2], We[3]});
            TileId id_w = st.intern(ch.w.data(), {id_n, We[3], We[2]});
            TileId id_e = st.intern(ch.e.data(), {Ee[2], Ee[0], id_n});
            TileId id_s = st.intern(ch.s.data(), {id_e, id_n, id_w});
            st.images(tid) = {id_w, id_n, id_s, id_e};
        }
        if (!hook(st)) return false;
    }
    return true;
}

inline bool algorithm_1_2(TileStore& st) {
    return algorithm_1_2(st, [](TileStore&) { return true; });
}

// ---------------------------------------------------------------------------
// Assembly: expand the morphism g generations from the start tile and lay
// the diamonds out in wall orientation. Array cell (r, c) carries the
// diamond anchored at (K*(r-c), K*(r+c)).
// ---------------------------------------------------------------------------

inline WallGrid assemble(const TileStore& st, TileId start, unsigned generations) {
    const int K = st.shape().k;
    std::vector<TileId> arr{start};
    std::size_t n = 1;
    for (unsigned g = 0; g < generations; ++g) {
        std::vector<TileId> next(4 * arr.size());
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                const auto& im = st.images(arr[r * n + c]);
                next[(2 * r) * 2 * n + 2 * c] = im[0];      // west
                next[(2 * r) * 2 * n + 2 * c + 1] = im[1];  // north
                next[(2 * r + 1) * 2 * n + 2 * c] = im[2];  // south
                next[(2 * r + 1) * 2 * n + 2 * c + 1] = im[3];  // east
            }
        arr.swap(next);
        n *= 2;
    }
    const int cols = static_cast<int>(2 * K * n);
    WallGrid out(st.field().p(), cols, triangle_depth(cols));
    std::vector<char> covered(static_cast<std::size_t>(out.depth + 1) * cols, 0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const int R = K * (static_cast<int>(r) - static_cast<int>(c));
            const int C = K * (static_cast<int>(r) + static_cast<int>(c));
            const Fp* v = st.value(arr[r * n + c]);
            std::size_t i = 0;
            st.shape().for_each([&](int d, int cc) {
                const int m = R + d, nn = C + cc;
                const Fp val = v[i++];
                if (m < 0 || nn < 0 || nn >= cols) return;
                if (m > out.depth || nn < m || nn > cols - 1 - m) return;
                out.set(m, nn, val);
                covered[static_cast<std::size_t>(m) * cols + nn] = 1;
            });
        }
    for (int m = 0; m <= out.depth; ++m)
        for (int nn = m; nn <= cols - 1 - m; ++nn)
            if (!covered[static_cast<std::size_t>(m) * cols + nn])
                throw std::logic_error("assemble: triangle cell not covered by any tile");
    return out;
}

}  // namespace nwall
