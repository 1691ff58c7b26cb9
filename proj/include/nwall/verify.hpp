#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "nwall/tiling.hpp"

namespace nwall {

/// Four tiles in the diamond formation: north on top, west left, east right,
/// south on the bottom. The south's scaffolding inside the formation is
/// exactly (east, north, west).
struct FourTuple {
    TileId w = kNoTile, n = kNoTile, s = kNoTile, e = kNoTile;
    bool operator==(const FourTuple&) const = default;
};

namespace detail {
struct TupleKey {
    std::uint64_t lo, hi;
    bool operator==(const TupleKey&) const = default;
};
struct TupleKeyHash {
    std::size_t operator()(const TupleKey& k) const {
        std::uint64_t h = k.lo * 0x9e3779b97f4a7c15ull;
        h ^= (k.hi * 0xc2b2ae3d27d4eb4full) + (h >> 29);
        h ^= h >> 32;
        return static_cast<std::size_t>(h);
    }
};
inline TupleKey key_of(const FourTuple& t) {
    return {(static_cast<std::uint64_t>(t.w) << 32) | t.n,
            (static_cast<std::uint64_t>(t.s) << 32) | t.e};
}
}  // namespace detail

/// Algorithm 2.1: seed with the image of every letter, then close under the
/// five confluence formations of each 16-tile image block. Sampled tuples
/// whose south is position-pinned (built-ins, zeroth-row tiles) carry row
/// structure the frame constraints cannot regenerate; they are verified by
/// construction instead and never enter the list.
inline std::vector<FourTuple> enumerate_four_tuples(const TileStore& st) {
    std::vector<FourTuple> list;
    std::unordered_map<detail::TupleKey, std::uint32_t, detail::TupleKeyHash> seen;
    auto add = [&](const FourTuple& t, bool sampled) {
        if (sampled && position_pinned(st, t.s)) return;
        if (seen.emplace(detail::key_of(t), static_cast<std::uint32_t>(list.size())).second)
            list.push_back(t);
    };
    for (TileId id = 0; id < st.size(); ++id) {
        const auto& im = st.images(id);
        add({im[0], im[1], im[2], im[3]}, false);
    }
    for (std::size_t cur = 0; cur < list.size(); ++cur) {
        const FourTuple t = list[cur];
        const auto W = st.images(t.w);
        const auto N = st.images(t.n);
        const auto S = st.images(t.s);
        const auto E = st.images(t.e);
        add({W[1], N[0], W[3], N[2]}, true);  // upper
        add({N[2], N[3], E[0], E[1]}, true);  // right
        add({W[2], W[3], S[0], S[1]}, true);  // left
        add({S[1], E[0], S[3], E[2]}, true);  // lower
        add({W[3], N[2], S[1], E[0]}, true);  // middle
    }
    return list;
}

/// The four sub-blocks of every image block are images of single letters;
/// they must already be in the closed list. Cheap cross-check of closure.
inline bool closure_holds(const TileStore& st, const std::vector<FourTuple>& tuples) {
    std::unordered_map<detail::TupleKey, char, detail::TupleKeyHash> seen;
    for (const auto& t : tuples) seen.emplace(detail::key_of(t), 1);
    for (const auto& t : tuples)
        for (TileId m : {t.w, t.n, t.s, t.e}) {
            const auto& im = st.images(m);
            if (!seen.count(detail::key_of({im[0], im[1], im[2], im[3]}))) return false;
        }
    return true;
}

struct VerifyResult {
    bool pass = true;
    std::size_t checked = 0;
    std::size_t skipped = 0;
    std::optional<FourTuple> failure;    // first failing tuple in list order
    std::vector<Fp> expected, computed;  // southern values of that tuple
};

/// Algorithm 2.2: recompute every tuple's southern tile from the (east,
/// north, west) values with the same stitched-patch frame-constraint fill
/// and compare. Built-in souths are skipped (not frame-generable).
inline VerifyResult verify_four_tuples(const TileStore& st, const std::vector<FourTuple>& tuples,
                                       unsigned threads = 1) {
    const int K = st.shape().k;
    std::atomic<std::size_t> first_fail{tuples.size()};
    std::atomic<std::size_t> skipped{0};

    auto verify_one = [&](const FourTuple& t, PatchScratch& scratch, std::vector<Fp>& got) {
        scratch.reset(K);
        scratch.paste(st, t.w, 0, 0);
        scratch.paste(st, t.n, -K, K);
        scratch.paste(st, t.e, 0, 2 * K);
        auto look = [&](int m, int n) { return scratch.get(m, n); };
        std::size_t i = 0;
        bool ok = true;
        st.shape().for_each([&](int d, int c) {
            if (!ok) return;
            int m = K + d, n = K + c;
            Fp v;
            try {
                v = fc_value(st.field(), look, m, n, /*clipped_zero=*/false);
            } catch (const WindowTooLarge&) {
                ok = false;
                return;
            }
            scratch.set(m, n, v);
            got[i++] = v;
        });
        if (!ok) return false;
        return std::memcmp(got.data(), st.value(t.s), st.value_bytes()) == 0;
    };

    auto run_range = [&](std::size_t lo, std::size_t hi) {
        PatchScratch scratch;
        std::vector<Fp> got(st.value_bytes());
        std::size_t local_skipped = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            if (i >= first_fail.load(std::memory_order_relaxed)) break;
            const FourTuple& t = tuples[i];
            if (t.s == kSigmaMinus1 || t.s == kSigmaZero) {
                ++local_skipped;
                continue;
            }
            if (!verify_one(t, scratch, got)) {
                std::size_t expect = tuples.size();
                while (!first_fail.compare_exchange_weak(expect, i) && expect > i) {
                }
            }
        }
        skipped.fetch_add(local_skipped);
    };

    if (threads <= 1) {
        run_range(0, tuples.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (tuples.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t lo = t * chunk, hi = std::min(tuples.size(), lo + chunk);
            if (lo < hi) pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    VerifyResult res;
    res.skipped = skipped.load();
    res.checked = tuples.size() - res.skipped;
    const std::size_t fail = first_fail.load();
    if (fail < tuples.size()) {
        res.pass = false;
        res.failure = tuples[fail];
        res.expected.assign(st.value(res.failure->s), st.value(res.failure->s) + st.value_bytes());
        PatchScratch scratch;
        res.computed.assign(st.value_bytes(), 0);
        verify_one(*res.failure, scratch, res.computed);
    }
    return res;
}

}  // namespace nwall
