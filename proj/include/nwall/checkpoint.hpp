#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>

#include "nwall/tiling.hpp"

namespace nwall {

struct CorruptCheckpoint : std::runtime_error {
    explicit CorruptCheckpoint(const std::string& why)
        : std::runtime_error("corrupt checkpoint: " + why) {}
};

namespace detail {

inline constexpr char kMagic[4] = {'N', 'W', 'T', 'S'};
inline constexpr std::uint32_t kVersion = 1;

struct BodyHash {  // FNV-1a 64 over the body bytes
    std::uint64_t h = 1469598103934665603ull;
    void feed(const void* p, std::size_t len) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    }
};

template <typename T>
void put_le(std::ostream& os, T v, BodyHash* hash) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(buf), sizeof(T));
    if (hash) hash->feed(buf, sizeof(T));
}

template <typename T>
T get_le(std::istream& is, BodyHash* hash) {
    unsigned char buf[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(buf), sizeof(T)))
        throw CorruptCheckpoint("truncated file");
    if (hash) hash->feed(buf, sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
    return v;
}

}  // namespace detail

/// Binary snapshot of the store and the frontier cursor; loading resumes
/// the closure mid-frontier bit-exactly.
inline void checkpoint_save(const TileStore& st, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open checkpoint for writing: " + path);
    os.write(detail::kMagic, 4);
    detail::put_le<std::uint32_t>(os, detail::kVersion, nullptr);
    detail::put_le<std::uint32_t>(os, st.field().p(), nullptr);
    detail::put_le<std::uint32_t>(os, st.tile_length(), nullptr);
    detail::put_le<std::uint64_t>(os, st.size(), nullptr);
    detail::put_le<std::uint64_t>(os, st.cursor, nullptr);
    detail::BodyHash hash;
    for (TileId id = 0; id < st.size(); ++id) {
        os.write(reinterpret_cast<const char*>(st.value(id)),
                 static_cast<std::streamsize>(st.value_bytes()));
        hash.feed(st.value(id), st.value_bytes());
        for (TileId im : st.images(id)) detail::put_le<std::uint32_t>(os, im, &hash);
        for (TileId sc : st.scaffolding(id)) detail::put_le<std::uint32_t>(os, sc, &hash);
    }
    detail::put_le<std::uint64_t>(os, hash.h, nullptr);
    if (!os) throw std::runtime_error("checkpoint write failed: " + path);
}

inline std::unique_ptr<TileStore> checkpoint_load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open checkpoint: " + path);
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, detail::kMagic, 4) != 0)
        throw CorruptCheckpoint("bad magic");
    if (detail::get_le<std::uint32_t>(is, nullptr) != detail::kVersion)
        throw CorruptCheckpoint("unsupported version");
    const std::uint32_t p = detail::get_le<std::uint32_t>(is, nullptr);
    const std::uint32_t tile_length = detail::get_le<std::uint32_t>(is, nullptr);
    const std::uint64_t count = detail::get_le<std::uint64_t>(is, nullptr);
    const std::uint64_t cursor = detail::get_le<std::uint64_t>(is, nullptr);
    if (count < 2 || cursor < 2 || cursor > count) throw CorruptCheckpoint("bad counts");

    auto st = std::make_unique<TileStore>(PrimeField(p), tile_length);
    detail::BodyHash hash;
    std::vector<Fp> value(st->value_bytes());
    for (std::uint64_t id = 0; id < count; ++id) {
        if (!is.read(reinterpret_cast<char*>(value.data()),
                     static_cast<std::streamsize>(value.size())))
            throw CorruptCheckpoint("truncated tile record");
        hash.feed(value.data(), value.size());
        std::array<TileId, 4> images;
        for (TileId& im : images) im = detail::get_le<std::uint32_t>(is, &hash);
        std::array<TileId, 3> scaf;
        for (TileId& sc : scaf) sc = detail::get_le<std::uint32_t>(is, &hash);
        if (id < 2) {
            // the constructor already interned the built-ins; check identity
            if (std::memcmp(st->value(static_cast<TileId>(id)), value.data(), value.size()) != 0)
                throw CorruptCheckpoint("built-in tile mismatch");
        } else if (st->intern(value.data(), scaf) != id) {
            throw CorruptCheckpoint("duplicate tile value");
        }
        st->images(static_cast<TileId>(id)) = images;
    }
    const std::uint64_t want = detail::get_le<std::uint64_t>(is, nullptr);
    if (want != hash.h) throw CorruptCheckpoint("checksum mismatch");
    st->cursor = cursor;
    return st;
}

}  // namespace nwall
