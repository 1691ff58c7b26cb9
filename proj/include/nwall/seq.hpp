#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nwall/ff.hpp"

namespace nwall {

using Letter = std::uint32_t;

struct IndexZero : std::domain_error {
    IndexZero() : std::domain_error("paperfolding index must be >= 1") {}
};
struct NotProlongable : std::runtime_error {
    NotProlongable() : std::runtime_error("start letter is not the first letter of its own image") {}
};
struct DegreeZero : std::invalid_argument {
    DegreeZero() : std::invalid_argument("substitution polynomial must have degree >= 1") {}
};

/// n-th level paperfolding value at index i >= 1: strip the 2-adic part,
/// reduce the odd part mod 2^(n+1), map 1,3,5,... -> 0,1,2,...
inline unsigned paperfolding(unsigned level, unsigned long long i) {
    if (level < 1) throw std::invalid_argument("paperfolding level must be >= 1");
    if (i == 0) throw IndexZero{};
    unsigned long long odd = i >> std::countr_zero(i);
    unsigned long long r = odd & ((1ull << (level + 1)) - 1);
    return static_cast<unsigned>((r - 1) / 2);
}

/// Uniform k-morphism on letters 0..alphabet_size-1.
struct Morphism1D {
    unsigned alphabet_size = 0;
    unsigned k = 0;
    std::vector<std::vector<Letter>> images;

    void validate() const {
        if (images.size() != alphabet_size)
            throw std::invalid_argument("morphism image table size mismatch");
        for (const auto& img : images) {
            if (img.size() != k) throw std::invalid_argument("non-uniform morphism image");
            for (Letter l : img)
                if (l >= alphabet_size) throw std::invalid_argument("image letter out of range");
        }
    }
};

/// d-coding: each letter maps to a block of d field residues.
struct Coding {
    unsigned alphabet_size = 0;
    unsigned d = 0;
    std::vector<std::vector<Fp>> images;

    void validate() const {
        if (images.size() != alphabet_size)
            throw std::invalid_argument("coding image table size mismatch");
        for (const auto& img : images)
            if (img.size() != d) throw std::invalid_argument("non-uniform coding image");
    }
};

struct SequenceSpec {
    Morphism1D morphism;
    Coding coding;
    Letter start = 0;
    std::string name;  // diagnostic only
};

inline bool prolongable(const Morphism1D& m, Letter start) {
    return start < m.alphabet_size && m.images[start][0] == start;
}

/// First `length` letters of the fixed point phi^omega(start).
/// Grows a buffer by repeated application, truncating early at `length`.
inline std::vector<Letter> fixed_point_prefix(const Morphism1D& m, Letter start, std::size_t length) {
    m.validate();
    if (!prolongable(m, start)) throw NotProlongable{};
    if (length == 0) return {};
    std::vector<Letter> word{start};
    if (m.k == 1) return std::vector<Letter>(length, start);  // 1-morphism orbit stays put
    while (word.size() < length) {
        std::vector<Letter> next;
        next.reserve(std::min(length, word.size() * m.k));
        for (Letter l : word) {
            for (Letter x : m.images[l]) {
                next.push_back(x);
                if (next.size() == length) break;
            }
            if (next.size() == length) break;
        }
        word.swap(next);
    }
    return word;
}

inline std::vector<Fp> apply_coding(const Coding& c, const std::vector<Letter>& word) {
    std::vector<Fp> out;
    out.reserve(word.size() * c.d);
    for (Letter l : word) {
        if (l >= c.alphabet_size) throw std::invalid_argument("letter out of coding range");
        const auto& img = c.images[l];
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

/// k-compression: coding'(s) = coding(morphism(s)); block length becomes d*k.
inline Coding compress(const Morphism1D& m, const Coding& c) {
    if (m.alphabet_size != c.alphabet_size)
        throw std::invalid_argument("compression requires a shared alphabet");
    Coding out;
    out.alphabet_size = c.alphabet_size;
    out.d = c.d * m.k;
    out.images.resize(out.alphabet_size);
    for (Letter l = 0; l < m.alphabet_size; ++l) {
        out.images[l].reserve(out.d);
        for (Letter x : m.images[l])
            out.images[l].insert(out.images[l].end(), c.images[x].begin(), c.images[x].end());
    }
    return out;
}

/// Repeatedly k-compress until the block length reaches `d` (d must be d0 * k^j).
inline Coding compress_to_block(const Morphism1D& m, Coding c, unsigned d) {
    while (c.d < d) c = compress(m, c);
    if (c.d != d)
        throw std::invalid_argument("coding block length cannot reach requested size by compression");
    return c;
}

/// The coded sequence prefix: coding applied to the fixed point, truncated to `length` residues.
inline std::vector<Fp> coded_prefix(const SequenceSpec& spec, std::size_t length) {
    std::size_t letters = (length + spec.coding.d - 1) / spec.coding.d;
    auto word = fixed_point_prefix(spec.morphism, spec.start, letters);
    auto out = apply_coding(spec.coding, word);
    out.resize(length);
    return out;
}

// ---------------------------------------------------------------------------
// Built-in sequences. pf1 is Example "psi/pi", pf2 the 12-letter chi/upsilon
// system, thue-morse ships for the unbounded-window negative tests.
// ---------------------------------------------------------------------------

inline SequenceSpec builtin_spec(const std::string& name, const PrimeField& field) {
    SequenceSpec s;
    s.name = name;
    auto reduce_coding = [&](std::vector<std::vector<int>> raw) {
        Coding c;
        c.alphabet_size = static_cast<unsigned>(raw.size());
        c.d = 1;
        for (auto& img : raw) {
            std::vector<Fp> v;
            for (int x : img) v.push_back(field.reduce(x));
            c.images.push_back(std::move(v));
        }
        return c;
    };
    if (name == "pf1") {
        s.morphism = {4, 2, {{0, 1}, {2, 1}, {0, 3}, {2, 3}}};
        s.coding = reduce_coding({{0}, {0}, {1}, {1}});
    } else if (name == "pf2") {
        s.morphism = {12, 2,
                      {{0, 1}, {2, 3}, {4, 5}, {6, 3}, {0, 7}, {2, 8},
                       {4, 9}, {2, 10}, {6, 8}, {2, 11}, {6, 10}, {6, 11}}};
        s.coding = reduce_coding({{0}, {0}, {1}, {0}, {2}, {1}, {3}, {2}, {1}, {3}, {2}, {3}});
    } else if (name == "thue-morse") {
        s.morphism = {2, 2, {{0, 1}, {1, 0}}};
        s.coding = reduce_coding({{0}, {1}});
    } else {
        throw std::invalid_argument("unknown built-in sequence: " + name);
    }
    s.start = 0;
    s.morphism.validate();
    s.coding.validate();
    return s;
}

// ---------------------------------------------------------------------------
// Morphism spec files. Line oriented:
//     start A
//     A -> AB          (morphism rule, single-character letters)
//     A => 0           (coding rule, block of integers, space separated)
// Blank lines and lines starting with '#' are ignored. Coding values are
// reduced into the field. Every letter needs one rule of each kind.
// ---------------------------------------------------------------------------

inline SequenceSpec parse_spec(std::istream& in, const PrimeField& field) {
    std::map<char, std::string> morph;
    std::map<char, std::vector<int>> code;
    char start = 0;
    bool have_start = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("spec line " + std::to_string(lineno) + ": " + why);
        };
        if (tok == "start") {
            std::string v;
            if (!(ls >> v) || v.size() != 1) fail("expected: start <letter>");
            start = v[0];
            have_start = true;
            continue;
        }
        if (tok.size() != 1) fail("letter must be a single character");
        std::string arrow;
        if (!(ls >> arrow)) fail("expected -> or => after letter");
        if (arrow == "->") {
            std::string img;
            if (!(ls >> img) || img.empty()) fail("expected image word");
            if (!morph.emplace(tok[0], img).second) fail("duplicate morphism rule");
        } else if (arrow == "=>") {
            std::vector<int> vals;
            int v;
            while (ls >> v) vals.push_back(v);
            if (vals.empty()) fail("expected coding values");
            if (!code.emplace(tok[0], vals).second) fail("duplicate coding rule");
        } else {
            fail("expected -> or =>");
        }
    }
    if (morph.empty()) throw std::invalid_argument("spec has no morphism rules");
    if (!have_start) throw std::invalid_argument("spec has no start letter");

    std::map<char, Letter> id;
    for (auto& [ch, img] : morph) id.emplace(ch, static_cast<Letter>(id.size()));
    auto lookup = [&](char ch) {
        auto it = id.find(ch);
        if (it == id.end())
            throw std::invalid_argument(std::string("letter '") + ch + "' has no morphism rule");
        return it->second;
    };

    SequenceSpec s;
    s.morphism.alphabet_size = static_cast<unsigned>(id.size());
    s.morphism.k = static_cast<unsigned>(morph.begin()->second.size());
    s.morphism.images.resize(id.size());
    for (auto& [ch, img] : morph) {
        std::vector<Letter> w;
        for (char c : img) w.push_back(lookup(c));
        s.morphism.images[id[ch]] = std::move(w);
    }
    s.coding.alphabet_size = s.morphism.alphabet_size;
    s.coding.d = code.empty() ? 0 : static_cast<unsigned>(code.begin()->second.size());
    s.coding.images.resize(id.size());
    for (auto& [ch, vals] : code) {
        std::vector<Fp> v;
        for (int x : vals) v.push_back(field.reduce(x));
        s.coding.images[lookup(ch)] = std::move(v);
    }
    for (auto& [ch, l] : id)
        if (s.coding.images[l].empty())
            throw std::invalid_argument(std::string("letter '") + ch + "' has no coding rule");
    s.start = lookup(start);
    s.morphism.validate();
    s.coding.validate();
    if (!prolongable(s.morphism, s.start)) throw NotProlongable{};
    return s;
}

// ---------------------------------------------------------------------------
// Laurent substitution. Coefficients of a polynomial are stored lowest degree
// first; Theta(p(t)) = sum_{i>=1} a_i p(t)^{-i} is expanded as a truncated
// series in x = 1/t.
// ---------------------------------------------------------------------------

struct Poly {
    std::vector<Fp> coeffs;  // lowest degree first; leading coefficient nonzero

    unsigned degree() const {
        return coeffs.empty() ? 0 : static_cast<unsigned>(coeffs.size() - 1);
    }
    void validate() const {
        if (coeffs.size() < 2 || coeffs.back() == 0) throw DegreeZero{};
    }
};

/// First N coefficients (of t^-1 .. t^-N) of sum_i a_i p(t)^-i.
/// Needs at least floor(N / deg p) input coefficients.
inline std::vector<Fp> laurent_substitute(const std::vector<Fp>& a, const Poly& pt, unsigned N,
                                          const PrimeField& field) {
    pt.validate();
    const unsigned m = pt.degree();
    const unsigned terms = N / m;
    if (a.size() < terms)
        throw std::invalid_argument("laurent_substitute: not enough input coefficients");
    // p(t) = t^m * u(x) with x = 1/t; invert u as a truncated power series.
    std::vector<Fp> u(N + 1, 0);
    for (unsigned j = 0; j <= N && j <= m; ++j) u[j] = pt.coeffs[m - j];
    std::vector<Fp> v(N + 1, 0);
    v[0] = field.inv(u[0]);
    for (unsigned i = 1; i <= N; ++i) {
        Fp s = 0;
        for (unsigned j = 1; j <= i; ++j) s = field.add(s, field.mul(u[j], v[i - j]));
        v[i] = field.neg(field.mul(v[0], s));
    }
    // accumulate a_i * x^(m i) * v^i
    std::vector<Fp> out(N + 1, 0), cur(N + 1, 0), next(N + 1, 0);
    cur[0] = 1;
    for (unsigned i = 1; i <= terms; ++i) {
        std::fill(next.begin(), next.end(), Fp{0});
        for (unsigned x = 0; x <= N; ++x) {
            if (cur[x] == 0) continue;
            for (unsigned y = 0; x + y <= N; ++y)
                next[x + y] = field.add(next[x + y], field.mul(cur[x], v[y]));
        }
        cur.swap(next);
        const unsigned shift = m * i;
        const Fp ai = a[i - 1];
        if (ai != 0)
            for (unsigned x = 0; x + shift <= N; ++x)
                out[x + shift] = field.add(out[x + shift], field.mul(ai, cur[x]));
    }
    return {out.begin() + 1, out.end()};
}

}  // namespace nwall
