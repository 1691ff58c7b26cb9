#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nwall {

// Canonical residue in [0, p). The modulus is carried by PrimeField, not per element.
using Fp = std::uint8_t;

struct ZeroInversion : std::logic_error {
    ZeroInversion() : std::logic_error("inverse of zero requested") {}
};

inline bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Arithmetic context for F_p, p prime, p <= 255 so residues pack one per byte.
/// Inverses are precomputed; every operation returns the canonical residue.
class PrimeField {
public:
    explicit PrimeField(unsigned p) : p_(p) {
        if (p < 2 || p > 255)
            throw std::invalid_argument("modulus must be in [2, 255], got " + std::to_string(p));
        if (!is_prime(p))
            throw std::invalid_argument(std::to_string(p) + " is not prime");
        inv_.resize(p, 0);
        for (unsigned a = 1; a < p; ++a) {
            unsigned b = 1;
            while (a * b % p != 1) ++b;
            inv_[a] = static_cast<Fp>(b);
        }
    }

    unsigned p() const { return p_; }

    Fp add(Fp a, Fp b) const {
        unsigned s = unsigned(a) + b;
        return static_cast<Fp>(s >= p_ ? s - p_ : s);
    }
    Fp neg(Fp a) const { return static_cast<Fp>(a == 0 ? 0 : p_ - a); }
    Fp sub(Fp a, Fp b) const { return add(a, neg(b)); }
    Fp mul(Fp a, Fp b) const { return static_cast<Fp>(unsigned(a) * b % p_); }
    Fp inv(Fp a) const {
        if (a == 0) throw ZeroInversion{};
        return inv_[a];
    }
    Fp div(Fp a, Fp b) const { return mul(a, inv(b)); }

    /// (-1)^e as a canonical residue.
    Fp sign(long long e) const { return (e % 2 == 0) ? Fp{1} : neg(1); }

    /// Reduce an arbitrary integer to its canonical residue.
    Fp reduce(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<Fp>(r);
    }

    Fp pow(Fp a, unsigned long long e) const {
        Fp r = 1, base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

private:
    unsigned p_;
    std::vector<Fp> inv_;
};

}  // namespace nwall
