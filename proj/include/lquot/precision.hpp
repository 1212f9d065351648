#pragma once

#include <algorithm>

#include "lquot/errors.hpp"

namespace lquot {

// Working mantissa size plus guard bits used internally; results are produced
// at `bits` with computations carried at bits + guard_bits.
struct Precision {
    long bits;
    long guard_bits;

    explicit Precision(long b = 128, long g = -1)
        : bits(b), guard_bits(g >= 0 ? g : std::max(32L, b / 8)) {
        if (bits < 64)
            throw DomainError("precision must be at least 64 bits");
        if (guard_bits < 0 || guard_bits > bits)
            throw DomainError("guard bits must lie in [0, bits]");
    }

    long working() const { return bits + guard_bits; }

    Precision doubled() const { return Precision(2 * bits); }

    friend bool operator==(const Precision& a, const Precision& b) {
        return a.bits == b.bits && a.guard_bits == b.guard_bits;
    }
};

inline Precision min_precision(const Precision& a, const Precision& b) {
    return a.bits <= b.bits ? a : b;
}

} // namespace lquot
