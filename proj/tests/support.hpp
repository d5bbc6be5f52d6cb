#pragma once

#include "chamber/descriptor.hpp"

#include <random>
#include <string>

namespace chamber::test {

inline std::string fixture(const std::string& name) { return std::string(CHAMBER_FIXTURES) + "/" + name; }

inline IntVec random_vec(std::mt19937_64& rng, std::size_t rank, Int lo = -5, Int hi = 5) {
    std::uniform_int_distribution<Int> d(lo, hi);
    IntVec v(rank);
    for (auto& x : v) x = d(rng);
    return v;
}

inline DivisorClass random_divisor(std::mt19937_64& rng, std::size_t rank, Int lo = -5, Int hi = 5) {
    return DivisorClass(random_vec(rng, rank, lo, hi));
}

/// A nonzero rational p/q with |p| <= 40, 1 <= q <= 40, never equal to 1.
inline Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<Int> num(-40, 40), den(1, 40);
    while (true) {
        const Rational r(num(rng), den(rng));
        if (r != 0 && r != 1) return r;
    }
}

}  // namespace chamber::test
