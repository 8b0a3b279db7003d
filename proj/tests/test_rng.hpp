#pragma once

#include <cstdint>

#include "cflab/bigint.hpp"

// Deterministic generator for test inputs (splitmix64).
struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1p-53; }

    cflab::BigInt next_bigint(std::size_t limbs) {
        cflab::BigInt v;
        for (std::size_t i = 0; i < limbs; ++i) {
            v <<= 64;
            v += cflab::BigInt{static_cast<unsigned long long>(next())};
        }
        return v;
    }
};
