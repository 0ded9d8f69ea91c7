#pragma once

#include <cstdint>
#include <random>

namespace d2d {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to decorrelate seeds that differ in few bits.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derives the seed for a named sub-stream of a master seed. Streams with
// different tags are decorrelated; the mapping is fixed so that a master
// seed reproduces the same stream family on every run.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_tag) {
    return mix64(master ^ mix64(stream_tag));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t stream_tag) {
    return Rng(derive_seed(master, stream_tag));
}

} // namespace d2d
