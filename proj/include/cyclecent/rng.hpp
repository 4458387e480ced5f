#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cyclecent {

/// Seeds an independent generator from (master seed, purpose tag, replicate
/// index). Replicates can be drawn in any order, or concurrently, and still
/// reproduce bit for bit.
inline std::mt19937_64 derived_stream(std::uint64_t seed, std::string_view tag,
                                      std::uint64_t replicate = 0) {
    // FNV-1a over the tag.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(replicate),
                      static_cast<std::uint32_t>(replicate >> 32)};
    return std::mt19937_64(seq);
}

/// Uniform double in [0, 1) built from the top 53 bits, so results do not
/// depend on the standard library's distribution implementation.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n). Lemire's multiply-shift; the bias is below
/// 2^-40 for every n used here.
inline std::uint64_t uniform_index(std::mt19937_64& gen, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(gen()) * n) >> 64);
}

}  // namespace cyclecent
