#pragma once

#include <array>
#include <cstdint>

namespace esopt {

// Philox 4x32-10 counter-based generator (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3", SC 2011). Stateless: every 128-bit block is
// a pure function of (key, counter), so per-path streams are reproducible
// under any scheduling.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::uint64_t key,
                                              std::uint64_t counter);
};

/// Uniform in the open interval (0, 1) with 53 random bits.
double uniform_open01(std::uint32_t hi, std::uint32_t lo);

/// Standard normal draw for stream `seed`, index `index`: inverse normal
/// CDF applied to the uniform built from lanes 0 and 1 of one Philox block.
double standard_normal(std::uint64_t seed, std::uint64_t index);

}  // namespace esopt
