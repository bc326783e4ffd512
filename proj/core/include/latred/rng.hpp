#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <vector>

#include "latred/types.hpp"

namespace latred {

// xoshiro256++ generator with splitmix64-derived substreams.
//
// Substreams are keyed by (seed, purpose, indices...) so that independent
// parts of a run (channels, bit streams, noise draws) never share state and
// adding one purpose does not perturb another. Gaussian variates come from a
// Box-Muller transform on 53-bit uniforms, so every draw is reproducible
// across platforms and thread schedules.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    static Rng substream(std::uint64_t seed, std::string_view purpose,
                         std::initializer_list<std::uint64_t> indices);

    std::uint64_t next_u64();

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01();

    // Standard real normal N(0, 1).
    double gaussian();

    // Circularly-symmetric complex normal CN(0, 1): real and imaginary
    // parts are independent N(0, 1/2).
    Complex cnormal();

    // count bits, each 0 or 1.
    std::vector<std::uint8_t> bits(std::size_t count);

  private:
    std::array<std::uint64_t, 4> s_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64(std::string_view s);

}  // namespace latred
