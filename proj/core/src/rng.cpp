#include "latred/rng.hpp"

#include <cmath>
#include <numbers>

namespace latred {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a64(std::string_view s) { return fnv1a64(s.data(), s.size()); }

Rng::Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
}

Rng Rng::substream(std::uint64_t seed, std::string_view purpose,
                   std::initializer_list<std::uint64_t> indices) {
    std::uint64_t sm = seed ^ fnv1a64(purpose);
    std::uint64_t key = splitmix64(sm);
    for (std::uint64_t idx : indices) {
        sm = key ^ (idx + 0x9e3779b97f4a7c15ULL);
        key = splitmix64(sm);
    }
    return Rng(key);
}

static inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

std::uint64_t Rng::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u in (0, 1] keeps the log finite.
    const double u = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 2.0 * std::numbers::pi * v;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

Complex Rng::cnormal() {
    const double u = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double v = uniform01();
    // |z|^2 ~ Exp(1) and uniform phase give CN(0, 1).
    const double r = std::sqrt(-std::log(u));
    const double a = 2.0 * std::numbers::pi * v;
    return {r * std::cos(a), r * std::sin(a)};
}

std::vector<std::uint8_t> Rng::bits(std::size_t count) {
    std::vector<std::uint8_t> out(count);
    std::uint64_t word = 0;
    int left = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (left == 0) {
            word = next_u64();
            left = 64;
        }
        out[i] = static_cast<std::uint8_t>(word & 1u);
        word >>= 1;
        --left;
    }
    return out;
}

}  // namespace latred
