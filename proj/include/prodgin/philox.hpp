#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace prodgin::rng {

// Philox4x32-10 (Salmon, Moraes, Dror, Shaw 2011). Counter-based: the value
// of block i under key (k0, k1) is a pure function, so disjoint streams are
// independent by construction and any chunk can be generated in isolation.
class Philox4x32 {
  public:
    using Block = std::array<std::uint32_t, 4>;

    Philox4x32(std::uint64_t key_lo, std::uint64_t key_hi)
        : k0_(static_cast<std::uint32_t>(key_lo)),
          k1_(static_cast<std::uint32_t>(key_lo >> 32)),
          k2_(static_cast<std::uint32_t>(key_hi)),
          k3_(static_cast<std::uint32_t>(key_hi >> 32)) {}

    // counter = (stream << 64) | index, split over the four 32-bit lanes.
    Block operator()(std::uint64_t stream, std::uint64_t index) const {
        std::uint32_t c0 = static_cast<std::uint32_t>(index);
        std::uint32_t c1 = static_cast<std::uint32_t>(index >> 32);
        std::uint32_t c2 = static_cast<std::uint32_t>(stream);
        std::uint32_t c3 = static_cast<std::uint32_t>(stream >> 32);
        // The key is 64-bit in the reference algorithm; fold the high seed
        // words in by xor so the full 128-bit seed participates.
        std::uint32_t k0 = k0_ ^ k2_;
        std::uint32_t k1 = k1_ ^ k3_;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0;
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            const std::uint32_t n0 = hi1 ^ c1 ^ k0;
            const std::uint32_t n1 = lo1;
            const std::uint32_t n2 = hi0 ^ c3 ^ k1;
            const std::uint32_t n3 = lo0;
            c0 = n0;
            c1 = n1;
            c2 = n2;
            c3 = n3;
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        return {c0, c1, c2, c3};
    }

  private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    std::uint32_t k0_, k1_, k2_, k3_;
};

// Sequential view of one (seed, stream) pair. Each RngStream owns a counter
// into its stream, so parallel workers on distinct streams never interact.
class RngStream {
  public:
    RngStream(std::uint64_t root_seed, std::uint64_t stream)
        : engine_(root_seed, 0x243F6A8885A308D3ull /* pi digits: domain split */),
          stream_(stream) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            block_ = engine_(stream_, index_++);
            pos_ = 0;
        }
        return block_[pos_++];
    }

    // Uniform on (0, 1): 53-bit mantissa, never exactly 0 or 1.
    double next_uniform() {
        const std::uint64_t hi = next_u32();
        const std::uint64_t lo = next_u32();
        const std::uint64_t u53 = ((hi << 32) | lo) >> 11;
        return (static_cast<double>(u53) + 0.5) * 0x1.0p-53;
    }

    double next_normal();

    std::uint64_t stream() const { return stream_; }

  private:
    Philox4x32 engine_;
    std::uint64_t stream_;
    std::uint64_t index_ = 0;
    Philox4x32::Block block_{};
    int pos_ = 4;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

inline double RngStream::next_normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    // Marsaglia polar method.
    double u, v, s;
    do {
        u = 2.0 * next_uniform() - 1.0;
        v = 2.0 * next_uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_normal_ = v * f;
    has_cached_ = true;
    return u * f;
}

inline constexpr const char* kGeneratorId = "philox4x32-10";

}  // namespace prodgin::rng
