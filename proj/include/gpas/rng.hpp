#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace gpas {

/// Philox4x32-10 block function (Salmon et al., Random123). Maps a 128-bit
/// counter and 64-bit key to 128 pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based random stream.
///
/// The key is the 64-bit seed; the counter is (block index, stream_id).
/// Each stream therefore owns a disjoint 2^64-block slice of the Philox
/// counter space, so distinct stream ids never overlap and the same
/// (seed, stream_id) always reproduces the same sequence. A stream is a
/// single-owner value; copy it to fork an identical replay.
///
/// Satisfies UniformRandomBitGenerator for 64-bit results.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
        : seed_(seed), stream_id_(stream_id) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint32_t next_u32() noexcept {
        if (pos_ == 4) refill();
        return buffer_[pos_++];
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t hi = next_u32();
        const std::uint64_t lo = next_u32();
        return (hi << 32) | lo;
    }

    /// Uniform on [0,1), 53-bit resolution.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0,1): never returns 0, safe for log().
    double open_uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    result_type operator()() noexcept { return next_u64(); }
    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int pos_ = 4;
};

/// Stream layout used by replicate experiments: each replicate gets a block of
/// `kRolesPerReplicate` consecutive stream ids, one per independent role
/// (source draws, auxiliary Beta/Bernoulli draws, ...).
inline constexpr std::uint64_t kRolesPerReplicate = 8;

inline RngStream replicate_stream(std::uint64_t seed, std::uint64_t replicate,
                                  std::uint64_t role) noexcept {
    return RngStream(seed, replicate * kRolesPerReplicate + role);
}

}  // namespace gpas
