#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace evosizer::core {

/// Deterministic random stream keyed by a seed and a list of integer keys.
/// The key path is hashed into a SplitMix64 counter; one stream per
/// (run, iteration, phase, candidate).
class RngStream {
public:
    RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);
    RngStream(std::uint64_t seed, std::span<const std::uint64_t> keys);

    /// Child stream addressed by extra keys; does not advance this stream.
    [[nodiscard]] RngStream substream(std::initializer_list<std::uint64_t> keys) const;

    std::uint64_t next_u64() noexcept
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform in [lo, hi]; lo == hi returns lo.
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n). n must be positive.
    std::size_t index(std::size_t n);
    /// Uniform integer in [lo, hi].
    std::size_t integer(std::size_t lo, std::size_t hi);
    /// k distinct indices from [0, n), in draw order.
    std::vector<std::size_t> distinct_indices(std::size_t n, std::size_t k);

    [[nodiscard]] const std::vector<std::uint64_t>& key_path() const noexcept { return keys_; }

private:
    std::vector<std::uint64_t> keys_;
    std::uint64_t state_ = 0;
};

/// Stream for run `stream_id` under `master_seed`.
[[nodiscard]] RngStream spawn_rng_stream(std::uint64_t master_seed, std::uint64_t stream_id);

} // namespace evosizer::core
