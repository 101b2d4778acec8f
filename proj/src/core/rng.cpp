#include "evosizer/core/rng.hpp"

#include <limits>
#include <numeric>

#include "evosizer/core/errors.hpp"

namespace evosizer::core {

namespace {

std::uint64_t mix(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Sponge-style absorb of the key path; the length goes in first so {a, 0}
// and {a} differ.
std::uint64_t hash_keys(const std::vector<std::uint64_t>& keys)
{
    std::uint64_t h = mix(0x6a09e667f3bcc909ULL ^ keys.size());
    for (std::uint64_t k : keys) {
        h = mix(h ^ mix(k + 0x9e3779b97f4a7c15ULL));
    }
    return h;
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys)
    : RngStream(seed, std::span<const std::uint64_t>(keys.begin(), keys.size()))
{
}

RngStream::RngStream(std::uint64_t seed, std::span<const std::uint64_t> keys)
{
    keys_.reserve(keys.size() + 1);
    keys_.push_back(seed);
    keys_.insert(keys_.end(), keys.begin(), keys.end());
    state_ = hash_keys(keys_);
}

RngStream RngStream::substream(std::initializer_list<std::uint64_t> keys) const
{
    std::vector<std::uint64_t> path(keys_.begin() + 1, keys_.end());
    path.insert(path.end(), keys.begin(), keys.end());
    return RngStream(keys_.front(), std::span<const std::uint64_t>(path));
}

double RngStream::uniform()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi)
{
    if (lo == hi) {
        return lo;
    }
    const double v = lo + (hi - lo) * uniform();
    return v > hi ? hi : v;
}

std::size_t RngStream::index(std::size_t n)
{
    require(n > 0, "RngStream::index: empty range");
    const std::uint64_t range = n;
    // Rejection sampling keeps the result unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t draw = next_u64();
    while (draw >= limit) {
        draw = next_u64();
    }
    return static_cast<std::size_t>(draw % range);
}

std::size_t RngStream::integer(std::size_t lo, std::size_t hi)
{
    require(lo <= hi, "RngStream::integer: lo > hi");
    return lo + index(hi - lo + 1);
}

std::vector<std::size_t> RngStream::distinct_indices(std::size_t n, std::size_t k)
{
    require(k <= n, "RngStream::distinct_indices: k > n");
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + index(n - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

RngStream spawn_rng_stream(std::uint64_t master_seed, std::uint64_t stream_id)
{
    return RngStream(master_seed, {stream_id});
}

} // namespace evosizer::core
