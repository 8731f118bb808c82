#pragma once
//
// Counter-based deterministic generator. Output i of stream (seed, stream)
// is the SplitMix64 finalizer applied to key + (i + 1) * gamma, so any
// trial can be regenerated in isolation from (seed, trial index).
//

#include <cstdint>
#include <limits>
#include <string_view>

namespace sofic {

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class CounterRng
{
  public:
    using result_type = std::uint64_t;

    static constexpr std::string_view name = "splitmix64-counter";
    static constexpr std::uint64_t gamma = 0x9e3779b97f4a7c15ULL;

    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : key_(splitmix64_mix(seed + gamma) ^ splitmix64_mix(stream * 0xd1b54a32d192ed03ULL + 0x2545f4914f6cdd1dULL))
    {
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return splitmix64_mix(key_ + (++counter_) * gamma); }

    std::uint64_t counter() const noexcept { return counter_; }

    // Uniform double in [0, 1) from the top 53 bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Child seed for an indexed sub-experiment.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    return splitmix64_mix(seed ^ splitmix64_mix(index + 0x632be59bd9b4e019ULL));
}

} // namespace sofic
