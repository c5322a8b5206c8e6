#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace primedensity {

enum class PiSource { Sieved, Combinatorial, EmbeddedConstant };

std::string_view to_string(PiSource source);

// An exact prime count pi(x) = #{p prime : p <= x} together with how it was obtained.
struct PiValue {
    std::uint64_t x = 0;
    std::uint64_t count = 0;
    PiSource source = PiSource::Sieved;

    friend bool operator==(const PiValue&, const PiValue&) = default;
};

// Resource guards for the sieve-based operations.
//
// The memory budget can be overridden through the PRIMEDENSITY_SIEVE_MEMORY_MB
// environment variable (see SieveConfig::from_environment).
struct SieveConfig {
    // Odd numbers per sieve segment.
    std::uint64_t segment_size = std::uint64_t{1} << 20;
    // Upper bound for the bytes a materialised PrimeTable or mobius table may occupy.
    std::uint64_t memory_budget_bytes = std::uint64_t{1} << 30;
    // Largest x accepted by prime_pi_sieve; counting itself is segmented and needs O(sqrt x) memory.
    std::uint64_t max_count_x = 10'000'000'000ULL;

    // Largest limit for which a PrimeTable fits in the memory budget.
    std::uint64_t max_table_limit() const;
    // Largest limit for which a mobius table fits in the memory budget.
    std::uint64_t max_mobius_limit() const;

    static SieveConfig from_environment();
};

inline constexpr char kSieveMemoryEnv[] = "PRIMEDENSITY_SIEVE_MEMORY_MB";
inline constexpr std::uint64_t kFastCountCap = 10'000'000'000'000ULL;

// Prime membership over [2, limit], one bit per odd number.
class PrimeTable {
public:
    PrimeTable() = default;
    PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> odd_bits);

    std::uint64_t limit() const { return limit_; }
    bool contains(std::uint64_t n) const;
    // Number of primes in the table, i.e. pi(limit).
    std::uint64_t size() const { return size_; }
    std::vector<std::uint64_t> primes() const;

    template <typename Fn>
    void for_each_prime(Fn&& fn) const {
        if (limit_ >= 2) fn(std::uint64_t{2});
        for (std::size_t w = 0; w < bits_.size(); ++w) {
            std::uint64_t word = bits_[w];
            while (word != 0) {
                const int b = __builtin_ctzll(word);
                word &= word - 1;
                const std::uint64_t n = 2 * (64 * static_cast<std::uint64_t>(w) + b) + 3;
                if (n > limit_) return;
                fn(n);
            }
        }
    }

private:
    std::uint64_t limit_ = 0;
    std::uint64_t size_ = 0;
    // bit i <-> odd number 2i + 3
    std::vector<std::uint64_t> bits_;
};

PrimeTable sieve_primes(std::uint64_t limit, const SieveConfig& config = SieveConfig::from_environment());

// Primes in [lo, hi] in increasing order, sieved segment by segment.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi,
                                           const SieveConfig& config = SieveConfig::from_environment());

// Exact pi(x) with a segmented sieve of Eratosthenes. O(sqrt x) memory, x <= config.max_count_x.
PiValue prime_pi_sieve(std::uint64_t x, const SieveConfig& config = SieveConfig::from_environment());

// Exact pi(x) by the square-root decomposition recurrence
//   S(v, p) = S(v, p-1) - [S(v/p, p-1) - S(p-1, p-1)]
// evaluated on the O(sqrt x) distinct values floor(x/k). O(x^{3/4}) time, x <= kFastCountCap.
PiValue prime_pi_fast(std::uint64_t x);

// Sieve up to kSieveDispatchLimit, combinatorial counter above.
PiValue prime_pi(std::uint64_t x, const SieveConfig& config = SieveConfig::from_environment());
inline constexpr std::uint64_t kSieveDispatchLimit = 10'000'000ULL;

// Moebius function by trial division.
int mobius(std::uint64_t n);

// mu(1..limit) from a linear sieve; element k holds mu(k + 1).
std::vector<std::int8_t> mobius_sieve(std::uint64_t limit,
                                      const SieveConfig& config = SieveConfig::from_environment());

}  // namespace primedensity
