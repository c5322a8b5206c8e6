#include "primedensity/primecount.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "primedensity/errors.hpp"

namespace primedensity {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Odd primes up to limit by a plain byte sieve; only used for the sqrt-sized base set.
std::vector<std::uint32_t> small_odd_primes(std::uint64_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 3) return out;
    std::vector<std::uint8_t> composite(limit / 2 + 1, 0);  // index i <-> 2i + 1
    for (std::uint64_t i = 1; 2 * i + 1 <= limit; ++i) {
        if (composite[i]) continue;
        const std::uint64_t p = 2 * i + 1;
        out.push_back(static_cast<std::uint32_t>(p));
        for (std::uint64_t m = p * p; m <= limit; m += 2 * p) composite[m / 2] = 1;
    }
    return out;
}

// Sieves the odd numbers of [lo, hi] in fixed-size windows. For every window the callback
// receives the first odd number of the window and one flag per odd number (nonzero = composite).
// Odd primes themselves are never flagged; 1 is flagged.
template <typename Fn>
void sieve_odd_segments(std::uint64_t lo, std::uint64_t hi, std::uint64_t segment_size, Fn&& fn) {
    std::uint64_t first = std::max<std::uint64_t>(lo, 1) | 1;
    if (first > hi) return;

    const auto base = small_odd_primes(isqrt(hi));
    std::vector<std::uint64_t> next(base.size());
    for (std::size_t k = 0; k < base.size(); ++k) {
        const std::uint64_t p = base[k];
        std::uint64_t m = std::max(p * p, (first + p - 1) / p * p);
        if (m % 2 == 0) m += p;
        next[k] = m;
    }

    std::vector<std::uint8_t> flags(segment_size);
    for (std::uint64_t seg_lo = first; seg_lo <= hi;) {
        const std::uint64_t count = std::min(segment_size, (hi - seg_lo) / 2 + 1);
        const std::uint64_t seg_end = seg_lo + 2 * count;  // exclusive
        std::fill_n(flags.begin(), count, std::uint8_t{0});
        if (seg_lo == 1) flags[0] = 1;
        for (std::size_t k = 0; k < base.size(); ++k) {
            const std::uint64_t p = base[k];
            std::uint64_t m = next[k];
            if (m >= seg_end) continue;
            std::uint64_t j = (m - seg_lo) / 2;
            for (; j < count; j += p) flags[j] = 1;
            next[k] = seg_lo + 2 * j;
        }
        fn(seg_lo, std::span<const std::uint8_t>(flags.data(), count));
        if (seg_end > hi) break;
        seg_lo = seg_end;
    }
}

}  // namespace

std::string_view to_string(PiSource source) {
    switch (source) {
        case PiSource::Sieved: return "sieved";
        case PiSource::Combinatorial: return "combinatorial";
        case PiSource::EmbeddedConstant: return "embedded";
    }
    return "unknown";
}

std::uint64_t SieveConfig::max_table_limit() const { return memory_budget_bytes * 16; }

std::uint64_t SieveConfig::max_mobius_limit() const { return memory_budget_bytes / 2; }

SieveConfig SieveConfig::from_environment() {
    SieveConfig config;
    if (const char* env = std::getenv(kSieveMemoryEnv); env != nullptr && *env != '\0') {
        std::uint64_t mb = 0;
        const char* end = env + std::strlen(env);
        auto [ptr, ec] = std::from_chars(env, end, mb);
        if (ec != std::errc{} || ptr != end || mb == 0) {
            throw PreconditionError(std::string(kSieveMemoryEnv) + " must be a positive integer (MiB), got '" +
                                    env + "'");
        }
        config.memory_budget_bytes = mb << 20;
    }
    return config;
}

PrimeTable::PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> odd_bits)
    : limit_(limit), bits_(std::move(odd_bits)) {
    size_ = limit_ >= 2 ? 1 : 0;
    for (auto w : bits_) size_ += static_cast<std::uint64_t>(std::popcount(w));
}

bool PrimeTable::contains(std::uint64_t n) const {
    if (n < 2 || n > limit_) return false;
    if (n == 2) return true;
    if (n % 2 == 0) return false;
    const std::uint64_t i = (n - 3) / 2;
    return (bits_[i / 64] >> (i % 64)) & 1U;
}

std::vector<std::uint64_t> PrimeTable::primes() const {
    std::vector<std::uint64_t> out;
    out.reserve(size_);
    for_each_prime([&](std::uint64_t p) { out.push_back(p); });
    return out;
}

PrimeTable sieve_primes(std::uint64_t limit, const SieveConfig& config) {
    if (limit < 2) throw DomainError("sieve_primes: limit must be >= 2");
    if (limit > config.max_table_limit()) {
        throw CapacityError("sieve_primes: limit " + std::to_string(limit) + " exceeds the table capacity " +
                            std::to_string(config.max_table_limit()) + " for the configured memory budget");
    }
    const std::uint64_t odd_count = limit >= 3 ? (limit - 3) / 2 + 1 : 0;
    std::vector<std::uint64_t> bits((odd_count + 63) / 64, 0);
    sieve_odd_segments(3, limit, config.segment_size, [&](std::uint64_t seg_lo, std::span<const std::uint8_t> flags) {
        for (std::size_t j = 0; j < flags.size(); ++j) {
            if (flags[j]) continue;
            const std::uint64_t i = (seg_lo + 2 * j - 3) / 2;
            bits[i / 64] |= std::uint64_t{1} << (i % 64);
        }
    });
    return PrimeTable(limit, std::move(bits));
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
    std::vector<std::uint64_t> out;
    if (hi < 2 || lo > hi) return out;
    if (hi > config.max_count_x) {
        throw CapacityError("primes_in_range: upper bound " + std::to_string(hi) + " exceeds the sieve capacity " +
                            std::to_string(config.max_count_x));
    }
    if (lo <= 2) out.push_back(2);
    sieve_odd_segments(std::max<std::uint64_t>(lo, 3), hi, config.segment_size,
                       [&](std::uint64_t seg_lo, std::span<const std::uint8_t> flags) {
                           for (std::size_t j = 0; j < flags.size(); ++j)
                               if (!flags[j]) out.push_back(seg_lo + 2 * j);
                       });
    return out;
}

PiValue prime_pi_sieve(std::uint64_t x, const SieveConfig& config) {
    if (x > config.max_count_x) {
        throw CapacityError("prime_pi_sieve: x = " + std::to_string(x) + " exceeds the sieve capacity " +
                            std::to_string(config.max_count_x) + "; use prime_pi_fast");
    }
    PiValue result{x, 0, PiSource::Sieved};
    if (x < 2) return result;
    std::uint64_t count = 1;  // the prime 2
    sieve_odd_segments(3, x, config.segment_size, [&](std::uint64_t, std::span<const std::uint8_t> flags) {
        count += static_cast<std::uint64_t>(std::count(flags.begin(), flags.end(), std::uint8_t{0}));
    });
    result.count = count;
    return result;
}

PiValue prime_pi_fast(std::uint64_t x) {
    if (x > kFastCountCap) {
        throw CapacityError("prime_pi_fast: x = " + std::to_string(x) + " exceeds the cap " +
                            std::to_string(kFastCountCap));
    }
    PiValue result{x, 0, PiSource::Combinatorial};
    if (x < 2) return result;

    const std::uint64_t r = isqrt(x);
    // small[v] = S(v) for v <= r, large[i] = S(x / i) for 1 <= i <= r.
    // Initially S(v) = v - 1 (everything in [2, v] is a candidate).
    std::vector<std::uint64_t> small(r + 1), large(r + 1);
    for (std::uint64_t v = 1; v <= r; ++v) small[v] = v - 1;
    for (std::uint64_t i = 1; i <= r; ++i) large[i] = x / i - 1;

    for (std::uint64_t p = 2; p <= r; ++p) {
        if (small[p] == small[p - 1]) continue;  // p composite
        const std::uint64_t sp = small[p - 1];
        const std::uint64_t p2 = p * p;
        const std::uint64_t large_end = std::min(r, x / p2);
        const std::uint64_t direct_end = std::min(large_end, r / p);
        for (std::uint64_t i = 1; i <= direct_end; ++i) large[i] -= large[i * p] - sp;
        for (std::uint64_t i = direct_end + 1; i <= large_end; ++i) large[i] -= small[x / (i * p)] - sp;
        for (std::uint64_t v = r; v >= p2; --v) small[v] -= small[v / p] - sp;
    }
    result.count = large[1];
    return result;
}

PiValue prime_pi(std::uint64_t x, const SieveConfig& config) {
    if (x <= kSieveDispatchLimit && x <= config.max_count_x) return prime_pi_sieve(x, config);
    return prime_pi_fast(x);
}

int mobius(std::uint64_t n) {
    if (n == 0) throw DomainError("mobius: n must be >= 1");
    int sign = 1;
    for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

std::vector<std::int8_t> mobius_sieve(std::uint64_t limit, const SieveConfig& config) {
    if (limit < 1) throw DomainError("mobius_sieve: limit must be >= 1");
    if (limit > config.max_mobius_limit()) {
        throw CapacityError("mobius_sieve: limit " + std::to_string(limit) + " exceeds the capacity " +
                            std::to_string(config.max_mobius_limit()) + " for the configured memory budget");
    }
    // mu[n] for n in [0, limit]; slot 0 is dropped at the end.
    std::vector<std::int8_t> mu(limit + 1, 0);
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> primes;
    mu[1] = 1;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (const std::uint64_t p : primes) {
            if (p > limit / i) break;
            composite[i * p] = true;
            if (i % p == 0) {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = static_cast<std::int8_t>(-mu[i]);
        }
    }
    mu.erase(mu.begin());
    return mu;
}

}  // namespace primedensity
