#include "primedensity/approx.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "primedensity/primecount.hpp"

namespace primedensity {

namespace {

constexpr long double kSeriesEps = 1e-19L;

long double ei_ramanujan(long double u) {
    // Ei(u) = gamma + ln u + e^{u/2} sum_{n>=1} (-1)^{n-1} u^n / (n! 2^{n-1}) sum_{k<=(n-1)/2} 1/(2k+1)
    long double sum = 0.0L;
    long double term = 1.0L;  // u^n / (n! 2^{n-1}) after the update below
    long double inner = 0.0L;
    for (int n = 1; n < 2000; ++n) {
        term *= (n == 1) ? u : u / (2.0L * n);
        if (n % 2 == 1) inner += 1.0L / n;
        const long double contrib = term * inner;
        sum += (n % 2 == 1) ? contrib : -contrib;
        if (n > u && std::fabs(contrib) <= kSeriesEps * std::fabs(sum)) break;
    }
    return static_cast<long double>(kEulerGamma) + std::log(u) + std::exp(u / 2.0L) * sum;
}

long double ei_asymptotic(long double u) {
    // Ei(u) ~ e^u / u * sum_k k! / u^k, truncated at the smallest term.
    long double sum = 1.0L;
    long double term = 1.0L;
    for (int k = 1; k < 200; ++k) {
        const long double next = term * k / u;
        if (next >= term) break;
        term = next;
        sum += term;
        if (term <= kSeriesEps * sum) break;
    }
    return std::exp(u) / u * sum;
}

double zeta_euler_maclaurin(double s) {
    constexpr int kTerms = 16;
    // B_{2j} / (2j)!
    constexpr std::array<long double, 8> kBernoulliOverFactorial = {
        1.0L / 6 / 2,
        -1.0L / 30 / 24,
        1.0L / 42 / 720,
        -1.0L / 30 / 40320,
        5.0L / 66 / 3628800,
        -691.0L / 2730 / 479001600,
        7.0L / 6 / 87178291200.0L,
        -3617.0L / 510 / 20922789888000.0L,
    };
    const long double ls = s;
    long double sum = 0.0L;
    for (int n = kTerms - 1; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -ls);
    const long double N = kTerms;
    const long double n_pow = std::pow(N, -ls);
    sum += N * n_pow / (ls - 1.0L) + n_pow / 2.0L;
    // rising factorial s (s+1) ... (s+2j-2) times N^{-s-2j+1}
    long double rising = ls;
    long double power = n_pow / N;
    for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
        sum += kBernoulliOverFactorial[j] * rising * power;
        rising *= (ls + 2 * j + 1) * (ls + 2 * j + 2);
        power /= N * N;
    }
    return static_cast<double>(sum);
}

// zeta(k) for k = 0..kZetaTableSize-1; slots 0 and 1 unused.
constexpr int kZetaTableSize = 66;

const std::array<double, kZetaTableSize>& zeta_table() {
    static const std::array<double, kZetaTableSize> table = [] {
        std::array<double, kZetaTableSize> t{};
        t[0] = t[1] = std::numeric_limits<double>::quiet_NaN();
        for (int k = 2; k < kZetaTableSize; ++k) t[k] = zeta(k);
        return t;
    }();
    return table;
}

constexpr std::uint64_t kMobiusTailLimit = 1'000'000;

const std::vector<std::int8_t>& mobius_tail_table() {
    static const std::vector<std::int8_t> table = mobius_sieve(kMobiusTailLimit, SieveConfig{});
    return table;
}

}  // namespace

double exponential_integral_ei(double u) {
    if (!(u > 0.0)) throw DomainError("exponential_integral_ei: u must be > 0");
    if (u > kLiAsymptoticLog) return static_cast<double>(ei_asymptotic(u));
    return static_cast<double>(ei_ramanujan(u));
}

double li(double x) {
    if (!(x > 1.0)) throw DomainError("li: x must be > 1");
    return exponential_integral_ei(std::log(x));
}

double li_ramanujan(double x) {
    if (!(x > 1.0)) throw DomainError("li: x must be > 1");
    return static_cast<double>(ei_ramanujan(std::log(static_cast<long double>(x))));
}

double li_asymptotic(double x) {
    if (!(x > 1.0)) throw DomainError("li: x must be > 1");
    return static_cast<double>(ei_asymptotic(std::log(static_cast<long double>(x))));
}

double zeta(double s) {
    if (!(s > 1.0)) throw DomainError("zeta: s must be > 1");
    if (s >= kZetaTableSize) return 1.0 + std::pow(2.0, -s) + std::pow(3.0, -s);
    return zeta_euler_maclaurin(s);
}

int default_mobius_terms(double x) { return static_cast<int>(std::ceil(std::log2(x))) + 2; }

double riemann_r_mobius(double x, int n_max) {
    if (!(x >= 2.0)) throw DomainError("riemann_r_mobius: x must be >= 2");
    if (n_max < 1) throw PreconditionError("riemann_r_mobius: n_max must be >= 1");
    const double L = std::log(x);
    long double sum = 0.0L;
    for (int n = 1; n <= n_max; ++n) {
        const int mu = mobius(static_cast<std::uint64_t>(n));
        if (mu == 0) continue;
        sum += static_cast<long double>(mu) / n * exponential_integral_ei(L / n);
    }
    return static_cast<double>(sum);
}

double riemann_r_mobius(double x) {
    if (!(x >= 2.0)) throw DomainError("riemann_r_mobius: x must be >= 2");
    const auto& mu = mobius_tail_table();
    const int head_terms = default_mobius_terms(x);
    const long double L = std::log(static_cast<long double>(x));

    long double head = 0.0L;
    long double sum_mu_n = 0.0L;      // sum_{n<=N} mu(n)/n
    long double sum_mu_log_n = 0.0L;  // sum_{n<=N} mu(n) ln n / n
    long double sum_mu_n2 = 0.0L;     // sum_{n<=N} mu(n)/n^2
    for (int n = 1; n <= head_terms; ++n) {
        const int m = mu[n - 1];
        if (m == 0) continue;
        const long double w = static_cast<long double>(m) / n;
        head += w * exponential_integral_ei(static_cast<double>(L / n));
        sum_mu_n += w;
        sum_mu_log_n += w * std::log(static_cast<long double>(n));
        sum_mu_n2 += w / n;
    }

    // For n > N:  Ei(L/n) = gamma + ln L - ln n + sum_k (L/n)^k / (k k!).
    const long double tail_mu_n = -sum_mu_n;
    const long double tail_mu_log_n = -1.0L - sum_mu_log_n;
    long double tail = (static_cast<long double>(kEulerGamma) + std::log(L)) * tail_mu_n - tail_mu_log_n;

    const long double scale = std::max(1.0L, std::fabs(head));
    const long double N = head_terms;
    long double coef = 1.0L;  // L^k / k!
    for (int k = 1; k < 200; ++k) {
        coef *= L / k;
        const long double weight = coef / k;
        if (weight * std::pow(N, -static_cast<long double>(k)) < kSeriesEps * scale) break;
        const int s = k + 1;
        long double partial = 0.0L;  // sum_{n > N} mu(n) / n^s
        if (s == 2) {
            partial = 6.0L / (std::numbers::pi_v<long double> * std::numbers::pi_v<long double>) - sum_mu_n2;
        } else {
            // Truncation error of the direct sum is below M^{1-s} / (s-1).
            const long double want = weight / (kSeriesEps * scale * (s - 1));
            const long double m_real = std::pow(want, 1.0L / (s - 1));
            const auto m_end = static_cast<std::uint64_t>(
                std::clamp<long double>(m_real, N + 1, static_cast<long double>(kMobiusTailLimit)));
            for (std::uint64_t n = head_terms + 1; n <= m_end; ++n) {
                const int m = mu[n - 1];
                if (m == 0) continue;
                const long double inv = 1.0L / static_cast<long double>(n);
                long double p = inv;
                for (int e = 1; e < s; ++e) p *= inv;
                partial += m * p;
            }
        }
        tail += weight * partial;
    }
    return static_cast<double>(head + tail);
}

double riemann_r_gram(double x) {
    if (!(x >= 2.0)) throw DomainError("riemann_r_gram: x must be >= 2");
    const auto& zt = zeta_table();
    const long double L = std::log(static_cast<long double>(x));
    long double sum = 1.0L;
    long double term = 1.0L;  // L^k / k!
    for (int k = 1; k < 100000; ++k) {
        term *= L / k;
        const int s = k + 1;
        const long double z = s < kZetaTableSize ? zt[s] : zeta(s);
        const long double contrib = term / (k * z);
        sum += contrib;
        if (k > L && contrib <= kSeriesEps * sum) break;
    }
    return static_cast<double>(sum);
}

std::string_view to_string(ApproxTag tag) {
    switch (tag) {
        case ApproxTag::GaussRatio: return "gauss";
        case ApproxTag::Legendre: return "legendre";
        case ApproxTag::LogIntegral: return "li";
        case ApproxTag::RiemannR: return "riemann-r";
        case ApproxTag::ConjectureFit: return "conjecture";
    }
    return "unknown";
}

std::optional<ApproxTag> parse_approx_tag(std::string_view name) {
    if (name == "gauss" || name == "gauss-ratio") return ApproxTag::GaussRatio;
    if (name == "legendre") return ApproxTag::Legendre;
    if (name == "li" || name == "log-integral") return ApproxTag::LogIntegral;
    if (name == "riemann-r" || name == "r") return ApproxTag::RiemannR;
    if (name == "conjecture" || name == "this-work") return ApproxTag::ConjectureFit;
    return std::nullopt;
}

double ApproxMethod::operator()(double x) const {
    switch (tag) {
        case ApproxTag::GaussRatio: return gauss_ratio(x);
        case ApproxTag::Legendre: return legendre(x, legendre_b);
        case ApproxTag::LogIntegral: return li(x);
        case ApproxTag::RiemannR: return riemann_r_mobius(x);
        case ApproxTag::ConjectureFit: return conjecture_pi(x, fit);
    }
    throw PreconditionError("ApproxMethod: unknown tag");
}

}  // namespace primedensity
