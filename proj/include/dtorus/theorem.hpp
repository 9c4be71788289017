#pragma once

#include "dtorus/combinatorics.hpp"
#include "dtorus/hypergeo.hpp"
#include "dtorus/rational.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtorus {

/// One (h, z) term of the explicit formula.
struct Contribution {
    int h = 0;                        // weight |z|
    WeightVector z;
    BigInt multiplicity;              // m_M(z), or m(mu) on the normalized route
    BigRational x;                    // X_{M,h}(n; z)
    std::optional<Partition> mu;      // set on the normalized route, z = m * mu

    friend bool operator==(const Contribution&, const Contribution&) = default;
};

struct CycleCountReport {
    TorusSpec torus;
    int n = 0;
    BigInt total;                             // N_M(n)
    std::optional<BigRational> prime_count;   // pi_M(n)
    std::vector<Contribution> contributions;
    std::optional<BigInt> oracle_total;
    std::optional<bool> oracle_match;

    void set_oracle(BigInt value)
    {
        oracle_match = (value == total);
        oracle_total = std::move(value);
    }
};

/*
 * X_{M,h}(n; z) = 2(d-1) [h = 0]
 *     + 2n (-(2d-1))^k / (n+h) * C(h; z) * P^{(z,-1)}_{d,k}((2d-3)/(2d-1)),
 * k = (n-h)/2.  Returned exactly; integrality is not assumed.
 */
inline BigRational x_weight(int d, int n, int h, const WeightVector& z)
{
    if (n < 1)
        throw std::invalid_argument("cycle length must be >= 1");
    if (h < 0 || h > n || (n - h) % 2 != 0)
        throw std::invalid_argument("need 0 <= h <= n and h = n (mod 2)");
    if (z.dimension() != d)
        throw std::invalid_argument("weight vector dimension does not match the torus");
    if (z.weight() != h)
        throw std::invalid_argument("weight vector does not have weight h");
    const int k = (n - h) / 2;
    const BigRational x(2 * d - 3, 2 * d - 1);
    const auto params = hypergeo::JacobiParams::integral(z.parts(), -1, k);
    BigInt sign_power = 1;
    for (int i = 0; i < k; ++i)
        sign_power *= -(2 * d - 1);
    BigRational value = BigRational(2 * n) * BigRational(sign_power) / (n + h) *
                        BigRational(multinomial(h, z.parts())) * hypergeo::jacobi_general(params, x);
    if (h == 0)
        value += 2 * (d - 1);
    return value;
}

inline BigRational x_weight(const TorusSpec& torus, int n, int h, const WeightVector& z)
{
    return x_weight(torus.dimension(), n, h, z);
}

/// X^{(d)}_{m,h}(n; mu) of the normalized torus: z = m mu, h = |mu|.
inline BigRational x_weight_normalized(int m, int d, int n, const Partition& mu)
{
    if (m < 3)
        throw std::invalid_argument("torus side must be >= 3");
    return x_weight(d, n, m * mu.weight(), scaled_weight_vector(m, d, mu));
}

namespace detail {

inline BigInt finish_total(const BigRational& weighted, std::int64_t volume)
{
    const BigRational total = weighted * volume;
    BigInt value = to_integer(total, "cycle count");
    if (value < 0)
        throw integrity_error("negative cycle count " + value.str());
    return value;
}

} // namespace detail

/// N_M(n) by the explicit formula over h = n (mod 2) and z in P_M(h).
/// n = 1, 2 return 0: m_j >= 3 leaves no reduced cycles below length 3.
inline CycleCountReport count_reduced_cycles(const TorusSpec& torus, int n)
{
    if (n < 1)
        throw std::invalid_argument("cycle length must be >= 1");
    CycleCountReport report{torus, n, 0, std::nullopt, {}, std::nullopt, std::nullopt};
    if (n < 3)
        return report;
    BigRational weighted = 0;
    for (int h = n % 2; h <= n; h += 2) {
        for (auto& [z, mult] : enumerate_weight_vectors(torus, h)) {
            BigRational x = x_weight(torus, n, h, z);
            weighted += BigRational(mult) * x;
            report.contributions.push_back({h, z, BigInt(mult), std::move(x), std::nullopt});
        }
    }
    report.total = detail::finish_total(weighted, torus.volume());
    return report;
}

/// N^{(d)}_m(n) via the partition-indexed specialization with m(mu).
inline CycleCountReport count_normalized(int m, int d, int n)
{
    if (n < 1)
        throw std::invalid_argument("cycle length must be >= 1");
    const TorusSpec torus = TorusSpec::normalized(m, d);
    CycleCountReport report{torus, n, 0, std::nullopt, {}, std::nullopt, std::nullopt};
    if (n < 3)
        return report;
    BigRational weighted = 0;
    for (int h = 0; m * h <= n; ++h) {
        if ((m * h - n) % 2 != 0)
            continue;
        for (auto& mu : partitions(h, d)) {
            BigRational x = x_weight_normalized(m, d, n, mu);
            BigInt mult = normalized_multiplicity(d, mu);
            weighted += BigRational(mult) * x;
            report.contributions.push_back(
                {m * h, scaled_weight_vector(m, d, mu), std::move(mult), std::move(x), mu});
        }
    }
    report.total = detail::finish_total(weighted, torus.volume());
    return report;
}

/// pi_M(n) = (1/n) sum_{b | n} mu(n/b) N_M(b).  Fractional or negative
/// results throw integrity_error.
template <typename CountFn>
BigRational prime_count_from(int n, CountFn&& count)
{
    if (n < 1)
        throw std::invalid_argument("cycle length must be >= 1");
    BigInt acc = 0;
    for (auto b : divisors(n)) {
        const int mu = moebius(n / b);
        if (mu != 0)
            acc += mu * count(static_cast<int>(b));
    }
    const BigRational pi = BigRational(acc) / n;
    if (!is_integer(pi) || pi < 0)
        throw integrity_error("prime count at n = " + std::to_string(n) + " is " + to_string(pi));
    return pi;
}

inline BigRational count_prime_classes(const TorusSpec& torus, int n)
{
    return prime_count_from(n, [&](int b) { return count_reduced_cycles(torus, b).total; });
}

/// gcd of all n <= n_max with pi_M(n) > 0; 0 when there are none.
inline int empirical_delta(const TorusSpec& torus, int n_max)
{
    if (n_max < 3)
        throw std::invalid_argument("empirical delta needs n_max >= 3");
    std::vector<BigInt> totals(static_cast<std::size_t>(n_max) + 1);
    for (int n = 1; n <= n_max; ++n)
        totals[static_cast<std::size_t>(n)] = count_reduced_cycles(torus, n).total;
    int g = 0;
    for (int n = 1; n <= n_max; ++n) {
        const auto pi = prime_count_from(n, [&](int b) { return totals[static_cast<std::size_t>(b)]; });
        if (pi > 0)
            g = std::gcd(g, n);
    }
    return g;
}

} // namespace dtorus
