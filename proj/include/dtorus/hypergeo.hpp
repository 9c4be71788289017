#pragma once

#include "dtorus/combinatorics.hpp"
#include "dtorus/rational.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtorus::hypergeo {

/// Parameters of the generalized Jacobi polynomial P^{(alpha,beta)}_{d,k}.
struct JacobiParams {
    std::vector<BigRational> alpha;
    BigRational beta = 0;
    int k = 0;

    int dimension() const { return static_cast<int>(alpha.size()); }

    BigRational alpha_weight() const
    {
        BigRational s = 0;
        for (const auto& a : alpha)
            s += a;
        return s;
    }

    static JacobiParams integral(std::span<const int> alpha, BigRational beta, int k)
    {
        JacobiParams p;
        for (int a : alpha)
            p.alpha.emplace_back(a);
        p.beta = std::move(beta);
        p.k = k;
        return p;
    }
};

/// Truncation policy for the floating-point series.
struct SeriesTruncation {
    std::size_t max_terms = 100000;
    double relative_tail_tolerance = 1e-15;
};

namespace detail {

inline int terminating_degree(const BigRational& a)
{
    if (!is_integer(a) || a > 0)
        throw std::invalid_argument("F_C numerator parameter " + to_string(a) +
                                    " is not a non-positive integer");
    const BigInt k = -numerator_of(a);
    if (k > 10000)
        throw std::invalid_argument("terminating degree too large");
    return k.convert_to<int>();
}

} // namespace detail

/*
 * Terminating Lauricella F_C with every argument equal to x:
 *
 *   sum_{|n| <= k} (a)_{|n|} (b)_{|n|} / prod_j (c_j)_{n_j} * x^{|n|} / prod_j n_j!
 *
 * with a = -k.  Terms with equal |n| share the numerator, so the inner sum
 * over multi-indices of a fixed weight N is the coefficient of t^N in
 * prod_j sum_i t^i / ((c_j)_i i!), built by successive convolution.
 */
inline BigRational lauricella_fc_terminating(const BigRational& a, const BigRational& b,
                                             std::span<const BigRational> c, const BigRational& x)
{
    const int k = detail::terminating_degree(a);
    if (c.empty())
        throw std::invalid_argument("F_C needs at least one lower parameter");

    std::vector<BigRational> inner(static_cast<std::size_t>(k) + 1, BigRational(0));
    inner[0] = 1;
    for (const auto& cj : c) {
        std::vector<BigRational> seq(static_cast<std::size_t>(k) + 1);
        BigRational den = 1; // (c_j)_i * i!
        for (int i = 0; i <= k; ++i) {
            if (i > 0)
                den *= (cj + (i - 1)) * i;
            if (den == 0)
                throw std::invalid_argument("F_C lower parameter " + to_string(cj) +
                                            " gives a zero Pochhammer denominator");
            seq[static_cast<std::size_t>(i)] = 1 / den;
        }
        std::vector<BigRational> next(static_cast<std::size_t>(k) + 1, BigRational(0));
        for (int n = 0; n <= k; ++n) {
            if (inner[static_cast<std::size_t>(n)] == 0)
                continue;
            for (int i = 0; n + i <= k; ++i)
                next[static_cast<std::size_t>(n + i)] +=
                    inner[static_cast<std::size_t>(n)] * seq[static_cast<std::size_t>(i)];
        }
        inner = std::move(next);
    }

    BigRational sum = 0;
    BigRational outer = 1; // (a)_N (b)_N x^N
    for (int n = 0; n <= k; ++n) {
        if (n > 0)
            outer *= (a + (n - 1)) * (b + (n - 1)) * x;
        sum += outer * inner[static_cast<std::size_t>(n)];
    }
    return sum;
}

/// (|alpha|+1)_k / k! * F_C(-k, k+|alpha|+beta+1; alpha_j+1; (1-x)/2, ...).
/// k = 0 gives 1 for every alpha, beta.
inline BigRational jacobi_general(const JacobiParams& p, const BigRational& x)
{
    if (p.k < 0)
        throw std::invalid_argument("Jacobi degree must be >= 0");
    if (p.alpha.empty())
        throw std::invalid_argument("Jacobi polynomial needs d >= 1");
    if (p.k == 0)
        return 1;
    const BigRational aw = p.alpha_weight();
    std::vector<BigRational> c;
    c.reserve(p.alpha.size());
    for (const auto& a : p.alpha)
        c.push_back(a + 1);
    const BigRational prefactor = pochhammer(aw + 1, p.k) / BigRational(factorial(p.k));
    const BigRational arg = (1 - x) / 2;
    return prefactor * lauricella_fc_terminating(BigRational(-p.k), p.k + aw + p.beta + 1, c, arg);
}

/// A^{(d)}_z(n) = sum_{|n_j| = n} C(n; n_1..n_d) C(n+|z|; n_1+z_1, ..., n_d+z_d).
inline BigInt a_coefficient(std::span<const int> z, int n)
{
    if (n < 0)
        throw std::invalid_argument("A-coefficient needs n >= 0");
    int zw = 0;
    for (int zj : z) {
        if (zj < 0)
            throw std::invalid_argument("A-coefficient needs z >= 0");
        zw += zj;
    }
    const int d = static_cast<int>(z.size());
    BigInt sum = 0;
    std::vector<int> shifted(z.size());
    for_each_composition(n, d, [&](std::span<const int> parts) {
        for (std::size_t j = 0; j < z.size(); ++j)
            shifted[j] = parts[j] + z[j];
        sum += multinomial(n, parts) * multinomial(n + zw, shifted);
    });
    return sum;
}

/// Single-sum form of the generalized Jacobi polynomial for integral alpha.
inline BigRational jacobi_via_a_coefficients(std::span<const int> alpha, const BigRational& beta,
                                             int k, const BigRational& x)
{
    if (k < 0)
        throw std::invalid_argument("Jacobi degree must be >= 0");
    if (alpha.empty())
        throw std::invalid_argument("Jacobi polynomial needs d >= 1");
    if (k == 0)
        return 1;
    int aw = 0;
    for (int a : alpha) {
        if (a < 0)
            throw std::invalid_argument("integral alpha must be >= 0");
        aw += a;
    }
    const BigRational t = (1 - x) / 2;
    BigRational sum = 0;
    BigRational ratio = 1; // (-k)_n (k+|a|+beta+1)_n / ((|a|+1)_n n!) t^n
    for (int n = 0; n <= k; ++n) {
        if (n > 0)
            ratio *= BigRational(n - 1 - k) * (k + aw + beta + n) * t / (BigRational(aw + n) * n);
        sum += BigRational(a_coefficient(alpha, n)) * ratio;
    }
    const BigRational prefactor =
        pochhammer(BigRational(aw + 1), k) / BigRational(factorial(k) * multinomial(aw, alpha));
    return prefactor * sum;
}

/// Terminating generalized hypergeometric pFq; some upper parameter must be
/// a non-positive integer.
inline BigRational hypergeometric_pfq_terminating(std::span<const BigRational> upper,
                                                  std::span<const BigRational> lower,
                                                  const BigRational& x)
{
    int degree = -1;
    for (const auto& a : upper) {
        if (is_integer(a) && a <= 0) {
            const int k = detail::terminating_degree(a);
            degree = degree < 0 ? k : std::min(degree, k);
        }
    }
    if (degree < 0)
        throw std::invalid_argument("pFq does not terminate");
    BigRational sum = 0;
    BigRational term = 1;
    for (int n = 0; n <= degree; ++n) {
        if (n > 0) {
            BigRational num = x;
            BigRational den = n;
            for (const auto& a : upper)
                num *= a + (n - 1);
            for (const auto& b : lower)
                den *= b + (n - 1);
            if (den == 0)
                throw std::invalid_argument("pFq lower parameter gives a zero denominator");
            term *= num / den;
        }
        sum += term;
    }
    return sum;
}

/// d = 2 case of the generalized Jacobi polynomial written as a 4F3 in 2(1-x).
inline BigRational jacobi_d2_pfq(int alpha1, int alpha2, const BigRational& beta, int k,
                                 const BigRational& x)
{
    if (alpha1 < 0 || alpha2 < 0 || k < 0)
        throw std::invalid_argument("4F3 form needs alpha >= 0 and k >= 0");
    if (k == 0)
        return 1;
    const int aw = alpha1 + alpha2;
    const BigRational half_w(aw, 2);
    const std::vector<BigRational> upper{BigRational(-k), k + aw + beta + 1,
                                         half_w + BigRational(1, 2), half_w + 1};
    const std::vector<BigRational> lower{BigRational(aw + 1), BigRational(alpha1 + 1),
                                         BigRational(alpha2 + 1)};
    return pochhammer(BigRational(aw + 1), k) / BigRational(factorial(k)) *
           hypergeometric_pfq_terminating(upper, lower, 2 * (1 - x));
}

/// C_z = |z|! / (z_1! ... z_d!).
inline BigInt weight_multinomial(std::span<const int> z)
{
    int w = 0;
    for (int zj : z)
        w += zj;
    return multinomial(w, z);
}

namespace detail {

inline double log_add(double a, double b)
{
    if (a == -std::numeric_limits<double>::infinity())
        return b;
    if (b == -std::numeric_limits<double>::infinity())
        return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

} // namespace detail

/*
 * F_z(x) = int_0^inf e^{-xt} prod_j I_{z_j}(2t) dt for x > 2d, summed as
 *
 *   C_z / x^{|z|+1} * sum_N (|z|/2+1/2)_N (|z|/2+1)_N (4/x^2)^N S_N,
 *   S_N = sum_{|n|=N} prod_j 1 / ((z_j+1)_{n_j} n_j!).
 *
 * Terms are formed in the log domain; for large |z| they grow by orders of
 * magnitude before decaying.  The sum stops once a decreasing term drops
 * below relative_tail_tolerance of the partial sum.
 */
inline double f_z_series(std::span<const int> z, double x, const SeriesTruncation& trunc = {})
{
    const int d = static_cast<int>(z.size());
    if (d < 1)
        throw std::invalid_argument("F_z needs d >= 1");
    if (!(x > 2.0 * d))
        throw std::invalid_argument("F_z needs x > 2d");
    if (trunc.max_terms < 1 || !(trunc.relative_tail_tolerance > 0))
        throw std::invalid_argument("invalid series truncation");

    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    int h = 0;
    double log_cz = 0.0;
    for (int zj : z) {
        if (zj < 0)
            throw std::invalid_argument("F_z needs z >= 0");
        h += zj;
        log_cz -= std::lgamma(zj + 1.0);
    }
    log_cz += std::lgamma(h + 1.0);

    // conv[j][N]: log of the weight-N coefficient of the product of the first j+1 factors.
    std::vector<std::vector<double>> conv(static_cast<std::size_t>(d));
    std::vector<std::vector<double>> single(static_cast<std::size_t>(d));
    auto log_single = [&](int j, int i) {
        const double zj = z[static_cast<std::size_t>(j)];
        return -(std::lgamma(zj + 1.0 + i) - std::lgamma(zj + 1.0)) - std::lgamma(i + 1.0);
    };

    const double a1 = 0.5 * h + 0.5;
    const double a2 = 0.5 * h + 1.0;
    const double log_base = log_cz - (h + 1) * std::log(x);
    const double log_w = std::log(4.0 / (x * x));

    double sum = 0.0;
    double prev = 0.0;
    for (std::size_t n = 0; n < trunc.max_terms; ++n) {
        const int N = static_cast<int>(n);
        for (int j = 0; j < d; ++j)
            single[static_cast<std::size_t>(j)].push_back(log_single(j, N));
        conv[0].push_back(single[0][n]);
        for (int j = 1; j < d; ++j) {
            double acc = neg_inf;
            const auto& lhs = conv[static_cast<std::size_t>(j - 1)];
            const auto& rhs = single[static_cast<std::size_t>(j)];
            for (int i = 0; i <= N; ++i)
                acc = detail::log_add(acc, lhs[static_cast<std::size_t>(N - i)] +
                                               rhs[static_cast<std::size_t>(i)]);
            conv[static_cast<std::size_t>(j)].push_back(acc);
        }
        const double log_term = log_base + N * log_w + std::lgamma(a1 + N) - std::lgamma(a1) +
                                std::lgamma(a2 + N) - std::lgamma(a2) +
                                conv[static_cast<std::size_t>(d - 1)][n];
        const double term = std::exp(log_term);
        sum += term;
        if (n > 0 && term <= prev && term <= trunc.relative_tail_tolerance * sum)
            return sum;
        prev = term;
    }
    throw convergence_error("F_z series did not reach tolerance within " +
                            std::to_string(trunc.max_terms) + " terms at x = " + std::to_string(x));
}

/// Exact coefficients of u^{|z|+1+2k}, k = 0..max_k, in the power series of
/// G_z(u) = F_z((1 + (2d-1) u^2) / u).  z is padded with zeros to length d.
inline std::vector<BigRational> g_z_coefficients(std::span<const int> z, int d, int max_k)
{
    if (d < 1 || static_cast<int>(z.size()) > d)
        throw std::invalid_argument("g_z needs 1 <= |z| entries <= d");
    if (max_k < 0)
        throw std::invalid_argument("g_z needs K >= 0");
    std::vector<int> padded(z.begin(), z.end());
    padded.resize(static_cast<std::size_t>(d), 0);
    const BigRational cz = BigRational(weight_multinomial(padded));
    const BigRational x(2 * d - 3, 2 * d - 1);
    const BigRational step = -(2 * d - 1);
    std::vector<BigRational> out;
    out.reserve(static_cast<std::size_t>(max_k) + 1);
    BigRational power = 1;
    for (int k = 0; k <= max_k; ++k) {
        const auto p = JacobiParams::integral(padded, 0, k);
        out.push_back(cz * power * jacobi_general(p, x));
        power *= step;
    }
    return out;
}

} // namespace dtorus::hypergeo
