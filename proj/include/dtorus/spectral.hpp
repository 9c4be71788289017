#pragma once

#include "dtorus/combinatorics.hpp"
#include "dtorus/hypergeo.hpp"
#include "dtorus/rational.hpp"
#include "dtorus/theorem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtorus::spectral {

/// Laplacian spectrum of the torus, one entry per dual vertex
/// v = (k_1/m_1, ..., k_d/m_d); dual_index holds the numerators k_j.
struct SpectrumData {
    std::vector<std::vector<int>> dual_index;
    std::vector<double> eigenvalues;

    std::size_t size() const { return eigenvalues.size(); }
};

/// lambda_v = 2d - 2 sum_j cos(2 pi v_j).
inline SpectrumData eigenvalues(const TorusSpec& torus)
{
    const int d = torus.dimension();
    SpectrumData out;
    out.dual_index.reserve(static_cast<std::size_t>(torus.volume()));
    out.eigenvalues.reserve(static_cast<std::size_t>(torus.volume()));
    std::vector<int> k(static_cast<std::size_t>(d), 0);
    for (std::int64_t idx = 0; idx < torus.volume(); ++idx) {
        std::int64_t rest = idx;
        double lambda = 2.0 * d;
        for (int j = 0; j < d; ++j) {
            k[static_cast<std::size_t>(j)] = static_cast<int>(rest % torus.side(j));
            rest /= torus.side(j);
            lambda -= 2.0 * std::cos(2.0 * std::numbers::pi * k[static_cast<std::size_t>(j)] /
                                     torus.side(j));
        }
        out.dual_index.push_back(k);
        out.eigenvalues.push_back(lambda);
    }
    return out;
}

/// The substitution s -> u_s with s + 2d = (1 + (2d-1) u^2) / u, minus
/// branch, so 0 < u_s < 1/(2d-1) for s > 0.
class UsTransform {
public:
    explicit UsTransform(int d)
        : d_(d)
    {
        if (d < 1)
            throw std::invalid_argument("dimension must be >= 1");
    }

    int dimension() const { return d_; }
    int q() const { return 2 * d_ - 1; }

    double operator()(double s) const
    {
        const double disc = s * s + 4.0 * d_ * s + 4.0 * (d_ - 1) * (d_ - 1);
        // The two roots multiply to 1/q; this form avoids the cancellation in
        // (s + 2d - sqrt(disc)) / (2q).
        return 2.0 / (s + 2.0 * d_ + std::sqrt(disc));
    }

    /// Inverse map u -> s.
    double s_of(double u) const { return (1.0 - 2.0 * d_ * u + q() * u * u) / u; }

private:
    int d_;
};

/// Sum with Neumaier compensation, in the given order.
inline double compensated_sum(const std::vector<double>& values)
{
    double sum = 0.0, comp = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    return sum + comp;
}

inline double theta_eigen(const TorusSpec& torus, double t)
{
    if (!(t > 0))
        throw std::invalid_argument("theta needs t > 0");
    std::vector<double> terms;
    for (double lambda : eigenvalues(torus).eigenvalues)
        terms.push_back(std::exp(-lambda * t));
    return compensated_sum(terms);
}

/// I_x(t) = sum_n (t/2)^{2n+x} / (n! (n+x)!), integer order, I_{-x} = I_x.
inline double bessel_i(int order, double t, const hypergeo::SeriesTruncation& trunc = {})
{
    const int x = std::abs(order);
    if (t < 0)
        throw std::invalid_argument("bessel_i needs t >= 0");
    if (t == 0)
        return x == 0 ? 1.0 : 0.0;
    const double half = 0.5 * t;
    const double quarter_sq = half * half;
    double term = std::exp(x * std::log(half) - std::lgamma(x + 1.0));
    double sum = term;
    for (std::size_t n = 1; n < trunc.max_terms; ++n) {
        const double nn = static_cast<double>(n);
        term *= quarter_sq / (nn * (nn + x));
        sum += term;
        if (nn > half && term <= trunc.relative_tail_tolerance * sum)
            return sum;
    }
    throw convergence_error("I-Bessel series did not converge");
}

/*
 * theta(t) = ||M|| e^{-2dt} sum_{y in Z^d} prod_j I_{m_j y_j}(2t).  The
 * translate sum factors over coordinates; each factor adds shells |y_j| = r
 * until a shell falls below 1e-18 of the accumulated factor.
 */
inline double theta_bessel(const TorusSpec& torus, double t, const hypergeo::SeriesTruncation& trunc = {})
{
    if (!(t > 0))
        throw std::invalid_argument("theta needs t > 0");
    constexpr double shell_tolerance = 1e-18;
    constexpr int max_shells = 10000;
    const int d = torus.dimension();
    double product = 1.0;
    for (int j = 0; j < d; ++j) {
        const int m = torus.side(j);
        double factor = bessel_i(0, 2.0 * t, trunc);
        int r = 1;
        for (; r <= max_shells; ++r) {
            const double shell = 2.0 * bessel_i(m * r, 2.0 * t, trunc);
            factor += shell;
            if (shell <= shell_tolerance * factor)
                break;
        }
        if (r > max_shells)
            throw convergence_error("theta translate shells failed to decay");
        product *= factor;
    }
    return static_cast<double>(torus.volume()) * std::exp(-2.0 * d * t) * product;
}

inline double spectral_zeta_eigen(const TorusSpec& torus, double s)
{
    if (!(s > 0))
        throw std::invalid_argument("spectral zeta needs s > 0");
    std::vector<double> terms;
    for (double lambda : eigenvalues(torus).eigenvalues)
        terms.push_back(1.0 / (lambda + s));
    return compensated_sum(terms);
}

struct ZetaSeriesResult {
    double value = 0.0;
    /// Estimated size of the omitted levels h > h_max.
    double residual_estimate = 0.0;
};

namespace detail {

inline double level_contribution(const TorusSpec& torus, int h, double x,
                                 const hypergeo::SeriesTruncation& trunc)
{
    std::vector<double> terms;
    for (const auto& [z, mult] : enumerate_weight_vectors(torus, h))
        terms.push_back(static_cast<double>(mult) * hypergeo::f_z_series(z.parts(), x, trunc));
    return compensated_sum(terms);
}

} // namespace detail

/*
 * zeta(s) = ||M|| sum_{h <= h_max} sum_{z in P_M(h)} m_M(z) G_z(u_s), with
 * G_z(u_s) = F_z(s + 2d).  The residual estimate extrapolates from the first
 * two nonempty levels past h_max as a geometric tail.
 */
inline ZetaSeriesResult spectral_zeta_heatkernel(const TorusSpec& torus, double s, int h_max,
                                                 const hypergeo::SeriesTruncation& trunc = {})
{
    if (!(s > 0))
        throw std::invalid_argument("spectral zeta needs s > 0");
    if (h_max < 0)
        throw std::invalid_argument("h_max must be >= 0");
    const double x = s + 2.0 * torus.dimension();
    const double volume = static_cast<double>(torus.volume());

    std::vector<double> levels;
    for (int h = 0; h <= h_max; ++h)
        levels.push_back(detail::level_contribution(torus, h, x, trunc));

    std::vector<double> beyond;
    for (int h = h_max + 1; beyond.size() < 2; ++h) {
        const double c = detail::level_contribution(torus, h, x, trunc);
        if (c != 0.0)
            beyond.push_back(c);
    }
    const double ratio = beyond[1] / beyond[0];
    const double tail = ratio < 1.0 ? beyond[0] / (1.0 - ratio) : beyond[0] + beyond[1];
    return {volume * compensated_sum(levels), volume * tail};
}

/// Adjacency eigenvalues a_i = 2d - lambda_i.
inline std::vector<double> adjacency_eigenvalues(const TorusSpec& torus)
{
    std::vector<double> a;
    for (double lambda : eigenvalues(torus).eigenvalues)
        a.push_back(2.0 * torus.dimension() - lambda);
    return a;
}

/*
 * u d/du log Z(u) from Z(u)^{-1} = (1-u^2)^{|E|-|V|} det(I - uA + q u^2 I):
 *
 *   2u^2 (|E|-|V|) / (1-u^2) + sum_i (u a_i - 2q u^2) / (1 - u a_i + q u^2).
 */
inline double ihara_log_derivative(const TorusSpec& torus, double u)
{
    const double q = 2.0 * torus.dimension() - 1;
    const double excess = static_cast<double>(torus.edge_count() - torus.vertex_count());
    std::vector<double> terms{2.0 * u * u * excess / (1.0 - u * u)};
    for (double a : adjacency_eigenvalues(torus))
        terms.push_back((u * a - 2.0 * q * u * u) / (1.0 - u * a + q * u * u));
    return compensated_sum(terms);
}

/// |zeta(s) - (||M|| u/(1-u^2) + u/(1-qu^2) * u d/du log Z(u))| at u = u_s.
inline double ihara_identity_check(const TorusSpec& torus, double s)
{
    if (!(s > 0))
        throw std::invalid_argument("Ihara identity needs s > 0");
    const UsTransform us(torus.dimension());
    const double u = us(s);
    const double q = us.q();
    const double volume = static_cast<double>(torus.volume());
    const double rhs = volume * u / (1.0 - u * u) + u / (1.0 - q * u * u) * ihara_log_derivative(torus, u);
    return std::abs(spectral_zeta_eigen(torus, s) - rhs);
}

/*
 * Taylor coefficients of u d/du log Z(u), n = 1..n_max, from the adjacency
 * eigenvalues.  With 1 - a u + q u^2 = (1 - alpha u)(1 - beta u) the
 * eigenvalue a contributes alpha^n + beta^n = c_n, where
 * c_0 = 2, c_1 = a, c_n = a c_{n-1} - q c_{n-2}; the (1-u^2) factor adds
 * 2(|E|-|V|) at every even n.
 */
inline std::vector<double> ihara_series_coefficients(const TorusSpec& torus, int n_max)
{
    const double q = 2.0 * torus.dimension() - 1;
    const double excess = static_cast<double>(torus.edge_count() - torus.vertex_count());
    std::vector<std::vector<double>> per_n(static_cast<std::size_t>(n_max) + 1);
    for (double a : adjacency_eigenvalues(torus)) {
        double prev = 2.0, cur = a;
        for (int n = 1; n <= n_max; ++n) {
            per_n[static_cast<std::size_t>(n)].push_back(cur);
            const double next = a * cur - q * prev;
            prev = cur;
            cur = next;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) {
        out[static_cast<std::size_t>(n)] = compensated_sum(per_n[static_cast<std::size_t>(n)]);
        if (n % 2 == 0)
            out[static_cast<std::size_t>(n)] += 2.0 * excess;
    }
    return out;
}

/*
 * Same coefficients in exact integers.  c_n(a) is an integer polynomial in
 * a, so sum_i c_n(a_i) = sum_k [a^k]c_n * tr(A^k), and tr(A^k) is ||M||
 * times the closed walks of length k at the base vertex.
 */
inline std::vector<BigInt> ihara_series_exact(const TorusSpec& torus, int n_max)
{
    const int d = torus.dimension();
    const int q = 2 * d - 1;

    // Closed walk counts at the origin by dynamic programming on the torus.
    std::vector<BigInt> traces(static_cast<std::size_t>(n_max) + 1);
    {
        const auto nv = static_cast<std::size_t>(torus.volume());
        std::vector<BigInt> cur(nv, BigInt(0)), next(nv);
        cur[0] = 1;
        std::vector<std::int64_t> stride(static_cast<std::size_t>(d), 1);
        for (int j = 1; j < d; ++j)
            stride[static_cast<std::size_t>(j)] = stride[static_cast<std::size_t>(j - 1)] * torus.side(j - 1);
        traces[0] = BigInt(torus.volume());
        for (int k = 1; k <= n_max; ++k) {
            std::fill(next.begin(), next.end(), BigInt(0));
            for (std::size_t v = 0; v < nv; ++v) {
                if (cur[v] == 0)
                    continue;
                for (int j = 0; j < d; ++j) {
                    const std::int64_t sj = stride[static_cast<std::size_t>(j)];
                    const int m = torus.side(j);
                    const auto coord = static_cast<int>((static_cast<std::int64_t>(v) / sj) % m);
                    const std::int64_t base = static_cast<std::int64_t>(v) - coord * sj;
                    next[static_cast<std::size_t>(base + ((coord + 1) % m) * sj)] += cur[v];
                    next[static_cast<std::size_t>(base + ((coord + m - 1) % m) * sj)] += cur[v];
                }
            }
            std::swap(cur, next);
            traces[static_cast<std::size_t>(k)] = cur[0] * torus.volume();
        }
    }

    // c_n as coefficient vectors in a.
    std::vector<BigInt> prev{2}, cur{0, 1};
    std::vector<BigInt> out(static_cast<std::size_t>(n_max) + 1, BigInt(0));
    const BigInt excess = torus.edge_count() - torus.vertex_count();
    for (int n = 1; n <= n_max; ++n) {
        BigInt value = 0;
        for (std::size_t k = 0; k < cur.size(); ++k)
            value += cur[k] * traces[k];
        if (n % 2 == 0)
            value += 2 * excess;
        out[static_cast<std::size_t>(n)] = value;

        std::vector<BigInt> next(cur.size() + 1, BigInt(0));
        for (std::size_t k = 0; k < cur.size(); ++k)
            next[k + 1] += cur[k];
        for (std::size_t k = 0; k < prev.size(); ++k)
            next[k] -= q * prev[k];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return out;
}

/// max_n |coefficient_n - N_M(n)| / max(1, N_M(n)) for n = 1..n_max, with
/// N_M(n) from the explicit formula.
inline double ihara_series_check(const TorusSpec& torus, int n_max)
{
    if (n_max < 3)
        throw std::invalid_argument("series check needs n_max >= 3");
    const auto coeffs = ihara_series_coefficients(torus, n_max);
    double worst = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const double exact = count_reduced_cycles(torus, n).total.convert_to<double>();
        const double err = std::abs(coeffs[static_cast<std::size_t>(n)] - exact) / std::max(1.0, std::abs(exact));
        worst = std::max(worst, err);
    }
    return worst;
}

} // namespace dtorus::spectral
