#pragma once

#include "dtorus/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dtorus {

/*
 * The discrete torus Z/m_1 x ... x Z/m_d with generators +-e_j.
 * Every side is at least 3 so that the Cayley graph is simple.
 */
class TorusSpec {
public:
    explicit TorusSpec(std::vector<int> sides)
        : sides_(std::move(sides))
    {
        if (sides_.empty())
            throw std::invalid_argument("torus needs at least one dimension");
        BigInt vol = 1;
        for (int m : sides_) {
            if (m < 3)
                throw std::invalid_argument("torus side " + std::to_string(m) + " < 3");
            vol *= m;
        }
        if (vol * static_cast<int>(sides_.size()) > std::numeric_limits<std::int64_t>::max())
            throw std::invalid_argument("torus too large");
        volume_ = vol.convert_to<std::int64_t>();
    }

    static TorusSpec normalized(int m, int d)
    {
        if (d < 1)
            throw std::invalid_argument("dimension must be >= 1");
        return TorusSpec(std::vector<int>(static_cast<std::size_t>(d), m));
    }

    int dimension() const { return static_cast<int>(sides_.size()); }
    std::span<const int> sides() const { return sides_; }
    int side(int j) const { return sides_[static_cast<std::size_t>(j)]; }

    /// ||M|| = m_1 ... m_d, also the vertex count.
    std::int64_t volume() const { return volume_; }
    std::int64_t vertex_count() const { return volume_; }
    std::int64_t edge_count() const { return dimension() * volume_; }
    /// q + 1 = 2d.
    int degree() const { return 2 * dimension(); }

    bool is_normalized() const
    {
        return std::all_of(sides_.begin(), sides_.end(), [&](int m) { return m == sides_.front(); });
    }

    std::string to_string() const
    {
        std::string s;
        for (std::size_t j = 0; j < sides_.size(); ++j) {
            if (j) s += ',';
            s += std::to_string(sides_[j]);
        }
        return s;
    }

    friend bool operator==(const TorusSpec&, const TorusSpec&) = default;

private:
    std::vector<int> sides_;
    std::int64_t volume_ = 0;
};

/// A point z of (Z>=0)^d kept sorted in descending order.
class WeightVector {
public:
    WeightVector() = default;
    explicit WeightVector(std::vector<int> parts)
        : parts_(std::move(parts))
    {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0)
                throw std::invalid_argument("weight vector entries must be >= 0");
            if (i && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("weight vector must be sorted descending");
        }
    }

    static WeightVector from_unsorted(std::vector<int> parts)
    {
        std::sort(parts.begin(), parts.end(), std::greater<>());
        return WeightVector(std::move(parts));
    }

    std::span<const int> parts() const { return parts_; }
    const std::vector<int>& vec() const { return parts_; }
    int dimension() const { return static_cast<int>(parts_.size()); }
    int operator[](std::size_t j) const { return parts_[j]; }
    int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

    friend bool operator==(const WeightVector&, const WeightVector&) = default;
    friend auto operator<=>(const WeightVector&, const WeightVector&) = default;

private:
    std::vector<int> parts_;
};

/// Integer partition mu_1 >= ... >= mu_l >= 1.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts)
        : parts_(std::move(parts))
    {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1)
                throw std::invalid_argument("partition parts must be >= 1");
            if (i && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("partition parts must be non-increasing");
        }
    }

    std::span<const int> parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    bool empty() const { return parts_.empty(); }

    /// (part value, multiplicity) pairs, largest part first.
    std::vector<std::pair<int, int>> multiplicities() const
    {
        std::vector<std::pair<int, int>> out;
        for (int p : parts_) {
            if (!out.empty() && out.back().first == p)
                ++out.back().second;
            else
                out.emplace_back(p, 1);
        }
        return out;
    }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

/// Exponent notation: (2,1,1) -> "21^2", (1,1) -> "1^2", () -> "0".
/// Parts of two or more digits are comma separated to stay unambiguous.
inline std::string format_partition(const Partition& mu)
{
    if (mu.empty())
        return "0";
    const bool wide = mu.parts().front() >= 10;
    std::string s;
    for (auto [part, mult] : mu.multiplicities()) {
        if (wide && !s.empty())
            s += ',';
        s += std::to_string(part);
        if (mult > 1)
            s += '^' + std::to_string(mult);
    }
    return s;
}

inline BigInt factorial(int n)
{
    if (n < 0)
        throw std::invalid_argument("factorial of negative number");
    BigInt r = 1;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

inline BigInt binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

/// total! / (parts_1! ... parts_d!).
inline BigInt multinomial(int total, std::span<const int> parts)
{
    int sum = 0;
    for (int p : parts) {
        if (p < 0)
            throw std::invalid_argument("multinomial part is negative");
        sum += p;
    }
    if (sum != total)
        throw std::invalid_argument("multinomial parts do not sum to total");
    BigInt r = 1;
    int running = 0;
    for (int p : parts) {
        running += p;
        r *= binomial(running, p);
    }
    return r;
}

inline BigInt multinomial(int total, std::initializer_list<int> parts)
{
    return multinomial(total, std::span<const int>(parts.begin(), parts.size()));
}

/// Rising factorial a (a+1) ... (a+k-1).
inline BigRational pochhammer(const BigRational& a, int k)
{
    if (k < 0)
        throw std::invalid_argument("pochhammer needs k >= 0");
    BigRational r = 1;
    for (int i = 0; i < k; ++i)
        r *= a + i;
    return r;
}

inline int moebius(std::int64_t n)
{
    if (n <= 0)
        throw std::invalid_argument("moebius needs n >= 1");
    int sign = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        sign = -sign;
    }
    if (n > 1)
        sign = -sign;
    return sign;
}

inline std::vector<std::int64_t> divisors(std::int64_t n)
{
    std::vector<std::int64_t> out;
    for (std::int64_t b = 1; b <= n; ++b)
        if (n % b == 0)
            out.push_back(b);
    return out;
}

/// Calls fn(parts) for every vector of d non-negative integers summing to n,
/// in lexicographically decreasing order.
template <typename Fn>
void for_each_composition(int n, int d, Fn&& fn)
{
    if (d <= 0 || n < 0)
        return;
    std::vector<int> parts(static_cast<std::size_t>(d), 0);
    std::function<void(int, int)> rec = [&](int j, int left) {
        if (j == d - 1) {
            parts[static_cast<std::size_t>(j)] = left;
            fn(std::span<const int>(parts));
            return;
        }
        for (int v = left; v >= 0; --v) {
            parts[static_cast<std::size_t>(j)] = v;
            rec(j + 1, left - v);
        }
    };
    rec(0, n);
}

/// Partitions of h with at most max_length parts, in descending
/// lexicographic order ((h) first).
inline std::vector<Partition> partitions(int h, int max_length)
{
    std::vector<Partition> out;
    if (h < 0 || max_length < 0)
        return out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int cap) {
        if (left == 0) {
            out.emplace_back(cur);
            return;
        }
        if (static_cast<int>(cur.size()) == max_length)
            return;
        for (int p = std::min(left, cap); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(h, h);
    return out;
}

struct WeightedVector {
    WeightVector z;
    std::int64_t multiplicity = 0;

    friend bool operator==(const WeightedVector&, const WeightedVector&) = default;
};

/*
 * Every z in P_M(h) together with m_M(z), the number of y in Z^d whose
 * multiset {m_j |y_j|} equals z.  |y_j| <= h / m_j bounds the search.
 * Sign choices are folded in (a nonzero |y_j| contributes a factor 2).
 */
inline std::vector<WeightedVector> enumerate_weight_vectors(const TorusSpec& torus, int h)
{
    if (h < 0)
        throw std::invalid_argument("weight level must be >= 0");
    const int d = torus.dimension();
    std::map<std::vector<int>, std::int64_t, std::greater<>> counts;
    std::vector<int> z(static_cast<std::size_t>(d), 0);
    std::function<void(int, int, std::int64_t)> rec = [&](int j, int used, std::int64_t signs) {
        if (j == d) {
            if (used != h)
                return;
            std::vector<int> sorted = z;
            std::sort(sorted.begin(), sorted.end(), std::greater<>());
            counts[sorted] += signs;
            return;
        }
        const int m = torus.side(j);
        for (int a = 0; used + m * a <= h; ++a) {
            z[static_cast<std::size_t>(j)] = m * a;
            rec(j + 1, used + m * a, a ? 2 * signs : signs);
        }
    };
    rec(0, 0, 1);

    std::vector<WeightedVector> out;
    out.reserve(counts.size());
    for (auto& [parts, mult] : counts)
        out.push_back({WeightVector(parts), mult});
    return out;
}

/// m(mu) = 2^l C(d, l) u(mu), u(mu) the multinomial of part multiplicities.
inline BigInt normalized_multiplicity(int d, const Partition& mu)
{
    const int l = mu.length();
    if (l > d)
        throw std::invalid_argument("partition longer than the torus dimension");
    std::vector<int> mults;
    for (auto [part, mult] : mu.multiplicities())
        mults.push_back(mult);
    BigInt r = BigInt(1) << l;
    r *= binomial(d, l);
    r *= multinomial(l, mults);
    return r;
}

/// m * mu padded with zeros to length d.
inline WeightVector scaled_weight_vector(int m, int d, const Partition& mu)
{
    if (mu.length() > d)
        throw std::invalid_argument("partition longer than the torus dimension");
    std::vector<int> z(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < mu.length(); ++i)
        z[static_cast<std::size_t>(i)] = m * mu.parts()[static_cast<std::size_t>(i)];
    return WeightVector(std::move(z));
}

} // namespace dtorus
