#pragma once

#include "dtorus/combinatorics.hpp"
#include "dtorus/rational.hpp"

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtorus::oracle {

/*
 * Direction index s in 0..2d-1 stands for the step +e_{s/2} (s even) or
 * -e_{s/2} (s odd); s ^ 1 is the reverse step.
 */
inline int reverse_direction(int s) { return s ^ 1; }

/// Cayley graph of prod Z/m_j with generators +-e_j; vertices are
/// mixed-radix encoded with coordinate 0 varying fastest.
class TorusGraph {
public:
    explicit TorusGraph(TorusSpec spec)
        : spec_(std::move(spec))
    {
        const int d = spec_.dimension();
        const auto nv = static_cast<std::size_t>(spec_.vertex_count());
        neighbors_.resize(nv * static_cast<std::size_t>(2 * d));
        std::vector<int> coords(static_cast<std::size_t>(d));
        for (std::size_t v = 0; v < nv; ++v) {
            decode(static_cast<std::int64_t>(v), coords);
            for (int j = 0; j < d; ++j) {
                const int m = spec_.side(j);
                const int x = coords[static_cast<std::size_t>(j)];
                coords[static_cast<std::size_t>(j)] = (x + 1) % m;
                neighbors_[v * 2 * d + 2 * j] = encode(coords);
                coords[static_cast<std::size_t>(j)] = (x + m - 1) % m;
                neighbors_[v * 2 * d + 2 * j + 1] = encode(coords);
                coords[static_cast<std::size_t>(j)] = x;
            }
        }
    }

    const TorusSpec& spec() const { return spec_; }
    std::int64_t vertex_count() const { return spec_.vertex_count(); }
    std::int64_t edge_count() const { return spec_.edge_count(); }
    int degree() const { return spec_.degree(); }

    std::int64_t neighbor(std::int64_t v, int direction) const
    {
        return neighbors_[static_cast<std::size_t>(v * degree() + direction)];
    }

    std::int64_t encode(std::span<const int> coords) const
    {
        std::int64_t v = 0;
        for (int j = spec_.dimension() - 1; j >= 0; --j)
            v = v * spec_.side(j) + coords[static_cast<std::size_t>(j)];
        return v;
    }

    void decode(std::int64_t v, std::vector<int>& coords) const
    {
        coords.resize(static_cast<std::size_t>(spec_.dimension()));
        for (int j = 0; j < spec_.dimension(); ++j) {
            coords[static_cast<std::size_t>(j)] = static_cast<int>(v % spec_.side(j));
            v /= spec_.side(j);
        }
    }

private:
    TorusSpec spec_;
    std::vector<std::int64_t> neighbors_;
};

inline TorusGraph build_torus(const TorusSpec& spec) { return TorusGraph(spec); }

/*
 * Non-backtracking edge adjacency W on the 2|E| directed edges.  Directed
 * edge (v, s) leaves v along direction s; index v * 2d + s.  Its successors
 * are the edges leaving the head along any direction except the reverse.
 */
class DirectedEdgeMatrix {
public:
    explicit DirectedEdgeMatrix(const TorusGraph& g)
        : degree_(g.degree())
        , size_(static_cast<std::size_t>(g.vertex_count() * g.degree()))
    {
        successors_.reserve(size_ * static_cast<std::size_t>(degree_ - 1));
        for (std::int64_t v = 0; v < g.vertex_count(); ++v) {
            for (int s = 0; s < degree_; ++s) {
                const std::int64_t head = g.neighbor(v, s);
                for (int t = 0; t < degree_; ++t)
                    if (t != reverse_direction(s))
                        successors_.push_back(head * degree_ + t);
            }
        }
    }

    std::size_t size() const { return size_; }

    std::span<const std::int64_t> successors(std::size_t e) const
    {
        const auto width = static_cast<std::size_t>(degree_ - 1);
        return {successors_.data() + e * width, width};
    }

    int entry(std::size_t e, std::size_t f) const
    {
        for (auto s : successors(e))
            if (static_cast<std::size_t>(s) == f)
                return 1;
        return 0;
    }

    int row_sum(std::size_t e) const { return static_cast<int>(successors(e).size()); }

private:
    int degree_;
    std::size_t size_;
    std::vector<std::int64_t> successors_;
};

/// tr(W^n) with exact integers: each basis vector is pushed n times through
/// W and the diagonal entry collected.
inline BigInt trace_count(const TorusSpec& spec, int n)
{
    if (n < 1)
        throw std::invalid_argument("cycle length must be >= 1");
    const DirectedEdgeMatrix w(build_torus(spec));
    const std::size_t size = w.size();
    BigInt trace = 0;
    std::vector<BigInt> cur(size), next(size);
    for (std::size_t e = 0; e < size; ++e) {
        std::fill(cur.begin(), cur.end(), BigInt(0));
        cur[e] = 1;
        for (int step = 0; step < n; ++step) {
            std::fill(next.begin(), next.end(), BigInt(0));
            for (std::size_t f = 0; f < size; ++f) {
                if (cur[f] == 0)
                    continue;
                for (auto g : w.successors(f))
                    next[static_cast<std::size_t>(g)] += cur[f];
            }
            std::swap(cur, next);
        }
        trace += cur[e];
    }
    return trace;
}

/// Cap on DFS node visits for the enumerative oracles.
struct WorkBudget {
    std::uint64_t max_nodes = 100'000'000;
};

/// Upper bound on DFS nodes for non-backtracking walks of length n in a
/// 2d-regular graph: sum_{i=1..n} 2d (2d-1)^{i-1}.
inline double walk_tree_bound(int d, int n)
{
    double total = 0.0, level = 2.0 * d;
    for (int i = 1; i <= n; ++i) {
        total += level;
        level *= 2.0 * d - 1;
    }
    return total;
}

inline void check_budget(int d, int n, const WorkBudget& budget)
{
    const double bound = walk_tree_bound(d, n);
    if (bound > static_cast<double>(budget.max_nodes))
        throw budget_exceeded("walk enumeration of length " + std::to_string(n) + " in dimension " +
                              std::to_string(d) + " needs up to " + std::to_string(bound) +
                              " nodes, budget is " + std::to_string(budget.max_nodes));
}

/// Lattice path query: length-n walks in Z^d from the origin to target.
struct LatticeWalkQuery {
    int d = 1;
    int m = 3;
    int n = 0;
    std::vector<int> target;

    /// Target (m mu_1, ..., m mu_l, 0, ..., 0).
    static LatticeWalkQuery for_partition(int m, int d, int n, const Partition& mu)
    {
        return {d, m, n, scaled_weight_vector(m, d, mu).vec()};
    }
};

namespace detail {

/*
 * Counts step sequences s_1..s_n with s_{i+1} != -s_i and s_1 != -s_n
 * whose endpoint satisfies `at_goal`.  `distance` is a lower bound on the
 * steps still needed from a position; branches that cannot close are cut.
 */
template <typename Advance, typename Distance, typename AtGoal>
BigInt count_reduced_walks(int d, int n, Advance&& advance, Distance&& distance, AtGoal&& at_goal)
{
    const int deg = 2 * d;
    std::uint64_t count = 0;
    std::function<void(int, int, int)> rec = [&](int depth, int first, int last) {
        if (depth == n) {
            if (at_goal() && first != reverse_direction(last))
                ++count;
            return;
        }
        for (int s = 0; s < deg; ++s) {
            if (depth > 0 && s == reverse_direction(last))
                continue;
            advance(s, +1);
            if (distance() <= n - depth - 1)
                rec(depth + 1, depth == 0 ? s : first, s);
            advance(s, -1);
        }
    };
    if (distance() <= n)
        rec(0, -1, -1);
    return BigInt(count);
}

} // namespace detail

/// Reduced-modulo-m lattice paths: no internal backtrack and no backtrack
/// across the closure (s_1 != -s_n).
inline BigInt count_reduced_paths_mod_m(const LatticeWalkQuery& q, const WorkBudget& budget = {})
{
    if (q.d < 1 || static_cast<int>(q.target.size()) != q.d)
        throw std::invalid_argument("lattice query target must have d entries");
    if (q.n < 1)
        throw std::invalid_argument("path length must be >= 1");
    int l1 = 0;
    for (int t : q.target)
        l1 += std::abs(t);
    if (l1 > q.n || (q.n - l1) % 2 != 0)
        return 0;
    check_budget(q.d, q.n, budget);

    std::vector<int> pos(static_cast<std::size_t>(q.d), 0);
    int dist = l1;
    auto advance = [&](int s, int sign) {
        const auto j = static_cast<std::size_t>(s / 2);
        const int delta = (s % 2 == 0 ? 1 : -1) * sign;
        const int before = std::abs(pos[j] - q.target[j]);
        pos[j] += delta;
        dist += std::abs(pos[j] - q.target[j]) - before;
    };
    return detail::count_reduced_walks(q.d, q.n, advance, [&] { return dist; },
                                       [&] { return dist == 0; });
}

/// ||M|| times the reduced closed walks of length n at the base vertex,
/// enumerated directly on the torus.
inline BigInt count_reduced_cycles_enumerative(const TorusSpec& spec, int n,
                                               const WorkBudget& budget = {})
{
    if (n < 1)
        throw std::invalid_argument("cycle length must be >= 1");
    const int d = spec.dimension();
    check_budget(d, n, budget);
    std::vector<int> pos(static_cast<std::size_t>(d), 0);
    auto torus_dist = [&](std::size_t j) {
        const int m = spec.side(static_cast<int>(j));
        return std::min(pos[j], m - pos[j]);
    };
    int dist = 0;
    auto advance = [&](int s, int sign) {
        const auto j = static_cast<std::size_t>(s / 2);
        const int m = spec.side(static_cast<int>(j));
        const int delta = (s % 2 == 0 ? 1 : -1) * sign;
        const int before = torus_dist(j);
        pos[j] = ((pos[j] + delta) % m + m) % m;
        dist += torus_dist(j) - before;
    };
    return detail::count_reduced_walks(d, n, advance, [&] { return dist; },
                                       [&] { return dist == 0; }) *
           spec.volume();
}

/// ||M|| sum_p #(reduced paths from 0 to (m_1 p_1, ..., m_d p_d)): the
/// lattice preimage of the torus cycle count.
inline BigInt count_reduced_cycles_via_lattice(const TorusSpec& spec, int n,
                                               const WorkBudget& budget = {})
{
    if (n < 1)
        throw std::invalid_argument("cycle length must be >= 1");
    const int d = spec.dimension();
    check_budget(d, n, budget);
    BigInt total = 0;
    std::vector<int> target(static_cast<std::size_t>(d), 0);
    std::function<void(int, int)> rec = [&](int j, int used) {
        if (j == d) {
            total += count_reduced_paths_mod_m({d, 0, n, target}, budget);
            return;
        }
        const int m = spec.side(j);
        for (int p = -(n - used) / m; p <= (n - used) / m; ++p) {
            target[static_cast<std::size_t>(j)] = m * p;
            rec(j + 1, used + m * std::abs(p));
        }
    };
    rec(0, 0);
    return total * spec.volume();
}

} // namespace dtorus::oracle
