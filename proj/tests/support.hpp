#pragma once

#include <random>

#include "limitop/algebra.hpp"
#include "limitop/groupoid.hpp"

namespace limitop::testing {

inline GroupSpec symmetric3() {
    // S3 with elements e, r, r2, s, sr, sr2 (r order 3, s order 2).
    auto mul_perm = [](std::array<int, 3> a, std::array<int, 3> b) {
        return std::array<int, 3>{a[b[0]], a[b[1]], a[b[2]]};
    };
    std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    auto find = [&](std::array<int, 3> p) {
        for (int i = 0; i < 6; ++i)
            if (perms[i] == p) return i;
        return -1;
    };
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            table[i][j] = find(mul_perm(perms[i], perms[j]));
    return GroupSpec::make({"e", "r", "r2", "s", "sr", "sr2"}, 0,
                           std::move(table));
}

/// Cyclic rotation action of Z/k on k points, plus `fixed` fixed points.
inline ActionSpec rotation_action(int k, int fixed) {
    GroupSpec g = GroupSpec::cyclic(k);
    std::vector<std::string> points;
    const int np = k + fixed;
    for (int i = 0; i < np; ++i) points.push_back("p" + std::to_string(i));
    std::vector<std::vector<int>> perms(k, std::vector<int>(np));
    for (int gi = 0; gi < k; ++gi)
        for (int x = 0; x < np; ++x)
            perms[gi][x] = x < k ? (x + gi) % k : x;
    return ActionSpec::make(std::move(g), std::move(points), std::move(perms));
}

/// A random small validated groupoid, at most ~40 arrows.
inline GroupoidPtr random_groupoid(std::mt19937& rng) {
    auto pick = [&rng](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    auto base = [&]() -> GroupoidPtr {
        switch (pick(0, 3)) {
            case 0: return pair_groupoid(pick(2, 5));
            case 1: return group_groupoid(GroupSpec::cyclic(pick(2, 6)));
            case 2: return group_groupoid(symmetric3());
            default:
                return transformation_groupoid(
                           rotation_action(pick(2, 4), pick(0, 2)))
                    .groupoid;
        }
    };
    GroupoidPtr g = base();
    if (pick(0, 2) == 0) {
        GroupoidPtr h = base();
        if (g->num_arrows() + h->num_arrows() <= 40) g = disjoint_union(*g, *h);
    }
    return g;
}

/// Random element with coefficients uniform in [-1,1]^2.
inline AlgebraElement random_element(std::mt19937& rng, const GroupoidPtr& g,
                                     double density = 1.0) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    AlgebraElement f(g);
    for (auto& c : f.coeff)
        if (keep(rng) < density) c = cplx(coef(rng), coef(rng));
    return f;
}

/// Random element with small integer coefficients; its convolution
/// products are exactly representable, so algebraic laws can be asserted
/// bit for bit.
inline AlgebraElement random_integer_element(std::mt19937& rng,
                                             const GroupoidPtr& g) {
    std::uniform_int_distribution<int> coef(-4, 4);
    AlgebraElement f(g);
    for (auto& c : f.coeff) c = cplx(coef(rng), coef(rng));
    return f;
}

/// Verifies that the arrow bijection `arrow_map` (a-index -> b-index) is a
/// groupoid isomorphism: preserves endpoints (via some unit bijection),
/// inverses and all composites.
inline bool is_isomorphism(const FiniteGroupoid& a, const FiniteGroupoid& b,
                           const std::vector<int>& arrow_map) {
    if (a.num_arrows() != b.num_arrows() || a.num_units() != b.num_units())
        return false;
    std::vector<int> unit_map(a.num_units(), -1);
    std::vector<bool> hit(b.num_arrows(), false);
    for (int x = 0; x < a.num_arrows(); ++x) {
        int y = arrow_map[x];
        if (y < 0 || y >= b.num_arrows() || hit[y]) return false;
        hit[y] = true;
    }
    for (int u = 0; u < a.num_units(); ++u) {
        unit_map[u] = b.src[arrow_map[a.unit_arrows[u]]];
        if (arrow_map[a.unit_arrows[u]] != b.unit_arrows[unit_map[u]])
            return false;
    }
    for (int x = 0; x < a.num_arrows(); ++x) {
        if (unit_map[a.src[x]] != b.src[arrow_map[x]]) return false;
        if (unit_map[a.rng[x]] != b.rng[arrow_map[x]]) return false;
        if (arrow_map[a.inv[x]] != b.inv[arrow_map[x]]) return false;
    }
    for (const auto& [k, v] : a.comp) {
        int x = static_cast<int>(k >> 32), y = static_cast<int>(k & 0xffffffffu);
        auto c = b.compose(arrow_map[x], arrow_map[y]);
        if (!c || *c != arrow_map[v]) return false;
    }
    return true;
}

/// Round-trips a groupoid through raw tables, for exercising the validator.
inline RawGroupoid to_raw(const FiniteGroupoid& g) {
    RawGroupoid raw;
    raw.unit_labels = g.unit_labels;
    for (int a = 0; a < g.num_arrows(); ++a)
        raw.arrows.push_back({g.arrow_labels[a], g.src[a], g.rng[a]});
    for (int a = 0; a < g.num_arrows(); ++a)
        for (int b = 0; b < g.num_arrows(); ++b)
            if (auto c = g.compose(a, b)) raw.compose_rows.push_back({a, b, *c});
    for (int a = 0; a < g.num_arrows(); ++a)
        raw.invert_rows.push_back({a, g.inv[a]});
    return raw;
}

}  // namespace limitop::testing
