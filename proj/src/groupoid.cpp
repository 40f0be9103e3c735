#include "limitop/groupoid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "limitop/errors.hpp"

namespace limitop {

std::optional<int> FiniteGroupoid::unit_index(const std::string& label) const {
    for (int u = 0; u < num_units(); ++u)
        if (unit_labels[u] == label) return u;
    return std::nullopt;
}

std::optional<int> FiniteGroupoid::arrow_index(const std::string& label) const {
    for (int a = 0; a < num_arrows(); ++a)
        if (arrow_labels[a] == label) return a;
    return std::nullopt;
}

namespace {

void build_fibres(FiniteGroupoid& g) {
    g.fibres.assign(g.num_units(), {});
    for (int a = 0; a < g.num_arrows(); ++a) g.fibres[g.src[a]].push_back(a);
}

}  // namespace

ValidationResult validate_groupoid(const RawGroupoid& raw) {
    ValidationResult res;
    auto violate = [&](std::string kind, std::vector<int> arrows,
                       std::string detail) {
        res.violations.push_back(
            {std::move(kind), std::move(arrows), std::move(detail)});
    };

    const int nu = static_cast<int>(raw.unit_labels.size());
    const int na = static_cast<int>(raw.arrows.size());

    auto g = std::make_shared<FiniteGroupoid>();
    g->unit_labels = raw.unit_labels;
    g->src.resize(na);
    g->rng.resize(na);
    for (int a = 0; a < na; ++a) {
        g->arrow_labels.push_back(raw.arrows[a].label);
        g->src[a] = raw.arrows[a].src;
        g->rng[a] = raw.arrows[a].rng;
        if (g->src[a] < 0 || g->src[a] >= nu || g->rng[a] < 0 || g->rng[a] >= nu)
            violate("endpoint", {a}, "arrow endpoint is not a declared unit");
    }
    if (!res.violations.empty()) return res;

    // Inverse table must be total and functional.
    g->inv.assign(na, -1);
    for (const auto& row : raw.invert_rows) {
        int a = row[0], b = row[1];
        if (a < 0 || a >= na || b < 0 || b >= na) {
            violate("inverse", {a, b}, "inverse row names an unknown arrow");
            continue;
        }
        if (g->inv[a] != -1 && g->inv[a] != b)
            violate("inverse", {a}, "arrow has two distinct inverses");
        g->inv[a] = b;
    }
    for (int a = 0; a < na; ++a)
        if (g->inv[a] == -1) violate("inverse", {a}, "arrow has no inverse row");

    // Composition table: defined exactly on composable pairs.
    for (const auto& row : raw.compose_rows) {
        int a = row[0], b = row[1], c = row[2];
        if (a < 0 || a >= na || b < 0 || b >= na || c < 0 || c >= na) {
            violate("compose", {a, b, c}, "compose row names an unknown arrow");
            continue;
        }
        if (g->src[a] != g->rng[b]) {
            violate("composability", {a, b},
                    "compose(a,b) declared but source(a) != range(b)");
            continue;
        }
        auto [it, inserted] = g->comp.try_emplace(FiniteGroupoid::key(a, b), c);
        if (!inserted && it->second != c)
            violate("compose", {a, b}, "pair composed two different ways");
        if (g->rng[c] != g->rng[a] || g->src[c] != g->src[b])
            violate("endpoint", {a, b, c},
                    "range/source of the composite are wrong");
    }
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            if (g->src[a] == g->rng[b] &&
                !g->comp.count(FiniteGroupoid::key(a, b)))
                violate("composability", {a, b},
                        "composable pair has no compose row");
    if (!res.violations.empty()) return res;

    // Identities must be present in the tables, never inferred or repaired.
    g->unit_arrows.assign(nu, -1);
    for (int u = 0; u < nu; ++u) {
        for (int e = 0; e < na; ++e) {
            if (g->src[e] != u || g->rng[e] != u) continue;
            bool is_id = true;
            for (int b = 0; b < na && is_id; ++b) {
                if (g->rng[b] == u && *g->compose(e, b) != b) is_id = false;
                if (g->src[b] == u && *g->compose(b, e) != b) is_id = false;
            }
            if (is_id) {
                g->unit_arrows[u] = e;
                break;
            }
        }
        if (g->unit_arrows[u] == -1)
            violate("identity", {}, "unit " + raw.unit_labels[u] +
                                        " has no identity arrow");
    }

    // Associativity over every composable triple.
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b) {
            if (g->src[a] != g->rng[b]) continue;
            int ab = *g->compose(a, b);
            for (int c = 0; c < na; ++c) {
                if (g->src[b] != g->rng[c]) continue;
                int bc = *g->compose(b, c);
                if (*g->compose(ab, c) != *g->compose(a, bc)) {
                    violate("associativity", {a, b, c},
                            "(ab)c != a(bc)");
                }
            }
        }

    // Inverse laws.
    for (int a = 0; a < na; ++a) {
        int ai = g->inv[a];
        if (g->inv[ai] != a)
            violate("inverse", {a}, "invert(invert(a)) != a");
        if (g->src[ai] != g->rng[a] || g->rng[ai] != g->src[a])
            violate("inverse", {a}, "inverse has wrong endpoints");
        else if (g->unit_arrows[g->rng[a]] != -1 &&
                 *g->compose(a, ai) != g->unit_arrows[g->rng[a]])
            violate("inverse", {a}, "a * invert(a) is not the identity");
    }

    if (!res.violations.empty()) return res;
    build_fibres(*g);
    res.groupoid = std::move(g);
    return res;
}

GroupoidPtr pair_groupoid(int n) {
    if (n < 1) throw std::invalid_argument("pair groupoid needs n >= 1");
    auto g = std::make_shared<FiniteGroupoid>();
    for (int i = 1; i <= n; ++i) g->unit_labels.push_back(std::to_string(i));
    auto id = [n](int i, int j) { return i * n + j; };  // 0-based
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            g->arrow_labels.push_back("(" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ")");
            g->rng.push_back(i);
            g->src.push_back(j);
            g->inv.push_back(id(j, i));
        }
    g->unit_arrows.resize(n);
    for (int i = 0; i < n; ++i) g->unit_arrows[i] = id(i, i);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                g->comp.emplace(FiniteGroupoid::key(id(i, j), id(j, k)),
                                id(i, k));
    build_fibres(*g);
    return g;
}

GroupSpec GroupSpec::make(std::vector<std::string> elements, int identity,
                          std::vector<std::vector<int>> table) {
    const int n = static_cast<int>(elements.size());
    if (identity < 0 || identity >= n)
        throw std::invalid_argument("identity index out of range");
    if (static_cast<int>(table.size()) != n)
        throw std::invalid_argument("Cayley table has wrong shape");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("Cayley table has wrong shape");
        for (int v : row)
            if (v < 0 || v >= n)
                throw std::invalid_argument("Cayley table entry out of range");
    }
    for (int a = 0; a < n; ++a) {
        if (table[identity][a] != a || table[a][identity] != a)
            throw std::invalid_argument("declared identity is not neutral");
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw std::invalid_argument("Cayley table not associative");
    }
    GroupSpec spec;
    spec.elements = std::move(elements);
    spec.identity = identity;
    spec.table = std::move(table);
    spec.inverse.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (spec.table[a][b] == identity) spec.inverse[a] = b;
    for (int a = 0; a < n; ++a)
        if (spec.inverse[a] == -1 ||
            spec.table[spec.inverse[a]][a] != identity)
            throw std::invalid_argument("Cayley table lacks inverses");
    return spec;
}

GroupSpec GroupSpec::cyclic(int n) {
    std::vector<std::string> el;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
        el.push_back("g" + std::to_string(i));
        for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
    }
    return make(std::move(el), 0, std::move(table));
}

GroupoidPtr group_groupoid(const GroupSpec& spec) {
    auto g = std::make_shared<FiniteGroupoid>();
    g->unit_labels = {"*"};
    const int n = spec.size();
    g->arrow_labels = spec.elements;
    g->src.assign(n, 0);
    g->rng.assign(n, 0);
    g->inv = spec.inverse;
    g->unit_arrows = {spec.identity};
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            g->comp.emplace(FiniteGroupoid::key(a, b), spec.mul(a, b));
    build_fibres(*g);
    return g;
}

ActionSpec ActionSpec::make(GroupSpec group, std::vector<std::string> points,
                            std::vector<std::vector<int>> perms) {
    const int n = group.size();
    const int np = static_cast<int>(points.size());
    if (static_cast<int>(perms.size()) != n)
        throw std::invalid_argument("need one permutation per group element");
    for (const auto& p : perms) {
        if (static_cast<int>(p.size()) != np)
            throw std::invalid_argument("permutation has wrong length");
        std::vector<bool> seen(np, false);
        for (int v : p) {
            if (v < 0 || v >= np || seen[v])
                throw std::invalid_argument("map is not a permutation");
            seen[v] = true;
        }
    }
    for (int x = 0; x < np; ++x)
        if (perms[group.identity][x] != x)
            throw std::invalid_argument("identity must act trivially");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int x = 0; x < np; ++x)
                if (perms[group.mul(a, b)][x] != perms[a][perms[b][x]])
                    throw std::invalid_argument("action is not a homomorphism");
    ActionSpec spec;
    spec.group = std::move(group);
    spec.points = std::move(points);
    spec.perms = std::move(perms);
    return spec;
}

TransformationGroupoid transformation_groupoid(const ActionSpec& a) {
    const int nG = a.group.size();
    const int nX = a.num_points();
    auto g = std::make_shared<FiniteGroupoid>();
    g->unit_labels = a.points;
    auto id = [nG](int x, int gi) { return x * nG + gi; };
    for (int x = 0; x < nX; ++x)
        for (int gi = 0; gi < nG; ++gi) {
            g->arrow_labels.push_back("(" + a.points[x] + "," +
                                      a.group.elements[gi] + ")");
            g->rng.push_back(x);
            g->src.push_back(a.act(a.group.inverse[gi], x));
            g->inv.push_back(id(a.act(a.group.inverse[gi], x),
                                a.group.inverse[gi]));
        }
    g->unit_arrows.resize(nX);
    for (int x = 0; x < nX; ++x) g->unit_arrows[x] = id(x, a.group.identity);
    // (x, g)(g^{-1}x, h) = (x, gh)
    for (int x = 0; x < nX; ++x)
        for (int gi = 0; gi < nG; ++gi) {
            int y = a.act(a.group.inverse[gi], x);
            for (int h = 0; h < nG; ++h)
                g->comp.emplace(FiniteGroupoid::key(id(x, gi), id(y, h)),
                                id(x, a.group.mul(gi, h)));
        }
    build_fibres(*g);
    return TransformationGroupoid{std::move(g), a};
}

GroupoidPtr disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    auto g = std::make_shared<FiniteGroupoid>();
    const int ua = a.num_units(), aa = a.num_arrows();
    g->unit_labels = a.unit_labels;
    for (const auto& l : b.unit_labels) g->unit_labels.push_back(l + "'");
    g->arrow_labels = a.arrow_labels;
    for (const auto& l : b.arrow_labels) g->arrow_labels.push_back(l + "'");
    g->src = a.src;
    g->rng = a.rng;
    g->inv = a.inv;
    for (int i = 0; i < b.num_arrows(); ++i) {
        g->src.push_back(b.src[i] + ua);
        g->rng.push_back(b.rng[i] + ua);
        g->inv.push_back(b.inv[i] + aa);
    }
    g->unit_arrows = a.unit_arrows;
    for (int u = 0; u < b.num_units(); ++u)
        g->unit_arrows.push_back(b.unit_arrows[u] + aa);
    g->comp = a.comp;
    for (const auto& [k, v] : b.comp) {
        int x = static_cast<int>(k >> 32), y = static_cast<int>(k & 0xffffffffu);
        g->comp.emplace(FiniteGroupoid::key(x + aa, y + aa), v + aa);
    }
    build_fibres(*g);
    return g;
}

InvarianceReport invariance_check(const FiniteGroupoid& g,
                                  const std::vector<int>& units) {
    std::vector<bool> in(g.num_units(), false);
    for (int u : units) in.at(u) = true;
    for (int a = 0; a < g.num_arrows(); ++a)
        if (in[g.src[a]] != in[g.rng[a]]) return {false, a};
    return {true, -1};
}

Reduction reduction(const GroupoidPtr& g, const std::vector<int>& units) {
    auto rep = invariance_check(*g, units);
    if (!rep.invariant) throw NotInvariant(rep.witness_arrow);

    std::vector<bool> in(g->num_units(), false);
    for (int u : units) in[u] = true;

    Reduction red;
    red.unit_map.assign(g->num_units(), -1);
    red.arrow_map.assign(g->num_arrows(), -1);
    auto sub = std::make_shared<FiniteGroupoid>();
    for (int u = 0; u < g->num_units(); ++u)
        if (in[u]) {
            red.unit_map[u] = static_cast<int>(sub->unit_labels.size());
            sub->unit_labels.push_back(g->unit_labels[u]);
        }
    for (int a = 0; a < g->num_arrows(); ++a)
        if (in[g->src[a]] && in[g->rng[a]]) {
            red.arrow_map[a] = static_cast<int>(sub->arrow_labels.size());
            sub->arrow_labels.push_back(g->arrow_labels[a]);
            sub->src.push_back(red.unit_map[g->src[a]]);
            sub->rng.push_back(red.unit_map[g->rng[a]]);
        }
    for (int a = 0; a < g->num_arrows(); ++a)
        if (red.arrow_map[a] != -1)
            sub->inv.push_back(red.arrow_map[g->inv[a]]);
    sub->unit_arrows.resize(sub->num_units());
    for (int u = 0; u < g->num_units(); ++u)
        if (in[u])
            sub->unit_arrows[red.unit_map[u]] = red.arrow_map[g->unit_arrows[u]];
    for (const auto& [k, v] : g->comp) {
        int x = static_cast<int>(k >> 32), y = static_cast<int>(k & 0xffffffffu);
        if (red.arrow_map[x] != -1 && red.arrow_map[y] != -1)
            sub->comp.emplace(
                FiniteGroupoid::key(red.arrow_map[x], red.arrow_map[y]),
                red.arrow_map[v]);
    }
    build_fibres(*sub);
    red.groupoid = std::move(sub);
    return red;
}

std::vector<MeanDefect> mean_defect(const FiniteGroupoid& g,
                                    const std::vector<MeanFamily>& means) {
    std::vector<MeanDefect> out;
    for (const auto& m : means) {
        if (static_cast<int>(m.weights.size()) != g.num_units())
            throw std::invalid_argument("mean family has wrong unit count");
        for (int u = 0; u < g.num_units(); ++u) {
            const auto& w = m.weights[u];
            if (static_cast<int>(w.size()) != g.num_arrows())
                throw std::invalid_argument("mean weights have wrong length");
            for (int a = 0; a < g.num_arrows(); ++a) {
                if (w[a] < 0.0)
                    throw std::invalid_argument("mean weights must be >= 0");
                if (w[a] != 0.0 && g.src[a] != u) throw SupportViolation(u, a);
            }
        }
        MeanDefect d{m.n, 0.0, 0.0};
        for (int u = 0; u < g.num_units(); ++u) {
            double mass = 0.0;
            for (int a : g.fibres[u]) mass += m.weights[u][a];
            d.d1 = std::max(d.d1, std::abs(1.0 - mass));
        }
        // || m_{s(gamma)} - gamma . m_{r(gamma)} ||_1, pulled back to the
        // fibre over r(gamma) along alpha -> alpha gamma.
        for (int gam = 0; gam < g.num_arrows(); ++gam) {
            double diff = 0.0;
            for (int alpha : g.fibres[g.rng[gam]]) {
                int ag = *g.compose(alpha, gam);
                diff += std::abs(m.weights[g.src[gam]][ag] -
                                 m.weights[g.rng[gam]][alpha]);
            }
            d.d2 = std::max(d.d2, diff);
        }
        out.push_back(d);
    }
    return out;
}

}  // namespace limitop
