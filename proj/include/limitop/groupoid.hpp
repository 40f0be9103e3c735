#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace limitop {

/// A finite groupoid over dense integer ids. Arrows compose as
/// compose(a, b) = a after b, defined exactly when source(a) = range(b).
/// Instances are immutable after construction; build them through
/// validate_groupoid or one of the constructors below.
struct FiniteGroupoid {
    std::vector<std::string> unit_labels;
    std::vector<std::string> arrow_labels;
    std::vector<int> src;            // per arrow
    std::vector<int> rng;            // per arrow
    std::vector<int> inv;            // per arrow
    std::vector<int> unit_arrows;    // per unit: its identity arrow
    std::vector<std::vector<int>> fibres;  // per unit: s^{-1}(x), declaration order
    std::unordered_map<std::uint64_t, int> comp;  // composable pairs only

    int num_units() const { return static_cast<int>(unit_labels.size()); }
    int num_arrows() const { return static_cast<int>(arrow_labels.size()); }

    static std::uint64_t key(int a, int b) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
               static_cast<std::uint32_t>(b);
    }

    /// compose(a, b), defined iff src[a] == rng[b].
    std::optional<int> compose(int a, int b) const {
        auto it = comp.find(key(a, b));
        if (it == comp.end()) return std::nullopt;
        return it->second;
    }

    bool is_unit_arrow(int a) const {
        return src[a] == rng[a] && unit_arrows[src[a]] == a;
    }

    std::optional<int> unit_index(const std::string& label) const;
    std::optional<int> arrow_index(const std::string& label) const;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

struct AxiomViolation {
    std::string kind;           // e.g. "composability", "associativity"
    std::vector<int> arrows;    // witnessing arrows
    std::string detail;
};

/// Raw tables as they come off disk, before any law has been checked.
struct RawGroupoid {
    std::vector<std::string> unit_labels;
    struct RawArrow {
        std::string label;
        int src;
        int rng;
    };
    std::vector<RawArrow> arrows;
    std::vector<std::array<int, 3>> compose_rows;  // (a, b, a*b)
    std::vector<std::array<int, 2>> invert_rows;   // (a, a^{-1})
};

struct ValidationResult {
    GroupoidPtr groupoid;  // null unless violations is empty
    std::vector<AxiomViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every groupoid axiom on the raw tables: composability domain,
/// endpoint laws, associativity over all composable triples, identities
/// (which must be present, never repaired) and inverse laws.
ValidationResult validate_groupoid(const RawGroupoid& raw);

/// Pair groupoid on n points: arrows (i,j), s(i,j)=j, r(i,j)=i,
/// (i,j)(j,k) = (i,k). Labels are 1-based "(i,j)".
GroupoidPtr pair_groupoid(int n);

/// A finite group given by its Cayley table. Construction verifies the
/// group axioms and throws std::invalid_argument on failure.
struct GroupSpec {
    std::vector<std::string> elements;
    int identity = 0;
    std::vector<std::vector<int>> table;  // table[g][h] = g*h
    std::vector<int> inverse;

    static GroupSpec make(std::vector<std::string> elements, int identity,
                          std::vector<std::vector<int>> table);
    static GroupSpec cyclic(int n);
    int mul(int g, int h) const { return table[g][h]; }
    int size() const { return static_cast<int>(elements.size()); }
};

/// Group regarded as a one-unit groupoid.
GroupoidPtr group_groupoid(const GroupSpec& g);

/// A finite group action by permutations. perms[g] is the permutation of
/// the point set induced by g; construction checks the homomorphism law.
struct ActionSpec {
    GroupSpec group;
    std::vector<std::string> points;
    std::vector<std::vector<int>> perms;  // perms[g][x] = g.x

    static ActionSpec make(GroupSpec group, std::vector<std::string> points,
                           std::vector<std::vector<int>> perms);
    int act(int g, int x) const { return perms[g][x]; }
    int num_points() const { return static_cast<int>(points.size()); }
};

/// Transformation (semi-direct product) groupoid X x| G: arrows (x, g)
/// with r(x,g) = x, s(x,g) = g^{-1}x and (x,g)(g^{-1}x,h) = (x,gh).
struct TransformationGroupoid {
    GroupoidPtr groupoid;
    ActionSpec action;
    /// Arrow index of the pair (point x, group element g).
    int arrow_of(int x, int g) const {
        return x * action.group.size() + g;
    }
};

TransformationGroupoid transformation_groupoid(const ActionSpec& a);

/// Disjoint union; arrows and units of `a` come first.
GroupoidPtr disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);

struct InvarianceReport {
    bool invariant;
    int witness_arrow;  // -1 when invariant; otherwise an arrow with
                        // exactly one endpoint in the subset
};

/// Y is invariant iff r^{-1}(Y) = s^{-1}(Y).
InvarianceReport invariance_check(const FiniteGroupoid& g,
                                  const std::vector<int>& units);

struct Reduction {
    GroupoidPtr groupoid;
    std::vector<int> unit_map;   // old unit -> new unit, -1 if dropped
    std::vector<int> arrow_map;  // old arrow -> new arrow, -1 if dropped
};

/// Reduction by an invariant unit subset. Throws NotInvariant otherwise.
Reduction reduction(const GroupoidPtr& g, const std::vector<int>& units);

/// One stage of a candidate approximate invariant mean: a sub-probability
/// weight on each source fibre.
struct MeanFamily {
    int n = 0;
    // weights[u] is dense over all arrows but may only charge s^{-1}(u)
    std::vector<std::vector<double>> weights;
};

struct MeanDefect {
    int n;
    double d1;  // max_x |1 - ||m_x||_1|
    double d2;  // max_gamma || m_{s(gamma)} - gamma . m_{r(gamma)} ||_1
};

/// Translation-defect report for a sequence of candidate means. The
/// sequence certifies an approximate invariant mean iff both defects
/// tend to 0; this is reported per stage, never decided.
std::vector<MeanDefect> mean_defect(const FiniteGroupoid& g,
                                    const std::vector<MeanFamily>& means);

}  // namespace limitop
