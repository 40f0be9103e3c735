#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "limitop/errors.hpp"
#include "limitop/fibre.hpp"
#include "support.hpp"

using namespace limitop;
using doctest::Approx;

TEST_CASE("lambda section of the unit is the constant identity section") {
    std::mt19937 rng(1);
    auto g = testing::random_groupoid(rng);
    auto s = lambda_section(unit_element(g));
    for (const auto& m : s.fibre_ops) CHECK(m.isIdentity(0.0));
}

TEST_CASE("pair groupoid lambda fibres agree up to the canonical bijection") {
    const int n = 4;
    auto g = pair_groupoid(n);
    std::mt19937 rng(2);
    auto f = testing::random_element(rng, g);
    auto s = lambda_section(f);
    // fibre over x lists (i, x) in order of i; entry formula gives f(i,j)
    for (int x = 0; x < n; ++x)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(s.fibre_ops[x](i, j) == f.coeff[i * n + j]);
}

TEST_CASE("Z/2 delta_g gives the swap matrix in every fibre") {
    auto g = group_groupoid(GroupSpec::cyclic(2));
    auto s = lambda_section(delta(g, 1));
    REQUIRE(s.fibre_ops.size() == 1);
    CHECK(s.fibre_ops[0](0, 0) == cplx(0));
    CHECK(s.fibre_ops[0](0, 1) == cplx(1));
    CHECK(s.fibre_ops[0](1, 0) == cplx(1));
    CHECK(s.fibre_ops[0](1, 1) == cplx(0));
}

TEST_CASE("lambda sections are equivariant") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = testing::random_groupoid(rng);
        auto f = testing::random_element(rng, g);
        CHECK(equivariance_defect(lambda_section(f)) <= 1e-12);
    }
}

TEST_CASE("a diagonal perturbation on the pair groupoid has defect one") {
    auto g = pair_groupoid(2);
    auto s = lambda_section(unit_element(g));
    s.fibre_ops[0](0, 0) += cplx(1);
    CHECK(equivariance_defect(s) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sections over a unit-only groupoid are unconstrained") {
    // two isolated units: the only arrows are identities, and conjugating
    // by an identity compares each fibre with itself
    RawGroupoid raw;
    raw.unit_labels = {"u", "v"};
    raw.arrows = {{"eu", 0, 0}, {"ev", 1, 1}};
    raw.compose_rows = {{0, 0, 0}, {1, 1, 1}};
    raw.invert_rows = {{0, 0}, {1, 1}};
    auto res = validate_groupoid(raw);
    REQUIRE(res.ok());
    OperatorSection s;
    s.g = res.groupoid;
    s.fibre_ops = {Matrix::Constant(1, 1, cplx(3, 1)),
                   Matrix::Constant(1, 1, cplx(-7, 2))};
    CHECK(equivariance_defect(s) == 0.0);
}

TEST_CASE("propagation of a lambda section is the support") {
    std::mt19937 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = testing::random_groupoid(rng);
        auto f = testing::random_element(rng, g, 0.4);
        auto prop = propagation(lambda_section(f));
        auto supp = f.support();
        CHECK(std::set<int>(supp.begin(), supp.end()) == prop);
    }
}

TEST_CASE("propagation of identity and zero sections") {
    auto g = pair_groupoid(3);
    auto one = propagation(lambda_section(unit_element(g)));
    std::set<int> units(g->unit_arrows.begin(), g->unit_arrows.end());
    CHECK(one == units);
    CHECK(propagation(lambda_section(AlgebraElement(g))).empty());
}

namespace {

// disjoint union with the second block as the invariant boundary
struct BlockSetup {
    GroupoidPtr g;
    BoundaryDecomposition d;
    int interior_units;
};

BlockSetup two_blocks(const GroupoidPtr& a, const GroupoidPtr& b) {
    BlockSetup s;
    s.g = disjoint_union(*a, *b);
    std::vector<int> boundary;
    for (int u = a->num_units(); u < s.g->num_units(); ++u)
        boundary.push_back(u);
    s.d = BoundaryDecomposition::from_boundary(*s.g, boundary);
    s.interior_units = a->num_units();
    return s;
}

}  // namespace

TEST_CASE("quotient restriction is a *-homomorphism with interior kernel") {
    auto setup = two_blocks(pair_groupoid(2), group_groupoid(GroupSpec::cyclic(3)));
    std::mt19937 rng(5);

    SUBCASE("interior-supported elements die") {
        AlgebraElement f(setup.g);
        for (int a = 0; a < 4; ++a) f.coeff[a] = cplx(1, -2);  // pair block
        auto q = quotient_restrict(f, setup.d);
        for (auto c : q.elem.coeff) CHECK(c == cplx(0));
    }
    SUBCASE("the unit restricts to the unit") {
        auto q = quotient_restrict(unit_element(setup.g), setup.d);
        CHECK(q.elem.coeff == unit_element(q.red.groupoid).coeff);
    }
    SUBCASE("multiplicativity, exact across the split") {
        for (int trial = 0; trial < 10; ++trial) {
            auto f = testing::random_integer_element(rng, setup.g);
            auto h = testing::random_integer_element(rng, setup.g);
            auto lhs = quotient_restrict(convolve(f, h), setup.d);
            auto qf = quotient_restrict(f, setup.d);
            auto qh = quotient_restrict(h, setup.d);
            // rebase qh onto qf's reduction: each call builds its own copy
            AlgebraElement qh2(qf.elem.g);
            qh2.coeff = qh.elem.coeff;
            CHECK(lhs.elem.coeff == convolve(qf.elem, qh2).coeff);
        }
    }
}

TEST_CASE("symbol over the full unit space is the lambda section") {
    std::mt19937 rng(6);
    auto g = testing::random_groupoid(rng);
    auto f = testing::random_element(rng, g);
    std::vector<int> all(g->num_units());
    for (int u = 0; u < g->num_units(); ++u) all[u] = u;
    auto d = BoundaryDecomposition::from_boundary(*g, all);
    auto sym = symbol(f, d);
    auto lam = lambda_section(f);
    REQUIRE(sym.fibre_ops.size() == lam.fibre_ops.size());
    for (size_t u = 0; u < lam.fibre_ops.size(); ++u)
        CHECK((sym.fibre_ops[u] - lam.fibre_ops[u]).cwiseAbs().maxCoeff() ==
              0.0);
}

TEST_CASE("interior-supported elements have zero symbol") {
    auto setup = two_blocks(pair_groupoid(3), pair_groupoid(2));
    std::mt19937 rng(7);
    AlgebraElement f(setup.g);
    for (int a = 0; a < 9; ++a) f.coeff[a] = cplx(2, 1);
    auto sym = symbol(f, setup.d);
    for (const auto& m : sym.fibre_ops) CHECK(m.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("symbol of a block element is the lambda section of that block") {
    auto boundary_block = group_groupoid(GroupSpec::cyclic(3));
    auto setup = two_blocks(pair_groupoid(2), boundary_block);
    std::mt19937 rng(8);
    auto f = testing::random_element(rng, setup.g);
    auto sym = symbol(f, setup.d);
    // compare against lambda on the boundary block with matching coefficients
    AlgebraElement block(boundary_block);
    for (int a = 0; a < 3; ++a) block.coeff[a] = f.coeff[4 + a];
    auto lam = lambda_section(block);
    REQUIRE(sym.fibre_ops.size() == 1);
    CHECK((sym.fibre_ops[0] - lam.fibre_ops[0]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("exel invertibility examples") {
    SUBCASE("the unit is invertible with inverse one") {
        std::mt19937 rng(9);
        auto g = testing::random_groupoid(rng);
        auto rep = exel_invertibility(unit_element(g));
        CHECK(rep.invertible);
        REQUIRE(rep.inverse);
        CHECK(rep.inverse->coeff == unit_element(g).coeff);
        CHECK(rep.residual == 0.0);
    }
    SUBCASE("a nilpotent delta is singular, its unitization is not") {
        auto g = pair_groupoid(2);
        auto n = delta(g, *g->arrow_index("(1,2)"));
        auto plain = exel_invertibility(n, ExelMode::Plain);
        CHECK_FALSE(plain.invertible);
        auto unitized = exel_invertibility(n, ExelMode::Unitized);
        REQUIRE(unitized.invertible);
        // (1+N)^{-1} = 1 - N, exactly
        auto expect = subtract(unit_element(g), n);
        CHECK(unitized.inverse->coeff == expect.coeff);
        CHECK(i_norm(subtract(
                  convolve(add(unit_element(g), n), *unitized.inverse),
                  unit_element(g))) == 0.0);
    }
    SUBCASE("delta_e + delta_g on Z/2 is singular") {
        auto g = group_groupoid(GroupSpec::cyclic(2));
        AlgebraElement f(g);
        f.coeff = {cplx(1), cplx(1)};
        auto rep = exel_invertibility(f);
        CHECK_FALSE(rep.invertible);
        CHECK(rep.per_unit[0].sigma_min <= 1e-12);
        CHECK_THROWS_AS(algebra_inverse(f), SingularFibre);
    }
}

TEST_CASE("exel verdict matches the block-diagonal oracle") {
    std::mt19937 rng(10);
    int disagreements = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto g = testing::random_groupoid(rng);
        auto a = testing::random_element(rng, g);
        auto rep = exel_invertibility(a, ExelMode::Unitized);
        // independent oracle: smallest singular value of the direct sum
        auto f = add(unit_element(g), a);
        int dim = 0;
        for (const auto& fib : g->fibres) dim += static_cast<int>(fib.size());
        Matrix block = Matrix::Zero(dim, dim);
        int off = 0;
        for (int u = 0; u < g->num_units(); ++u) {
            auto m = regular_representation(f, u).m;
            block.block(off, off, m.rows(), m.cols()) = m;
            off += static_cast<int>(m.rows());
        }
        bool oracle = sigma_min(block) > kSingularCut;
        if (oracle != rep.invertible) ++disagreements;
        if (rep.invertible) CHECK(rep.residual <= 1e-10);
    }
    CHECK(disagreements == 0);
}

TEST_CASE("main theorem report on the degenerate empty boundary") {
    std::mt19937 rng(11);
    auto g = testing::random_groupoid(rng);
    auto f = testing::random_element(rng, g);
    auto d = BoundaryDecomposition::from_boundary(*g, {});
    auto rep = main_theorem_check(f, d);
    CHECK(rep.degenerate_boundary);
    CHECK(rep.c1);
    CHECK(rep.c2);
    CHECK(rep.c3);
    CHECK(rep.c4);
}

TEST_CASE("main theorem report for the unit element") {
    auto setup = two_blocks(pair_groupoid(2), group_groupoid(GroupSpec::cyclic(2)));
    auto rep = main_theorem_check(unit_element(setup.g), setup.d);
    CHECK(rep.c1);
    CHECK(rep.c2);
    CHECK(rep.c3);
    CHECK(rep.c4);
    CHECK(rep.sup_inverse_norm == Approx(1.0));
    REQUIRE(rep.certificate);
    auto residual = subtract(convolve(unit_element(setup.g), *rep.certificate),
                             unit_element(setup.g));
    auto q = quotient_restrict(residual, setup.d);
    for (auto c : q.elem.coeff) CHECK(c == cplx(0));
}

TEST_CASE("a singular boundary fibre fails all four conditions") {
    auto boundary = group_groupoid(GroupSpec::cyclic(2));
    auto setup = two_blocks(pair_groupoid(2), boundary);
    AlgebraElement f(setup.g);
    // interior junk plus the singular [[1,1],[1,1]] block on the boundary
    std::mt19937 rng(12);
    for (int a = 0; a < 4; ++a) f.coeff[a] = cplx(1, 3);
    f.coeff[4] = cplx(1);
    f.coeff[5] = cplx(1);
    auto rep = main_theorem_check(f, setup.d);
    CHECK_FALSE(rep.c1);
    CHECK_FALSE(rep.c2);
    CHECK_FALSE(rep.c3);
    CHECK_FALSE(rep.c4);
    CHECK_FALSE(rep.certificate);
}

TEST_CASE("main theorem check rejects non-invariant boundaries") {
    auto g = pair_groupoid(3);
    auto f = unit_element(g);
    auto d = BoundaryDecomposition::from_boundary(*g, {0});
    CHECK_THROWS_AS(main_theorem_check(f, d), NotInvariant);
}

TEST_CASE("crossed product representation examples") {
    SUBCASE("the unit maps to the identity") {
        auto tg = transformation_groupoid(testing::rotation_action(3, 1));
        auto m = crossed_product_rep(tg, unit_element(tg.groupoid), 0);
        CHECK(m.isIdentity(0.0));
    }
    SUBCASE("point-independent coefficients give the convolution matrix") {
        // trivial action of Z/3 on two points
        auto act = ActionSpec::make(GroupSpec::cyclic(3), {"x", "y"},
                                    {{0, 1}, {0, 1}, {0, 1}});
        auto tg = transformation_groupoid(act);
        std::vector<cplx> c = {cplx(1, 1), cplx(-2, 0), cplx(0, 3)};
        AlgebraElement f(tg.groupoid);
        for (int x = 0; x < 2; ++x)
            for (int gi = 0; gi < 3; ++gi)
                f.coeff[tg.arrow_of(x, gi)] = c[gi];
        auto m = crossed_product_rep(tg, f, 1);
        for (int g = 0; g < 3; ++g)
            for (int h = 0; h < 3; ++h)
                CHECK(m(g, h) ==
                      c[act.group.mul(g, act.group.inverse[h])]);
    }
    SUBCASE("swap action single-arrow element") {
        auto act = ActionSpec::make(GroupSpec::cyclic(2), {"1", "2"},
                                    {{0, 1}, {1, 0}});
        auto tg = transformation_groupoid(act);
        // indicator of the arrow (point 1, generator)
        auto f = delta(tg.groupoid, tg.arrow_of(0, 1));
        auto m = crossed_product_rep(tg, f, 1);
        // entry (g,h) = F(g.omega, g h^{-1}): nonzero iff g.omega = 1 and
        // g h^{-1} = the generator
        for (int g = 0; g < 2; ++g)
            for (int h = 0; h < 2; ++h) {
                bool expect = act.act(g, 1) == 0 &&
                              act.group.mul(g, act.group.inverse[h]) == 1;
                CHECK(m(g, h) == (expect ? cplx(1) : cplx(0)));
            }
    }
}

TEST_CASE("crossed product representation is the conjugated limit operator") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<int> k(2, 4), fx(0, 2);
        auto act = testing::rotation_action(k(rng), fx(rng));
        auto tg = transformation_groupoid(act);
        auto f = testing::random_element(rng, tg.groupoid);
        const int nG = act.group.size();
        for (int omega = 0; omega < act.num_points(); ++omega) {
            auto lam = regular_representation(f, omega);
            // V: delta_{(gamma omega, gamma)} -> delta_gamma
            REQUIRE(static_cast<int>(lam.fibre.size()) == nG);
            std::vector<int> col_of(nG, -1);  // group index -> fibre position
            for (int i = 0; i < nG; ++i) {
                int arrow = lam.fibre[i];
                col_of[arrow % nG] = i;
            }
            auto m = crossed_product_rep(tg, f, omega);
            for (int g = 0; g < nG; ++g)
                for (int h = 0; h < nG; ++h)
                    CHECK(std::abs(m(g, h) - lam.m(col_of[g], col_of[h])) <=
                          1e-12);
        }
    }
}

TEST_CASE("crossed product rejects unknown points") {
    auto tg = transformation_groupoid(testing::rotation_action(2, 0));
    CHECK_THROWS_AS(crossed_product_rep(tg, unit_element(tg.groupoid), 9),
                    UnknownPoint);
}
