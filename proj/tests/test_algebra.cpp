#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "limitop/algebra.hpp"
#include "limitop/errors.hpp"
#include "support.hpp"

using namespace limitop;
using doctest::Approx;

TEST_CASE("the unit element is neutral for convolution") {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = testing::random_groupoid(rng);
        auto f = testing::random_element(rng, g);
        auto one = unit_element(g);
        CHECK(convolve(one, f).coeff == f.coeff);
        CHECK(convolve(f, one).coeff == f.coeff);
    }
}

TEST_CASE("pair groupoid partial isometries compose as arrows") {
    auto g = pair_groupoid(2);
    auto a = delta(g, *g->arrow_index("(1,2)"));
    auto b = delta(g, *g->arrow_index("(2,1)"));
    auto c = convolve(a, b);
    CHECK(c.coeff[*g->arrow_index("(1,1)")] == cplx(1));
    CHECK(c.support().size() == 1);
}

TEST_CASE("deltas on a group convolve along the Cayley table") {
    auto spec = GroupSpec::cyclic(3);
    auto g = group_groupoid(spec);
    auto dg = delta(g, 1);
    auto sq = convolve(dg, dg);
    CHECK(sq.coeff[spec.mul(1, 1)] == cplx(1));
    CHECK(sq.support() == std::vector<int>{2});
}

TEST_CASE("involution examples") {
    SUBCASE("self-inverse real elements are fixed") {
        auto g = group_groupoid(GroupSpec::cyclic(2));
        AlgebraElement f(g);
        f.coeff = {cplx(2), cplx(-3)};
        CHECK(involution(f).coeff == f.coeff);
    }
    SUBCASE("pair groupoid delta flips") {
        auto g = pair_groupoid(2);
        auto f = involution(delta(g, *g->arrow_index("(1,2)")));
        CHECK(f.coeff[*g->arrow_index("(2,1)")] == cplx(1));
        CHECK(f.support().size() == 1);
    }
    SUBCASE("i delta_g on Z/4") {
        auto g = group_groupoid(GroupSpec::cyclic(4));
        auto f = involution(delta(g, 1, cplx(0, 1)));
        CHECK(f.coeff[3] == cplx(0, -1));
        CHECK(f.support() == std::vector<int>{3});
    }
}

TEST_CASE("I-norm examples") {
    auto g = pair_groupoid(3);
    CHECK(i_norm(delta(g, 2)) == 1.0);
    AlgebraElement fibre_sum(g);
    for (int a : g->fibres[0]) fibre_sum.coeff[a] = cplx(1);
    CHECK(i_norm(fibre_sum) == 3.0);

    auto z2 = group_groupoid(GroupSpec::cyclic(2));
    AlgebraElement f(z2);
    f.coeff = {cplx(1), cplx(2)};
    CHECK(i_norm(f) == 3.0);
}

TEST_CASE("regular representation entries follow the entry formula") {
    SUBCASE("pair groupoid, single off-diagonal delta") {
        auto g = pair_groupoid(3);
        auto f = delta(g, *g->arrow_index("(1,2)"));
        auto m = regular_representation(f, 2);  // fibre over unit 3
        int row = -1, col = -1;
        for (int i = 0; i < 3; ++i) {
            if (g->arrow_labels[m.fibre[i]] == "(1,3)") row = i;
            if (g->arrow_labels[m.fibre[i]] == "(2,3)") col = i;
        }
        REQUIRE(row >= 0);
        REQUIRE(col >= 0);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                CHECK(m.m(r, c) == (r == row && c == col ? cplx(1) : cplx(0)));
    }
    SUBCASE("Z/2 gives the circulant") {
        auto g = group_groupoid(GroupSpec::cyclic(2));
        AlgebraElement f(g);
        f.coeff = {cplx(3, 1), cplx(-2, 5)};
        auto m = regular_representation(f, 0).m;
        CHECK(m(0, 0) == cplx(3, 1));
        CHECK(m(1, 1) == cplx(3, 1));
        CHECK(m(0, 1) == cplx(-2, 5));
        CHECK(m(1, 0) == cplx(-2, 5));
    }
    SUBCASE("the unit maps to the identity at every unit") {
        std::mt19937 rng(2);
        auto g = testing::random_groupoid(rng);
        auto one = unit_element(g);
        for (int u = 0; u < g->num_units(); ++u) {
            auto m = regular_representation(one, u).m;
            CHECK(m.isIdentity(0.0));
        }
    }
}

TEST_CASE("unknown units are rejected") {
    auto g = pair_groupoid(2);
    CHECK_THROWS_AS(regular_representation(unit_element(g), 5), UnknownUnit);
}

TEST_CASE("convolution of mismatched elements is rejected") {
    auto g = pair_groupoid(2);
    auto h = pair_groupoid(2);
    CHECK_THROWS_AS(convolve(unit_element(g), unit_element(h)),
                    GroupoidMismatch);
}

TEST_CASE("associativity and involution laws, exact on integer data") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = testing::random_groupoid(rng);
        auto f = testing::random_integer_element(rng, g);
        auto h = testing::random_integer_element(rng, g);
        auto k = testing::random_integer_element(rng, g);
        CHECK(convolve(convolve(f, h), k).coeff ==
              convolve(f, convolve(h, k)).coeff);
        CHECK(involution(convolve(f, h)).coeff ==
              convolve(involution(h), involution(f)).coeff);
        CHECK(involution(involution(f)).coeff == f.coeff);
    }
}

TEST_CASE("lambda is a *-homomorphism fibrewise") {
    std::mt19937 rng(4);
    for (int trial = 0; trial < 15; ++trial) {
        auto g = testing::random_groupoid(rng);
        auto f = testing::random_element(rng, g);
        auto h = testing::random_element(rng, g);
        auto fh = convolve(f, h);
        auto fs = involution(f);
        for (int u = 0; u < g->num_units(); ++u) {
            auto mf = regular_representation(f, u).m;
            auto mh = regular_representation(h, u).m;
            auto mfh = regular_representation(fh, u).m;
            CHECK((mfh - mf * mh).cwiseAbs().maxCoeff() <= 1e-12);
            auto mfs = regular_representation(fs, u).m;
            CHECK((mfs - mf.adjoint()).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("fibre norms are dominated by the I-norm") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 15; ++trial) {
        auto g = testing::random_groupoid(rng);
        auto f = testing::random_element(rng, g);
        double in = i_norm(f);
        for (int u = 0; u < g->num_units(); ++u)
            CHECK(spectral_norm(regular_representation(f, u).m) <= in + 1e-9);
    }
}

TEST_CASE("C*-identity for the reduced norm") {
    std::mt19937 rng(6);
    for (int trial = 0; trial < 15; ++trial) {
        auto g = testing::random_groupoid(rng);
        auto f = testing::random_element(rng, g);
        double n = reduced_norm(f);
        double nn = reduced_norm(convolve(involution(f), f));
        CHECK(std::abs(nn - n * n) <= 1e-8 * std::max(1.0, n * n));
    }
}

TEST_CASE("fibrewise equivariance under right translation, exact") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = testing::random_groupoid(rng);
        auto f = testing::random_element(rng, g);
        std::vector<int> pos(g->num_arrows());
        for (int u = 0; u < g->num_units(); ++u)
            for (int i = 0; i < static_cast<int>(g->fibres[u].size()); ++i)
                pos[g->fibres[u][i]] = i;
        for (int gam = 0; gam < g->num_arrows(); ++gam) {
            const auto& from = g->fibres[g->rng[gam]];
            const auto& to = g->fibres[g->src[gam]];
            Matrix r = Matrix::Zero(to.size(), from.size());
            for (int j = 0; j < static_cast<int>(from.size()); ++j)
                r(pos[*g->compose(from[j], gam)], j) = cplx(1);
            auto at_r = regular_representation(f, g->rng[gam]).m;
            auto at_s = regular_representation(f, g->src[gam]).m;
            CHECK((at_r - r.adjoint() * at_s * r).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("reduced norm on Z/2 is the circulant eigenvalue maximum") {
    auto g = group_groupoid(GroupSpec::cyclic(2));
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        cplx a(d(rng), d(rng)), b(d(rng), d(rng));
        AlgebraElement f(g);
        f.coeff = {a, b};
        CHECK(reduced_norm(f) ==
              Approx(std::max(std::abs(a + b), std::abs(a - b))).epsilon(1e-12));
    }
}

TEST_CASE("reduced norm on the pair groupoid matches the dense matrix") {
    std::mt19937 rng(9);
    for (int n : {2, 3, 5}) {
        auto g = pair_groupoid(n);
        auto f = testing::random_element(rng, g);
        Matrix dense(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dense(i, j) = f.coeff[i * n + j];
        CHECK(std::abs(reduced_norm(f) - spectral_norm(dense)) <= 1e-10);
    }
}

TEST_CASE("a single delta is a partial isometry of norm one") {
    std::mt19937 rng(10);
    auto g = testing::random_groupoid(rng);
    std::uniform_int_distribution<int> pick(0, g->num_arrows() - 1);
    CHECK(reduced_norm(delta(g, pick(rng))) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spectral norm plumbing") {
    CHECK(spectral_norm(Matrix::Identity(5, 5)) == Approx(1.0));
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = cplx(3);
    d(1, 1) = cplx(0, -4);
    CHECK(spectral_norm(d) == Approx(4.0));
    Matrix r = Matrix::Zero(2, 2);
    r(0, 1) = cplx(2);
    CHECK(spectral_norm(r) == Approx(2.0));
    CHECK_THROWS_AS(spectral_norm(Matrix::Zero(2, 3)), NonSquare);

    // beyond dimension 64 the power-iteration path takes over
    Matrix big = Matrix::Zero(80, 80);
    for (int i = 0; i < 80; ++i) big(i, i) = cplx(i % 7, i % 5);
    double expect = 0.0;
    for (int i = 0; i < 80; ++i)
        expect = std::max(expect, std::abs(big(i, i)));
    CHECK(spectral_norm(big) == Approx(expect).epsilon(1e-10));
}

TEST_CASE("parallel and serial reduced norms agree bit for bit") {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = testing::random_groupoid(rng);
        auto f = testing::random_element(rng, g);
        CHECK(reduced_norm(f) == serial::reduced_norm(f));
    }
}
