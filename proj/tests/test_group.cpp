#include "doctest.h"

#include <cmath>
#include <random>

#include "sofic/error.hpp"
#include "sofic/group.hpp"
#include "sofic/group_catalog.hpp"
#include "sofic/group_ring.hpp"

using namespace sofic;

namespace {

const std::int64_t a = 1, b = 2;

GroupRingElement random_element(const GroupSpec& group, const std::vector<GroupElement>& pool, std::mt19937& gen,
                                int max_support = 5)
{
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> count(1, max_support);
    std::normal_distribution<double> coef;
    GroupRingElement x(group);
    const int n = count(gen);
    for (int i = 0; i < n; ++i)
        x.add(pool[pick(gen)], {coef(gen), coef(gen)});
    return x;
}

// Direct expansion of the coefficient at g, independent of ring_convolve.
Complex convolution_coefficient(const GroupRingElement& x, const GroupRingElement& y, const GroupElement& g)
{
    Complex s{};
    const auto& G = x.group();
    for (const auto& [h, c] : x.support())
        s += c * y.coefficient(G.multiply(G.inverse(h), g));
    return s;
}

} // namespace

TEST_CASE("free group multiplication reduces words")
{
    const auto F2 = GroupSpec::free(2);
    CHECK(F2.multiply(GroupElement::word({a}), GroupElement::word({-a})) == F2.identity());
    CHECK(F2.multiply(GroupElement::word({a, b}), GroupElement::word({-b})) == GroupElement::word({a}));
    CHECK(GroupElement::word({a, b, -b, -a, b}) == GroupElement::word({b}));
    CHECK(F2.format(GroupElement::word({a, -b, a})) == "a b^-1 a");
    CHECK(F2.format(F2.identity()) == "e");
    CHECK(F2.parse_word("a b^-1 a") == GroupElement::word({a, -b, a}));
    CHECK(F2.parse_word("a^3 a^-2") == GroupElement::word({a}));
    CHECK(F2.parse_word("e") == F2.identity());
    CHECK_THROWS_AS(F2.parse_word("c"), StructuralError);
    CHECK(F2.inverse(GroupElement::word({a, b})) == GroupElement::word({-b, -a}));
}

TEST_CASE("Z^k multiplication is coordinatewise addition")
{
    const auto Z2 = GroupSpec::zpow(2);
    CHECK(Z2.multiply(GroupElement::vec({1, 2}), GroupElement::vec({3, -1})) == GroupElement::vec({4, 1}));
    CHECK(Z2.format(GroupElement::vec({1, -2})) == "(1,-2)");
    CHECK_THROWS_AS(Z2.multiply(GroupElement::vec({INT64_MAX, 0}), GroupElement::vec({1, 0})), NumericalError);
}

TEST_CASE("mismatched groups are structural errors")
{
    const auto F2 = GroupSpec::free(2);
    const auto Z1 = GroupSpec::zpow(1);
    CHECK_THROWS_AS(F2.multiply(GroupElement::word({a}), GroupElement::vec({1})), StructuralError);
    CHECK_THROWS_AS(Z1.multiply(GroupElement::vec({1, 2}), GroupElement::vec({1})), StructuralError);
    CHECK_THROWS_AS(F2.multiply(GroupElement::word({3}), F2.identity()), StructuralError);

    auto x = GroupRingElement::delta(F2, GroupElement::word({a}));
    auto y = GroupRingElement::delta(Z1, GroupElement::vec({1}));
    CHECK_THROWS_AS(ring_convolve(x, y), StructuralError);
}

TEST_CASE("invalid families and tables are rejected")
{
    CHECK_THROWS_AS(GroupSpec::free(0), StructuralError);
    CHECK_THROWS_AS(GroupSpec::zpow(0), StructuralError);
    // element 2 has no inverse
    CHECK_THROWS_AS(GroupSpec::finite({{0, 1, 2}, {1, 0, 0}, {2, 2, 1}}, 0), StructuralError);
    CHECK_THROWS_AS(GroupSpec::finite({{0, 1}, {1, 0}}, 2), StructuralError);
    // loop of order 5 with identity and inverses but not associative
    const std::vector<std::vector<int>> loop = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    CHECK_THROWS_AS(GroupSpec::finite(loop, 0), StructuralError);
}

TEST_CASE("group multiplication is associative on enumerated elements")
{
    SUBCASE("free words of length <= 3")
    {
        const auto F2 = GroupSpec::free(2);
        const auto ball = F2.ball(3);
        CHECK(ball.size() == 53);
        for (const auto& x : ball)
            for (const auto& y : ball)
                for (const auto& z : ball)
                    REQUIRE(F2.multiply(F2.multiply(x, y), z) == F2.multiply(x, F2.multiply(y, z)));
    }
    SUBCASE("catalog groups of order <= 24")
    {
        for (const auto& [name, G] : catalog::small_groups(24)) {
            const auto all = G.ball(0);
            CAPTURE(name);
            for (const auto& x : all) {
                CHECK(G.multiply(x, G.inverse(x)) == G.identity());
                for (const auto& y : all)
                    for (const auto& z : all)
                        REQUIRE(G.multiply(G.multiply(x, y), z) == G.multiply(x, G.multiply(y, z)));
            }
        }
    }
}

TEST_CASE("catalog groups have the expected orders and are non-abelian where expected")
{
    CHECK(catalog::symmetric(4).order() == 24);
    CHECK(catalog::alternating(4).order() == 12);
    CHECK(catalog::quaternion().order() == 8);
    const auto D3 = catalog::dihedral(3);
    CHECK(D3.multiply(GroupElement::index(1), GroupElement::index(3)) !=
          D3.multiply(GroupElement::index(3), GroupElement::index(1)));
    CHECK(catalog::small_groups(12).size() > 12);
}

TEST_CASE("ball enumerates Z^k by l1 radius")
{
    CHECK(GroupSpec::zpow(1).ball(3).size() == 7);
    CHECK(GroupSpec::zpow(2).ball(1).size() == 5);
    CHECK(GroupSpec::zpow(2).ball(3).size() == 25);
}

// ---------------------------------------------------------------------------

TEST_CASE("convolution examples")
{
    const auto F2 = GroupSpec::free(2);
    const auto ga = GroupElement::word({a}), gb = GroupElement::word({b});
    auto alpha = GroupRingElement::delta(F2, ga, {1.5, -2.0}) + GroupRingElement::delta(F2, gb, 0.25);

    CHECK(ring_convolve(GroupRingElement::delta(F2, F2.identity()), alpha) == alpha);
    CHECK(ring_convolve(GroupRingElement::delta(F2, ga, 2.0), GroupRingElement::delta(F2, gb, 3.0)) ==
          GroupRingElement::delta(F2, GroupElement::word({a, b}), 6.0));

    auto ab = GroupRingElement::delta(F2, ga) + GroupRingElement::delta(F2, gb);
    auto expected = GroupRingElement::delta(F2, F2.identity()) + GroupRingElement::delta(F2, GroupElement::word({b, -a}));
    CHECK(ring_convolve(ab, GroupRingElement::delta(F2, GroupElement::word({-a}))) == expected);
}

TEST_CASE("literal zeros are pruned, nothing else")
{
    const auto Z1 = GroupSpec::zpow(1);
    auto x = GroupRingElement::delta(Z1, GroupElement::vec({1}), 1.0);
    x.add(GroupElement::vec({1}), -1.0);
    CHECK(x.empty());
    x.add(GroupElement::vec({2}), 1e-300);
    CHECK(x.support().size() == 1);
    x.add(GroupElement::vec({3}), 0.0);
    CHECK(x.support().size() == 1);
}

TEST_CASE("star involution")
{
    const auto F2 = GroupSpec::free(2);
    const auto ga = GroupElement::word({a});
    CHECK(ring_star(GroupRingElement::delta(F2, ga, {0, 1})) ==
          GroupRingElement::delta(F2, GroupElement::word({-a}), {0, -1}));

    auto sym = GroupRingElement::delta(F2, ga, 0.5) + GroupRingElement::delta(F2, GroupElement::word({-a}), 0.5) +
               GroupRingElement::delta(F2, F2.identity(), 2.0);
    CHECK(ring_star(sym) == sym);

    std::mt19937 gen(11);
    const auto pool = F2.ball(2);
    for (int t = 0; t < 50; ++t) {
        auto x = random_element(F2, pool, gen);
        auto y = random_element(F2, pool, gen);
        CHECK(ring_star(ring_star(x)) == x);
        // (xy)* = y* x*, coefficient by coefficient against direct expansion
        const auto lhs = ring_star(ring_convolve(x, y));
        const auto ys = ring_star(y), xs = ring_star(x);
        for (const auto& g : F2.ball(4)) {
            const Complex expect = convolution_coefficient(ys, xs, g);
            CHECK(std::abs(lhs.coefficient(g) - expect) <= 1e-12);
        }
    }
}

TEST_CASE("trace and l2 norm")
{
    const auto F2 = GroupSpec::free(2);
    CHECK(ring_trace(GroupRingElement::delta(F2, F2.identity())) == Complex(1.0));
    CHECK(ring_trace(GroupRingElement::delta(F2, GroupElement::word({a}))) == Complex(0.0));
    CHECK(ring_norm2(GroupRingElement::delta(F2, GroupElement::word({a, b}))) == 1.0);
    CHECK(ring_norm2(GroupRingElement::delta(F2, GroupElement::word({a})) +
                     GroupRingElement::delta(F2, GroupElement::word({b}))) == doctest::Approx(std::sqrt(2.0)));

    std::mt19937 gen(5);
    const auto pool = F2.ball(2);
    for (int t = 0; t < 100; ++t) {
        auto x = random_element(F2, pool, gen);
        auto y = random_element(F2, pool, gen);
        double sq = 0.0, l1 = 0.0;
        for (const auto& [g, c] : x.support()) {
            sq += std::norm(c);
            l1 += std::abs(c);
        }
        CHECK(ring_trace(ring_convolve(ring_star(x), x)).real() == doctest::Approx(sq).epsilon(1e-12));
        CHECK(std::abs(ring_trace(ring_convolve(ring_star(x), x)).imag()) <= 1e-12);
        CHECK(ring_norm2(x) * ring_norm2(x) == doctest::Approx(sq).epsilon(1e-12));
        CHECK(std::abs(ring_trace(ring_convolve(x, y)) - ring_trace(ring_convolve(y, x))) <= 1e-12);
        CHECK(ring_norm2(ring_convolve(x, y)) <= l1 * ring_norm2(y) + 1e-12);
    }
}

TEST_CASE("convolution is associative and unital on random triples")
{
    std::mt19937 gen(3);
    for (const auto& G : {GroupSpec::free(2), GroupSpec::zpow(2), catalog::symmetric(3)}) {
        const auto pool = G.ball(2);
        const auto unit = GroupRingElement::delta(G, G.identity());
        for (int t = 0; t < 30; ++t) {
            auto x = random_element(G, pool, gen), y = random_element(G, pool, gen),
                 z = random_element(G, pool, gen);
            const auto l = ring_convolve(ring_convolve(x, y), z);
            const auto r = ring_convolve(x, ring_convolve(y, z));
            for (const auto& g : G.ball(6))
                CHECK(std::abs(l.coefficient(g) - r.coefficient(g)) <= 1e-12);
            CHECK(ring_convolve(unit, x) == x);
            CHECK(ring_convolve(x, unit) == x);
        }
    }
}

TEST_CASE("left regular matrices")
{
    const auto Z2 = catalog::cyclic(2);
    const auto s = GroupElement::index(1);
    Eigen::MatrixXcd swap(2, 2);
    swap << 0, 1, 1, 0;
    CHECK(left_regular_matrix(Z2, GroupRingElement::delta(Z2, s)).isApprox(swap));
    CHECK(left_regular_matrix(Z2, GroupRingElement::delta(Z2, Z2.identity())).isIdentity());

    auto half = GroupRingElement::delta(Z2, Z2.identity(), 0.5) + GroupRingElement::delta(Z2, s, 0.5);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(left_regular_matrix(Z2, half));
    CHECK(es.eigenvalues()[0] == doctest::Approx(0.0));
    CHECK(es.eigenvalues()[1] == doctest::Approx(1.0));

    CHECK_THROWS_AS(left_regular_matrix(GroupSpec::zpow(1), GroupRingElement(GroupSpec::zpow(1))), StructuralError);

    std::mt19937 gen(9);
    for (const auto& [name, G] : catalog::small_groups(24)) {
        const auto pool = G.ball(0);
        for (int t = 0; t < 3; ++t) {
            auto x = random_element(G, pool, gen), y = random_element(G, pool, gen);
            const auto mx = left_regular_matrix(G, x), my = left_regular_matrix(G, y);
            CHECK((left_regular_matrix(G, ring_convolve(x, y)) - mx * my).norm() <= 1e-12);
            CHECK((left_regular_matrix(G, ring_star(x)) - mx.adjoint()).norm() <= 1e-12);
            CHECK(std::abs(mx.trace() / double(G.order()) - ring_trace(x)) <= 1e-12);
        }
    }
}
