#include "doctest.h"

#include <cmath>
#include <numbers>

#include "sofic/error.hpp"
#include "sofic/group_catalog.hpp"
#include "sofic/sofic_map.hpp"
#include "sofic/spectral.hpp"

using namespace sofic;

namespace {

const std::int64_t a = 1, b = 2;

Permutation perm(std::vector<std::uint32_t> v)
{
    return Permutation(std::move(v));
}

} // namespace

TEST_CASE("permutation basics")
{
    CHECK_THROWS_AS(perm({0, 0, 1}), StructuralError);
    CHECK_THROWS_AS(perm({0, 3}), StructuralError);
    const auto p = perm({1, 2, 0, 3});
    const auto q = perm({0, 1, 3, 2});
    CHECK((p * q)(2) == p(q(2)));
    CHECK((p * p.inverse()).is_identity());
    CHECK(p.pow(3).is_identity());
    CHECK(p.pow(-1) == p.inverse());
    CHECK(p.pow(7) == p);
    CHECK(p.fixed_points() == 1);
    CHECK(Permutation::cyclic_shift(5, 2)(4) == 1);
    CHECK(Permutation::cyclic_shift(5, -1)(0) == 4);
    CHECK(Permutation::transposition(4, 1, 3) == perm({0, 3, 2, 1}));
    const auto m = p.matrix();
    CHECK(m(1, 0) == 1.0);
    CHECK((m * q.matrix() - (p * q).matrix()).norm() == 0.0);

    CounterRng rng(3);
    const auto u = Permutation::uniform(50, rng);
    CHECK((u * u.inverse()).is_identity());
    CounterRng again(3);
    CHECK(Permutation::uniform(50, again) == u);
}

TEST_CASE("regular action of Z/2")
{
    const auto Z2 = catalog::cyclic(2);
    const auto sigma = SoficMap::build(Z2, 2);
    CHECK(sigma.evaluate(GroupElement::index(1)) == perm({1, 0}));
    CHECK(sigma.evaluate(Z2.identity()).is_identity());
    const auto report = defect_report(sigma, Z2.ball(0));
    CHECK(report.pairs.size() == 2);
    CHECK(report.max_multiplicativity() == 0.0);
    CHECK(report.max_freeness() == 0.0);
    CHECK_THROWS_AS(SoficMap::build(Z2, 3), ArgumentError);
}

TEST_CASE("Z quotient by m = 5")
{
    const auto Z1 = GroupSpec::zpow(1);
    const auto sigma = SoficMap::build(Z1, 5);
    CHECK(sigma.modulus() == 5);
    CHECK(sigma.evaluate(GroupElement::vec({1})) == Permutation::cyclic_shift(5, 1));
    CHECK(sigma.evaluate(GroupElement::vec({7})) == sigma.evaluate(GroupElement::vec({2})));
    CHECK(sigma.evaluate(GroupElement::vec({0})).is_identity());
    CHECK(freeness_defect(sigma, GroupElement::vec({1}), GroupElement::vec({3})) == 0.0);
    for (const auto& g : Z1.ball(3))
        for (const auto& h : Z1.ball(3))
            CHECK(multiplicativity_defect(sigma, g, h) == 0.0);
    CHECK_THROWS_AS(SoficMap::build(GroupSpec::zpow(2), 10), ArgumentError);
    CHECK(SoficMap::build(GroupSpec::zpow(2), 49).modulus() == 7);
}

TEST_CASE("free group evaluation")
{
    const auto F2 = GroupSpec::free(2);
    const auto sigma = SoficMap::build(F2, 40, 7, 4);
    CHECK(sigma.seed() == 7u);
    CHECK(sigma.evaluate(F2.identity()).is_identity());
    CHECK(sigma.evaluate(F2.multiply(GroupElement::word({a}), GroupElement::word({-a}))).is_identity());
    const auto pa = sigma.evaluate(GroupElement::word({a}));
    const auto pb = sigma.evaluate(GroupElement::word({b}));
    CHECK(sigma.evaluate(GroupElement::word({a, -b, a})) == pa * pb.inverse() * pa);
    CHECK_THROWS_AS(sigma.evaluate(GroupElement::word({a, b, a, b, a})), CapExceededError);
    CHECK(SoficMap::build(F2, 40).seed() == 0u);
    CHECK(SoficMap::build(F2, 40, 7).evaluate(GroupElement::word({b})) == pb);
    CHECK(SoficMap::build(F2, 40, 8).evaluate(GroupElement::word({b})) != pb);

    for (const auto& g : F2.ball(3)) {
        CHECK((sigma.evaluate(g) * sigma.evaluate(F2.inverse(g))).is_identity());
        CHECK(multiplicativity_defect(sigma, g, F2.identity()) == 0.0);
    }
    for (const auto& g : F2.ball(2))
        for (const auto& h : F2.ball(2))
            CHECK(multiplicativity_defect(sigma, g, h) == 0.0);
    CHECK_THROWS_AS(freeness_defect(sigma, GroupElement::word({a}), GroupElement::word({a})), ArgumentError);
}

TEST_CASE("a transposition planted in sigma(ab) gives multiplicativity defect 2/d")
{
    const auto F2 = GroupSpec::free(2);
    const std::size_t d = 100;
    const auto sigma = SoficMap::build(F2, d, 1);
    const auto ab = GroupElement::word({a, b});
    const auto honest = sigma.evaluate(GroupElement::word({a})) * sigma.evaluate(GroupElement::word({b}));
    const auto bent = sigma.with_override(ab, Permutation::transposition(d, 3, 17) * honest);
    CHECK(multiplicativity_defect(bent, GroupElement::word({a}), GroupElement::word({b})) == doctest::Approx(2.0 / d));
    CHECK(multiplicativity_defect(sigma, GroupElement::word({a}), GroupElement::word({b})) == 0.0);
    // the original map is unaffected by the override
    CHECK(sigma.evaluate(ab) == honest);
}

TEST_CASE("freeness defect between a and e averages to 1/d")
{
    const auto F2 = GroupSpec::free(2);
    const std::size_t d = 1000;
    const int seeds = 200;
    double sum = 0.0, sumsq = 0.0;
    for (int s = 0; s < seeds; ++s) {
        const auto sigma = SoficMap::build(F2, d, static_cast<std::uint64_t>(s));
        const double f = freeness_defect(sigma, GroupElement::word({a}), F2.identity());
        sum += f;
        sumsq += f * f;
    }
    const double mean = sum / seeds;
    const double var = (sumsq - seeds * mean * mean) / (seeds - 1);
    const double se = std::sqrt(var / seeds);
    CAPTURE(mean);
    CAPTURE(se);
    CHECK(std::abs(mean - 1.0 / d) <= 3.0 * se);
}

TEST_CASE("regular actions of small groups are exact and free")
{
    for (const auto& [name, G] : catalog::small_groups(24)) {
        CAPTURE(name);
        const auto sigma = SoficMap::build(G, static_cast<std::size_t>(G.order()));
        const auto all = G.ball(0);
        for (const auto& g : all) {
            CHECK(multiplicativity_defect(sigma, g, G.identity()) == 0.0);
            for (const auto& h : all) {
                REQUIRE(multiplicativity_defect(sigma, g, h) == 0.0);
                if (g != h)
                    REQUIRE(freeness_defect(sigma, g, h) == 0.0);
            }
        }
    }
}

TEST_CASE("Z quotients are exact once m exceeds twice the largest coordinate")
{
    const auto Z1 = GroupSpec::zpow(1);
    const auto words = Z1.ball(3);
    for (std::size_t m = 7; m <= 64; ++m) {
        const auto report = defect_report(SoficMap::build(Z1, m), words);
        CHECK(report.max_multiplicativity() == 0.0);
        CHECK(report.max_freeness() == 0.0);
    }
    // below the threshold distinct words collide
    CHECK(defect_report(SoficMap::build(Z1, 5), words).max_freeness() == 1.0);

    const auto Z2 = GroupSpec::zpow(2);
    const auto report = defect_report(SoficMap::build(Z2, 49), Z2.ball(3));
    CHECK(report.max_multiplicativity() == 0.0);
    CHECK(report.max_freeness() == 0.0);
}

TEST_CASE("spectral gap of the two-point swap is zero")
{
    const auto Z2 = catalog::cyclic(2);
    const auto gap = spectral_gap(SoficMap::build(Z2, 2), {GroupElement::index(1)});
    CHECK(gap.lambda_bottom == doctest::Approx(-1.0));
    CHECK(gap.gap == doctest::Approx(0.0));
}

TEST_CASE("spectral gap of a cycle matches circulant eigenvalues")
{
    const auto Z1 = GroupSpec::zpow(1);
    for (std::size_t n : {3u, 5u, 8u, 13u, 64u}) {
        CAPTURE(n);
        const auto gap = spectral_gap(SoficMap::build(Z1, n), {GroupElement::vec({1})});
        // eigenvalues of (P + P^T)/2 are cos(2 pi k / n)
        double top = -2.0, abs_max = 0.0;
        for (std::size_t k = 1; k < n; ++k) {
            const double c = std::cos(2.0 * std::numbers::pi * double(k) / double(n));
            top = std::max(top, c);
            abs_max = std::max(abs_max, std::abs(c));
        }
        CHECK(gap.lambda_top == doctest::Approx(std::cos(2.0 * std::numbers::pi / double(n))).epsilon(1e-10));
        CHECK(gap.lambda_top == doctest::Approx(top).epsilon(1e-10));
        CHECK(gap.lambda_abs == doctest::Approx(abs_max).epsilon(1e-10));
        CHECK(gap.gap == doctest::Approx(1.0 - abs_max).epsilon(1e-10));
    }
}

TEST_CASE("spectral gap is invariant under simultaneous conjugation")
{
    const auto F2 = GroupSpec::free(2);
    const std::size_t d = 120;
    const auto sigma = SoficMap::build(F2, d, 21);
    CounterRng rng(99);
    const auto c = Permutation::uniform(d, rng);
    std::vector<Permutation> conj;
    for (const auto& p : sigma.generator_images())
        conj.push_back(c * p * c.inverse());
    const auto other = SoficMap::from_generators(F2, conj);
    const std::vector gens = {GroupElement::word({a}), GroupElement::word({b})};
    CHECK(spectral_gap(other, gens).gap == doctest::Approx(spectral_gap(sigma, gens).gap).epsilon(1e-10));
}

TEST_CASE("random F2 maps have a spectral gap")
{
    const auto F2 = GroupSpec::free(2);
    const std::vector gens = {GroupElement::word({a}), GroupElement::word({b})};
    int good = 0;
    const int seeds = 10;
    for (int s = 0; s < seeds; ++s) {
        const auto gap = spectral_gap(SoficMap::build(F2, 500, static_cast<std::uint64_t>(s)), gens);
        good += gap.gap >= 0.05;
        CHECK(gap.lambda_abs <= 1.0 + 1e-12);
    }
    CHECK(good >= 9);
}

TEST_CASE("Lanczos agrees with the dense solver")
{
    const auto F2 = GroupSpec::free(2);
    const std::size_t d = 300;
    const auto sigma = SoficMap::build(F2, d, 4);
    const auto& perms = sigma.generator_images();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(d, d);
    for (const auto& p : perms)
        for (std::size_t k = 0; k < d; ++k) {
            A(p(k), k) += 0.25;
            A(k, p(k)) += 0.25;
        }
    auto op = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) { out = A * in; };
    const auto res = spectral::lanczos_extremes(op, d, 1e-10, 1000, 1, true);
    const auto dense = spectral_gap(sigma, {GroupElement::word({a}), GroupElement::word({b})});
    CHECK(res.converged);
    CHECK(res.lambda_max == doctest::Approx(dense.lambda_top).epsilon(1e-7));
    CHECK(res.lambda_min == doctest::Approx(dense.lambda_bottom).epsilon(1e-7));
    CHECK(std::abs(res.vector_max.sum()) <= 1e-8);
}

TEST_CASE("iterative spectral gap above the dense limit")
{
    const auto F2 = GroupSpec::free(2);
    const std::size_t d = 2100;
    const auto sigma = SoficMap::build(F2, d, 2);
    const auto gap = spectral_gap(sigma, {GroupElement::word({a}), GroupElement::word({b})});
    CHECK_FALSE(gap.dense);
    CHECK(gap.converged);
    // Ramanujan value for the normalised 4-regular operator is sqrt(3)/2
    CHECK(gap.lambda_top > 0.8);
    CHECK(gap.lambda_top < 0.95);
    CHECK(gap.lambda_bottom < -0.8);
    CHECK(gap.gap == doctest::Approx(1.0 - std::max(gap.lambda_top, -gap.lambda_bottom)));
}

TEST_CASE("invariant set obstruction")
{
    SUBCASE("two-point swap")
    {
        const auto Z2 = catalog::cyclic(2);
        const auto rep = invariant_set_obstruction(SoficMap::build(Z2, 2), {GroupElement::index(1)}, 0);
        CHECK(rep.exhaustive);
        CHECK(rep.found);
        CHECK(rep.best_invariance_defect == 1.0);
        CHECK(rep.balance == 0.5);
    }
    SUBCASE("identity generator leaves half the points invariant")
    {
        const auto Z1 = GroupSpec::zpow(1);
        for (std::size_t d : {8u, 40u}) {
            const auto rep = invariant_set_obstruction(SoficMap::build(Z1, d), {GroupElement::vec({0})}, 10);
            CHECK(rep.best_invariance_defect == 0.0);
            CHECK(rep.balance == 0.5);
        }
        std::vector<char> half(40, 0);
        std::fill(half.begin(), half.begin() + 20, 1);
        CHECK(invariance_defect(SoficMap::build(Z1, 40), {GroupElement::vec({0})}, half) == 0.0);
    }
    SUBCASE("long cycle has nearly invariant arcs")
    {
        const auto Z1 = GroupSpec::zpow(1);
        const auto rep = invariant_set_obstruction(SoficMap::build(Z1, 200), {GroupElement::vec({1})}, 10);
        CHECK(rep.best_invariance_defect == doctest::Approx(2.0 / 200));
    }
    SUBCASE("expander")
    {
        const auto F2 = GroupSpec::free(2);
        const std::vector gens = {GroupElement::word({a}), GroupElement::word({b})};
        const auto sigma = SoficMap::build(F2, 500, 3);
        const auto rep = invariant_set_obstruction(sigma, gens, 200, 5);
        const auto gap = spectral_gap(sigma, gens);
        CHECK(rep.found);
        CHECK(rep.best_invariance_defect >= 0.01);
        CHECK(rep.best_invariance_defect >= gap.gap / 2);
        CHECK(rep.balance >= 0.25);
        CHECK(rep.balance <= 0.75);
    }
}
