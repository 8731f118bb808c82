#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "sofic/embedding.hpp"
#include "sofic/error.hpp"
#include "sofic/gaussian.hpp"
#include "sofic/group_catalog.hpp"
#include "sofic/parallel.hpp"

using namespace sofic;

namespace {

const double pi = std::numbers::pi;

GroupElement z(std::int64_t k)
{
    return GroupElement::vec({k});
}

// Midpoint rule for the k-th Fourier coefficient of an arc indicator.
Complex quadrature_coefficient(const Arc& arc, int k, int points = 200000)
{
    Complex s{};
    const double h = arc.length / points;
    for (int i = 0; i < points; ++i) {
        const double theta = arc.start + (i + 0.5) * h;
        s += std::polar(1.0, -2.0 * pi * k * theta);
    }
    return s * h;
}

Eigen::MatrixXd random_projection(Eigen::Index d, Eigen::Index r, std::mt19937& gen)
{
    std::normal_distribution<double> nd;
    Eigen::MatrixXd v(d, r);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < r; ++j)
            v(i, j) = nd(gen);
    const Eigen::MatrixXd q = v.householderQr().householderQ() * Eigen::MatrixXd::Identity(d, r);
    Eigen::MatrixXd p = q * q.transpose();
    return 0.5 * (p + p.transpose());
}

FourierTestFunction single_frequency(std::vector<GroupElement> window, std::vector<double> t, Complex theta = 1.0)
{
    FourierTestFunction f;
    f.window = std::move(window);
    f.terms.push_back({std::move(t), theta});
    return f;
}

} // namespace

TEST_CASE("arc projection coefficients")
{
    SUBCASE("full circle")
    {
        const auto c = arc_projection_coeffs({{{0.0, 1.0}}, 6});
        CHECK(c.support().size() == 1);
        CHECK(c.coefficient(z(0)) == Complex(1.0));
    }
    SUBCASE("zeroth coefficient is the measure")
    {
        for (double s : {0.1, 0.25, 0.6})
            CHECK(arc_projection_coeffs({{Arc::centered(0.3, s)}, 4}).coefficient(z(0)) == Complex(s));
        const auto two = arc_projection_coeffs({{{0.0, 0.1}, {0.5, 0.2}}, 3});
        CHECK(two.coefficient(z(0)).real() == doctest::Approx(0.3));
    }
    SUBCASE("closed form agrees with quadrature and is conjugate symmetric")
    {
        const Arc arc{0.17, 0.31};
        const auto c = arc_projection_coeffs({{arc}, 6});
        for (int k = -6; k <= 6; ++k) {
            CAPTURE(k);
            CHECK(std::abs(c.coefficient(z(k)) - quadrature_coefficient(arc, k)) <= 1e-8);
            CHECK(std::abs(c.coefficient(z(-k)) - std::conj(c.coefficient(z(k)))) <= 1e-15);
        }
        CHECK(arc_projection_coeffs({{Arc::centered(0.0, 0.25)}, 8}).is_real());
    }
    SUBCASE("Parseval")
    {
        const double s = 0.25;
        double previous = 0.0;
        for (int K : {0, 1, 4, 16, 64, 256, 2048}) {
            const double n2 = std::pow(ring_norm2(arc_projection_coeffs({{Arc{0.1, s}}, K})), 2);
            CHECK(n2 >= previous - 1e-15);
            CHECK(n2 <= s + 1e-12);
            CHECK(s - n2 <= 2.0 / (pi * pi * std::max(K, 1)) + 1e-12);
            previous = n2;
        }
        CHECK(previous == doctest::Approx(s).epsilon(1e-3));
    }
    CHECK_THROWS_AS(arc_projection_coeffs({{{0.0, 0.5}}, -1}), ArgumentError);
    CHECK_THROWS_AS(arc_projection_coeffs({{{0.0, 0.7}, {0.1, 0.7}}, 1}), ArgumentError);
}

TEST_CASE("gaussian target")
{
    const auto Z = GroupSpec::zpow(1);
    const auto delta0 = GroupRingElement::delta(Z, z(0));
    const std::vector window = {z(0), z(1), z(-1)};
    CHECK(gaussian_target(delta0, window, {0, 0, 0}) == 1.0);
    const std::vector<double> t = {0.3, -0.2, 0.1};
    CHECK(gaussian_target(delta0, window, t) == doctest::Approx(std::exp(-pi * (0.09 + 0.04 + 0.01))));

    const double s = 0.25;
    const auto p = arc_projection_coeffs({{Arc::centered(0.0, s)}, 4000});
    CHECK(gaussian_target(p, {z(0)}, {1.0}) == doctest::Approx(std::exp(-pi * s)).epsilon(1e-4));

    // values in (0, 1], equal to 1 exactly when t_check * p_hat vanishes
    const auto zero = GroupRingElement(Z);
    CHECK(gaussian_target(zero, window, t) == 1.0);
    std::mt19937 gen(1);
    std::normal_distribution<double> nd;
    for (int i = 0; i < 20; ++i) {
        const double v = gaussian_target(arc_projection_coeffs({{Arc{0.3, 0.4}}, 5}), window, {nd(gen), nd(gen), nd(gen)});
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
    CHECK_THROWS_AS(gaussian_target(delta0, window, {1.0}), ArgumentError);
}

TEST_CASE("subspace gaussian sampler")
{
    SUBCASE("zero projection")
    {
        const auto s = GaussianSampler::zero(5, 3);
        CHECK(s.rank() == 0);
        CHECK(s.sample(0).isZero(0.0));
        CHECK(s.sample_batch(0, 4).isZero(0.0));
    }
    SUBCASE("coordinate variance is 1/(2 pi)")
    {
        const auto s = GaussianSampler::identity(1, 42);
        const Eigen::Index n = 1000000;
        const Eigen::MatrixXd x = s.sample_batch(0, n);
        const double mean = x.mean();
        const double var = (x.array() - mean).square().sum() / double(n - 1);
        const double m4 = (x.array() - mean).pow(4).sum() / double(n);
        const double se = std::sqrt((m4 - var * var) / double(n));
        CHECK(std::abs(var - 1.0 / (2.0 * pi)) <= 3.0 * se);
        CHECK(std::abs(mean) <= 3.0 * std::sqrt(var / double(n)));
    }
    SUBCASE("samples lie in the range and match the characteristic function")
    {
        std::mt19937 gen(7);
        std::normal_distribution<double> nd;
        const Eigen::Index d = 16;
        for (int rep = 0; rep < 3; ++rep) {
            const auto p = random_projection(d, 3 + 4 * rep, gen);
            const GaussianSampler s(p, 100 + rep);
            CHECK(s.rank() == 3 + 4 * rep);
            Eigen::VectorXd v(d);
            for (Eigen::Index i = 0; i < d; ++i)
                v[i] = 0.4 * nd(gen);
            const Eigen::Index n = 200000;
            const Eigen::MatrixXd x = s.sample_batch(0, n);
            CHECK((p * x - x).cwiseAbs().maxCoeff() <= 1e-9);
            Complex sum{};
            double norm_sq = 0.0;
            std::vector<Complex> values(n);
            for (Eigen::Index c = 0; c < n; ++c) {
                values[c] = std::polar(1.0, 2.0 * pi * x.col(c).dot(v));
                sum += values[c];
                norm_sq += x.col(c).squaredNorm();
            }
            const Complex mean = sum / double(n);
            double var = 0.0;
            for (const auto& w : values)
                var += std::norm(w - mean);
            var /= double(n - 1);
            const double target = std::exp(-pi * (p * v).squaredNorm());
            CHECK(std::abs(mean - target) <= 3.0 * std::sqrt(var / double(n)));
            CHECK(norm_sq / double(n) == doctest::Approx(double(s.rank()) / (2.0 * pi)).epsilon(0.01));
        }
    }
    SUBCASE("sampling is reproducible per index")
    {
        std::mt19937 gen(9);
        const GaussianSampler s(random_projection(8, 3, gen), 5);
        const Eigen::MatrixXd batch = s.sample_batch(10, 5);
        for (int c = 0; c < 5; ++c)
            CHECK(batch.col(c) == s.sample(10 + c));
        CHECK(GaussianSampler(s.projection(), 5).sample(3) == s.sample(3));
        CHECK(GaussianSampler(s.projection(), 6).sample(3) != s.sample(3));
    }
    SUBCASE("non-projections are rejected")
    {
        CHECK_THROWS_AS(GaussianSampler(0.5 * Eigen::MatrixXd::Identity(3, 3), 1), ArgumentError);
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
        m(0, 1) = 1.0;
        CHECK_THROWS_AS(GaussianSampler(m, 1), ArgumentError);
    }
}

TEST_CASE("microstates")
{
    const auto Z = GroupSpec::zpow(1);
    const std::size_t d = 12;
    const auto sigma = SoficMap::build(Z, d);
    Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(d, 0.0, 11.0);

    auto ms = build_microstate(x, {z(0)}, sigma);
    CHECK(ms.values.col(0) == x);

    ms = build_microstate(x, {z(0), z(1)}, sigma);
    for (std::size_t j = 0; j < d; ++j)
        CHECK(ms.values(j, 1) == x[(j + d - 1) % d]);

    ms = build_microstate(Eigen::VectorXd::Constant(d, 2.5), {z(0), z(1), z(-3)}, sigma);
    CHECK((ms.values.array() == 2.5).all());

    CHECK_THROWS_AS(build_microstate(x, {z(1)}, sigma), ArgumentError);
    CHECK_THROWS_AS(build_microstate(Eigen::VectorXd::Zero(5), {z(0)}, sigma), ArgumentError);

    // left translation: phi(sigma(h) j)(g) = phi(j)(h^{-1} g) for an exact action
    const auto S3 = catalog::symmetric(3);
    const auto reg = SoficMap::build(S3, 6);
    std::mt19937 gen(3);
    std::normal_distribution<double> nd;
    Eigen::VectorXd y(6);
    for (int i = 0; i < 6; ++i)
        y[i] = nd(gen);
    const auto all = S3.ball(0);
    const auto m = build_microstate(y, all, reg);
    for (const auto& h : all)
        for (const auto& g : all)
            for (std::size_t j = 0; j < 6; ++j) {
                const auto hj = reg.evaluate(h)(j);
                const auto col_g = *m.column(g);
                const auto col_hg = *m.column(S3.multiply(S3.inverse(h), g));
                CHECK(m.values(hj, col_g) == m.values(j, col_hg));
            }
}

TEST_CASE("empirical functional")
{
    const auto Z = GroupSpec::zpow(1);
    const std::size_t d = 16;
    const auto sigma = SoficMap::build(Z, d);
    const std::vector window = {z(0), z(1), z(-1)};
    std::mt19937 gen(2);
    std::normal_distribution<double> nd;
    Eigen::VectorXd x(d);
    for (std::size_t i = 0; i < d; ++i)
        x[i] = nd(gen);
    const auto ms = build_microstate(x, window, sigma);

    CHECK(empirical_functional(ms, single_frequency({z(0)}, {0.0})) == Complex(1.0));

    FourierTestFunction f;
    f.window = {z(1), z(0)};
    f.terms = {{{0.3, -0.7}, {0.5, 0.25}}, {{1.1, 0.2}, {-1.0, 0.0}}};
    const auto zero_ms = build_microstate(Eigen::VectorXd::Zero(d), window, sigma);
    CHECK(std::abs(empirical_functional(zero_ms, f) - Complex(-0.5, 0.25)) <= 1e-15);

    const Complex value = empirical_functional(ms, f);
    CHECK(std::abs(value) <= f.sup_bound() + 1e-12);
    FourierTestFunction scaled = f;
    for (auto& term : scaled.terms)
        term.theta *= Complex(2.0, -1.0);
    CHECK(std::abs(empirical_functional(ms, scaled) - Complex(2.0, -1.0) * value) <= 1e-12);
    FourierTestFunction first = f, second = f;
    first.terms.pop_back();
    second.terms.erase(second.terms.begin());
    CHECK(std::abs(empirical_functional(ms, first) + empirical_functional(ms, second) - value) <= 1e-12);

    CHECK_THROWS_AS(empirical_functional(ms, single_frequency({z(2)}, {1.0})), ArgumentError);

    AuxiliaryFactor aux;
    aux.g = {1.0, -1.0};
    for (std::size_t j = 0; j < d; ++j)
        aux.psi.push_back(j % 2);
    aux.integral = 0.0;
    CHECK(std::abs(empirical_functional(ms, single_frequency({z(0)}, {0.0}), &aux)) <= 1e-15);
}

TEST_CASE("concentration experiment")
{
    const auto Z = GroupSpec::zpow(1);
    const std::vector window = {z(0), z(1), z(-1)};
    SUBCASE("zero projection gives a constant functional")
    {
        const auto sigma = SoficMap::build(Z, 32);
        const auto f = single_frequency({z(0), z(1)}, {0.4, 0.3}, {0.5, 0.5});
        const auto r = concentration_experiment(sigma, GaussianSampler::zero(32, 1), GroupRingElement(Z), f, window,
                                                50, {0.01, 0.1});
        CHECK(r.mean == Complex(0.5, 0.5));
        CHECK(r.variance == 0.0);
        CHECK(r.target == Complex(0.5, 0.5));
        CHECK(r.deviation_fraction == std::vector{0.0, 0.0});
    }
    SUBCASE("exact quotient with p = 1")
    {
        const std::size_t d = 256;
        const auto sigma = SoficMap::build(Z, d);
        const std::vector<double> t = {0.35, 0.2};
        const auto f = single_frequency({z(0), z(1)}, t);
        const std::size_t n = 10000;
        const auto r = concentration_experiment(sigma, GaussianSampler::identity(d, 77),
                                                GroupRingElement::delta(Z, z(0)), f, window, n, {0.05});
        const double target = std::exp(-pi * (t[0] * t[0] + t[1] * t[1]));
        CHECK(r.target.real() == doctest::Approx(target));
        CHECK(std::abs(r.mean - target) <= 3.0 * std::sqrt(r.variance / double(n)));
        CHECK(r.values.size() == n);
    }
    SUBCASE("variance decreases with the degree")
    {
        const std::vector<double> t = {0.35, 0.2};
        const auto f = single_frequency({z(0), z(1)}, t);
        double previous = 1e9, previous_se = 0.0;
        for (std::size_t d : {64u, 256u, 1024u}) {
            const auto r = concentration_experiment(SoficMap::build(Z, d), GaussianSampler::identity(d, d),
                                                    GroupRingElement::delta(Z, z(0)), f, window, 1500, {0.05});
            CAPTURE(d);
            CHECK(r.variance <= previous + 2.0 * std::hypot(r.variance_se, previous_se));
            previous = r.variance;
            previous_se = r.variance_se;
        }
    }
    SUBCASE("results do not depend on the thread count")
    {
        const auto sigma = SoficMap::build(Z, 64);
        const auto f = single_frequency({z(0), z(1)}, {0.3, 0.1});
        const auto run = [&] {
            return concentration_experiment(sigma, GaussianSampler::identity(64, 3), GroupRingElement::delta(Z, z(0)),
                                            f, window, 200, {0.05});
        };
        const int before = thread_count();
        set_thread_count(1);
        const auto a = run();
        set_thread_count(3);
        const auto b = run();
        set_thread_count(before);
        CHECK(a.values == b.values);
        CHECK(a.mean == b.mean);
    }
    SUBCASE("bad inputs")
    {
        const auto sigma = SoficMap::build(Z, 16);
        const auto f = single_frequency({z(2)}, {0.3});
        CHECK_THROWS_AS(concentration_experiment(sigma, GaussianSampler::identity(16, 1),
                                                 GroupRingElement::delta(Z, z(0)), f, window, 10, {0.1}),
                        ArgumentError);
        CHECK_THROWS_AS(concentration_experiment(sigma, GaussianSampler::identity(16, 1),
                                                 GroupRingElement::delta(Z, z(0)), single_frequency({z(0)}, {0.3}),
                                                 window, 10, {-0.1}),
                        ArgumentError);
    }
}

TEST_CASE("arc pipeline rounds to a projection of trace near the arc measure")
{
    const std::size_t m = 64;
    const auto Z = GroupSpec::zpow(1);
    const auto sigma = SoficMap::build(Z, m);
    const auto coeffs = arc_projection_coeffs({{Arc::centered(0.0, 0.25)}, 8});
    const auto rounded = spectral_round(realify(sigma, coeffs));
    CHECK(rounded.certificate_holds);
    CHECK(rounded.idempotence_error <= 1e-9);
    CHECK(rounded.trace >= 0.15);
    CHECK(rounded.trace <= 0.35);
    const GaussianSampler s(rounded.projection, 1);
    CHECK(s.rank() == rounded.rank);
}
