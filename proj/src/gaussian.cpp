#include "sofic/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "sofic/error.hpp"
#include "sofic/parallel.hpp"
#include "sofic/rng.hpp"
#include "sofic/spectral.hpp"

namespace sofic {

namespace {

// sin(pi x) and cos(pi x), exact at integers and half-integers.
double sinpi(double x)
{
    const double r = std::remainder(x, 2.0);
    if (r == 0.0 || std::abs(r) == 1.0)
        return 0.0;
    if (r == 0.5)
        return 1.0;
    if (r == -0.5)
        return -1.0;
    return std::sin(std::numbers::pi * r);
}

double cospi(double x)
{
    const double r = std::remainder(x, 2.0);
    if (std::abs(r) == 0.5)
        return 0.0;
    if (r == 0.0)
        return 1.0;
    if (std::abs(r) == 1.0)
        return -1.0;
    return std::cos(std::numbers::pi * r);
}

GroupRingElement t_check(const GroupSpec& group, const std::vector<GroupElement>& window,
                         const std::vector<double>& t)
{
    if (window.size() != t.size())
        throw ArgumentError("frequency vector length differs from its window");
    GroupRingElement out(group);
    for (std::size_t i = 0; i < window.size(); ++i)
        out.add(window[i], t[i]);
    return out;
}

std::vector<Eigen::Index> columns_of(const Microstate& ms, const std::vector<GroupElement>& window)
{
    std::vector<Eigen::Index> cols;
    cols.reserve(window.size());
    for (const auto& g : window) {
        const auto c = ms.column(g);
        if (!c)
            throw ArgumentError("test function window is not contained in the microstate window");
        cols.push_back(*c);
    }
    return cols;
}

} // namespace

double ArcProjectionSpec::measure() const
{
    double s = 0.0;
    for (const auto& a : arcs)
        s += a.length;
    return s;
}

GroupRingElement arc_projection_coeffs(const ArcProjectionSpec& spec)
{
    if (spec.cutoff < 0)
        throw ArgumentError("Fourier cutoff must be non-negative");
    for (const auto& a : spec.arcs)
        if (!(a.length >= 0.0 && a.length <= 1.0) || !std::isfinite(a.start))
            throw ArgumentError("arc lengths must lie in [0, 1]");
    if (spec.measure() > 1.0)
        throw ArgumentError("arcs have total measure above 1");
    const auto Z = GroupSpec::zpow(1);
    GroupRingElement out(Z);
    for (int k = -spec.cutoff; k <= spec.cutoff; ++k) {
        Complex c{};
        for (const auto& a : spec.arcs) {
            if (k == 0) {
                c += a.length;
                continue;
            }
            // integral over [s, s + l] of exp(-2 pi i k theta)
            const double center = a.start + a.length / 2;
            const double amplitude = sinpi(k * a.length) / (std::numbers::pi * k);
            c += amplitude * Complex(cospi(2.0 * k * center), -sinpi(2.0 * k * center));
        }
        out.add(GroupElement::vec({k}), c);
    }
    return out;
}

double FourierTestFunction::sup_bound() const
{
    double s = 0.0;
    for (const auto& term : terms)
        s += std::abs(term.theta);
    return s;
}

void FourierTestFunction::validate() const
{
    for (const auto& term : terms) {
        if (term.t.size() != window.size())
            throw ArgumentError("frequency vector length differs from the test function window");
        for (double v : term.t)
            if (!std::isfinite(v))
                throw ArgumentError("non-finite frequency");
    }
}

double gaussian_target(const GroupRingElement& p_hat, const std::vector<GroupElement>& window,
                       const std::vector<double>& t)
{
    const double n = ring_norm2(ring_convolve(t_check(p_hat.group(), window, t), p_hat));
    return std::exp(-std::numbers::pi * n * n);
}

Complex gaussian_target(const GroupRingElement& p_hat, const FourierTestFunction& f)
{
    f.validate();
    Complex s{};
    for (const auto& term : f.terms)
        s += term.theta * gaussian_target(p_hat, f.window, term.t);
    return s;
}

// ---------------------------------------------------------------------------

GaussianSampler::GaussianSampler(const Eigen::MatrixXd& projection, std::uint64_t seed)
{
    if (projection.rows() != projection.cols() || projection.rows() == 0)
        throw ArgumentError("projection must be a non-empty square matrix");
    if (!projection.allFinite())
        throw NumericalError("projection has non-finite entries");
    if ((projection - projection.transpose()).cwiseAbs().maxCoeff() > 1e-9)
        throw ArgumentError("projection is not symmetric to 1e-9");
    if ((projection * projection - projection).cwiseAbs().maxCoeff() > 1e-9)
        throw ArgumentError("projection is not idempotent to 1e-9");
    degree_ = projection.rows();
    seed_ = seed;
    projection_ = projection;
    const auto es = spectral::eigh(projection, true);
    Eigen::Index first = 0;
    while (first < degree_ && es.eigenvalues()[first] <= 0.5)
        ++first;
    rank_ = degree_ - first;
    if (rank_ == 0) {
        mode_ = Mode::zero;
    } else if (rank_ == degree_ && projection.isIdentity(0.0)) {
        mode_ = Mode::identity;
    } else {
        mode_ = Mode::factor;
        factor_ = es.eigenvectors().rightCols(rank_);
    }
}

GaussianSampler GaussianSampler::identity(Eigen::Index degree, std::uint64_t seed)
{
    return GaussianSampler(Eigen::MatrixXd::Identity(degree, degree), seed);
}

GaussianSampler GaussianSampler::zero(Eigen::Index degree, std::uint64_t seed)
{
    return GaussianSampler(Eigen::MatrixXd::Zero(degree, degree), seed);
}

Eigen::VectorXd GaussianSampler::coordinates(std::uint64_t index, Eigen::Index n) const
{
    CounterRng rng(derive_seed(seed_, index));
    std::normal_distribution<double> normal(0.0, kCoordinateSigma);
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i)
        w[i] = normal(rng);
    return w;
}

Eigen::VectorXd GaussianSampler::sample(std::uint64_t index) const
{
    switch (mode_) {
    case Mode::zero:
        return Eigen::VectorXd::Zero(degree_);
    case Mode::identity:
        return coordinates(index, degree_);
    case Mode::factor:
        break;
    }
    return factor_ * coordinates(index, rank_);
}

Eigen::MatrixXd GaussianSampler::sample_batch(std::uint64_t first, Eigen::Index count) const
{
    if (mode_ == Mode::zero)
        return Eigen::MatrixXd::Zero(degree_, count);
    const Eigen::Index n = mode_ == Mode::identity ? degree_ : rank_;
    Eigen::MatrixXd w(n, count);
    for (Eigen::Index c = 0; c < count; ++c)
        w.col(c) = coordinates(first + static_cast<std::uint64_t>(c), n);
    if (mode_ == Mode::identity)
        return w;
    return factor_ * w;
}

// ---------------------------------------------------------------------------

std::optional<Eigen::Index> Microstate::column(const GroupElement& g) const
{
    for (std::size_t i = 0; i < window.size(); ++i)
        if (window[i] == g)
            return static_cast<Eigen::Index>(i);
    return std::nullopt;
}

namespace {

Eigen::Index identity_index(const std::vector<GroupElement>& window, const SoficMap& sigma)
{
    const auto e = sigma.group().identity();
    for (std::size_t i = 0; i < window.size(); ++i)
        if (window[i] == e)
            return static_cast<Eigen::Index>(i);
    throw ArgumentError("microstate window must contain the identity");
}

std::vector<Permutation> window_inverses(const std::vector<GroupElement>& window, const SoficMap& sigma)
{
    std::vector<Permutation> inv;
    inv.reserve(window.size());
    for (const auto& g : window)
        inv.push_back(sigma.evaluate(g).inverse());
    return inv;
}

Microstate assemble(const Eigen::VectorXd& x, const std::vector<GroupElement>& window,
                    const std::vector<Permutation>& inverses, Eigen::Index identity)
{
    Microstate ms;
    ms.degree = static_cast<std::size_t>(x.size());
    ms.window = window;
    ms.identity_column = identity;
    ms.values.resize(x.size(), static_cast<Eigen::Index>(window.size()));
    for (std::size_t c = 0; c < window.size(); ++c)
        for (Eigen::Index j = 0; j < x.size(); ++j)
            ms.values(j, static_cast<Eigen::Index>(c)) = x[inverses[c](static_cast<std::size_t>(j))];
    return ms;
}

} // namespace

Microstate build_microstate(const Eigen::VectorXd& x, const std::vector<GroupElement>& window,
                            const SoficMap& sigma)
{
    if (static_cast<std::size_t>(x.size()) != sigma.degree())
        throw ArgumentError("vector length differs from the sofic degree");
    const auto identity = identity_index(window, sigma);
    return assemble(x, window, window_inverses(window, sigma), identity);
}

Complex empirical_functional(const Microstate& ms, const FourierTestFunction& f, const AuxiliaryFactor* aux)
{
    f.validate();
    const auto cols = columns_of(ms, f.window);
    if (aux && aux->psi.size() != ms.degree)
        throw ArgumentError("auxiliary sequence length differs from the microstate degree");
    const double two_pi = 2.0 * std::numbers::pi;
    Complex total{};
    for (Eigen::Index j = 0; j < ms.values.rows(); ++j) {
        Complex fj{};
        for (const auto& term : f.terms) {
            double phase = 0.0;
            for (std::size_t i = 0; i < cols.size(); ++i)
                phase += term.t[i] * ms.values(j, cols[i]);
            fj += term.theta * std::polar(1.0, two_pi * phase);
        }
        if (aux) {
            const std::size_t v = aux->psi[static_cast<std::size_t>(j)];
            if (v >= aux->g.size())
                throw ArgumentError("auxiliary value outside the range of g");
            fj *= aux->g[v];
        }
        total += fj;
    }
    return total / static_cast<double>(ms.degree);
}

ConcentrationResult concentration_experiment(const SoficMap& sigma, const GaussianSampler& sampler,
                                             const GroupRingElement& p_hat, const FourierTestFunction& f,
                                             const std::vector<GroupElement>& window, std::size_t trials,
                                             const std::vector<double>& deltas, const AuxiliaryFactor* aux)
{
    if (static_cast<std::size_t>(sampler.degree()) != sigma.degree())
        throw ArgumentError("sampler degree differs from the sofic degree");
    if (trials == 0)
        throw ArgumentError("concentration experiment needs at least one trial");
    for (double d : deltas)
        if (!(d > 0.0))
            throw ArgumentError("delta must be positive");
    f.validate();
    for (const auto& g : f.window) {
        bool found = false;
        for (const auto& h : window)
            found = found || g == h;
        if (!found)
            throw ArgumentError("test function window is not contained in the microstate window");
    }
    const auto identity = identity_index(window, sigma);
    const auto inverses = window_inverses(window, sigma);

    ConcentrationResult r;
    r.trials = trials;
    r.deltas = deltas;
    r.values.resize(trials);
    parallel_for(trials, [&](std::size_t i) {
        const Microstate ms = assemble(sampler.sample(i), window, inverses, identity);
        r.values[i] = empirical_functional(ms, f, aux);
    });

    const double n = static_cast<double>(trials);
    Complex sum{};
    for (const auto& v : r.values)
        sum += v;
    r.mean = sum / n;
    double m2 = 0.0, m4 = 0.0;
    for (const auto& v : r.values) {
        const double s = std::norm(v - r.mean);
        m2 += s;
        m4 += s * s;
    }
    r.variance = trials > 1 ? m2 / (n - 1.0) : 0.0;
    const double pop = m2 / n;
    r.variance_se = std::sqrt(std::max(0.0, m4 / n - pop * pop) / n);
    r.target = gaussian_target(p_hat, f) * (aux ? aux->integral : Complex(1.0));
    for (double delta : deltas) {
        std::size_t over = 0;
        for (const auto& v : r.values)
            over += std::abs(v - r.target) > delta;
        r.deviation_fraction.push_back(static_cast<double>(over) / n);
    }
    return r;
}

} // namespace sofic
