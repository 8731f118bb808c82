#include "sofic/sofic_map.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "sofic/error.hpp"
#include "sofic/rng.hpp"
#include "sofic/spectral.hpp"

namespace sofic {

namespace {

std::int64_t integer_root(std::size_t d, int k)
{
    auto m = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(d), 1.0 / k)));
    for (std::int64_t cand = std::max<std::int64_t>(1, m - 1); cand <= m + 1; ++cand) {
        std::size_t p = 1;
        for (int i = 0; i < k; ++i)
            p *= static_cast<std::size_t>(cand);
        if (p == d)
            return cand;
    }
    return 0;
}

// Translation by the i-th unit vector on (Z/m)^k, index = sum c_j m^j.
Permutation unit_translation(std::int64_t m, int k, int i)
{
    std::size_t d = 1, stride = 1;
    for (int j = 0; j < k; ++j) {
        if (j < i)
            stride *= static_cast<std::size_t>(m);
        d *= static_cast<std::size_t>(m);
    }
    std::vector<std::uint32_t> images(d);
    for (std::size_t idx = 0; idx < d; ++idx) {
        const std::size_t c = (idx / stride) % static_cast<std::size_t>(m);
        const std::size_t next = (c + 1) % static_cast<std::size_t>(m);
        images[idx] = static_cast<std::uint32_t>(idx + (next - c) * stride);
    }
    return Permutation(std::move(images));
}

std::vector<Permutation> evaluate_all(const SoficMap& sigma, const std::vector<GroupElement>& gens)
{
    std::vector<Permutation> perms;
    perms.reserve(gens.size());
    for (const auto& g : gens)
        perms.push_back(sigma.evaluate(g));
    return perms;
}

double set_defect(const std::vector<Permutation>& perms, const std::vector<char>& in)
{
    const std::size_t d = in.size();
    double worst = 0.0;
    for (const auto& p : perms) {
        // |A Δ σA| = 2 |σA \ A|
        std::size_t escaped = 0;
        for (std::size_t k = 0; k < d; ++k)
            escaped += in[k] && !in[p(k)];
        worst = std::max(worst, 2.0 * static_cast<double>(escaped) / static_cast<double>(d));
    }
    return worst;
}

struct MeanZeroSpectrum
{
    Eigen::VectorXd values;  // ascending, d-1 entries
    Eigen::MatrixXd vectors; // d x (d-1), original coordinates
};

// Spectrum of the averaged operator restricted to the complement of the
// constant vector. A Householder reflection H maps 1/sqrt(d) to e_0; since A
// is doubly stochastic, HAH is block diagonal with a 1 in the corner.
MeanZeroSpectrum mean_zero_spectrum_dense(const std::vector<Permutation>& perms, std::size_t d, bool vectors)
{
    const auto n = static_cast<Eigen::Index>(d);
    const double w = 1.0 / (2.0 * static_cast<double>(perms.size()));
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& p : perms)
        for (Eigen::Index k = 0; k < n; ++k) {
            a(p(k), k) += w;
            a(k, p(k)) += w;
        }
    Eigen::VectorXd u = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    u[0] -= 1.0;
    const double un = u.norm();
    if (un > 0.0)
        u /= un;
    const Eigen::VectorXd au = a * u;
    const double uau = u.dot(au);
    // HAH with H = I - 2uu^T
    Eigen::MatrixXd b = a - 2.0 * u * (a.transpose() * u).transpose() - 2.0 * au * u.transpose() +
                        4.0 * uau * u * u.transpose();
    Eigen::MatrixXd sub = b.bottomRightCorner(n - 1, n - 1);
    sub = 0.5 * (sub + sub.transpose()).eval();
    auto es = spectral::eigh(sub, vectors);
    MeanZeroSpectrum out;
    out.values = es.eigenvalues();
    if (vectors) {
        Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(n, n - 1);
        padded.bottomRows(n - 1) = es.eigenvectors();
        out.vectors = padded - 2.0 * u * (u.transpose() * padded);
    }
    return out;
}

spectral::LanczosResult mean_zero_spectrum_iterative(const std::vector<Permutation>& perms, std::size_t d)
{
    const double w = 1.0 / (2.0 * static_cast<double>(perms.size()));
    auto op = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
        out.setZero(in.size());
        for (const auto& p : perms)
            for (std::size_t k = 0; k < d; ++k) {
                out[p(k)] += w * in[k];
                out[k] += w * in[p(k)];
            }
    };
    return spectral::lanczos_extremes(op, static_cast<Eigen::Index>(d), 1e-8, 1000, 0x5eed, true);
}

} // namespace

SoficMap SoficMap::build(const GroupSpec& group, std::size_t degree, std::optional<std::uint64_t> seed, int word_cap)
{
    if (degree < 1)
        throw ArgumentError("sofic degree must be positive");
    if (word_cap < 0)
        throw ArgumentError("word cap must be non-negative");
    SoficMap map(group, degree);
    map.word_cap_ = word_cap;
    switch (group.kind()) {
    case GroupKind::free: {
        map.seed_ = seed.value_or(0);
        for (int i = 0; i < group.rank(); ++i) {
            CounterRng rng(*map.seed_, static_cast<std::uint64_t>(i));
            map.generators_.push_back(Permutation::uniform(degree, rng));
        }
        break;
    }
    case GroupKind::zpow: {
        const int k = group.dim();
        const std::int64_t m = integer_root(degree, k);
        if (m == 0)
            throw ArgumentError("degree " + std::to_string(degree) + " is not a perfect " + std::to_string(k) +
                                "-th power, required for the Z^" + std::to_string(k) + " quotient");
        map.seed_ = seed;
        map.modulus_ = m;
        for (int i = 0; i < k; ++i)
            map.generators_.push_back(unit_translation(m, k, i));
        break;
    }
    case GroupKind::finite: {
        const int n = group.order();
        if (degree != static_cast<std::size_t>(n))
            throw ArgumentError("regular action of a finite group of order " + std::to_string(n) +
                                " needs degree " + std::to_string(n));
        map.seed_ = seed;
        for (int g = 0; g < n; ++g) {
            std::vector<std::uint32_t> images(n);
            for (int h = 0; h < n; ++h)
                images[h] = static_cast<std::uint32_t>(group.table_product(g, h));
            map.generators_.emplace_back(std::move(images));
        }
        break;
    }
    }
    return map;
}

SoficMap SoficMap::from_generators(const GroupSpec& group, std::vector<Permutation> images, int word_cap)
{
    std::size_t expected = 0;
    if (group.kind() == GroupKind::free)
        expected = static_cast<std::size_t>(group.rank());
    else if (group.kind() == GroupKind::zpow)
        expected = static_cast<std::size_t>(group.dim());
    else
        throw StructuralError("from_generators supports free groups and Z^k");
    if (images.size() != expected)
        throw ArgumentError("expected " + std::to_string(expected) + " generator images");
    if (images.empty() || images.front().degree() == 0)
        throw ArgumentError("generator images must have positive degree");
    const std::size_t d = images.front().degree();
    for (const auto& p : images)
        if (p.degree() != d)
            throw ArgumentError("generator images have different degrees");
    SoficMap map(group, d);
    map.word_cap_ = word_cap;
    map.generators_ = std::move(images);
    return map;
}

SoficMap SoficMap::with_override(const GroupElement& g, Permutation p) const
{
    group_.require(g);
    if (p.degree() != degree_)
        throw ArgumentError("override permutation has the wrong degree");
    SoficMap copy = *this;
    copy.cache_ = std::make_shared<Cache>();
    copy.overrides_[g] = std::move(p);
    return copy;
}

Permutation SoficMap::evaluate(const GroupElement& g) const
{
    group_.require(g);
    if (auto it = overrides_.find(g); it != overrides_.end())
        return it->second;
    if (group_.kind() == GroupKind::free && g.length() > word_cap_)
        throw CapExceededError("word of length " + std::to_string(g.length()) + " exceeds the evaluation cap " +
                               std::to_string(word_cap_));
    if (group_.kind() == GroupKind::finite)
        return generators_[static_cast<std::size_t>(g.data()[0])];
    {
        std::lock_guard lock(cache_->mutex);
        if (auto it = cache_->values.find(g); it != cache_->values.end())
            return it->second;
    }
    Permutation p = compute(g);
    std::lock_guard lock(cache_->mutex);
    return cache_->values.try_emplace(g, std::move(p)).first->second;
}

Permutation SoficMap::compute(const GroupElement& g) const
{
    const auto data = g.data();
    if (group_.kind() == GroupKind::free) {
        if (data.empty())
            return Permutation::identity(degree_);
        const std::int64_t last = data.back();
        const Permutation& gen = generators_[static_cast<std::size_t>(last < 0 ? -last : last) - 1];
        const Permutation letter = last < 0 ? gen.inverse() : gen;
        if (data.size() == 1)
            return letter;
        // Prefixes of reduced words are reduced; reuse the memoised prefix.
        const auto prefix = GroupElement::word(data.first(data.size() - 1));
        return evaluate(prefix) * letter;
    }
    // Z^k: commuting generators, product of powers.
    Permutation p = Permutation::identity(degree_);
    for (std::size_t i = 0; i < data.size(); ++i)
        if (data[i] != 0)
            p = p * generators_[i].pow(data[i]);
    return p;
}

// ---------------------------------------------------------------------------

double multiplicativity_defect(const SoficMap& sigma, const GroupElement& g, const GroupElement& h)
{
    const Permutation pg = sigma.evaluate(g);
    const Permutation ph = sigma.evaluate(h);
    const Permutation pgh = sigma.evaluate(sigma.group().multiply(g, h));
    std::size_t bad = 0;
    for (std::size_t k = 0; k < sigma.degree(); ++k)
        bad += pg(ph(k)) != pgh(k);
    return static_cast<double>(bad) / static_cast<double>(sigma.degree());
}

double freeness_defect(const SoficMap& sigma, const GroupElement& g, const GroupElement& h)
{
    if (g == h)
        throw ArgumentError("freeness defect needs distinct elements");
    const Permutation pg = sigma.evaluate(g);
    const Permutation ph = sigma.evaluate(h);
    std::size_t agree = 0;
    for (std::size_t k = 0; k < sigma.degree(); ++k)
        agree += pg(k) == ph(k);
    return static_cast<double>(agree) / static_cast<double>(sigma.degree());
}

double DefectReport::max_multiplicativity() const
{
    double m = 0.0;
    for (const auto& p : pairs)
        m = std::max(m, p.multiplicativity);
    return m;
}

double DefectReport::max_freeness() const
{
    double m = 0.0;
    for (const auto& p : pairs)
        m = std::max(m, p.freeness);
    return m;
}

double DefectReport::mean_freeness() const
{
    if (pairs.empty())
        return 0.0;
    double s = 0.0;
    for (const auto& p : pairs)
        s += p.freeness;
    return s / static_cast<double>(pairs.size());
}

DefectReport defect_report(const SoficMap& sigma, const std::vector<GroupElement>& elements)
{
    DefectReport report;
    report.word_cap = sigma.word_cap();
    for (const auto& g : elements)
        for (const auto& h : elements)
            if (g != h)
                report.pairs.push_back(
                    {g, h, multiplicativity_defect(sigma, g, h), freeness_defect(sigma, g, h)});
    return report;
}

SpectralGapReport spectral_gap(const SoficMap& sigma, const std::vector<GroupElement>& gens)
{
    if (gens.empty())
        throw ArgumentError("spectral gap needs at least one generator");
    const auto perms = evaluate_all(sigma, gens);
    const std::size_t d = sigma.degree();
    SpectralGapReport report;
    if (d == 1) {
        report.gap = 1.0;
        return report;
    }
    if (static_cast<Eigen::Index>(d) <= spectral::kDenseLimit) {
        const auto spec = mean_zero_spectrum_dense(perms, d, false);
        report.lambda_bottom = spec.values[0];
        report.lambda_top = spec.values[spec.values.size() - 1];
    } else {
        const auto res = mean_zero_spectrum_iterative(perms, d);
        report.lambda_bottom = res.lambda_min;
        report.lambda_top = res.lambda_max;
        report.dense = false;
        report.converged = res.converged;
    }
    report.lambda_abs = std::max(std::abs(report.lambda_top), std::abs(report.lambda_bottom));
    report.gap = 1.0 - report.lambda_abs;
    return report;
}

double invariance_defect(const SoficMap& sigma, const std::vector<GroupElement>& gens,
                         const std::vector<char>& indicator)
{
    if (indicator.size() != sigma.degree())
        throw ArgumentError("indicator length differs from the sofic degree");
    return set_defect(evaluate_all(sigma, gens), indicator);
}

ObstructionReport invariant_set_obstruction(const SoficMap& sigma, const std::vector<GroupElement>& gens,
                                            int trials, std::uint64_t seed)
{
    if (gens.empty())
        throw ArgumentError("obstruction search needs at least one generator");
    const auto perms = evaluate_all(sigma, gens);
    const std::size_t d = sigma.degree();
    const std::size_t min_size = (d + 3) / 4; // ceil(d/4)
    const std::size_t max_size = 3 * d / 4;

    ObstructionReport report;
    report.best_invariance_defect = std::numeric_limits<double>::infinity();
    report.balance = std::numeric_limits<double>::quiet_NaN();

    std::vector<char> in(d, 0);
    auto consider = [&](std::size_t size) {
        ++report.candidates;
        const double defect = set_defect(perms, in);
        const double balance = static_cast<double>(size) / static_cast<double>(d);
        // ties go to the more balanced set
        if (!report.found || defect < report.best_invariance_defect ||
            (defect == report.best_invariance_defect && std::abs(balance - 0.5) < std::abs(report.balance - 0.5))) {
            report.found = true;
            report.best_invariance_defect = defect;
            report.balance = balance;
        }
    };

    if (min_size > max_size)
        return report;

    if (d <= 16) {
        report.exhaustive = true;
        for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
            const auto size = static_cast<std::size_t>(std::popcount(mask));
            if (size < min_size || size > max_size)
                continue;
            for (std::size_t k = 0; k < d; ++k)
                in[k] = (mask >> k) & 1u;
            consider(size);
        }
        return report;
    }

    // Sweep cuts along the slowest-mixing mean-zero direction.
    Eigen::VectorXd direction;
    if (static_cast<Eigen::Index>(d) <= spectral::kDenseLimit) {
        const auto spec = mean_zero_spectrum_dense(perms, d, true);
        direction = spec.vectors.col(spec.vectors.cols() - 1);
    } else {
        direction = mean_zero_spectrum_iterative(perms, d).vector_max;
    }
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return direction[static_cast<Eigen::Index>(a)] <
                                                                direction[static_cast<Eigen::Index>(b)]; });
    for (std::size_t s = 0; s < d; ++s) {
        in[order[s]] = 1;
        if (s + 1 >= min_size && s + 1 <= max_size)
            consider(s + 1);
    }

    CounterRng rng(seed, 0x0b57);
    std::vector<std::size_t> shuffled(d);
    for (int t = 0; t < trials; ++t) {
        std::iota(shuffled.begin(), shuffled.end(), std::size_t{0});
        const std::size_t size = min_size + static_cast<std::size_t>(rng() % (max_size - min_size + 1));
        for (std::size_t i = 0; i < size; ++i)
            std::swap(shuffled[i], shuffled[i + static_cast<std::size_t>(rng() % (d - i))]);
        std::fill(in.begin(), in.end(), 0);
        for (std::size_t i = 0; i < size; ++i)
            in[shuffled[i]] = 1;
        consider(size);
    }
    return report;
}

} // namespace sofic
