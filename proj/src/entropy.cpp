#include "sofic/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sofic/error.hpp"
#include "sofic/parallel.hpp"

namespace sofic {

namespace {

Eigen::Index require_column(const Microstate& ms, const GroupElement& g)
{
    const auto c = ms.column(g);
    if (!c)
        throw ArgumentError("microstate window too small for the requested element");
    return *c;
}

void append_unique(std::vector<GroupElement>& out, const GroupElement& g)
{
    if (std::find(out.begin(), out.end(), g) == out.end())
        out.push_back(g);
}

// delta2 restricted to a yes/no answer; stops once the distance is known to exceed eps.
bool separated(const Microstate& a, const Microstate& b, double eps)
{
    const auto x = a.values.col(a.identity_column);
    const auto y = b.values.col(b.identity_column);
    const double d = static_cast<double>(a.degree);
    const double limit = eps * eps * d;
    double s = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double t = base_distance(x[j], y[j]);
        s += t * t;
        if (s > limit)
            break;
    }
    return std::sqrt(s / d) > eps;
}

} // namespace

double base_distance(double x, double y)
{
    return std::min(std::abs(x - y), 1.0);
}

double delta2(const Microstate& phi, const Microstate& psi)
{
    if (phi.degree != psi.degree)
        throw ArgumentError("microstates have different degrees");
    const auto x = phi.values.col(phi.identity_column);
    const auto y = psi.values.col(psi.identity_column);
    double s = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double t = base_distance(x[j], y[j]);
        s += t * t;
    }
    return std::sqrt(s / static_cast<double>(phi.degree));
}

double equivariance_defect(const Microstate& phi, const SoficMap& sigma, const GroupElement& g)
{
    if (phi.degree != sigma.degree())
        throw ArgumentError("microstate degree differs from the sofic degree");
    const GroupElement g_inv = sigma.group().inverse(g);
    require_column(phi, g);
    const Eigen::Index col = require_column(phi, g_inv);
    const Eigen::Index e = phi.identity_column;
    const Permutation p = sigma.evaluate(g);
    double s = 0.0;
    for (std::size_t j = 0; j < phi.degree; ++j) {
        const double t = base_distance(phi.values(static_cast<Eigen::Index>(j), col), phi.values(p(j), e));
        s += t * t;
    }
    return std::sqrt(s / static_cast<double>(phi.degree));
}

void MapParams::validate() const
{
    if (!(delta > 0.0))
        throw ArgumentError("delta must be positive");
    if (targets.size() != L.size())
        throw ArgumentError("every test function needs an analytic target");
    for (const auto& f : L)
        f.validate();
    if (filter) {
        if (!(filter->eta > 0.0))
            throw ArgumentError("eta must be positive");
        for (const auto& b : filter->box)
            if (!(b.bound > 0.0))
                throw ArgumentError("box bounds must be positive");
    }
}

std::vector<GroupElement> membership_window(const GroupSpec& group, const MapParams& params)
{
    std::vector<GroupElement> out = {group.identity()};
    for (const auto& g : params.F) {
        append_unique(out, g);
        append_unique(out, group.inverse(g));
    }
    for (const auto& f : params.L)
        for (const auto& g : f.window)
            append_unique(out, g);
    if (params.filter)
        for (const auto& b : params.filter->box)
            append_unique(out, b.g);
    return out;
}

Membership map_membership(const Microstate& phi, const SoficMap& sigma, const MapParams& params)
{
    params.validate();
    Membership m;
    for (const auto& g : params.F)
        m.worst_equivariance = std::max(m.worst_equivariance, equivariance_defect(phi, sigma, g));
    for (std::size_t i = 0; i < params.L.size(); ++i)
        m.worst_functional_gap =
            std::max(m.worst_functional_gap, std::abs(empirical_functional(phi, params.L[i]) - params.targets[i]));
    bool inside_box = true;
    if (params.filter) {
        std::vector<Eigen::Index> cols;
        for (const auto& b : params.filter->box)
            cols.push_back(require_column(phi, b.g));
        std::size_t inside = 0;
        for (Eigen::Index j = 0; j < phi.values.rows(); ++j) {
            bool ok = true;
            for (std::size_t i = 0; i < cols.size() && ok; ++i)
                ok = std::abs(phi.values(j, cols[i])) < params.filter->box[i].bound + kBoxSlack;
            inside += ok;
        }
        m.box_mass = static_cast<double>(inside) / static_cast<double>(phi.degree);
        inside_box = m.box_mass > 1.0 - params.filter->eta;
    }
    m.member = m.worst_equivariance < params.delta && m.worst_functional_gap < params.delta && inside_box;
    return m;
}

std::vector<std::size_t> greedy_packing(const std::vector<Microstate>& items, double eps)
{
    if (!(eps > 0.0))
        throw ArgumentError("packing radius must be positive");
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (!kept.empty() && items[i].degree != items[kept.front()].degree)
            throw ArgumentError("microstates have different degrees");
        bool keep = true;
        for (std::size_t k : kept)
            if (!separated(items[i], items[k], eps)) {
                keep = false;
                break;
            }
        if (keep)
            kept.push_back(i);
    }
    return kept;
}

double binary_entropy(double t)
{
    if (!(t >= 0.0 && t <= 1.0))
        throw ArgumentError("binary entropy needs t in [0, 1]");
    if (t == 0.0 || t == 1.0)
        return 0.0;
    return -t * std::log(t) - (1.0 - t) * std::log1p(-t);
}

double packing_lower_bound(double eps, double R)
{
    if (!(eps > 0.0 && eps < 1.0))
        throw ArgumentError("epsilon must lie in (0, 1)");
    if (!(R > 0.0))
        throw ArgumentError("R must be positive");
    const double r = std::sqrt(eps);
    return 0.5 * std::log((1.0 - r) / eps) - 0.5 * std::log(R) - binary_entropy(r);
}

EntropyEstimate entropy_estimate(const SoficMap& sigma, const GaussianSampler& sampler, const MapParams& params,
                                 double eps, std::size_t n_samples)
{
    params.validate();
    if (!(eps > 0.0))
        throw ArgumentError("packing radius must be positive");
    if (static_cast<std::size_t>(sampler.degree()) != sigma.degree())
        throw ArgumentError("sampler degree differs from the sofic degree");
    const auto window = membership_window(sigma.group(), params);

    std::vector<Microstate> states(n_samples);
    std::vector<Membership> verdicts(n_samples);
    parallel_for(n_samples, [&](std::size_t i) {
        states[i] = build_microstate(sampler.sample(i), window, sigma);
        verdicts[i] = map_membership(states[i], sigma, params);
    });

    EntropyEstimate out;
    out.samples = n_samples;
    std::vector<Microstate> members;
    for (std::size_t i = 0; i < n_samples; ++i) {
        out.worst_equivariance = std::max(out.worst_equivariance, verdicts[i].worst_equivariance);
        out.worst_functional_gap = std::max(out.worst_functional_gap, verdicts[i].worst_functional_gap);
        if (verdicts[i].member)
            members.push_back(std::move(states[i]));
    }
    out.members = members.size();
    out.member_rate = n_samples ? static_cast<double>(out.members) / static_cast<double>(n_samples) : 0.0;
    out.packed = greedy_packing(members, eps).size();
    out.rate = out.packed ? std::log(static_cast<double>(out.packed)) / static_cast<double>(sigma.degree())
                          : -std::numeric_limits<double>::infinity();
    return out;
}

} // namespace sofic
