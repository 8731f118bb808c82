#pragma once
//
// Microstate pseudometrics, membership in the microstate sets, greedy
// packing counts and the analytic packing lower bound.
// Base metric on R: min(|x - y|, 1) evaluated at the identity coordinate.
//

#include <optional>
#include <vector>

#include "sofic/gaussian.hpp"
#include "sofic/sofic_map.hpp"

namespace sofic {

// 2 pi e: Stirling limit of the normalised ball volume per coordinate.
inline constexpr double kDefaultBallConstant = 17.079468445347132;

double base_distance(double x, double y);

// sqrt((1/d) sum_j min(|phi(j)(e) - psi(j)(e)|, 1)^2)
double delta2(const Microstate& phi, const Microstate& psi);

// sqrt((1/d) sum_j min(|phi(j)(g^-1) - phi(sigma(g) j)(e)|, 1)^2); g and g^-1 must be in the window.
double equivariance_defect(const Microstate& phi, const SoficMap& sigma, const GroupElement& g);

struct BoxBound
{
    GroupElement g;
    double bound = 0.0;
};

// Keeps microstates with more than a 1 - eta fraction of points inside the
// open box |phi(j)(g)| < M(g) + 1e-9.
struct BoxFilter
{
    std::vector<BoxBound> box;
    double eta = 0.0;
};

inline constexpr double kBoxSlack = 1e-9;

struct MapParams
{
    std::vector<GroupElement> F;
    double delta = 0.0;
    std::vector<FourierTestFunction> L;
    std::vector<Complex> targets; // analytic value of each test function
    std::optional<BoxFilter> filter;

    void validate() const;
};

// {e} ∪ F ∪ F^-1 ∪ test function windows ∪ box keys, in first-seen order.
std::vector<GroupElement> membership_window(const GroupSpec& group, const MapParams& params);

struct Membership
{
    bool member = false;
    double worst_equivariance = 0.0;
    double worst_functional_gap = 0.0;
    double box_mass = 1.0;
};

Membership map_membership(const Microstate& phi, const SoficMap& sigma, const MapParams& params);

// Scans in order and keeps an item iff its delta2 distance to every kept
// item exceeds eps. Returns the kept indices.
std::vector<std::size_t> greedy_packing(const std::vector<Microstate>& items, double eps);

double binary_entropy(double t);

// (1/2) log((1 - sqrt eps) / eps) - (1/2) log R - H(sqrt eps)
double packing_lower_bound(double eps, double R = kDefaultBallConstant);

struct EntropyEstimate
{
    std::size_t samples = 0;
    std::size_t members = 0;
    std::size_t packed = 0;
    double rate = 0.0; // log(packed) / d, -inf when nothing is packed
    double member_rate = 0.0;
    double worst_equivariance = 0.0;
    double worst_functional_gap = 0.0;
};

EntropyEstimate entropy_estimate(const SoficMap& sigma, const GaussianSampler& sampler, const MapParams& params,
                                 double eps, std::size_t n_samples);

} // namespace sofic
