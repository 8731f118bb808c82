#pragma once
//
// Gaussian vectors on projected subspaces, microstates built from them, and
// the characteristic-functional targets they concentrate around.
// Coordinates have density exp(-pi t^2), i.e. standard deviation 1/sqrt(2 pi).
//

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sofic/group_ring.hpp"
#include "sofic/sofic_map.hpp"

namespace sofic {

inline constexpr double kCoordinateSigma = 0.39894228040143267794; // 1/sqrt(2 pi)

struct Arc
{
    double start = 0.0;  // in [0, 1)
    double length = 0.0; // in [0, 1]

    static Arc centered(double center, double length) { return {center - length / 2, length}; }
};

struct ArcProjectionSpec
{
    std::vector<Arc> arcs;
    int cutoff = 0;

    double measure() const;
};

// Fourier coefficients of the arc indicator for |k| <= cutoff, as an element of C(Z).
GroupRingElement arc_projection_coeffs(const ArcProjectionSpec& spec);

struct FourierTerm
{
    std::vector<double> t; // one frequency per window element
    Complex theta;
};

// f(y) = sum_k theta_k exp(2 pi i <t_k, y>) for y in R^window.
struct FourierTestFunction
{
    std::vector<GroupElement> window;
    std::vector<FourierTerm> terms;

    double sup_bound() const; // sum |theta_k|
    void validate() const;
};

// exp(-pi ||t_check * p_hat||_2^2) with t_check = sum_g t(g) g.
double gaussian_target(const GroupRingElement& p_hat, const std::vector<GroupElement>& window,
                       const std::vector<double>& t);
Complex gaussian_target(const GroupRingElement& p_hat, const FourierTestFunction& f);

class GaussianSampler
{
  public:
    // projection must be symmetric and idempotent to 1e-9.
    GaussianSampler(const Eigen::MatrixXd& projection, std::uint64_t seed);
    static GaussianSampler identity(Eigen::Index degree, std::uint64_t seed);
    static GaussianSampler zero(Eigen::Index degree, std::uint64_t seed);

    Eigen::Index degree() const noexcept { return degree_; }
    Eigen::Index rank() const noexcept { return rank_; }
    std::uint64_t seed() const noexcept { return seed_; }
    const Eigen::MatrixXd& projection() const noexcept { return projection_; }

    // Sample number index; every index has its own derived stream.
    Eigen::VectorXd sample(std::uint64_t index) const;
    // Columns are samples first .. first + count - 1.
    Eigen::MatrixXd sample_batch(std::uint64_t first, Eigen::Index count) const;

  private:
    enum class Mode { zero, identity, factor };
    GaussianSampler() = default;
    Eigen::VectorXd coordinates(std::uint64_t index, Eigen::Index n) const;

    Mode mode_ = Mode::zero;
    Eigen::Index degree_ = 0;
    Eigen::Index rank_ = 0;
    std::uint64_t seed_ = 0;
    Eigen::MatrixXd projection_;
    Eigen::MatrixXd factor_; // orthonormal basis of the range, d x rank
};

struct Microstate
{
    std::size_t degree = 0;
    std::vector<GroupElement> window;
    Eigen::MatrixXd values; // d x |window|, row j is phi(j) restricted to the window
    Eigen::Index identity_column = 0;

    std::optional<Eigen::Index> column(const GroupElement& g) const;
};

// phi(j)(g) = x[sigma(g)^{-1}(j)]; the window must contain e.
Microstate build_microstate(const Eigen::VectorXd& x, const std::vector<GroupElement>& window,
                            const SoficMap& sigma);

// Optional finite-valued auxiliary factor: psi(j) in [0, g.size()), weight g(psi(j)).
struct AuxiliaryFactor
{
    std::vector<std::size_t> psi;
    std::vector<Complex> g;
    Complex integral{1.0}; // limit value of the integral of g
};

// (1/d) sum_j f(phi(j)|_F) [g(psi(j))]
Complex empirical_functional(const Microstate& ms, const FourierTestFunction& f,
                             const AuxiliaryFactor* aux = nullptr);

struct ConcentrationResult
{
    std::size_t trials = 0;
    Complex mean;
    double variance = 0.0;    // sample variance of G, E|G - mean|^2 with n - 1
    double variance_se = 0.0; // standard error of the variance estimate
    Complex target;
    std::vector<double> deltas;
    std::vector<double> deviation_fraction; // per delta: fraction with |G - target| > delta
    std::vector<Complex> values;            // G per trial, in trial order
};

ConcentrationResult concentration_experiment(const SoficMap& sigma, const GaussianSampler& sampler,
                                             const GroupRingElement& p_hat, const FourierTestFunction& f,
                                             const std::vector<GroupElement>& window, std::size_t trials,
                                             const std::vector<double>& deltas,
                                             const AuxiliaryFactor* aux = nullptr);

} // namespace sofic
