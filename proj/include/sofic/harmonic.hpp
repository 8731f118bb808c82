#pragma once
//
// Harmonic analysis over finite groups through the left regular
// representation: square roots, tau(|x|), Powers-Stormer, the conjugation C
// and cyclic vectors realising positive definite functions.
// Vectors in l2(G) are indexed by the finite group's element indices.
//

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sofic/group_ring.hpp"

namespace sofic {

// Eigenvalues within 1e-9 max(1, ||A||_inf) of zero are set to zero; more
// negative ones are rejected.
double psd_clamp_threshold(double inf_norm);

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& a);
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& a);

// Normalised trace of |lambda(x)|.
double trace_abs(const GroupRingElement& x);

struct PowersStormer
{
    double lhs = 0.0; // ||(sqrt(lambda(y)) - sqrt(lambda(z))) delta_e||^2
    double rhs = 0.0; // tau(|y - z|)
    bool holds = false;
};

PowersStormer powers_stormer_check(const GroupRingElement& y, const GroupRingElement& z);

// Coefficientwise complex conjugation.
GroupRingElement conjugation_C(const GroupRingElement& alpha);

class PositiveDefiniteFunction
{
  public:
    // values[i] is phi at element index i.
    PositiveDefiniteFunction(GroupSpec group, std::vector<Complex> values);

    // phi(g) = <lambda(g) zeta, zeta>
    static PositiveDefiniteFunction from_vector(const GroupSpec& group, const Eigen::VectorXd& zeta);

    const GroupSpec& group() const noexcept { return group_; }
    const std::vector<Complex>& values() const noexcept { return values_; }
    bool is_real() const;

  private:
    GroupSpec group_;
    std::vector<Complex> values_;
};

// <lambda(g) zeta, zeta> for every element index g.
std::vector<double> matrix_coefficients(const GroupSpec& group, const Eigen::VectorXd& zeta);

struct CyclicRealization
{
    Eigen::VectorXd zeta;
    double max_error = 0.0; // max_g |<lambda(g) zeta, zeta> - phi(g)|
};

inline constexpr double kRealizationTolerance = 1e-8;

// Throws NumericalError when the realised coefficients miss phi by more than 1e-8.
CyclicRealization realize_cyclic(const PositiveDefiniteFunction& phi);

struct PowersStormerTrial
{
    int group_size = 0;
    PowersStormer result;
};

// Trial index of a seeded stream: a catalogue group of order <= max_size and
// a pair y = w^* w, z = v^* v with v a random perturbation of w.
PowersStormerTrial powers_stormer_trial(std::uint64_t seed, std::uint64_t index, int max_size);

} // namespace sofic
