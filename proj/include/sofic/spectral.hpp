#pragma once
//
// Symmetric eigen-solvers shared by the sofic, embedding and harmonic code.
//

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

namespace sofic::spectral {

// Dense solves up to this size; iterative above.
inline constexpr Eigen::Index kDenseLimit = 2000;

// Throws NumericalError when Eigen reports failure.
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigh(const Eigen::MatrixXd& a, bool vectors = true);
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eigh(const Eigen::MatrixXcd& a, bool vectors = true);

using LinearOperator = std::function<void(const Eigen::VectorXd& in, Eigen::VectorXd& out)>;

struct LanczosResult
{
    double lambda_max = 0.0;
    double lambda_min = 0.0;
    Eigen::VectorXd vector_max;
    Eigen::VectorXd vector_min;
    int iterations = 0;
    bool converged = false;
};

// Extreme eigenpairs of a symmetric operator on R^n with full
// reorthogonalisation. With mean_zero set the iteration is confined to the
// orthogonal complement of the constant vector.
LanczosResult lanczos_extremes(const LinearOperator& op, Eigen::Index n, double tol, int max_iterations,
                               std::uint64_t seed, bool mean_zero);

} // namespace sofic::spectral
