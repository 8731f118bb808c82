#include "sofic/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sofic/error.hpp"
#include "sofic/rng.hpp"

namespace sofic::spectral {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigh(const Eigen::MatrixXd& a, bool vectors)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, vectors ? Eigen::ComputeEigenvectors
                                                                 : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("symmetric eigensolve failed");
    return es;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eigh(const Eigen::MatrixXcd& a, bool vectors)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, vectors ? Eigen::ComputeEigenvectors
                                                                  : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("hermitian eigensolve failed");
    return es;
}

LanczosResult lanczos_extremes(const LinearOperator& op, Eigen::Index n, double tol, int max_iterations,
                               std::uint64_t seed, bool mean_zero)
{
    if (n < 1)
        throw ArgumentError("lanczos on an empty space");
    const Eigen::Index space = mean_zero ? n - 1 : n;
    const int max_steps = static_cast<int>(std::min<Eigen::Index>(max_iterations, std::max<Eigen::Index>(space, 1)));

    auto project = [&](Eigen::VectorXd& v) {
        if (mean_zero)
            v.array() -= v.mean();
    };

    CounterRng rng(seed);
    Eigen::VectorXd q(n);
    for (Eigen::Index i = 0; i < n; ++i)
        q[i] = rng.uniform() - 0.5;
    project(q);
    if (q.norm() == 0.0)
        throw NumericalError("lanczos start vector vanished");
    q.normalize();

    Eigen::MatrixXd basis(n, max_steps);
    std::vector<double> alpha, beta;
    Eigen::VectorXd w(n);
    LanczosResult result;

    for (int k = 0; k < max_steps; ++k) {
        basis.col(k) = q;
        op(q, w);
        project(w);
        const double a = q.dot(w);
        alpha.push_back(a);
        // Full reorthogonalisation, applied twice.
        for (int pass = 0; pass < 2; ++pass)
            w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).transpose() * w);
        const double b = w.norm();

        const bool last = k + 1 == max_steps || b <= 1e-14;
        if (last || (k + 1) % 10 == 0) {
            const int m = k + 1;
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                t(i, i) = alpha[i];
                if (i + 1 < m)
                    t(i, i + 1) = t(i + 1, i) = beta[i];
            }
            auto es = eigh(t);
            const auto& s = es.eigenvectors();
            const double res_max = std::abs(b * s(m - 1, m - 1));
            const double res_min = std::abs(b * s(m - 1, 0));
            result.lambda_max = es.eigenvalues()[m - 1];
            result.lambda_min = es.eigenvalues()[0];
            result.iterations = m;
            const bool ok = res_max <= tol * std::max(1.0, std::abs(result.lambda_max)) &&
                            res_min <= tol * std::max(1.0, std::abs(result.lambda_min));
            if (ok || last) {
                result.vector_max = basis.leftCols(m) * s.col(m - 1);
                result.vector_min = basis.leftCols(m) * s.col(0);
                result.converged = ok || b <= 1e-14 || m == space;
                return result;
            }
        }
        beta.push_back(b);
        q = w / b;
    }
    return result;
}

} // namespace sofic::spectral
