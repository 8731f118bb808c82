#include "sofic/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sofic/error.hpp"
#include "sofic/group_catalog.hpp"
#include "sofic/rng.hpp"
#include "sofic/spectral.hpp"

namespace sofic {

namespace {

void require_finite(const GroupSpec& group)
{
    if (group.kind() != GroupKind::finite)
        throw ArgumentError("harmonic analysis is only available for finite groups");
}

template <class Matrix>
Matrix sqrt_impl(const Matrix& a)
{
    if (a.rows() != a.cols())
        throw ArgumentError("square root of a non-square matrix");
    if (!a.allFinite())
        throw NumericalError("matrix has non-finite entries");
    if (a.rows() == 0)
        return a;
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    const double threshold = psd_clamp_threshold(norm);
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > threshold)
        throw ArgumentError("matrix is not Hermitian");
    const Matrix h = (a + a.adjoint()) / 2.0;
    const auto es = spectral::eigh(h, true);
    Eigen::VectorXd lam = es.eigenvalues();
    if (lam.minCoeff() < -threshold)
        throw ArgumentError("matrix is not positive semidefinite");
    for (auto& v : lam)
        v = v <= threshold ? 0.0 : std::sqrt(v);
    const Matrix b = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
    return (b + b.adjoint()) / 2.0;
}

Eigen::MatrixXcd regular(const GroupRingElement& x)
{
    require_finite(x.group());
    return left_regular_matrix(x.group(), x);
}

Eigen::Index identity_index(const GroupSpec& group)
{
    return static_cast<Eigen::Index>(group.identity().data()[0]);
}

void require_positive(const Eigen::MatrixXcd& m)
{
    const double threshold = psd_clamp_threshold(m.cwiseAbs().rowwise().sum().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > threshold)
        throw ArgumentError("element is not self-adjoint");
    if (spectral::eigh(Eigen::MatrixXcd((m + m.adjoint()) / 2.0), false).eigenvalues().minCoeff() < -threshold)
        throw ArgumentError("element is not positive");
}

} // namespace

double psd_clamp_threshold(double inf_norm)
{
    return 1e-9 * std::max(1.0, inf_norm);
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& a)
{
    return sqrt_impl(a);
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& a)
{
    return sqrt_impl(a);
}

double trace_abs(const GroupRingElement& x)
{
    const Eigen::MatrixXcd m = regular(x);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues().sum() / static_cast<double>(m.rows());
}

PowersStormer powers_stormer_check(const GroupRingElement& y, const GroupRingElement& z)
{
    if (!(y.group() == z.group()))
        throw ArgumentError("elements live over different groups");
    const Eigen::MatrixXcd ly = regular(y), lz = regular(z);
    require_positive(ly);
    require_positive(lz);
    const Eigen::Index e = identity_index(y.group());
    const Eigen::VectorXcd diff = psd_sqrt(ly).col(e) - psd_sqrt(lz).col(e);
    PowersStormer r;
    r.lhs = diff.squaredNorm();
    r.rhs = trace_abs(y - z);
    r.holds = r.lhs <= r.rhs + 1e-9;
    return r;
}

GroupRingElement conjugation_C(const GroupRingElement& alpha)
{
    GroupRingElement out(alpha.group());
    for (const auto& [g, c] : alpha.support())
        out.add(g, std::conj(c));
    return out;
}

PositiveDefiniteFunction::PositiveDefiniteFunction(GroupSpec group, std::vector<Complex> values)
    : group_(std::move(group)), values_(std::move(values))
{
    require_finite(group_);
    const int n = group_.order();
    if (values_.size() != static_cast<std::size_t>(n))
        throw ArgumentError("positive definite function needs one value per group element");
    for (const auto& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NumericalError("positive definite function has non-finite values");
    const Eigen::Index e = identity_index(group_);
    if (std::abs(values_[static_cast<std::size_t>(e)].imag()) > 1e-12)
        throw ArgumentError("phi(e) must be real");
    // [phi(h^-1 g)]_{g,h}
    Eigen::MatrixXcd m(n, n);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            m(g, h) = values_[static_cast<std::size_t>(group_.table_product(group_.table_inverse(h), g))];
    const double threshold = psd_clamp_threshold(m.cwiseAbs().rowwise().sum().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > threshold)
        throw ArgumentError("phi(g^-1) differs from the conjugate of phi(g)");
    if (spectral::eigh(Eigen::MatrixXcd((m + m.adjoint()) / 2.0), false).eigenvalues().minCoeff() < -threshold)
        throw ArgumentError("function is not positive definite");
}

PositiveDefiniteFunction PositiveDefiniteFunction::from_vector(const GroupSpec& group, const Eigen::VectorXd& zeta)
{
    const auto c = matrix_coefficients(group, zeta);
    return PositiveDefiniteFunction(group, std::vector<Complex>(c.begin(), c.end()));
}

bool PositiveDefiniteFunction::is_real() const
{
    return std::all_of(values_.begin(), values_.end(), [](Complex v) { return v.imag() == 0.0; });
}

std::vector<double> matrix_coefficients(const GroupSpec& group, const Eigen::VectorXd& zeta)
{
    require_finite(group);
    const int n = group.order();
    if (zeta.size() != n)
        throw ArgumentError("vector length differs from the group order");
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    // (lambda(g) zeta)(gh) = zeta(h)
    for (int g = 0; g < n; ++g) {
        double s = 0.0;
        for (int h = 0; h < n; ++h)
            s += zeta[h] * zeta[group.table_product(g, h)];
        out[static_cast<std::size_t>(g)] = s;
    }
    return out;
}

CyclicRealization realize_cyclic(const PositiveDefiniteFunction& phi)
{
    const GroupSpec& group = phi.group();
    for (const auto& v : phi.values())
        if (std::abs(v.imag()) > 1e-12)
            throw ArgumentError("cyclic realisation needs a real-valued function");
    const int n = group.order();
    GroupRingElement x(group);
    for (int h = 0; h < n; ++h)
        x.add(GroupElement::index(h), phi.values()[static_cast<std::size_t>(group.table_inverse(h))].real());
    const GroupRingElement y = 0.5 * (x + conjugation_C(x));
    const Eigen::MatrixXd ly = regular(y).real();
    const Eigen::Index e = identity_index(group);

    CyclicRealization r;
    r.zeta = psd_sqrt(ly).col(e);
    const auto back = matrix_coefficients(group, r.zeta);
    for (int g = 0; g < n; ++g)
        r.max_error = std::max(r.max_error, std::abs(back[static_cast<std::size_t>(g)] -
                                                     phi.values()[static_cast<std::size_t>(g)].real()));
    if (!(r.max_error <= kRealizationTolerance))
        throw NumericalError("cyclic realisation misses phi by " + std::to_string(r.max_error));
    return r;
}

PowersStormerTrial powers_stormer_trial(std::uint64_t seed, std::uint64_t index, int max_size)
{
    static const auto catalogue = catalog::small_groups(24);
    if (max_size < 1 || max_size > 24)
        throw ArgumentError("max group size must lie in [1, 24]");
    std::vector<const GroupSpec*> groups;
    for (const auto& g : catalogue)
        if (g.group.order() <= max_size)
            groups.push_back(&g.group);

    CounterRng rng(derive_seed(seed, index));
    const GroupSpec& group = *groups[static_cast<std::size_t>(rng() % groups.size())];
    const int n = group.order();
    std::normal_distribution<double> normal;
    const double scales[] = {1.0, 0.1, 1e-3};
    const double scale = scales[rng() % 3];
    GroupRingElement w(group), v(group);
    for (int g = 0; g < n; ++g) {
        const Complex a(normal(rng), normal(rng));
        const Complex b(normal(rng), normal(rng));
        w.add(GroupElement::index(g), a);
        v.add(GroupElement::index(g), a + scale * b);
    }
    PowersStormerTrial t;
    t.group_size = n;
    t.result = powers_stormer_check(ring_star(w) * w, ring_star(v) * v);
    return t;
}

} // namespace sofic
