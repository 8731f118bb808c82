#include "sofic/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "sofic/error.hpp"
#include "sofic/spectral.hpp"

namespace sofic {

namespace {

void require_degree(std::size_t a, std::size_t b)
{
    if (a != b)
        throw StructuralError("permutation sums of different degrees");
}

void require_arity(const StarPolynomial& poly, std::size_t args)
{
    if (static_cast<std::size_t>(poly.arity()) > args)
        throw ArgumentError("polynomial uses X" + std::to_string(poly.arity()) + " but only " +
                            std::to_string(args) + " arguments were given");
}

} // namespace

PermSum PermSum::identity(std::size_t degree, Complex c)
{
    PermSum out(degree);
    out.add(c, Permutation::identity(degree));
    return out;
}

void PermSum::add(Complex c, const Permutation& p)
{
    require_degree(p.degree(), degree_);
    if (c == Complex{})
        return;
    for (auto& t : terms_)
        if (t.perm == p) {
            t.coefficient += c;
            compact();
            return;
        }
    terms_.push_back({c, p});
}

void PermSum::compact()
{
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
        return std::lexicographical_compare(a.perm.images().begin(), a.perm.images().end(), b.perm.images().begin(),
                                            b.perm.images().end());
    });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().perm == t.perm)
            merged.back().coefficient += t.coefficient;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const Term& t) { return t.coefficient == Complex{}; });
    terms_ = std::move(merged);
}

PermSum PermSum::operator+(const PermSum& other) const
{
    require_degree(degree_, other.degree_);
    PermSum out = *this;
    out.terms_.insert(out.terms_.end(), other.terms_.begin(), other.terms_.end());
    out.compact();
    return out;
}

PermSum PermSum::operator-(const PermSum& other) const
{
    return *this + other.scaled(-1.0);
}

PermSum PermSum::operator*(const PermSum& other) const
{
    require_degree(degree_, other.degree_);
    PermSum out(degree_);
    out.terms_.reserve(terms_.size() * other.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : other.terms_)
            out.terms_.push_back({a.coefficient * b.coefficient, a.perm * b.perm});
    out.compact();
    return out;
}

PermSum PermSum::scaled(Complex c) const
{
    PermSum out = *this;
    for (auto& t : out.terms_)
        t.coefficient *= c;
    out.compact();
    return out;
}

PermSum PermSum::adjoint() const
{
    PermSum out(degree_);
    for (const auto& t : terms_)
        out.terms_.push_back({std::conj(t.coefficient), t.perm.inverse()});
    out.compact();
    return out;
}

Complex PermSum::trace() const
{
    Complex s{};
    for (const auto& t : terms_)
        s += t.coefficient * (static_cast<double>(t.perm.fixed_points()) / static_cast<double>(degree_));
    return s;
}

double PermSum::norm2() const
{
    // Column k holds coefficient c_i in row perm_i(k).
    std::vector<Complex> column(degree_);
    double total = 0.0;
    for (std::size_t k = 0; k < degree_; ++k) {
        for (const auto& t : terms_)
            column[t.perm(k)] += t.coefficient;
        for (const auto& t : terms_) {
            auto& v = column[t.perm(k)];
            total += std::norm(v);
            v = Complex{};
        }
    }
    return std::sqrt(total / static_cast<double>(degree_));
}

Eigen::MatrixXcd PermSum::dense() const
{
    const auto d = static_cast<Eigen::Index>(degree_);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& t : terms_)
        for (Eigen::Index k = 0; k < d; ++k)
            m(t.perm(static_cast<std::size_t>(k)), k) += t.coefficient;
    return m;
}

// ---------------------------------------------------------------------------

PermSum linearize_sparse(const SoficMap& sigma, const GroupRingElement& alpha)
{
    if (!(alpha.group() == sigma.group()))
        throw StructuralError("group ring element and sofic map use different groups");
    PermSum out(sigma.degree());
    for (const auto& [g, c] : alpha.support())
        out.add(c, sigma.evaluate(g));
    return out;
}

Eigen::MatrixXcd linearize(const SoficMap& sigma, const GroupRingElement& alpha)
{
    return linearize_sparse(sigma, alpha).dense();
}

Eigen::MatrixXd realify(const SoficMap& sigma, const GroupRingElement& alpha)
{
    if (!alpha.is_real())
        throw ArgumentError("realify needs real coefficients");
    const Eigen::MatrixXcd m = linearize(sigma, alpha);
    return (0.5 * (m + m.conjugate())).real();
}

Complex normalized_trace(const Eigen::MatrixXcd& m)
{
    return m.trace() / static_cast<double>(m.rows());
}

double norm2(const Eigen::MatrixXcd& m)
{
    return m.norm() / std::sqrt(static_cast<double>(m.rows()));
}

MatrixNorms matrix_norms(const Eigen::MatrixXcd& m)
{
    if (m.rows() != m.cols())
        throw ArgumentError("matrix_norms needs a square matrix");
    if (!m.allFinite())
        throw NumericalError("matrix has non-finite entries");
    MatrixNorms out;
    out.norm2 = norm2(m);
    const Eigen::Index d = m.rows();
    if (d <= spectral::kDenseLimit) {
        const auto es = spectral::eigh(Eigen::MatrixXcd(m.adjoint() * m), false);
        out.op_norm = std::sqrt(std::max(0.0, es.eigenvalues()[d - 1]));
        return out;
    }
    // Hermitian M*M as a real symmetric operator on R^{2d}.
    auto op = [&](const Eigen::VectorXd& in, Eigen::VectorXd& res) {
        Eigen::VectorXcd z(d);
        z.real() = in.head(d);
        z.imag() = in.tail(d);
        const Eigen::VectorXcd w = m.adjoint() * (m * z);
        res.resize(2 * d);
        res.head(d) = w.real();
        res.tail(d) = w.imag();
    };
    const auto r = spectral::lanczos_extremes(op, 2 * d, 1e-8, 1000, 0x0b0e, false);
    if (!r.converged)
        throw NumericalError("operator norm iteration did not converge");
    out.op_norm = std::sqrt(std::max(0.0, r.lambda_max));
    return out;
}

EmbeddingDefect embedding_defect(const SoficMap& sigma, const std::vector<GroupRingElement>& args,
                                 const StarPolynomial& poly)
{
    require_arity(poly, args.size());
    const GroupRingElement value = poly.evaluate(args, GroupRingOps{sigma.group()});
    std::vector<PermSum> images;
    images.reserve(args.size());
    for (const auto& a : args)
        images.push_back(linearize_sparse(sigma, a));
    const PermSum lhs = poly.evaluate(images, PermSumOps{sigma.degree()});
    const PermSum rhs = linearize_sparse(sigma, value);

    EmbeddingDefect out;
    out.poly_defect = (lhs - rhs).norm2();
    out.trace_defect = std::abs(rhs.trace() - ring_trace(value));
    out.norm2_drift = std::abs(lhs.norm2() - ring_norm2(value));
    return out;
}

EmbeddingDefect embedding_defect(const DenseImage& image, Eigen::Index degree,
                                 const std::vector<GroupRingElement>& args, const StarPolynomial& poly)
{
    require_arity(poly, args.size());
    if (args.empty())
        throw ArgumentError("embedding_defect needs at least one argument");
    const GroupSpec& group = args.front().group();
    const GroupRingElement value = poly.evaluate(args, GroupRingOps{group});
    std::vector<Eigen::MatrixXcd> images;
    images.reserve(args.size());
    for (const auto& a : args)
        images.push_back(image(a));
    const Eigen::MatrixXcd lhs = poly.evaluate(images, DenseOps{degree});
    const Eigen::MatrixXcd rhs = image(value);

    EmbeddingDefect out;
    out.poly_defect = norm2(lhs - rhs);
    out.trace_defect = std::abs(normalized_trace(rhs) - ring_trace(value));
    out.norm2_drift = std::abs(norm2(lhs) - ring_norm2(value));
    return out;
}

RoundedProjection spectral_round(const Eigen::MatrixXd& m)
{
    if (m.rows() != m.cols() || m.rows() == 0)
        throw ArgumentError("spectral_round needs a non-empty square matrix");
    if (!m.allFinite())
        throw NumericalError("matrix has non-finite entries");
    const Eigen::Index d = m.rows();
    const double dd = static_cast<double>(d);
    const Eigen::MatrixXd b = m.transpose() * m;
    const auto es = spectral::eigh(b, true);
    const Eigen::VectorXd& lambda = es.eigenvalues();

    RoundedProjection out;
    Eigen::VectorXd indicator(d);
    double distance = 0.0, bound = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        const double l = lambda[i];
        const bool inside = l >= 0.5 && l <= 1.5;
        indicator[i] = inside ? 1.0 : 0.0;
        out.rank += inside;
        if (std::abs(l - 0.5) < kEndpointTolerance || std::abs(l - 1.5) < kEndpointTolerance)
            out.endpoint_warning = true;
        // p and B share the eigenbasis, so both norms are spectral sums.
        distance += (indicator[i] - l) * (indicator[i] - l);
        bound += (l - l * l) * (l - l * l);
    }
    out.distance = distance / dd;
    out.bound = 16.0 * bound / dd;
    out.certificate_holds = out.distance <= out.bound;

    const Eigen::MatrixXd& v = es.eigenvectors();
    out.projection = v * indicator.asDiagonal() * v.transpose();
    out.trace = static_cast<double>(out.rank) / dd;
    out.distance_to_input = (out.projection - m).norm() / std::sqrt(dd);
    out.idempotence_error = (out.projection * out.projection - out.projection).cwiseAbs().maxCoeff();
    out.symmetry_error = (out.projection - out.projection.transpose()).cwiseAbs().maxCoeff();
    return out;
}

} // namespace sofic
