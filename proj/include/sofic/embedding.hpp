#pragma once
//
// Linear extension of sofic maps to the group ring, embedding-sequence
// defects, and spectral rounding of approximate projections.
// Norms are normalised: ||A||_2 = (Tr(A*A) / d)^(1/2), tr = Tr / d.
//

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "sofic/group_ring.hpp"
#include "sofic/sofic_map.hpp"
#include "sofic/star_polynomial.hpp"

namespace sofic {

// Sum of scaled permutation matrices, kept sparse. Equal permutations are merged.
class PermSum
{
  public:
    struct Term
    {
        Complex coefficient;
        Permutation perm;
    };

    explicit PermSum(std::size_t degree = 0) : degree_(degree) {}
    static PermSum identity(std::size_t degree, Complex c = 1.0);

    std::size_t degree() const noexcept { return degree_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    void add(Complex c, const Permutation& p);

    PermSum operator+(const PermSum& other) const;
    PermSum operator-(const PermSum& other) const;
    PermSum operator*(const PermSum& other) const;
    PermSum scaled(Complex c) const;
    PermSum adjoint() const;

    Complex trace() const;
    double norm2() const;
    Eigen::MatrixXcd dense() const;

  private:
    void compact();

    std::size_t degree_ = 0;
    std::vector<Term> terms_;
};

struct PermSumOps
{
    std::size_t degree;
    PermSum add(const PermSum& a, const PermSum& b) const { return a + b; }
    PermSum mul(const PermSum& a, const PermSum& b) const { return a * b; }
    PermSum scale(Complex c, const PermSum& a) const { return a.scaled(c); }
    PermSum star(const PermSum& a) const { return a.adjoint(); }
    PermSum constant(Complex c) const { return PermSum::identity(degree, c); }
};

struct GroupRingOps
{
    GroupSpec group;
    GroupRingElement add(const GroupRingElement& a, const GroupRingElement& b) const { return a + b; }
    GroupRingElement mul(const GroupRingElement& a, const GroupRingElement& b) const { return ring_convolve(a, b); }
    GroupRingElement scale(Complex c, const GroupRingElement& a) const { return c * a; }
    GroupRingElement star(const GroupRingElement& a) const { return ring_star(a); }
    GroupRingElement constant(Complex c) const { return GroupRingElement::delta(group, group.identity(), c); }
};

struct DenseOps
{
    Eigen::Index degree;
    Eigen::MatrixXcd add(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) const { return a + b; }
    Eigen::MatrixXcd mul(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) const { return a * b; }
    Eigen::MatrixXcd scale(Complex c, const Eigen::MatrixXcd& a) const { return c * a; }
    Eigen::MatrixXcd star(const Eigen::MatrixXcd& a) const { return a.adjoint(); }
    Eigen::MatrixXcd constant(Complex c) const
    {
        return c * Eigen::MatrixXcd::Identity(degree, degree);
    }
};

PermSum linearize_sparse(const SoficMap& sigma, const GroupRingElement& alpha);
Eigen::MatrixXcd linearize(const SoficMap& sigma, const GroupRingElement& alpha);

// Real part of linearize; alpha must have real coefficients.
Eigen::MatrixXd realify(const SoficMap& sigma, const GroupRingElement& alpha);

Complex normalized_trace(const Eigen::MatrixXcd& m);
double norm2(const Eigen::MatrixXcd& m);

struct MatrixNorms
{
    double norm2 = 0.0;
    double op_norm = 0.0;
};

// op_norm from the eigenvalues of M*M (dense up to the dense limit, Lanczos above).
MatrixNorms matrix_norms(const Eigen::MatrixXcd& m);

struct EmbeddingDefect
{
    double poly_defect = 0.0;  // ||P(sigma(a)) - sigma(P(a))||_2
    double trace_defect = 0.0; // |tr sigma(P(a)) - tau(P(a))|
    double norm2_drift = 0.0;  // | ||P(sigma(a))||_2 - ||P(a)||_2 |
};

EmbeddingDefect embedding_defect(const SoficMap& sigma, const std::vector<GroupRingElement>& args,
                                 const StarPolynomial& poly);

// Same quantities for an arbitrary linear assignment x -> image(x) of group
// ring elements to d x d matrices, e.g. a perturbed linearisation.
using DenseImage = std::function<Eigen::MatrixXcd(const GroupRingElement&)>;
EmbeddingDefect embedding_defect(const DenseImage& image, Eigen::Index degree,
                                 const std::vector<GroupRingElement>& args, const StarPolynomial& poly);

struct RoundedProjection
{
    Eigen::MatrixXd projection;
    double distance = 0.0;       // ||p - B||_2^2 with B = M^T M
    double bound = 0.0;          // 16 ||B - B^2||_2^2
    bool certificate_holds = false;
    double distance_to_input = 0.0; // ||p - M||_2
    double idempotence_error = 0.0; // max entry of |p^2 - p|
    double symmetry_error = 0.0;    // max entry of |p - p^T|
    double trace = 0.0;             // normalised
    Eigen::Index rank = 0;
    bool endpoint_warning = false;  // an eigenvalue within 1e-9 of 1/2 or 3/2
};

inline constexpr double kEndpointTolerance = 1e-9;

RoundedProjection spectral_round(const Eigen::MatrixXd& m);

} // namespace sofic
