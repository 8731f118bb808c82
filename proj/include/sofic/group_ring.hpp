#pragma once
//
// Finitely supported complex functions on a group, with convolution,
// involution, trace and the l2 norm.
//

#include <complex>
#include <map>

#include <Eigen/Dense>

#include "sofic/group.hpp"

namespace sofic {

using Complex = std::complex<double>;

class GroupRingElement
{
  public:
    using Support = std::map<GroupElement, Complex>;

    explicit GroupRingElement(GroupSpec group) : group_(std::move(group)) {}
    GroupRingElement(GroupSpec group, const Support& coefficients);

    // c * delta_g
    static GroupRingElement delta(const GroupSpec& group, const GroupElement& g, Complex c = 1.0);

    const GroupSpec& group() const noexcept { return group_; }
    const Support& support() const noexcept { return coeffs_; }
    bool empty() const noexcept { return coeffs_.empty(); }

    Complex coefficient(const GroupElement& g) const;

    // Adds c to the coefficient at g; a literal zero result is removed.
    void add(const GroupElement& g, Complex c);

    // Sum of |alpha_g|.
    double l1_norm() const;
    bool is_real() const;

    GroupRingElement& operator+=(const GroupRingElement& other);
    GroupRingElement& operator-=(const GroupRingElement& other);
    GroupRingElement& operator*=(Complex s);

    bool operator==(const GroupRingElement& other) const;

  private:
    GroupSpec group_;
    Support coeffs_;
};

GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b);
GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b);
GroupRingElement operator*(Complex s, GroupRingElement a);
GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);

// (alpha * beta)_g = sum_h alpha_h beta_{h^-1 g}
GroupRingElement ring_convolve(const GroupRingElement& alpha, const GroupRingElement& beta);

// (alpha^*)_g = conj(alpha_{g^-1})
GroupRingElement ring_star(const GroupRingElement& alpha);

// Coefficient at the identity.
Complex ring_trace(const GroupRingElement& alpha);

double ring_norm2(const GroupRingElement& alpha);

// Matrix of the left regular representation in the delta basis:
// column h of lambda(delta_g) is delta_{gh}.
Eigen::MatrixXcd left_regular_matrix(const GroupSpec& group, const GroupRingElement& alpha);

} // namespace sofic
