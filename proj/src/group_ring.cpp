#include "sofic/group_ring.hpp"

#include <cmath>

#include "sofic/error.hpp"

namespace sofic {

namespace {

void require_same_group(const GroupRingElement& a, const GroupRingElement& b)
{
    if (!(a.group() == b.group()))
        throw StructuralError("group ring elements belong to different groups");
}

} // namespace

GroupRingElement::GroupRingElement(GroupSpec group, const Support& coefficients) : group_(std::move(group))
{
    for (const auto& [g, c] : coefficients)
        add(g, c);
}

GroupRingElement GroupRingElement::delta(const GroupSpec& group, const GroupElement& g, Complex c)
{
    GroupRingElement out(group);
    out.add(g, c);
    return out;
}

Complex GroupRingElement::coefficient(const GroupElement& g) const
{
    auto it = coeffs_.find(g);
    return it == coeffs_.end() ? Complex{} : it->second;
}

void GroupRingElement::add(const GroupElement& g, Complex c)
{
    group_.require(g);
    if (c == Complex{})
        return;
    auto [it, inserted] = coeffs_.try_emplace(g, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex{})
            coeffs_.erase(it);
    }
}

double GroupRingElement::l1_norm() const
{
    double s = 0.0;
    for (const auto& [g, c] : coeffs_)
        s += std::abs(c);
    return s;
}

bool GroupRingElement::is_real() const
{
    for (const auto& [g, c] : coeffs_)
        if (c.imag() != 0.0)
            return false;
    return true;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& other)
{
    require_same_group(*this, other);
    for (const auto& [g, c] : other.coeffs_)
        add(g, c);
    return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& other)
{
    require_same_group(*this, other);
    for (const auto& [g, c] : other.coeffs_)
        add(g, -c);
    return *this;
}

GroupRingElement& GroupRingElement::operator*=(Complex s)
{
    if (s == Complex{}) {
        coeffs_.clear();
        return *this;
    }
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        it->second *= s;
        if (it->second == Complex{})
            it = coeffs_.erase(it);
        else
            ++it;
    }
    return *this;
}

bool GroupRingElement::operator==(const GroupRingElement& other) const
{
    return group_ == other.group_ && coeffs_ == other.coeffs_;
}

GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b)
{
    a += b;
    return a;
}

GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b)
{
    a -= b;
    return a;
}

GroupRingElement operator*(Complex s, GroupRingElement a)
{
    a *= s;
    return a;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b)
{
    return ring_convolve(a, b);
}

GroupRingElement ring_convolve(const GroupRingElement& alpha, const GroupRingElement& beta)
{
    require_same_group(alpha, beta);
    const auto& group = alpha.group();
    // Accumulate in a plain map first so that intermediate cancellations are
    // not pruned before the final sum is known.
    std::map<GroupElement, Complex> acc;
    for (const auto& [h, a] : alpha.support())
        for (const auto& [k, b] : beta.support())
            acc[group.multiply(h, k)] += a * b;
    return GroupRingElement(group, acc);
}

GroupRingElement ring_star(const GroupRingElement& alpha)
{
    GroupRingElement out(alpha.group());
    for (const auto& [g, c] : alpha.support())
        out.add(alpha.group().inverse(g), std::conj(c));
    return out;
}

Complex ring_trace(const GroupRingElement& alpha)
{
    return alpha.coefficient(alpha.group().identity());
}

double ring_norm2(const GroupRingElement& alpha)
{
    double s = 0.0;
    for (const auto& [g, c] : alpha.support())
        s += std::norm(c);
    return std::sqrt(s);
}

Eigen::MatrixXcd left_regular_matrix(const GroupSpec& group, const GroupRingElement& alpha)
{
    if (group.kind() != GroupKind::finite)
        throw StructuralError("left_regular_matrix requires a finite group");
    if (!(alpha.group() == group))
        throw StructuralError("group ring element belongs to a different group");
    const int n = group.order();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& [g, c] : alpha.support()) {
        const int gi = static_cast<int>(g.data()[0]);
        for (int h = 0; h < n; ++h)
            m(group.table_product(gi, h), h) += c;
    }
    return m;
}

} // namespace sofic
