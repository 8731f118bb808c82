#pragma once
//
// Noncommutative *-polynomials in slots X1..Xn, e.g. "X1 * X1^*" or
// "2*X1 + (0.5i) * X2^* * X1". Evaluation is generic over any algebra that
// supplies add, mul, scale, star and constant.
//

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "sofic/error.hpp"

namespace sofic {

class StarPolynomial
{
  public:
    enum class Op { var, constant, add, mul, scale, star };

    static StarPolynomial var(int slot); // 1-based
    static StarPolynomial constant(std::complex<double> c);
    static StarPolynomial parse(const std::string& text);

    friend StarPolynomial operator+(const StarPolynomial& a, const StarPolynomial& b);
    friend StarPolynomial operator*(const StarPolynomial& a, const StarPolynomial& b);
    friend StarPolynomial operator*(std::complex<double> c, const StarPolynomial& a);
    StarPolynomial star() const;

    // Largest slot index used (0 for constants).
    int arity() const;
    int degree() const;
    std::string to_string() const;

    Op op() const { return node_->op; }
    int slot() const { return node_->slot; }
    std::complex<double> value() const { return node_->value; }
    StarPolynomial left() const { return StarPolynomial(node_->left); }
    StarPolynomial right() const { return StarPolynomial(node_->right); }

    // ops must provide add(a, b), mul(a, b), scale(c, a), star(a), constant(c).
    template <typename T, typename Ops>
    T evaluate(const std::vector<T>& args, const Ops& ops) const
    {
        const Node& n = *node_;
        switch (n.op) {
        case Op::var:
            if (n.slot < 1 || static_cast<std::size_t>(n.slot) > args.size())
                throw ArgumentError("polynomial slot X" + std::to_string(n.slot) + " has no argument");
            return args[static_cast<std::size_t>(n.slot - 1)];
        case Op::constant:
            return ops.constant(n.value);
        case Op::add:
            return ops.add(left().evaluate(args, ops), right().evaluate(args, ops));
        case Op::mul:
            return ops.mul(left().evaluate(args, ops), right().evaluate(args, ops));
        case Op::scale:
            return ops.scale(n.value, left().evaluate(args, ops));
        case Op::star:
            return ops.star(left().evaluate(args, ops));
        }
        throw StructuralError("corrupt polynomial node");
    }

  private:
    struct Node
    {
        Op op = Op::constant;
        int slot = 0;
        std::complex<double> value{};
        std::shared_ptr<const Node> left, right;
    };

    explicit StarPolynomial(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

} // namespace sofic
