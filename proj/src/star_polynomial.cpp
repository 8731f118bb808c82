#include "sofic/star_polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sofic {

StarPolynomial StarPolynomial::var(int slot)
{
    if (slot < 1)
        throw ArgumentError("polynomial slots are numbered from 1");
    auto n = std::make_shared<Node>();
    n->op = Op::var;
    n->slot = slot;
    return StarPolynomial(n);
}

StarPolynomial StarPolynomial::constant(std::complex<double> c)
{
    auto n = std::make_shared<Node>();
    n->op = Op::constant;
    n->value = c;
    return StarPolynomial(n);
}

StarPolynomial operator+(const StarPolynomial& a, const StarPolynomial& b)
{
    auto n = std::make_shared<StarPolynomial::Node>();
    n->op = StarPolynomial::Op::add;
    n->left = a.node_;
    n->right = b.node_;
    return StarPolynomial(n);
}

StarPolynomial operator*(const StarPolynomial& a, const StarPolynomial& b)
{
    using Op = StarPolynomial::Op;
    if (a.op() == Op::constant && b.op() == Op::constant)
        return StarPolynomial::constant(a.value() * b.value());
    if (a.op() == Op::constant)
        return a.value() * b;
    if (b.op() == Op::constant)
        return b.value() * a;
    auto n = std::make_shared<StarPolynomial::Node>();
    n->op = Op::mul;
    n->left = a.node_;
    n->right = b.node_;
    return StarPolynomial(n);
}

StarPolynomial operator*(std::complex<double> c, const StarPolynomial& a)
{
    if (a.op() == StarPolynomial::Op::constant)
        return StarPolynomial::constant(c * a.value());
    auto n = std::make_shared<StarPolynomial::Node>();
    n->op = StarPolynomial::Op::scale;
    n->value = c;
    n->left = a.node_;
    return StarPolynomial(n);
}

StarPolynomial StarPolynomial::star() const
{
    if (op() == Op::constant)
        return constant(std::conj(value()));
    auto n = std::make_shared<Node>();
    n->op = Op::star;
    n->left = node_;
    return StarPolynomial(n);
}

int StarPolynomial::arity() const
{
    switch (op()) {
    case Op::var:
        return slot();
    case Op::constant:
        return 0;
    case Op::add:
    case Op::mul:
        return std::max(left().arity(), right().arity());
    case Op::scale:
    case Op::star:
        return left().arity();
    }
    return 0;
}

int StarPolynomial::degree() const
{
    switch (op()) {
    case Op::var:
        return 1;
    case Op::constant:
        return 0;
    case Op::add:
        return std::max(left().degree(), right().degree());
    case Op::mul:
        return left().degree() + right().degree();
    case Op::scale:
    case Op::star:
        return left().degree();
    }
    return 0;
}

std::string StarPolynomial::to_string() const
{
    std::ostringstream os;
    os.precision(17);
    switch (op()) {
    case Op::var:
        os << 'X' << slot();
        break;
    case Op::constant:
        os << '(' << value().real();
        if (value().imag() != 0.0)
            os << (value().imag() < 0 ? " - " : " + ") << std::abs(value().imag()) << 'i';
        os << ')';
        break;
    case Op::add:
        os << '(' << left().to_string() << " + " << right().to_string() << ')';
        break;
    case Op::mul:
        os << left().to_string() << " * " << right().to_string();
        break;
    case Op::scale:
        os << constant(value()).to_string() << " * (" << left().to_string() << ')';
        break;
    case Op::star:
        os << '(' << left().to_string() << ")^*";
        break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Recursive descent:
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | postfix
//   postfix:= primary ('^*')*
//   primary:= number ['i'] | 'i' | 'X' digits | '(' expr ')'

namespace {

class Parser
{
  public:
    explicit Parser(const std::string& text) : s_(text) {}

    StarPolynomial run()
    {
        auto p = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ConfigError("cannot parse polynomial \"" + s_ + "\" at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    StarPolynomial expr()
    {
        auto p = term();
        for (;;) {
            if (eat('+'))
                p = p + term();
            else if (eat('-'))
                p = p + std::complex<double>(-1.0) * term();
            else
                return p;
        }
    }

    StarPolynomial term()
    {
        auto p = unary();
        while (eat('*'))
            p = p * unary();
        return p;
    }

    StarPolynomial unary()
    {
        if (eat('-'))
            return std::complex<double>(-1.0) * unary();
        return postfix();
    }

    StarPolynomial postfix()
    {
        auto p = primary();
        for (;;) {
            skip();
            if (s_.compare(pos_, 2, "^*") == 0) {
                pos_ += 2;
                p = p.star();
            } else {
                return p;
            }
        }
    }

    StarPolynomial primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto p = expr();
            if (!eat(')'))
                fail("missing ')'");
            return p;
        }
        if (c == 'X' || c == 'x') {
            ++pos_;
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("slot number expected after X");
            return StarPolynomial::var(std::stoi(s_.substr(start, pos_ - start)));
        }
        if (c == 'i') {
            ++pos_;
            return StarPolynomial::constant({0.0, 1.0});
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(s_.substr(pos_), &used);
            } catch (const std::exception&) {
                fail("bad number");
            }
            pos_ += used;
            if (pos_ < s_.size() && s_[pos_] == 'i') {
                ++pos_;
                return StarPolynomial::constant({0.0, v});
            }
            return StarPolynomial::constant(v);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

StarPolynomial StarPolynomial::parse(const std::string& text)
{
    return Parser(text).run();
}

} // namespace sofic
