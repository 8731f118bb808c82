#include "sofic/group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <string_view>

#include "sofic/error.hpp"

namespace sofic {

std::string to_string(GroupKind kind)
{
    switch (kind) {
    case GroupKind::free:
        return "free";
    case GroupKind::zpow:
        return "zpow";
    case GroupKind::finite:
        return "finite";
    }
    return "unknown";
}

namespace {

// Free reduction with a stack; the result has no adjacent x x^-1.
std::vector<std::int64_t> reduce_word(std::span<const std::int64_t> letters)
{
    std::vector<std::int64_t> out;
    out.reserve(letters.size());
    for (auto l : letters) {
        if (l == 0)
            throw StructuralError("free word contains letter 0");
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

// Generators are a, b, c, d, f, ... ('e' is the identity), then x26, x27, ...
constexpr std::string_view kLetters = "abcdfghijklmnopqrstuvwxyz";

std::string letter_name(std::int64_t generator)
{
    if (generator >= 1 && generator <= static_cast<std::int64_t>(kLetters.size()))
        return std::string(1, kLetters[generator - 1]);
    return "x" + std::to_string(generator);
}

std::int64_t generator_from_name(const std::string& name)
{
    if (name.size() == 1) {
        const auto pos = kLetters.find(name[0]);
        return pos == std::string_view::npos ? 0 : static_cast<std::int64_t>(pos) + 1;
    }
    if (name.size() > 1 && name[0] == 'x' && std::all_of(name.begin() + 1, name.end(), ::isdigit))
        return std::strtoll(name.c_str() + 1, nullptr, 10);
    return 0;
}

} // namespace

GroupElement GroupElement::word(std::span<const std::int64_t> letters)
{
    return GroupElement(GroupKind::free, reduce_word(letters));
}

GroupElement GroupElement::word(std::initializer_list<std::int64_t> letters)
{
    return word(std::span<const std::int64_t>(letters.begin(), letters.size()));
}

GroupElement GroupElement::vec(std::vector<std::int64_t> coords)
{
    return GroupElement(GroupKind::zpow, std::move(coords));
}

GroupElement GroupElement::index(std::int64_t i)
{
    return GroupElement(GroupKind::finite, {i});
}

std::int64_t GroupElement::length() const noexcept
{
    switch (kind_) {
    case GroupKind::free:
        return static_cast<std::int64_t>(data_.size());
    case GroupKind::zpow: {
        std::int64_t s = 0;
        for (auto c : data_)
            s += c < 0 ? -c : c;
        return s;
    }
    case GroupKind::finite:
        return data_.empty() ? 0 : 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------

GroupSpec GroupSpec::free(int rank)
{
    if (rank < 1)
        throw StructuralError("free group rank must be positive");
    return GroupSpec(GroupKind::free, rank, nullptr);
}

GroupSpec GroupSpec::zpow(int dim)
{
    if (dim < 1)
        throw StructuralError("Z^k dimension must be positive");
    return GroupSpec(GroupKind::zpow, dim, nullptr);
}

GroupSpec GroupSpec::finite(const std::vector<std::vector<int>>& table, int identity, bool validate)
{
    const int n = static_cast<int>(table.size());
    if (n < 1)
        throw StructuralError("finite group table is empty");
    if (identity < 0 || identity >= n)
        throw StructuralError("identity index out of range");

    auto t = std::make_shared<Table>();
    t->n = n;
    t->identity = identity;
    t->product.resize(static_cast<std::size_t>(n) * n);
    t->inverse.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(table[a].size()) != n)
            throw StructuralError("finite group table is not square");
        for (int b = 0; b < n; ++b) {
            const int ab = table[a][b];
            if (ab < 0 || ab >= n)
                throw StructuralError("finite group table entry out of range");
            t->product[static_cast<std::size_t>(a) * n + b] = ab;
            if (ab == identity && t->inverse[a] < 0)
                t->inverse[a] = b;
        }
    }
    auto mul = [&](int a, int b) { return t->product[static_cast<std::size_t>(a) * n + b]; };

    if (validate || n <= 64) {
        for (int a = 0; a < n; ++a) {
            if (mul(identity, a) != a || mul(a, identity) != a)
                throw StructuralError("identity element does not act trivially on " + std::to_string(a));
            if (t->inverse[a] < 0 || mul(t->inverse[a], a) != identity)
                throw StructuralError("element " + std::to_string(a) + " has no two-sided inverse");
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw StructuralError("table is not associative at (" + std::to_string(a) + "," +
                                              std::to_string(b) + "," + std::to_string(c) + ")");
    } else {
        for (int a = 0; a < n; ++a)
            if (t->inverse[a] < 0)
                throw StructuralError("element " + std::to_string(a) + " has no inverse");
    }
    return GroupSpec(GroupKind::finite, n, std::move(t));
}

int GroupSpec::rank() const
{
    if (kind_ != GroupKind::free)
        throw StructuralError("rank() requires a free group");
    return param_;
}

int GroupSpec::dim() const
{
    if (kind_ != GroupKind::zpow)
        throw StructuralError("dim() requires Z^k");
    return param_;
}

int GroupSpec::order() const
{
    if (kind_ != GroupKind::finite)
        throw StructuralError("order() requires a finite group");
    return param_;
}

GroupElement GroupSpec::identity() const
{
    switch (kind_) {
    case GroupKind::free:
        return GroupElement::word({});
    case GroupKind::zpow:
        return GroupElement::vec(std::vector<std::int64_t>(param_, 0));
    case GroupKind::finite:
        return GroupElement::index(table_->identity);
    }
    return {};
}

bool GroupSpec::contains(const GroupElement& g) const noexcept
{
    if (g.kind() != kind_)
        return false;
    const auto d = g.data();
    switch (kind_) {
    case GroupKind::free:
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] == 0 || d[i] > param_ || d[i] < -param_)
                return false;
            if (i > 0 && d[i] == -d[i - 1])
                return false;
        }
        return true;
    case GroupKind::zpow:
        return static_cast<int>(d.size()) == param_;
    case GroupKind::finite:
        return d.size() == 1 && d[0] >= 0 && d[0] < param_;
    }
    return false;
}

void GroupSpec::require(const GroupElement& g) const
{
    if (!contains(g))
        throw StructuralError("element of kind " + to_string(g.kind()) + " with " + std::to_string(g.data().size()) +
                              " entries does not belong to the " + to_string(kind_) + " group");
}

GroupElement GroupSpec::multiply(const GroupElement& a, const GroupElement& b) const
{
    require(a);
    require(b);
    switch (kind_) {
    case GroupKind::free: {
        std::vector<std::int64_t> w(a.data().begin(), a.data().end());
        w.insert(w.end(), b.data().begin(), b.data().end());
        return GroupElement::word(w);
    }
    case GroupKind::zpow: {
        std::vector<std::int64_t> v(param_);
        for (int i = 0; i < param_; ++i)
            if (__builtin_add_overflow(a.data()[i], b.data()[i], &v[i]))
                throw NumericalError("Z^k coordinate overflow");
        return GroupElement::vec(std::move(v));
    }
    case GroupKind::finite:
        return GroupElement::index(table_product(static_cast<int>(a.data()[0]), static_cast<int>(b.data()[0])));
    }
    return {};
}

GroupElement GroupSpec::inverse(const GroupElement& a) const
{
    require(a);
    switch (kind_) {
    case GroupKind::free: {
        std::vector<std::int64_t> w(a.data().rbegin(), a.data().rend());
        for (auto& l : w)
            l = -l;
        return GroupElement::word(w);
    }
    case GroupKind::zpow: {
        std::vector<std::int64_t> v(param_);
        for (int i = 0; i < param_; ++i) {
            if (a.data()[i] == INT64_MIN)
                throw NumericalError("Z^k coordinate overflow");
            v[i] = -a.data()[i];
        }
        return GroupElement::vec(std::move(v));
    }
    case GroupKind::finite:
        return GroupElement::index(table_inverse(static_cast<int>(a.data()[0])));
    }
    return {};
}

std::vector<GroupElement> GroupSpec::generators() const
{
    std::vector<GroupElement> out;
    switch (kind_) {
    case GroupKind::free:
        for (int i = 1; i <= param_; ++i)
            out.push_back(GroupElement::word({i}));
        break;
    case GroupKind::zpow:
        for (int i = 0; i < param_; ++i) {
            std::vector<std::int64_t> v(param_, 0);
            v[i] = 1;
            out.push_back(GroupElement::vec(std::move(v)));
        }
        break;
    case GroupKind::finite:
        for (int i = 0; i < param_; ++i)
            if (i != table_->identity)
                out.push_back(GroupElement::index(i));
        break;
    }
    return out;
}

std::vector<GroupElement> GroupSpec::ball(int radius) const
{
    if (radius < 0)
        throw ArgumentError("ball radius must be non-negative");
    std::vector<GroupElement> out;
    switch (kind_) {
    case GroupKind::free: {
        std::vector<std::vector<std::int64_t>> layer{{}};
        out.push_back(GroupElement::word({}));
        for (int len = 1; len <= radius; ++len) {
            std::vector<std::vector<std::int64_t>> next;
            for (const auto& w : layer) {
                for (std::int64_t l = -param_; l <= param_; ++l) {
                    if (l == 0 || (!w.empty() && w.back() == -l))
                        continue;
                    auto v = w;
                    v.push_back(l);
                    out.push_back(GroupElement::word(v));
                    next.push_back(std::move(v));
                }
            }
            layer = std::move(next);
        }
        break;
    }
    case GroupKind::zpow: {
        std::vector<std::int64_t> v(param_, -radius);
        while (true) {
            std::int64_t l1 = 0;
            for (auto c : v)
                l1 += c < 0 ? -c : c;
            if (l1 <= radius)
                out.push_back(GroupElement::vec(v));
            int i = 0;
            while (i < param_ && v[i] == radius)
                v[i++] = -radius;
            if (i == param_)
                break;
            ++v[i];
        }
        break;
    }
    case GroupKind::finite:
        for (int i = 0; i < param_; ++i)
            out.push_back(GroupElement::index(i));
        break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string GroupSpec::format(const GroupElement& g) const
{
    require(g);
    std::ostringstream os;
    switch (kind_) {
    case GroupKind::free: {
        if (g.data().empty())
            return "e";
        bool first = true;
        for (auto l : g.data()) {
            if (!first)
                os << ' ';
            first = false;
            os << letter_name(l < 0 ? -l : l);
            if (l < 0)
                os << "^-1";
        }
        break;
    }
    case GroupKind::zpow: {
        os << '(';
        for (std::size_t i = 0; i < g.data().size(); ++i)
            os << (i ? "," : "") << g.data()[i];
        os << ')';
        break;
    }
    case GroupKind::finite:
        os << g.data()[0];
        break;
    }
    return os.str();
}

GroupElement GroupSpec::parse_word(const std::string& text) const
{
    if (kind_ != GroupKind::free)
        throw StructuralError("word parsing requires a free group");
    std::istringstream is(text);
    std::string tok;
    std::vector<std::int64_t> letters;
    while (is >> tok) {
        if (tok == "e")
            continue;
        std::int64_t power = 1;
        auto caret = tok.find('^');
        std::string name = tok.substr(0, caret);
        if (caret != std::string::npos) {
            const std::string p = tok.substr(caret + 1);
            char* end = nullptr;
            power = std::strtoll(p.c_str(), &end, 10);
            if (p.empty() || *end != '\0')
                throw StructuralError("bad exponent in word token '" + tok + "'");
        }
        const std::int64_t gen = generator_from_name(name);
        if (gen < 1 || gen > param_)
            throw StructuralError("unknown generator '" + name + "' for free group of rank " +
                                  std::to_string(param_));
        const std::int64_t letter = power < 0 ? -gen : gen;
        for (std::int64_t k = 0; k < (power < 0 ? -power : power); ++k)
            letters.push_back(letter);
    }
    return GroupElement::word(letters);
}

int GroupSpec::table_product(int a, int b) const
{
    if (kind_ != GroupKind::finite)
        throw StructuralError("table_product requires a finite group");
    return table_->product[static_cast<std::size_t>(a) * table_->n + b];
}

int GroupSpec::table_inverse(int a) const
{
    if (kind_ != GroupKind::finite)
        throw StructuralError("table_inverse requires a finite group");
    return table_->inverse[a];
}

bool GroupSpec::operator==(const GroupSpec& other) const
{
    if (kind_ != other.kind_ || param_ != other.param_)
        return false;
    if (kind_ != GroupKind::finite || table_ == other.table_)
        return true;
    return table_->identity == other.table_->identity && table_->product == other.table_->product;
}

GroupElement group_multiply(const GroupSpec& group, const GroupElement& a, const GroupElement& b)
{
    return group.multiply(a, b);
}

} // namespace sofic
