#include "sofic/permutation.hpp"

#include <algorithm>
#include <numeric>

#include "sofic/error.hpp"

namespace sofic {

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images))
{
    std::vector<char> seen(images_.size(), 0);
    for (auto v : images_) {
        if (v >= images_.size() || seen[v])
            throw StructuralError("permutation images are not a bijection of [0, d)");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(std::size_t degree)
{
    Permutation p;
    p.images_.resize(degree);
    std::iota(p.images_.begin(), p.images_.end(), 0u);
    return p;
}

Permutation Permutation::uniform(std::size_t degree, CounterRng& rng)
{
    Permutation p = identity(degree);
    // Fisher-Yates; modulo bias is below 2^-40 for degree < 2^24.
    for (std::size_t i = degree; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(p.images_[i - 1], p.images_[j]);
    }
    return p;
}

Permutation Permutation::cyclic_shift(std::size_t degree, std::int64_t shift)
{
    Permutation p;
    p.images_.resize(degree);
    const auto n = static_cast<std::int64_t>(degree);
    const std::int64_t s = ((shift % n) + n) % n;
    for (std::int64_t k = 0; k < n; ++k)
        p.images_[k] = static_cast<std::uint32_t>((k + s) % n);
    return p;
}

Permutation Permutation::transposition(std::size_t degree, std::size_t a, std::size_t b)
{
    if (a >= degree || b >= degree)
        throw ArgumentError("transposition index out of range");
    Permutation p = identity(degree);
    std::swap(p.images_[a], p.images_[b]);
    return p;
}

Permutation Permutation::inverse() const
{
    Permutation p;
    p.images_.resize(images_.size());
    for (std::size_t k = 0; k < images_.size(); ++k)
        p.images_[images_[k]] = static_cast<std::uint32_t>(k);
    return p;
}

Permutation Permutation::operator*(const Permutation& rhs) const
{
    if (rhs.degree() != degree())
        throw StructuralError("composing permutations of different degrees");
    Permutation p;
    p.images_.resize(images_.size());
    for (std::size_t k = 0; k < images_.size(); ++k)
        p.images_[k] = images_[rhs.images_[k]];
    return p;
}

Permutation Permutation::pow(std::int64_t n) const
{
    // Walk each cycle once; the image of a point is n steps along its cycle.
    Permutation p;
    p.images_.resize(images_.size());
    std::vector<char> done(images_.size(), 0);
    std::vector<std::uint32_t> cycle;
    for (std::size_t start = 0; start < images_.size(); ++start) {
        if (done[start])
            continue;
        cycle.clear();
        for (auto k = static_cast<std::uint32_t>(start); !done[k]; k = images_[k]) {
            done[k] = 1;
            cycle.push_back(k);
        }
        const auto len = static_cast<std::int64_t>(cycle.size());
        const std::int64_t shift = ((n % len) + len) % len;
        for (std::int64_t i = 0; i < len; ++i)
            p.images_[cycle[i]] = cycle[(i + shift) % len];
    }
    return p;
}

std::size_t Permutation::fixed_points() const noexcept
{
    std::size_t n = 0;
    for (std::size_t k = 0; k < images_.size(); ++k)
        n += images_[k] == k;
    return n;
}

bool Permutation::is_identity() const noexcept
{
    return fixed_points() == images_.size();
}

Eigen::MatrixXd Permutation::matrix() const
{
    const auto d = static_cast<Eigen::Index>(images_.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k)
        m(images_[k], k) = 1.0;
    return m;
}

} // namespace sofic
