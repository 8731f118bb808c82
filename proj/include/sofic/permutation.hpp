#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sofic/rng.hpp"

namespace sofic {

// A bijection of {0, ..., d-1}; images()[k] is the image of k.
class Permutation
{
  public:
    Permutation() = default;
    explicit Permutation(std::vector<std::uint32_t> images);

    static Permutation identity(std::size_t degree);
    static Permutation uniform(std::size_t degree, CounterRng& rng);
    // k -> k + shift mod degree
    static Permutation cyclic_shift(std::size_t degree, std::int64_t shift);
    static Permutation transposition(std::size_t degree, std::size_t a, std::size_t b);

    std::size_t degree() const noexcept { return images_.size(); }
    std::uint32_t operator()(std::size_t k) const noexcept { return images_[k]; }
    std::span<const std::uint32_t> images() const noexcept { return images_; }

    Permutation inverse() const;
    // (*this ∘ rhs)(k) = (*this)(rhs(k))
    Permutation operator*(const Permutation& rhs) const;
    Permutation pow(std::int64_t n) const;

    std::size_t fixed_points() const noexcept;
    bool is_identity() const noexcept;

    // Column k has its single 1 in row images()[k].
    Eigen::MatrixXd matrix() const;

    bool operator==(const Permutation&) const = default;

  private:
    std::vector<std::uint32_t> images_;
};

} // namespace sofic
