#pragma once
//
// Supported group families: free groups, free abelian groups Z^k and
// finite groups given by a multiplication table.
//

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sofic {

enum class GroupKind
{
    free,
    zpow,
    finite
};

std::string to_string(GroupKind kind);

//
// A group element in canonical form.
//   free   : reduced word, letter +i is generator a_i, -i its inverse (i >= 1)
//   zpow   : integer coordinate vector
//   finite : single table index
// Equal elements have identical representations, so the defaulted
// comparisons are group equality.
//
class GroupElement
{
  public:
    GroupElement() = default;

    // Reduces the word.
    static GroupElement word(std::span<const std::int64_t> letters);
    static GroupElement word(std::initializer_list<std::int64_t> letters);
    static GroupElement vec(std::vector<std::int64_t> coords);
    static GroupElement index(std::int64_t i);

    GroupKind kind() const noexcept { return kind_; }
    std::span<const std::int64_t> data() const noexcept { return data_; }

    // Number of letters (free), l1 norm (zpow), 0 or 1 (finite).
    std::int64_t length() const noexcept;

    auto operator<=>(const GroupElement&) const = default;
    bool operator==(const GroupElement&) const = default;

  private:
    GroupElement(GroupKind kind, std::vector<std::int64_t> data) : kind_(kind), data_(std::move(data)) {}

    GroupKind kind_ = GroupKind::free;
    std::vector<std::int64_t> data_;
};

class GroupSpec
{
  public:
    static GroupSpec free(int rank);
    static GroupSpec zpow(int dim);

    // table[a][b] = index of a*b. Validated exhaustively when n <= 64 or
    // when validate is set.
    static GroupSpec finite(const std::vector<std::vector<int>>& table, int identity, bool validate = false);

    GroupKind kind() const noexcept { return kind_; }
    int rank() const;  // free
    int dim() const;   // zpow
    int order() const; // finite

    GroupElement identity() const;
    GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
    GroupElement inverse(const GroupElement& a) const;

    bool contains(const GroupElement& g) const noexcept;
    void require(const GroupElement& g) const;

    // Free: a_1..a_r; zpow: unit vectors; finite: all non-identity elements.
    std::vector<GroupElement> generators() const;

    // Every element of word length <= radius in the standard symmetric
    // generating set (all elements for finite groups), sorted.
    std::vector<GroupElement> ball(int radius) const;

    // Free words print as "a b^-1 a", identity as "e"; zpow as "(1,-2)";
    // finite as the index.
    std::string format(const GroupElement& g) const;
    GroupElement parse_word(const std::string& text) const;

    // Raw multiplication table, finite groups only.
    int table_product(int a, int b) const;
    int table_inverse(int a) const;

    bool operator==(const GroupSpec& other) const;

  private:
    struct Table
    {
        int n = 0;
        int identity = 0;
        std::vector<int> product; // row-major n*n
        std::vector<int> inverse;
    };

    GroupSpec(GroupKind kind, int param, std::shared_ptr<const Table> table)
        : kind_(kind), param_(param), table_(std::move(table))
    {
    }

    GroupKind kind_ = GroupKind::free;
    int param_ = 1;
    std::shared_ptr<const Table> table_;
};

GroupElement group_multiply(const GroupSpec& group, const GroupElement& a, const GroupElement& b);

} // namespace sofic
