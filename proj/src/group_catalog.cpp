#include "sofic/group_catalog.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sofic/error.hpp"

namespace sofic::catalog {

namespace {

using Table = std::vector<std::vector<int>>;

GroupSpec from_permutations(const std::vector<std::vector<int>>& perms)
{
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < perms.size(); ++i)
        index[perms[i]] = static_cast<int>(i);
    const int n = static_cast<int>(perms.size());
    Table t(n, std::vector<int>(n));
    std::vector<int> comp(perms.front().size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            for (std::size_t i = 0; i < comp.size(); ++i)
                comp[i] = perms[a][perms[b][i]];
            auto it = index.find(comp);
            if (it == index.end())
                throw StructuralError("permutation set is not closed under composition");
            t[a][b] = it->second;
        }
    return GroupSpec::finite(t, 0);
}

bool is_even(const std::vector<int>& p)
{
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            inversions += p[i] > p[j];
    return inversions % 2 == 0;
}

std::vector<std::vector<int>> all_permutations(int k)
{
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do
        out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

} // namespace

GroupSpec cyclic(int n)
{
    if (n < 1)
        throw ArgumentError("cyclic group order must be positive");
    Table t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            t[a][b] = (a + b) % n;
    return GroupSpec::finite(t, 0);
}

GroupSpec dihedral(int n)
{
    if (n < 1)
        throw ArgumentError("dihedral parameter must be positive");
    // r^k s^f * r^l s^g = r^(k + (-1)^f l) s^(f+g)
    const int order = 2 * n;
    Table t(order, std::vector<int>(order));
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) {
            const int k = a % n, f = a / n, l = b % n, g = b / n;
            const int rot = ((f ? k - l : k + l) % n + n) % n;
            t[a][b] = rot + n * ((f + g) % 2);
        }
    return GroupSpec::finite(t, 0);
}

GroupSpec quaternion()
{
    // index = unit + 4*sign_bit, units 1, i, j, k
    static constexpr int unit_product[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static constexpr int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    Table t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            const int ua = a % 4, ub = b % 4;
            const int sign = (a / 4 + b / 4 + unit_sign[ua][ub]) % 2;
            t[a][b] = unit_product[ua][ub] + 4 * sign;
        }
    return GroupSpec::finite(t, 0);
}

GroupSpec symmetric(int k)
{
    if (k < 1 || k > 6)
        throw ArgumentError("symmetric group supported for 1 <= k <= 6");
    return from_permutations(all_permutations(k));
}

GroupSpec alternating(int k)
{
    if (k < 1 || k > 6)
        throw ArgumentError("alternating group supported for 1 <= k <= 6");
    auto perms = all_permutations(k);
    std::erase_if(perms, [](const auto& p) { return !is_even(p); });
    return from_permutations(perms);
}

GroupSpec direct_product(const GroupSpec& g, const GroupSpec& h)
{
    const int m = g.order(), n = h.order();
    Table t(m * n, std::vector<int>(m * n));
    for (int a = 0; a < m * n; ++a)
        for (int b = 0; b < m * n; ++b)
            t[a][b] = g.table_product(a / n, b / n) * n + h.table_product(a % n, b % n);
    const int id = static_cast<int>(g.identity().data()[0]) * n + static_cast<int>(h.identity().data()[0]);
    return GroupSpec::finite(t, id);
}

std::vector<NamedGroup> small_groups(int max_order)
{
    std::vector<NamedGroup> out;
    auto add = [&](int order, std::string name, auto make) {
        if (order <= max_order)
            out.push_back({std::move(name), make()});
    };
    for (int n = 1; n <= max_order; ++n)
        add(n, "Z" + std::to_string(n), [n] { return cyclic(n); });
    add(4, "Z2xZ2", [] { return dihedral(2); });
    for (int n = 3; 2 * n <= max_order; ++n)
        add(2 * n, "D" + std::to_string(n), [n] { return dihedral(n); });
    add(8, "Z2xZ4", [] { return direct_product(cyclic(2), cyclic(4)); });
    add(8, "Z2xZ2xZ2", [] { return direct_product(cyclic(2), dihedral(2)); });
    add(8, "Q8", [] { return quaternion(); });
    add(9, "Z3xZ3", [] { return direct_product(cyclic(3), cyclic(3)); });
    add(12, "Z2xZ6", [] { return direct_product(cyclic(2), cyclic(6)); });
    add(12, "A4", [] { return alternating(4); });
    add(24, "S4", [] { return symmetric(4); });
    add(24, "Q8xZ3", [] { return direct_product(quaternion(), cyclic(3)); });
    return out;
}

} // namespace sofic::catalog
