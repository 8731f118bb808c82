#pragma once
//
// Small finite groups as multiplication tables.
//

#include <string>
#include <vector>

#include "sofic/group.hpp"

namespace sofic::catalog {

GroupSpec cyclic(int n);

// Symmetries of the n-gon, order 2n. Index r^k s^f is k + n*f.
GroupSpec dihedral(int n);

GroupSpec quaternion();

// All permutations of k letters in lexicographic order; index 0 is the identity.
GroupSpec symmetric(int k);
GroupSpec alternating(int k);

// Index (a, b) is a * |H| + b.
GroupSpec direct_product(const GroupSpec& g, const GroupSpec& h);

struct NamedGroup
{
    std::string name;
    GroupSpec group;
};

// A fixed list of pairwise non-isomorphic groups of order <= max_order
// (cyclic, dihedral, small products, Q8, A4, S4 where they fit).
std::vector<NamedGroup> small_groups(int max_order);

} // namespace sofic::catalog
