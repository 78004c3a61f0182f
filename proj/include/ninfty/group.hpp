#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "ninfty/perm.hpp"

namespace ninfty {

struct FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite group given by its Cayley table over element indices
/// 0..order-1. Immutable after construction.
struct FiniteGroup {
    std::string label;
    int order = 1;
    std::vector<int> table;  // row-major: table[a*order+b] = index of a*b
    int identity = 0;
    std::vector<int> inverse;

    int mul(int a, int b) const { return table[static_cast<std::size_t>(a) * order + b]; }
    int inv(int a) const { return inverse[a]; }
};

struct Limits {
    int group_order_cap = 2000;
    int subgroup_enum_cap = 384;
    int assoc_full_check_cap = 256;
    int assoc_sample_count = 10000;
};

/// Mutable process-wide limits; the CLI overrides these from flags.
Limits& limits();

/// Validates the table (identity, inverses, associativity: exhaustive up
/// to assoc_full_check_cap, sampled above) and fills derived fields.
GroupPtr make_group(std::string label, int order, std::vector<int> table);

GroupPtr cyclic_group(int n);

/// Elements indexed by lexicographic rank of 0-based one-line notation;
/// product is function composition (apply right factor first).
GroupPtr symmetric_group(int n);

/// Dihedral group of order 2n: index i (i<n) is the rotation x -> x+i,
/// index n+i the reflection x -> -x+i (mod n).
GroupPtr dihedral_group(int n);

/// Grammar: C<n> | S<n> | D<n> | K4 | <spec>x<spec>, x left-associative.
GroupPtr make_builtin(const std::string& spec);

struct Homomorphism {
    GroupPtr source;
    GroupPtr target;
    std::vector<int> images;  // images[i] = target index of source element i
};

bool is_homomorphism(const Homomorphism& f);

/// Direct product with the documented indexing (x,y) -> x*b.order + y,
/// together with the projections and the two axis inclusions.
struct Product {
    GroupPtr group;
    Homomorphism proj1, proj2;
    Homomorphism incl1, incl2;
};
Product direct_product(const GroupPtr& a, const GroupPtr& b);

/// Canonical form: sorted, duplicate-free element indices. Two Subgroups
/// of the same ambient are equal iff the arrays are identical.
struct Subgroup {
    GroupPtr ambient;
    std::vector<int> elements;

    int order() const { return static_cast<int>(elements.size()); }
    bool contains(int x) const;
};

bool operator==(const Subgroup& a, const Subgroup& b);
bool operator!=(const Subgroup& a, const Subgroup& b);

/// Canonical order: by size, then lexicographic on the element array.
bool subgroup_less(const Subgroup& a, const Subgroup& b);

Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup full_subgroup(const GroupPtr& g);

/// Smallest subgroup containing gens, by breadth-first word closure.
Subgroup subgroup_generated(const GroupPtr& g, const std::vector<int>& gens);

/// Every subgroup exactly once, sorted canonically. Seeds with cyclic
/// subgroups and closes under pairwise join. Throws CapExceeded above
/// limits().subgroup_enum_cap.
std::vector<Subgroup> all_subgroups(const GroupPtr& g);

Subgroup conjugate(const Subgroup& s, int g);

/// Orbits of the conjugation action on a canonical subgroup list;
/// each class is a sorted list of indices into subs.
std::vector<std::vector<int>> subgroup_conjugacy_classes(const GroupPtr& g,
                                                         const std::vector<Subgroup>& subs);

struct AsGroup {
    GroupPtr group;
    Homomorphism embedding;  // group -> ambient
};
AsGroup subgroup_as_group(const Subgroup& s);

/// Greedy: repeatedly add the smallest element index maximizing the
/// generated subgroup. Empty for the trivial group.
std::vector<int> minimal_generating_set(const GroupPtr& g);

/// All homomorphisms h -> t, each exactly once, sorted lexicographically
/// on the images array. Enumerates generator images and extends by word
/// closure.
std::vector<Homomorphism> homomorphisms(const GroupPtr& h, const GroupPtr& t);

Homomorphism trivial_homomorphism(const GroupPtr& source, const GroupPtr& target);
Homomorphism identity_homomorphism(const GroupPtr& g);

}  // namespace ninfty
