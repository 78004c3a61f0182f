#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ninfty/group.hpp"

namespace ninfty {

/// A set of subgroups of one ambient group, closed under passing to
/// subgroups and under conjugation. Members are kept sorted canonically
/// (by size, then lexicographically), so equality is member-array
/// equality. The empty family is a legal value.
struct Family {
    GroupPtr ambient;
    std::vector<Subgroup> members;

    int size() const { return static_cast<int>(members.size()); }
    bool contains(const Subgroup& s) const;
};

bool operator==(const Family& a, const Family& b);
bool operator!=(const Family& a, const Family& b);

/// Canonicalizes (sorts, dedupes) without closing.
Family make_family(GroupPtr ambient, std::vector<Subgroup> members);

/// All subgroups of s, as subgroups of s's ambient group.
std::vector<Subgroup> subgroups_of(const Subgroup& s);

/// Smallest family containing the seeds: fixpoint of adding all
/// subgroups of members and all conjugates of members.
Family close_family(const GroupPtr& ambient, const std::vector<Subgroup>& seeds);

struct FamilyCheck {
    bool ok = true;
    std::string what;                 // empty when ok
    std::optional<Subgroup> member;   // offending member
    std::optional<Subgroup> missing;  // its absent subgroup or conjugate
};

FamilyCheck is_family(const Family& f);

Family family_union(const Family& a, const Family& b);
Family family_intersection(const Family& a, const Family& b);
bool is_subfamily(const Family& a, const Family& b);

}  // namespace ninfty
