#include "ninfty/family.hpp"

#include <algorithm>
#include <set>

#include "ninfty/errors.hpp"

namespace ninfty {

namespace {

void require_same_ambient(const Family& a, const Family& b) {
    if (a.ambient && b.ambient && a.ambient->order == b.ambient->order &&
        (a.ambient == b.ambient || a.ambient->table == b.ambient->table))
        return;
    throw InputError("families have different ambient groups");
}

}  // namespace

bool Family::contains(const Subgroup& s) const {
    return std::binary_search(members.begin(), members.end(), s, subgroup_less);
}

bool operator==(const Family& a, const Family& b) {
    if (a.members.size() != b.members.size()) return false;
    for (std::size_t i = 0; i < a.members.size(); ++i)
        if (a.members[i] != b.members[i]) return false;
    return true;
}

bool operator!=(const Family& a, const Family& b) { return !(a == b); }

Family make_family(GroupPtr ambient, std::vector<Subgroup> members) {
    std::sort(members.begin(), members.end(), subgroup_less);
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return Family{std::move(ambient), std::move(members)};
}

std::vector<Subgroup> subgroups_of(const Subgroup& s) {
    const AsGroup as = subgroup_as_group(s);
    std::vector<Subgroup> out;
    for (const Subgroup& inner : all_subgroups(as.group)) {
        std::vector<int> elems;
        elems.reserve(inner.elements.size());
        for (int i : inner.elements) elems.push_back(as.embedding.images[i]);
        std::sort(elems.begin(), elems.end());
        out.push_back(Subgroup{s.ambient, std::move(elems)});
    }
    return out;
}

Family close_family(const GroupPtr& ambient, const std::vector<Subgroup>& seeds) {
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> work;
    auto add = [&](Subgroup s) {
        if (seen.insert(s.elements).second) work.push_back(std::move(s));
    };
    for (const Subgroup& s : seeds) add(s);
    for (std::size_t i = 0; i < work.size(); ++i) {
        const Subgroup cur = work[i];
        for (Subgroup& sub : subgroups_of(cur)) add(std::move(sub));
        for (int g = 0; g < ambient->order; ++g) add(conjugate(cur, g));
    }
    return make_family(ambient, std::move(work));
}

FamilyCheck is_family(const Family& f) {
    for (const Subgroup& m : f.members) {
        for (const Subgroup& sub : subgroups_of(m)) {
            if (!f.contains(sub))
                return FamilyCheck{false, "member is missing a subgroup", m, sub};
        }
        for (int g = 0; g < f.ambient->order; ++g) {
            Subgroup c = conjugate(m, g);
            if (!f.contains(c))
                return FamilyCheck{false, "member is missing a conjugate", m, std::move(c)};
        }
    }
    return FamilyCheck{};
}

Family family_union(const Family& a, const Family& b) {
    require_same_ambient(a, b);
    std::vector<Subgroup> m = a.members;
    m.insert(m.end(), b.members.begin(), b.members.end());
    return make_family(a.ambient ? a.ambient : b.ambient, std::move(m));
}

Family family_intersection(const Family& a, const Family& b) {
    require_same_ambient(a, b);
    std::vector<Subgroup> m;
    for (const Subgroup& s : a.members)
        if (b.contains(s)) m.push_back(s);
    return make_family(a.ambient ? a.ambient : b.ambient, std::move(m));
}

bool is_subfamily(const Family& a, const Family& b) {
    for (const Subgroup& s : a.members)
        if (!b.contains(s)) return false;
    return true;
}

}  // namespace ninfty
