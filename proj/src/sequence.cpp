#include "ninfty/sequence.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "ninfty/errors.hpp"

namespace ninfty {

namespace {

struct HomEntry {
    Homomorphism rho;
    Subgroup gamma;
    std::vector<Perm> perms;  // unranked image of each source element
};

// All homomorphism data for one (G, N) geometry; membership in concrete
// families is filtered at use time so the table survives family growth.
struct HomTable {
    GroupPtr g;
    int max_arity = 0;
    std::vector<Subgroup> gsubs;
    std::vector<AsGroup> asg;
    std::vector<ArityGroup> ar;
    std::vector<std::vector<std::vector<HomEntry>>> entries;  // [n][hi]
};

HomTable build_table(const GroupPtr& g, int max_arity) {
    HomTable t;
    t.g = g;
    t.max_arity = max_arity;
    t.gsubs = all_subgroups(g);
    for (const Subgroup& h : t.gsubs) t.asg.push_back(subgroup_as_group(h));
    for (int n = 0; n <= max_arity; ++n) {
        t.ar.push_back(arity_product(g, n));
        std::vector<std::vector<HomEntry>> level(t.gsubs.size());
        for (std::size_t hi = 0; hi < t.gsubs.size(); ++hi) {
            for (Homomorphism& rho : homomorphisms(t.asg[hi].group, t.ar[n].sym)) {
                HomEntry e;
                e.gamma = graph_of(t.ar[n], GraphDatum{t.gsubs[hi], rho, n});
                e.perms.reserve(rho.images.size());
                for (int img : rho.images) e.perms.push_back(perm_unrank(n, img));
                e.rho = std::move(rho);
                level[hi].push_back(std::move(e));
            }
        }
        t.entries.push_back(std::move(level));
    }
    return t;
}

std::vector<std::vector<int>> compositions(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k, 0);
    std::function<void(int, int)> rec = [&](int pos, int rest) {
        if (pos == k - 1) {
            cur[pos] = rest;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= rest; ++v) {
            cur[pos] = v;
            rec(pos + 1, rest - v);
        }
    };
    if (k >= 1) rec(0, n);
    return out;
}

// Visits every composed (datum, gamma) for the instance (k, parts), in
// deterministic order. The visitor returns false to stop the scan early;
// the function returns false iff it was stopped.
bool for_each_wreath_output(
    const HomTable& t, const std::vector<Family>& fams, int k, const std::vector<int>& parts,
    const std::function<bool(const WreathDatum&, const Subgroup&)>& visit) {
    const int n = std::accumulate(parts.begin(), parts.end(), 0);
    const ArityGroup& arn = t.ar[n];
    std::vector<int> offsets(k + 1, 0);
    for (int i = 0; i < k; ++i) offsets[i + 1] = offsets[i] + parts[i];

    for (std::size_t hi = 0; hi < t.gsubs.size(); ++hi) {
        const Subgroup& H = t.gsubs[hi];
        const FiniteGroup& Hgrp = *t.asg[hi].group;
        const int hsize = Hgrp.order;

        for (const HomEntry& outer : t.entries[k][hi]) {
            if (!fams[k].contains(outer.gamma)) continue;

            // orbits of rho_k(H) on the k blocks
            std::vector<int> root(k);
            for (int i = 0; i < k; ++i) root[i] = i;
            std::function<int(int)> find = [&](int x) {
                while (root[x] != x) x = root[x] = root[root[x]];
                return x;
            };
            for (int j = 0; j < hsize; ++j)
                for (int i = 0; i < k; ++i) {
                    int a = find(i), b = find(outer.perms[j][i]);
                    if (a != b) root[std::max(a, b)] = std::min(a, b);
                }
            std::vector<int> reps;
            std::vector<int> orbit_of(k);
            for (int i = 0; i < k; ++i) {
                const int r = find(i);
                if (r == i) reps.push_back(i);
            }
            bool sizes_ok = true;
            for (int i = 0; i < k && sizes_ok; ++i) {
                orbit_of[i] = static_cast<int>(
                    std::lower_bound(reps.begin(), reps.end(), find(i)) - reps.begin());
                if (parts[i] != parts[find(i)]) sizes_ok = false;
            }
            if (!sizes_ok) continue;  // blocks of unequal size in one orbit

            // admissible inner choices per orbit
            const int norb = static_cast<int>(reps.size());
            std::vector<std::vector<int>> cand(norb);
            bool feasible = true;
            for (int o = 0; o < norb && feasible; ++o) {
                const int m = parts[reps[o]];
                const auto& pool = t.entries[m][hi];
                for (std::size_t idx = 0; idx < pool.size(); ++idx)
                    if (fams[m].contains(pool[idx].gamma))
                        cand[o].push_back(static_cast<int>(idx));
                feasible = !cand[o].empty();
            }
            if (!feasible) continue;

            std::vector<int> choice(norb, 0);
            while (true) {
                std::vector<const HomEntry*> inner(k);
                for (int i = 0; i < k; ++i)
                    inner[i] = &t.entries[parts[i]][hi][cand[orbit_of[i]][choice[orbit_of[i]]]];

                // the block formula
                std::vector<Perm> q(hsize);
                for (int j = 0; j < hsize; ++j) {
                    Perm p(n);
                    for (int i = 0; i < k; ++i) {
                        const int dst = offsets[outer.perms[j][i]];
                        for (int s = 0; s < parts[i]; ++s)
                            p[offsets[i] + s] = dst + inner[i]->perms[j][s];
                    }
                    q[j] = std::move(p);
                }
                // safety net: the orbit constraint guarantees this
                for (int a = 0; a < hsize; ++a)
                    for (int b = 0; b < hsize; ++b)
                        if (perm_mul(q[a], q[b]) != q[Hgrp.mul(a, b)])
                            throw Error("wreath composition produced a non-homomorphism");

                std::vector<int> elems(hsize);
                std::vector<int> rho_images(hsize);
                for (int j = 0; j < hsize; ++j) {
                    rho_images[j] = static_cast<int>(perm_rank(q[j]));
                    elems[j] = arn.pair_index(H.elements[j], rho_images[j]);
                }
                std::sort(elems.begin(), elems.end());
                Subgroup gamma{arn.prod, std::move(elems)};

                WreathDatum d;
                d.H = H;
                d.k = k;
                d.parts = parts;
                d.rho_k = outer.rho;
                for (int i = 0; i < k; ++i) d.block_rhos.push_back(inner[i]->rho);
                if (!visit(d, gamma)) return false;

                int o = norb;
                while (o > 0 && choice[o - 1] + 1 == static_cast<int>(cand[o - 1].size()))
                    choice[--o] = 0;
                if (o == 0) break;
                ++choice[o - 1];
            }
        }
    }
    return true;
}

bool family_members_less(const Family& a, const Family& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    for (std::size_t i = 0; i < a.members.size(); ++i) {
        if (a.members[i].elements != b.members[i].elements)
            return subgroup_less(a.members[i], b.members[i]);
    }
    return false;
}

}  // namespace

FamilySequence make_sequence(GroupPtr g, int max_arity, std::vector<Family> families) {
    if (max_arity < 0) throw InputError("max_arity must be nonnegative");
    if (families.size() != static_cast<std::size_t>(max_arity) + 1)
        throw InputError("expected " + std::to_string(max_arity + 1) + " families, got " +
                         std::to_string(families.size()));
    FamilySequence seq;
    seq.group = std::move(g);
    seq.max_arity = max_arity;
    for (int n = 0; n <= max_arity; ++n) {
        seq.arities.push_back(arity_product(seq.group, n));
        if (families[n].ambient->order != seq.arities[n].prod->order)
            throw InputError("family at arity " + std::to_string(n) +
                             " has wrong ambient group order");
        families[n].ambient = seq.arities[n].prod;
    }
    seq.families = std::move(families);
    return seq;
}

void validate_sequence_families(const FamilySequence& seq) {
    for (int n = 0; n <= seq.max_arity; ++n) {
        const FamilyCheck c = is_family(seq.families[n]);
        if (!c.ok)
            throw InputError("level " + std::to_string(n) + " is not a family: " + c.what);
    }
}

bool sequence_less(const FamilySequence& a, const FamilySequence& b) {
    if (a.max_arity != b.max_arity) return a.max_arity < b.max_arity;
    for (int n = 0; n <= a.max_arity; ++n) {
        if (a.families[n] != b.families[n])
            return family_members_less(a.families[n], b.families[n]);
    }
    return false;
}

bool sequence_equal(const FamilySequence& a, const FamilySequence& b) {
    if (a.max_arity != b.max_arity) return false;
    for (int n = 0; n <= a.max_arity; ++n)
        if (a.families[n] != b.families[n]) return false;
    return true;
}

Subgroup wreath_graph(const GroupPtr& g, const WreathDatum& d) {
    const int n = std::accumulate(d.parts.begin(), d.parts.end(), 0);
    const ArityGroup arn = arity_product(g, n);
    const AsGroup as = subgroup_as_group(d.H);
    const FiniteGroup& Hgrp = *as.group;
    std::vector<int> offsets(d.k + 1, 0);
    for (int i = 0; i < d.k; ++i) offsets[i + 1] = offsets[i] + d.parts[i];

    std::vector<Perm> q(Hgrp.order);
    for (int j = 0; j < Hgrp.order; ++j) {
        const Perm pk = perm_unrank(d.k, d.rho_k.images[j]);
        Perm p(n);
        for (int i = 0; i < d.k; ++i) {
            const Perm pi = perm_unrank(d.parts[i], d.block_rhos[i].images[j]);
            for (int s = 0; s < d.parts[i]; ++s) p[offsets[i] + s] = offsets[pk[i]] + pi[s];
        }
        q[j] = std::move(p);
    }
    for (int a = 0; a < Hgrp.order; ++a)
        for (int b = 0; b < Hgrp.order; ++b)
            if (perm_mul(q[a], q[b]) != q[Hgrp.mul(a, b)])
                throw Error("wreath datum does not define a homomorphism");

    std::vector<int> elems(Hgrp.order);
    for (int j = 0; j < Hgrp.order; ++j)
        elems[j] = arn.pair_index(d.H.elements[j], static_cast<int>(perm_rank(q[j])));
    std::sort(elems.begin(), elems.end());
    return Subgroup{arn.prod, std::move(elems)};
}

std::vector<Subgroup> wreath_compose(const FamilySequence& seq, int k,
                                     const std::vector<int>& parts) {
    const int n = std::accumulate(parts.begin(), parts.end(), 0);
    if (k < 1 || k > seq.max_arity || n > seq.max_arity ||
        static_cast<int>(parts.size()) != k)
        throw InputError("wreath composition arity out of range");
    for (int p : parts)
        if (p < 0) throw InputError("negative part in composition");
    const HomTable t = build_table(seq.group, seq.max_arity);
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> out;
    for_each_wreath_output(t, seq.families, k, parts,
                           [&](const WreathDatum&, const Subgroup& gamma) {
                               if (seen.insert(gamma.elements).second) out.push_back(gamma);
                               return true;
                           });
    std::sort(out.begin(), out.end(), subgroup_less);
    return out;
}

RealizabilityResult is_realizable(const FamilySequence& seq) {
    const HomTable t = build_table(seq.group, seq.max_arity);
    RealizabilityResult res;
    for (int n = 0; n <= seq.max_arity && res.realizable; ++n) {
        for (int k = 1; k <= seq.max_arity && res.realizable; ++k) {
            for (const auto& parts : compositions(n, k)) {
                const bool completed = for_each_wreath_output(
                    t, seq.families, k, parts,
                    [&](const WreathDatum& d, const Subgroup& gamma) {
                        if (seq.families[n].contains(gamma)) return true;
                        res.realizable = false;
                        res.witness = Witness{n, parts, d, gamma};
                        return false;
                    });
                if (!completed) break;
            }
        }
    }
    return res;
}

bool verify_witness(const FamilySequence& seq, const Witness& w) {
    const Subgroup replay = wreath_graph(seq.group, w.datum);
    return replay == w.gamma && !seq.families[w.n].contains(w.gamma);
}

FamilySequence realizable_closure(const FamilySequence& seq) {
    const HomTable t = build_table(seq.group, seq.max_arity);
    std::vector<Family> fams = seq.families;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int n = 0; n <= seq.max_arity; ++n) {
            std::vector<Subgroup> missing;
            for (int k = 1; k <= seq.max_arity; ++k) {
                for (const auto& parts : compositions(n, k)) {
                    for_each_wreath_output(t, fams, k, parts,
                                           [&](const WreathDatum&, const Subgroup& gamma) {
                                               if (!fams[n].contains(gamma))
                                                   missing.push_back(gamma);
                                               return true;
                                           });
                }
            }
            if (!missing.empty()) {
                std::vector<Subgroup> seeds = fams[n].members;
                seeds.insert(seeds.end(), missing.begin(), missing.end());
                fams[n] = close_family(t.ar[n].prod, seeds);
                grew = true;
            }
        }
    }
    return make_sequence(seq.group, seq.max_arity, std::move(fams));
}

NInfinityCheck validate_N_infinity(const FamilySequence& seq, const Family* hfam) {
    const std::vector<Subgroup> hset =
        hfam ? hfam->members : all_subgroups(seq.group);
    for (int n = 0; n <= seq.max_arity; ++n) {
        const ArityGroup& ag = seq.arities[n];
        for (const Subgroup& m : seq.families[n].members) {
            if (!is_graph_subgroup(ag, m)) {
                std::string elems;
                for (int p : m.elements) elems += (elems.empty() ? "" : ",") + std::to_string(p);
                return NInfinityCheck{false, "arity " + std::to_string(n) + ": member {" + elems +
                                                 "} meets 1 x Sym(n) nontrivially (Sym(n)-action "
                                                 "not free)"};
            }
        }
    }
    for (int n = 0; n <= seq.max_arity; ++n) {
        const ArityGroup& ag = seq.arities[n];
        const int sid = ag.sym->identity;
        for (const Subgroup& H : hset) {
            std::vector<int> elems;
            for (int h : H.elements) elems.push_back(ag.pair_index(h, sid));
            std::sort(elems.begin(), elems.end());
            if (!seq.families[n].contains(Subgroup{ag.prod, elems}))
                return NInfinityCheck{false, "arity " + std::to_string(n) +
                                                 ": missing H x 1 for a required subgroup H"};
        }
    }
    return NInfinityCheck{};
}

std::vector<Family> candidate_level_families(const ArityGroup& ag,
                                             const std::vector<Subgroup>& hset) {
    const Family base = extremal_family(ag, ExtremalKind::TrivialGraphs, &hset);

    std::vector<Family> units;
    {
        std::set<std::vector<std::vector<int>>> seen;
        for (const auto& [d, gamma] : all_graph_subgroups(ag)) {
            if (base.contains(gamma)) continue;
            std::vector<Subgroup> seeds = base.members;
            seeds.push_back(gamma);
            Family u = close_family(ag.prod, seeds);
            std::vector<std::vector<int>> key;
            for (const Subgroup& m : u.members) key.push_back(m.elements);
            if (seen.insert(std::move(key)).second) units.push_back(std::move(u));
        }
    }

    std::vector<Family> out{base};
    std::set<std::vector<std::vector<int>>> seen;
    {
        std::vector<std::vector<int>> key;
        for (const Subgroup& m : base.members) key.push_back(m.elements);
        seen.insert(std::move(key));
    }
    // unions of closed families are closed, so the candidate lattice is
    // exactly the union-closure of the one-generator units
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (const Family& u : units) {
            Family f = family_union(out[i], u);
            std::vector<std::vector<int>> key;
            for (const Subgroup& m : f.members) key.push_back(m.elements);
            if (seen.insert(std::move(key)).second) out.push_back(std::move(f));
        }
    }
    std::sort(out.begin(), out.end(), family_members_less);
    return out;
}

std::vector<FamilySequence> enumerate_realizable(const GroupPtr& g, int max_arity,
                                                 const Family* hfam) {
    const std::vector<Subgroup> hset = hfam ? hfam->members : all_subgroups(g);
    const HomTable t = build_table(g, max_arity);
    std::vector<std::vector<Family>> candidates;
    for (int n = 0; n <= max_arity; ++n)
        candidates.push_back(candidate_level_families(t.ar[n], hset));

    std::vector<FamilySequence> out;
    std::vector<Family> chosen;

    // every containment into F_n referencing levels <= m is checked the
    // moment level m = max(n, k) is fixed, so pruning never cuts a
    // completable branch
    auto level_ok = [&](int m) {
        for (int n = 0; n <= m; ++n) {
            for (int k = 1; k <= std::min(m, max_arity); ++k) {
                if (std::max(n, k) != m) continue;
                for (const auto& parts : compositions(n, k)) {
                    const bool completed = for_each_wreath_output(
                        t, chosen, k, parts,
                        [&](const WreathDatum&, const Subgroup& gamma) {
                            return chosen[n].contains(gamma);
                        });
                    if (!completed) return false;
                }
            }
        }
        return true;
    };

    std::function<void(int)> dfs = [&](int m) {
        for (const Family& cand : candidates[m]) {
            chosen.push_back(cand);
            if (level_ok(m)) {
                if (m == max_arity)
                    out.push_back(make_sequence(g, max_arity, chosen));
                else
                    dfs(m + 1);
            }
            chosen.pop_back();
        }
    };
    dfs(0);
    std::sort(out.begin(), out.end(), sequence_less);
    return out;
}

std::vector<std::pair<int, int>> sequence_poset(const std::vector<FamilySequence>& seqs) {
    const int n = static_cast<int>(seqs.size());
    for (int i = 1; i < n; ++i) {
        if (seqs[i].group->order != seqs[0].group->order ||
            seqs[i].group->table != seqs[0].group->table ||
            seqs[i].max_arity != seqs[0].max_arity)
            throw InputError("poset input mixes groups or truncation arities");
    }
    auto leq = [&](int a, int b) {
        for (int m = 0; m <= seqs[a].max_arity; ++m)
            if (!is_subfamily(seqs[a].families[m], seqs[b].families[m])) return false;
        return true;
    };
    auto lt = [&](int a, int b) { return leq(a, b) && !sequence_equal(seqs[a], seqs[b]); };
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!lt(a, b)) continue;
            bool covering = true;
            for (int c = 0; c < n && covering; ++c)
                if (c != a && c != b && lt(a, c) && lt(c, b)) covering = false;
            if (covering) edges.emplace_back(a, b);
        }
    return edges;
}

}  // namespace ninfty
