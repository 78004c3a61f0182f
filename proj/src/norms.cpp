#include "ninfty/norms.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ninfty/errors.hpp"

namespace ninfty {

namespace {

std::string subgroup_str(const Subgroup& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.elements.size(); ++i)
        out += (i ? "," : "") + std::to_string(s.elements[i]);
    return out + "}";
}

struct AdmEntry {
    Homomorphism rho;
    Subgroup gamma;
    std::vector<Perm> perms;
};

}  // namespace

CosetAction coset_action(const GroupPtr& g, const Subgroup& H, const Subgroup& K) {
    if (H.ambient->order != g->order || K.ambient->order != g->order)
        throw InputError("coset_action: subgroups of a different ambient group");
    if (!std::includes(H.elements.begin(), H.elements.end(), K.elements.begin(),
                       K.elements.end()))
        throw InputError("coset_action: K is not contained in H");

    // iterating H ascending makes each coset appear first at its minimal
    // element, so first-seen order is the canonical order
    std::vector<std::vector<int>> cosets;
    std::vector<int> coset_of(g->order, -1);
    for (int h : H.elements) {
        if (coset_of[h] >= 0) continue;
        std::vector<int> c;
        for (int k : K.elements) c.push_back(g->mul(h, k));
        std::sort(c.begin(), c.end());
        const int idx = static_cast<int>(cosets.size());
        for (int x : c) coset_of[x] = idx;
        cosets.push_back(std::move(c));
    }
    const int n = static_cast<int>(cosets.size());

    const AsGroup as = subgroup_as_group(H);
    const GroupPtr sym = symmetric_group(n);
    std::vector<int> images(H.elements.size());
    for (std::size_t j = 0; j < H.elements.size(); ++j) {
        Perm p(n);
        for (int i = 0; i < n; ++i) p[i] = coset_of[g->mul(H.elements[j], cosets[i][0])];
        images[j] = static_cast<int>(perm_rank(p));
    }
    CosetAction ca;
    ca.index = n;
    ca.rho = Homomorphism{as.group, sym, std::move(images)};
    ca.cosets = std::move(cosets);
    if (!is_homomorphism(ca.rho)) throw Error("coset action is not a homomorphism");
    return ca;
}

FamilySequence norms_to_sequence(const GroupPtr& g, const std::vector<NormPair>& pairs,
                                 int max_arity) {
    std::vector<std::vector<Subgroup>> seeds(max_arity + 1);
    std::vector<ArityGroup> ar;
    for (int n = 0; n <= max_arity; ++n) {
        ar.push_back(arity_product(g, n));
        seeds[n] = extremal_family(ar[n], ExtremalKind::TrivialGraphs).members;
    }
    for (const NormPair& p : pairs) {
        const CosetAction ca = coset_action(g, p.H, p.K);
        if (ca.index > max_arity)
            throw InputError("norm for H=" + subgroup_str(p.H) + ", K=" + subgroup_str(p.K) +
                             " needs arity " + std::to_string(ca.index) + " but max_arity is " +
                             std::to_string(max_arity));
        seeds[ca.index].push_back(graph_of(ar[ca.index], GraphDatum{p.H, ca.rho, ca.index}));
    }
    std::vector<Family> fams;
    for (int n = 0; n <= max_arity; ++n) fams.push_back(close_family(ar[n].prod, seeds[n]));
    return realizable_closure(make_sequence(g, max_arity, std::move(fams)));
}

std::vector<AdmissibleSet> admissible_sets(const FamilySequence& seq, const Subgroup& H) {
    const AsGroup as = subgroup_as_group(H);
    std::vector<AdmissibleSet> out;
    for (int n = 0; n <= seq.max_arity; ++n) {
        for (Homomorphism& rho : homomorphisms(as.group, seq.arities[n].sym)) {
            if (seq.families[n].contains(graph_of(seq.arities[n], GraphDatum{H, rho, n})))
                out.push_back(AdmissibleSet{H, n, std::move(rho)});
        }
    }
    return out;
}

Subgroup induced_graph(const GroupPtr& g, const Subgroup& H, const Subgroup& K,
                       const Homomorphism& tau, int q, const std::vector<int>& reps) {
    const CosetAction ca = coset_action(g, H, K);
    const int k = ca.index;
    if (static_cast<int>(reps.size()) != k)
        throw InputError("induced_graph: need one representative per coset");
    for (int i = 0; i < k; ++i) {
        if (!std::binary_search(ca.cosets[i].begin(), ca.cosets[i].end(), reps[i]))
            throw InputError("induced_graph: representative not in its coset");
    }
    auto k_index = [&](int x) {
        const auto it = std::lower_bound(K.elements.begin(), K.elements.end(), x);
        if (it == K.elements.end() || *it != x)
            throw Error("induced_graph: conjugated element left K");
        return static_cast<int>(it - K.elements.begin());
    };

    const AsGroup asH = subgroup_as_group(H);
    const int n = k * q;
    const ArityGroup arn = arity_product(g, n);
    std::vector<Perm> perms(asH.group->order);
    for (int j = 0; j < asH.group->order; ++j) {
        const int h = H.elements[j];
        const Perm sigma = perm_unrank(k, ca.rho.images[j]);
        Perm p(n);
        for (int i = 0; i < k; ++i) {
            // phi_i(h) = reps[sigma(i)]^-1 * h * reps[i], an element of K
            const int kk = g->mul(g->inv(reps[sigma[i]]), g->mul(h, reps[i]));
            const Perm t = perm_unrank(q, tau.images[k_index(kk)]);
            for (int s = 0; s < q; ++s) p[i * q + s] = sigma[i] * q + t[s];
        }
        perms[j] = std::move(p);
    }
    for (int a = 0; a < asH.group->order; ++a)
        for (int b = 0; b < asH.group->order; ++b)
            if (perm_mul(perms[a], perms[b]) != perms[asH.group->mul(a, b)])
                throw Error("induced action is not a homomorphism");

    std::vector<int> elems(asH.group->order);
    for (int j = 0; j < asH.group->order; ++j)
        elems[j] = arn.pair_index(H.elements[j], static_cast<int>(perm_rank(perms[j])));
    std::sort(elems.begin(), elems.end());
    return Subgroup{arn.prod, std::move(elems)};
}

AuditReport audit_closure_properties(const FamilySequence& seq) {
    const GroupPtr& g = seq.group;
    const int N = seq.max_arity;
    const std::vector<Subgroup> gsubs = all_subgroups(g);
    std::vector<AsGroup> asg;
    for (const Subgroup& h : gsubs) asg.push_back(subgroup_as_group(h));

    // adm[n][hi]: admissible H-set structures at arity n for gsubs[hi]
    std::vector<std::vector<std::vector<AdmEntry>>> adm(N + 1);
    for (int n = 0; n <= N; ++n) {
        adm[n].resize(gsubs.size());
        for (std::size_t hi = 0; hi < gsubs.size(); ++hi) {
            for (Homomorphism& rho : homomorphisms(asg[hi].group, seq.arities[n].sym)) {
                Subgroup gamma = graph_of(seq.arities[n], GraphDatum{gsubs[hi], rho, n});
                if (!seq.families[n].contains(gamma)) continue;
                AdmEntry e;
                e.perms.reserve(rho.images.size());
                for (int img : rho.images) e.perms.push_back(perm_unrank(n, img));
                e.rho = std::move(rho);
                e.gamma = std::move(gamma);
                adm[n][hi].push_back(std::move(e));
            }
        }
    }

    AuditReport rep;
    auto record_failure = [&](bool& flag, const std::string& detail) {
        flag = false;
        if (rep.first_failure.empty()) rep.first_failure = detail;
    };

    // (1) coproduct: rho_a (+) rho_b via the block inclusions
    for (std::size_t hi = 0; hi < gsubs.size(); ++hi) {
        const int hsize = asg[hi].group->order;
        for (int a = 0; a <= N; ++a)
            for (const AdmEntry& ea : adm[a][hi])
                for (int b = 0; b <= N; ++b)
                    for (const AdmEntry& eb : adm[b][hi]) {
                        if (a + b > N) {
                            ++rep.skipped_truncated;
                            continue;
                        }
                        const ArityGroup& arn = seq.arities[a + b];
                        std::vector<int> elems(hsize);
                        for (int j = 0; j < hsize; ++j) {
                            Perm p(a + b);
                            for (int s = 0; s < a; ++s) p[s] = ea.perms[j][s];
                            for (int s = 0; s < b; ++s) p[a + s] = a + eb.perms[j][s];
                            elems[j] = arn.pair_index(gsubs[hi].elements[j],
                                                      static_cast<int>(perm_rank(p)));
                        }
                        std::sort(elems.begin(), elems.end());
                        if (!seq.families[a + b].contains(Subgroup{arn.prod, elems}))
                            record_failure(rep.coproduct_ok,
                                           "coproduct: H=" + subgroup_str(gsubs[hi]) +
                                               " arities " + std::to_string(a) + "+" +
                                               std::to_string(b));
                    }
    }

    // (2) product: parts (q,...,q), all inner maps equal, twisted by rho_k
    for (std::size_t hi = 0; hi < gsubs.size(); ++hi) {
        const int hsize = asg[hi].group->order;
        for (int k = 0; k <= N; ++k)
            for (const AdmEntry& ek : adm[k][hi])
                for (int q = 0; q <= N; ++q)
                    for (const AdmEntry& eq : adm[q][hi]) {
                        if (k * q > N) {
                            ++rep.skipped_truncated;
                            continue;
                        }
                        const ArityGroup& arn = seq.arities[k * q];
                        std::vector<int> elems(hsize);
                        for (int j = 0; j < hsize; ++j) {
                            Perm p(k * q);
                            for (int i = 0; i < k; ++i)
                                for (int s = 0; s < q; ++s)
                                    p[i * q + s] = ek.perms[j][i] * q + eq.perms[j][s];
                            elems[j] = arn.pair_index(gsubs[hi].elements[j],
                                                      static_cast<int>(perm_rank(p)));
                        }
                        std::sort(elems.begin(), elems.end());
                        if (!seq.families[k * q].contains(Subgroup{arn.prod, elems}))
                            record_failure(rep.product_ok,
                                           "product: H=" + subgroup_str(gsubs[hi]) +
                                               " arities " + std::to_string(k) + "*" +
                                               std::to_string(q));
                    }
    }

    // (3) self-induction along admissible H/K, minimal-element reps
    for (std::size_t hi = 0; hi < gsubs.size(); ++hi) {
        for (std::size_t ki = 0; ki < gsubs.size(); ++ki) {
            const Subgroup& H = gsubs[hi];
            const Subgroup& K = gsubs[ki];
            if (K == H ||
                !std::includes(H.elements.begin(), H.elements.end(), K.elements.begin(),
                               K.elements.end()))
                continue;
            const CosetAction ca = coset_action(g, H, K);
            const int k = ca.index;
            if (k > N) {
                ++rep.skipped_truncated;
                continue;
            }
            if (!seq.families[k].contains(graph_of(seq.arities[k], GraphDatum{H, ca.rho, k})))
                continue;  // H/K is not admissible; no instance
            std::vector<int> reps;
            for (const auto& c : ca.cosets) reps.push_back(c.front());
            for (int q = 0; q <= N; ++q) {
                for (const AdmEntry& eq : adm[q][ki]) {
                    if (k * q > N) {
                        ++rep.skipped_truncated;
                        continue;
                    }
                    const Subgroup gamma = induced_graph(g, H, K, eq.rho, q, reps);
                    if (!seq.families[k * q].contains(gamma))
                        record_failure(rep.self_induction_ok,
                                       "self-induction: H=" + subgroup_str(H) +
                                           " K=" + subgroup_str(K) + " q=" + std::to_string(q));
                }
            }
        }
    }
    return rep;
}

}  // namespace ninfty
