#include "ninfty/graph.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "ninfty/errors.hpp"

namespace ninfty {

ArityGroup arity_product(const GroupPtr& g, int n) {
    if (n < 0) throw InputError("arity must be nonnegative");
    static std::mutex mu;
    static std::map<std::pair<const FiniteGroup*, int>, ArityGroup> memo;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_pair(g.get(), n);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    ArityGroup ag;
    ag.g = g;
    ag.sym = symmetric_group(n);
    ag.prod = direct_product(g, ag.sym).group;
    ag.arity = n;
    memo.emplace(key, ag);
    return ag;
}

Subgroup graph_of(const ArityGroup& ag, const GraphDatum& d) {
    std::vector<int> elems;
    elems.reserve(d.H.elements.size());
    for (std::size_t i = 0; i < d.H.elements.size(); ++i)
        elems.push_back(ag.pair_index(d.H.elements[i], d.rho.images[i]));
    std::sort(elems.begin(), elems.end());
    return Subgroup{ag.prod, std::move(elems)};
}

bool is_graph_subgroup(const ArityGroup& ag, const Subgroup& s) {
    const int gid = ag.g->identity;
    const int pid = ag.prod->identity;
    for (int p : s.elements)
        if (ag.g_part(p) == gid && p != pid) return false;
    return true;
}

GraphDatum decompose_graph(const ArityGroup& ag, const Subgroup& s) {
    if (!is_graph_subgroup(ag, s))
        throw InputError("subgroup meets 1 x Sym(n) nontrivially; not a graph subgroup");
    std::vector<int> hs;
    hs.reserve(s.elements.size());
    for (int p : s.elements) hs.push_back(ag.g_part(p));
    std::sort(hs.begin(), hs.end());
    GraphDatum d;
    d.arity = ag.arity;
    d.H = Subgroup{ag.g, std::move(hs)};
    const AsGroup as = subgroup_as_group(d.H);
    std::vector<int> images(d.H.elements.size(), -1);
    for (int p : s.elements) {
        const int g = ag.g_part(p);
        const auto pos = std::lower_bound(d.H.elements.begin(), d.H.elements.end(), g) -
                         d.H.elements.begin();
        images[pos] = ag.sym_part(p);
    }
    d.rho = Homomorphism{as.group, ag.sym, std::move(images)};
    return d;
}

std::vector<std::pair<GraphDatum, Subgroup>> all_graph_subgroups(const ArityGroup& ag) {
    std::vector<std::pair<GraphDatum, Subgroup>> out;
    for (const Subgroup& H : all_subgroups(ag.g)) {
        const AsGroup as = subgroup_as_group(H);
        for (Homomorphism& rho : homomorphisms(as.group, ag.sym)) {
            GraphDatum d{H, std::move(rho), ag.arity};
            Subgroup gamma = graph_of(ag, d);
            out.emplace_back(std::move(d), std::move(gamma));
        }
    }
    return out;
}

Family extremal_family(const ArityGroup& ag, ExtremalKind kind,
                       const std::vector<Subgroup>* hset) {
    std::vector<Subgroup> hsubs;
    if (kind == ExtremalKind::TrivialGraphs || kind == ExtremalKind::HGraphs)
        hsubs = hset ? *hset : all_subgroups(ag.g);

    std::vector<Subgroup> members;
    switch (kind) {
        case ExtremalKind::TrivialGraphs: {
            const int sid = ag.sym->identity;
            for (const Subgroup& H : hsubs) {
                std::vector<int> elems;
                for (int h : H.elements) elems.push_back(ag.pair_index(h, sid));
                std::sort(elems.begin(), elems.end());
                members.push_back(Subgroup{ag.prod, std::move(elems)});
            }
            break;
        }
        case ExtremalKind::AllGraphs: {
            for (auto& [d, gamma] : all_graph_subgroups(ag)) members.push_back(gamma);
            break;
        }
        case ExtremalKind::Rezk: {
            const int gid = ag.g->identity;
            for (const Subgroup& K : all_subgroups(ag.sym)) {
                std::vector<int> elems;
                for (int k : K.elements) elems.push_back(ag.pair_index(gid, k));
                std::sort(elems.begin(), elems.end());
                members.push_back(Subgroup{ag.prod, std::move(elems)});
            }
            break;
        }
        case ExtremalKind::Everything:
            members = all_subgroups(ag.prod);
            break;
        case ExtremalKind::HGraphs: {
            std::vector<std::vector<int>> allowed;
            for (const Subgroup& h : hsubs) allowed.push_back(h.elements);
            std::sort(allowed.begin(), allowed.end());
            for (auto& [d, gamma] : all_graph_subgroups(ag))
                if (std::binary_search(allowed.begin(), allowed.end(), d.H.elements))
                    members.push_back(gamma);
            break;
        }
    }
    return make_family(ag.prod, std::move(members));
}

}  // namespace ninfty
