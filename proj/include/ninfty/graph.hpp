#pragma once

#include <utility>
#include <vector>

#include "ninfty/family.hpp"
#include "ninfty/group.hpp"

namespace ninfty {

/// The ambient stage for arity n: the symmetric group on n letters and
/// the product G x Sym(n), with pair (g, sigma) at index
/// g * |Sym(n)| + rank(sigma). Sym(0) and Sym(1) are the trivial group.
struct ArityGroup {
    GroupPtr g;
    GroupPtr sym;
    GroupPtr prod;
    int arity = 0;

    int sym_order() const { return sym->order; }
    int pair_index(int gidx, int sidx) const { return gidx * sym->order + sidx; }
    int g_part(int pidx) const { return pidx / sym->order; }
    int sym_part(int pidx) const { return pidx % sym->order; }
};

/// Memoized per (group, arity) within the process.
ArityGroup arity_product(const GroupPtr& g, int n);

/// The data (H, rho) of a graph subgroup Gamma(rho) = {(h, rho(h))}.
/// rho's source is subgroup_as_group(H) and its target Sym(arity).
struct GraphDatum {
    Subgroup H;
    Homomorphism rho;
    int arity = 0;
};

Subgroup graph_of(const ArityGroup& ag, const GraphDatum& d);

/// True iff S meets 1 x Sym(n) only in the identity.
bool is_graph_subgroup(const ArityGroup& ag, const Subgroup& s);

/// Inverse of graph_of. Throws InputError when s is not a graph subgroup.
GraphDatum decompose_graph(const ArityGroup& ag, const Subgroup& s);

/// One entry per distinct graph subgroup, ordered by H (canonical
/// subgroup order) then rho (lexicographic images).
std::vector<std::pair<GraphDatum, Subgroup>> all_graph_subgroups(const ArityGroup& ag);

enum class ExtremalKind {
    TrivialGraphs,  // {H x 1 : H in hset}
    AllGraphs,      // every graph subgroup
    Rezk,           // {1 x K : K <= Sym(n)}
    Everything,     // every subgroup of G x Sym(n)
    HGraphs,        // graph subgroups with H in hset
};

/// hset restricts TrivialGraphs / HGraphs; it must itself be closed
/// under subgroups and conjugation in G. Null means all subgroups of G.
Family extremal_family(const ArityGroup& ag, ExtremalKind kind,
                       const std::vector<Subgroup>* hset = nullptr);

}  // namespace ninfty
