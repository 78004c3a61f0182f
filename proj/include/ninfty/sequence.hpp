#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ninfty/family.hpp"
#include "ninfty/graph.hpp"
#include "ninfty/group.hpp"

namespace ninfty {

/// (F_0, ..., F_N): one family of subgroups of G x Sym(n) per arity n.
struct FamilySequence {
    GroupPtr group;
    int max_arity = 0;
    std::vector<ArityGroup> arities;  // index n = 0..max_arity
    std::vector<Family> families;     // families[n].ambient = arities[n].prod
};

/// Checks counts and ambient orders; does not re-close the families.
FamilySequence make_sequence(GroupPtr g, int max_arity, std::vector<Family> families);

/// Throws InputError naming the arity and violation if some level fails
/// is_family.
void validate_sequence_families(const FamilySequence& seq);

/// Levelwise comparison in canonical member order; total order used for
/// deterministic output.
bool sequence_less(const FamilySequence& a, const FamilySequence& b);
bool sequence_equal(const FamilySequence& a, const FamilySequence& b);

/// One wreath-composition instance: outer block action rho_k on k blocks
/// of sizes parts, inner maps block_rhos (constant on each rho_k(H)-orbit
/// of blocks).
struct WreathDatum {
    Subgroup H;
    int k = 0;
    std::vector<int> parts;
    Homomorphism rho_k;                    // subgroup_as_group(H) -> Sym(k)
    std::vector<Homomorphism> block_rhos;  // length k; entry i targets Sym(parts[i])
};

/// Replays the block formula: position t of block i is sent to position
/// block_rhos[i](h)(t) of block rho_k(h)(i). Asserts the result is a
/// homomorphism and returns its graph at arity sum(parts).
Subgroup wreath_graph(const GroupPtr& g, const WreathDatum& d);

/// The set F_k wr (F_{n_1} x ... x F_{n_k}) of graph subgroups of
/// G x Sym(n), n = sum(parts). Requires k >= 1, parts[i] >= 0,
/// k <= max_arity, n <= max_arity.
std::vector<Subgroup> wreath_compose(const FamilySequence& seq, int k,
                                     const std::vector<int>& parts);

struct Witness {
    int n = 0;
    std::vector<int> parts;
    WreathDatum datum;
    Subgroup gamma;  // the composed graph subgroup absent from F_n
};

struct RealizabilityResult {
    bool realizable = true;
    std::optional<Witness> witness;
};

/// Scans every arity n <= N and every composition n = n_1 + ... + n_k
/// (k >= 1, n_i >= 0, k <= N) in fixed order: increasing n, then
/// increasing k, then lexicographic parts. Returns the first witness.
RealizabilityResult is_realizable(const FamilySequence& seq);

/// True iff replaying the witness reproduces gamma and gamma is absent
/// from the sequence's family at arity n.
bool verify_witness(const FamilySequence& seq, const Witness& w);

/// Smallest realizable sequence levelwise containing seq (fixpoint of
/// adding wreath outputs and re-closing each family).
FamilySequence realizable_closure(const FamilySequence& seq);

struct NInfinityCheck {
    bool ok = true;
    std::string what;  // names the arity and violation when not ok
};

/// Full mode (hfam null): every member of every level is a graph
/// subgroup and every level contains H x 1 for every H <= G. Family
/// mode: only H in hfam are required.
NInfinityCheck validate_N_infinity(const FamilySequence& seq,
                                   const Family* hfam = nullptr);

/// All realizable sequences passing validate_N_infinity in the given
/// mode, truncated at max_arity, in canonical order. Levels are decided
/// in increasing arity; each containment is checked as soon as its last
/// referenced level is fixed.
std::vector<FamilySequence> enumerate_realizable(const GroupPtr& g, int max_arity,
                                                 const Family* hfam = nullptr);

/// All candidate level families at one arity: subgroup- and
/// conjugation-closed sets of graph subgroups containing the forced base
/// {H x 1 : H in hset}. Canonical order.
std::vector<Family> candidate_level_families(const ArityGroup& ag,
                                             const std::vector<Subgroup>& hset);

/// Hasse edges (i, j) meaning sequence i is covered by sequence j under
/// the levelwise subfamily order.
std::vector<std::pair<int, int>> sequence_poset(const std::vector<FamilySequence>& seqs);

}  // namespace ninfty
