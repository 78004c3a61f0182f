#pragma once

#include <string>
#include <vector>

#include "ninfty/sequence.hpp"

namespace ninfty {

/// A requested norm N_K^H: a pair of nested subgroups K <= H of G.
struct NormPair {
    Subgroup H;
    Subgroup K;
};

/// The H-set H/K by left multiplication. Cosets are indexed in canonical
/// order (sorted by minimal element); rho's source is
/// subgroup_as_group(H) and its target Sym([H:K]).
struct CosetAction {
    int index = 1;  // [H:K]
    Homomorphism rho;
    std::vector<std::vector<int>> cosets;  // each sorted; list sorted by front()
};

CosetAction coset_action(const GroupPtr& g, const Subgroup& H, const Subgroup& K);

/// Smallest full-N-infinity realizable sequence whose families make
/// every requested H/K admissible: seeds {H x 1 : H <= G} at every arity
/// plus the coset-action graph at arity [H:K] per pair, then takes the
/// realizable closure.
FamilySequence norms_to_sequence(const GroupPtr& g, const std::vector<NormPair>& pairs,
                                 int max_arity);

/// An H-set structure whose graph lies in the sequence's family at the
/// matching arity.
struct AdmissibleSet {
    Subgroup H;
    int arity = 0;
    Homomorphism rho;
};

std::vector<AdmissibleSet> admissible_sets(const FamilySequence& seq, const Subgroup& H);

/// Graph of the H-set H x_K T induced from the K-set structure tau
/// (an H-action on [H:K] blocks of size q) built from a complete set of
/// coset representatives, one per coset in canonical coset order.
Subgroup induced_graph(const GroupPtr& g, const Subgroup& H, const Subgroup& K,
                       const Homomorphism& tau, int q, const std::vector<int>& reps);

struct AuditReport {
    bool coproduct_ok = true;
    bool product_ok = true;
    bool self_induction_ok = true;
    int skipped_truncated = 0;  // instances whose composite arity exceeds N
    std::string first_failure;  // names the violating datum

    bool all_ok() const { return coproduct_ok && product_ok && self_induction_ok; }
};

/// Audits the three indexing-system closure properties (coproduct,
/// product, self-induction) of a validated sequence. Instances that
/// would land beyond max_arity are skipped and counted, not failed.
AuditReport audit_closure_properties(const FamilySequence& seq);

}  // namespace ninfty
