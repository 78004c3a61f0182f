#pragma once

// Independent brute-force reference implementations used only by tests.
// Deliberately naive: subset scans instead of generator closure, full
// function enumeration instead of generator-image backtracking, and a
// realizability decision that re-derives every composition from scratch
// with no ordering shortcuts or pruning.

#include <vector>

#include "ninfty/sequence.hpp"

namespace ninfty::oracle {

/// Every subgroup by scanning all element subsets. Requires order <= 16.
std::vector<Subgroup> brute_subgroups(const GroupPtr& g);

/// Number of homomorphisms h -> t by scanning all |t|^|h| functions.
/// Requires |t|^|h| <= 10^6.
long long brute_hom_count(const GroupPtr& h, const GroupPtr& t);

/// Realizability decided from the definition: every composition, every
/// admissible outer and inner datum, membership checked directly.
bool naive_is_realizable(const FamilySequence& seq);

/// All realizable full-N-infinity sequences (or H-restricted when hset
/// is nonempty) by filtering the full cartesian product of candidate
/// levels; no incremental pruning.
std::vector<FamilySequence> naive_enumerate(const GroupPtr& g, int max_arity,
                                            const std::vector<Subgroup>& hset = {});

}  // namespace ninfty::oracle
