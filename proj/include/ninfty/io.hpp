#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ninfty/norms.hpp"
#include "ninfty/sequence.hpp"

namespace ninfty {

using json = nlohmann::json;

/// Canonical dump: alphabetically sorted keys (nlohmann default object
/// ordering), two-space indent, trailing newline; byte-identical across
/// runs for equal values.
std::string canonical_dump(const json& j);

json group_to_json(const GroupPtr& g);
GroupPtr group_from_json(const json& j);

/// Builtin spec grammar first; anything that does not parse as a spec is
/// treated as a path to a group JSON file.
GroupPtr load_group_arg(const std::string& spec_or_path);

/// Subgroup of G x Sym(n) as {"elements": [[g, [perm...]], ...]}.
json subgroup_to_json(const ArityGroup& ag, const Subgroup& s);

/// Accepts the elements form or the graph shorthand
/// {"graph": {"H": [g,...], "rho": {"<g>": [perm...], ...}}}.
Subgroup subgroup_from_json(const ArityGroup& ag, const json& j);

struct SequenceFile {
    FamilySequence seq;
    std::string group_arg;           // echoed "group" field
    std::string mode;                // "n_infinity" | "general" | "h_family"
    std::optional<Family> h_family;  // set when mode == "h_family"
};

json sequence_to_json(const FamilySequence& seq, const std::string& group_arg,
                      const std::string& mode, const std::optional<Family>& h_family);

/// With strict=true a level that is not already closed is an error;
/// otherwise each level is passed through close_family.
SequenceFile sequence_from_json(const json& j, bool strict);

json witness_to_json(const FamilySequence& seq, const Witness& w);

/// Stable content id of a sequence (hash of its canonical JSON with a
/// fixed group label).
std::string sequence_content_id(const FamilySequence& seq);

/// DOT digraph of Hasse edges; node ids are content hashes, labels list
/// per-arity family sizes.
std::string poset_dot(const std::vector<FamilySequence>& seqs,
                      const std::vector<std::pair<int, int>>& edges);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ninfty
