#include "ninfty/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ninfty/cache.hpp"
#include "ninfty/errors.hpp"

namespace ninfty {

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

json group_to_json(const GroupPtr& g) {
    json t = json::array();
    for (int a = 0; a < g->order; ++a) {
        json row = json::array();
        for (int b = 0; b < g->order; ++b) row.push_back(g->mul(a, b));
        t.push_back(std::move(row));
    }
    return json{{"label", g->label}, {"order", g->order}, {"table", std::move(t)}};
}

GroupPtr group_from_json(const json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("table"))
        throw ParseError("group file needs \"order\" and \"table\"");
    const int order = j.at("order").get<int>();
    const std::string label = j.value("label", std::string("G") + std::to_string(order));
    const json& t = j.at("table");
    if (!t.is_array() || t.size() != static_cast<std::size_t>(order))
        throw ParseError("group table must have one row per element");
    std::vector<int> table;
    table.reserve(static_cast<std::size_t>(order) * order);
    for (const json& row : t) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(order))
            throw ParseError("group table row has wrong length");
        for (const json& v : row) table.push_back(v.get<int>());
    }
    return make_group(label, order, std::move(table));
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

GroupPtr load_group_arg(const std::string& spec_or_path) {
    const bool looks_like_path = spec_or_path.find('/') != std::string::npos ||
                                 spec_or_path.find(".json") != std::string::npos;
    if (!looks_like_path) {
        try {
            return make_builtin(spec_or_path);
        } catch (const ParseError&) {
            if (!std::filesystem::exists(spec_or_path)) throw;
        }
    }
    return group_from_json(read_json_file(spec_or_path));
}

json subgroup_to_json(const ArityGroup& ag, const Subgroup& s) {
    json elems = json::array();
    for (int p : s.elements) {
        json perm = json::array();
        for (int v : perm_unrank(ag.arity, ag.sym_part(p))) perm.push_back(v);
        elems.push_back(json::array({ag.g_part(p), std::move(perm)}));
    }
    return json{{"elements", std::move(elems)}};
}

namespace {

int parse_pair(const ArityGroup& ag, const json& pair) {
    if (!pair.is_array() || pair.size() != 2 || !pair[1].is_array())
        throw ParseError("subgroup element must be [g, [perm...]]");
    const int g = pair[0].get<int>();
    if (g < 0 || g >= ag.g->order) throw ParseError("group element index out of range");
    Perm p = pair[1].get<Perm>();
    if (static_cast<int>(p.size()) != ag.arity || !perm_is_valid(p))
        throw ParseError("permutation must be a bijection of length " +
                         std::to_string(ag.arity));
    return ag.pair_index(g, static_cast<int>(perm_rank(p)));
}

}  // namespace

Subgroup subgroup_from_json(const ArityGroup& ag, const json& j) {
    if (j.is_object() && j.contains("graph")) {
        const json& gj = j.at("graph");
        std::vector<int> hs = gj.at("H").get<std::vector<int>>();
        std::sort(hs.begin(), hs.end());
        hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
        Subgroup H{ag.g, hs};
        if (subgroup_generated(ag.g, hs) != H)
            throw InputError("\"H\" is not a subgroup of G");
        const AsGroup as = subgroup_as_group(H);
        std::vector<int> images(hs.size());
        const json& rho = gj.at("rho");
        for (std::size_t i = 0; i < hs.size(); ++i) {
            const std::string key = std::to_string(hs[i]);
            if (!rho.contains(key))
                throw ParseError("graph descriptor: rho is missing element " + key);
            Perm p = rho.at(key).get<Perm>();
            if (static_cast<int>(p.size()) != ag.arity || !perm_is_valid(p))
                throw ParseError("graph descriptor: bad permutation for element " + key);
            images[i] = static_cast<int>(perm_rank(p));
        }
        Homomorphism h{as.group, ag.sym, std::move(images)};
        if (!is_homomorphism(h)) throw InputError("graph descriptor: rho is not a homomorphism");
        return graph_of(ag, GraphDatum{std::move(H), std::move(h), ag.arity});
    }
    if (j.is_object() && j.contains("elements")) {
        std::vector<int> elems;
        for (const json& pair : j.at("elements")) elems.push_back(parse_pair(ag, pair));
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        Subgroup s{ag.prod, elems};
        if (subgroup_generated(ag.prod, elems) != s)
            throw InputError("element set is not a subgroup of G x Sym(n)");
        return s;
    }
    throw ParseError("subgroup descriptor needs \"elements\" or \"graph\"");
}

json sequence_to_json(const FamilySequence& seq, const std::string& group_arg,
                      const std::string& mode, const std::optional<Family>& h_family) {
    json fams = json::array();
    for (int n = 0; n <= seq.max_arity; ++n) {
        json level = json::array();
        for (const Subgroup& m : seq.families[n].members)
            level.push_back(subgroup_to_json(seq.arities[n], m));
        fams.push_back(std::move(level));
    }
    json out{{"group", group_arg}, {"max_arity", seq.max_arity}, {"families", std::move(fams)}};
    if (mode == "h_family") {
        json hs = json::array();
        if (h_family)
            for (const Subgroup& s : h_family->members) hs.push_back(s.elements);
        out["mode"] = json{{"h_family", std::move(hs)}};
    } else {
        out["mode"] = mode;
    }
    return out;
}

SequenceFile sequence_from_json(const json& j, bool strict) {
    if (!j.is_object() || !j.contains("group") || !j.contains("max_arity") ||
        !j.contains("families"))
        throw ParseError("sequence file needs \"group\", \"max_arity\", \"families\"");
    SequenceFile out;
    out.group_arg = j.at("group").get<std::string>();
    GroupPtr g = load_group_arg(out.group_arg);
    const int N = j.at("max_arity").get<int>();
    if (N < 0) throw ParseError("max_arity must be nonnegative");
    const json& fams_json = j.at("families");
    if (!fams_json.is_array() || fams_json.size() != static_cast<std::size_t>(N) + 1)
        throw ParseError("\"families\" must list one family per arity 0.." + std::to_string(N));

    std::vector<Family> fams;
    for (int n = 0; n <= N; ++n) {
        const ArityGroup ag = arity_product(g, n);
        std::vector<Subgroup> members;
        for (const json& desc : fams_json[n]) members.push_back(subgroup_from_json(ag, desc));
        Family given = make_family(ag.prod, members);
        Family closed = close_family(ag.prod, given.members);
        if (strict && closed != given)
            throw InputError("arity " + std::to_string(n) +
                             ": family is not closed under subgroups and conjugation "
                             "(strict mode)");
        fams.push_back(std::move(closed));
    }
    out.seq = make_sequence(g, N, std::move(fams));

    const json mode = j.value("mode", json("n_infinity"));
    if (mode.is_string()) {
        out.mode = mode.get<std::string>();
        if (out.mode != "n_infinity" && out.mode != "general")
            throw ParseError("mode must be \"n_infinity\", \"general\" or {\"h_family\": ...}");
    } else if (mode.is_object() && mode.contains("h_family")) {
        out.mode = "h_family";
        std::vector<Subgroup> hs;
        for (const json& desc : mode.at("h_family")) {
            std::vector<int> elems = desc.get<std::vector<int>>();
            std::sort(elems.begin(), elems.end());
            elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
            Subgroup s{g, elems};
            if (subgroup_generated(g, elems) != s)
                throw InputError("h_family entry is not a subgroup of G");
            hs.push_back(std::move(s));
        }
        out.h_family = close_family(g, hs);
    } else {
        throw ParseError("unrecognized mode");
    }
    return out;
}

json witness_to_json(const FamilySequence& seq, const Witness& w) {
    const ArityGroup& arn = seq.arities[w.n];
    auto hom_to_perms = [&](const Homomorphism& h, int degree) {
        json arr = json::array();
        for (int img : h.images) {
            json perm = json::array();
            for (int v : perm_unrank(degree, img)) perm.push_back(v);
            arr.push_back(std::move(perm));
        }
        return arr;
    };
    json blocks = json::array();
    for (int i = 0; i < w.datum.k; ++i)
        blocks.push_back(hom_to_perms(w.datum.block_rhos[i], w.datum.parts[i]));
    json gamma = json::array();
    for (int p : w.gamma.elements) {
        json perm = json::array();
        for (int v : perm_unrank(arn.arity, arn.sym_part(p))) perm.push_back(v);
        gamma.push_back(json::array({arn.g_part(p), std::move(perm)}));
    }
    return json{{"n", w.n},
                {"parts", w.parts},
                {"H", w.datum.H.elements},
                {"rho_k", hom_to_perms(w.datum.rho_k, w.datum.k)},
                {"block_rhos", std::move(blocks)},
                {"gamma", std::move(gamma)}};
}

std::string sequence_content_id(const FamilySequence& seq) {
    const json j = sequence_to_json(seq, seq.group->label, "n_infinity", std::nullopt);
    return "s" + hex64(fnv1a64(canonical_dump(j)));
}

std::string poset_dot(const std::vector<FamilySequence>& seqs,
                      const std::vector<std::pair<int, int>>& edges) {
    std::ostringstream out;
    out << "digraph nintfy_poset {\n";
    for (const FamilySequence& s : seqs) {
        out << "  \"" << sequence_content_id(s) << "\" [label=\"" << s.group->label
            << " N=" << s.max_arity << " sizes=";
        for (int n = 0; n <= s.max_arity; ++n) out << (n ? "," : "") << s.families[n].size();
        out << "\"];\n";
    }
    for (const auto& [a, b] : edges)
        out << "  \"" << sequence_content_id(seqs[a]) << "\" -> \""
            << sequence_content_id(seqs[b]) << "\";\n";
    out << "}\n";
    return out.str();
}

}  // namespace ninfty
