#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ninfty/cache.hpp"
#include "ninfty/errors.hpp"
#include "ninfty/io.hpp"
#include "ninfty/norms.hpp"

namespace {

using namespace ninfty;

void emit(const json& j) { std::fputs(canonical_dump(j).c_str(), stdout); }

json subgroup_elements_json(const Subgroup& s) {
    json arr = json::array();
    for (int x : s.elements) arr.push_back(x);
    return arr;
}

json rho_json(const ArityGroup& ag, const GraphDatum& d) {
    json rho = json::object();
    for (std::size_t i = 0; i < d.H.elements.size(); ++i) {
        json perm = json::array();
        for (int v : perm_unrank(ag.arity, d.rho.images[i])) perm.push_back(v);
        rho[std::to_string(d.H.elements[i])] = std::move(perm);
    }
    return rho;
}

int cmd_group(const std::string& arg, bool subgroups, bool conjugacy) {
    const GroupPtr g = load_group_arg(arg);
    json out{{"label", g->label}, {"order", g->order}};
    if (subgroups || conjugacy) {
        const std::vector<Subgroup> subs = all_subgroups(g);
        if (subgroups) {
            json list = json::array();
            for (const Subgroup& s : subs) list.push_back(subgroup_elements_json(s));
            out["subgroups"] = std::move(list);
        }
        if (conjugacy) out["conjugacy_classes"] = subgroup_conjugacy_classes(g, subs);
    }
    emit(out);
    return 0;
}

int cmd_graphs(const std::string& arg, int arity) {
    if (arity < 0) throw InputError("arity must be nonnegative");
    const GroupPtr g = load_group_arg(arg);
    const ArityGroup ag = arity_product(g, arity);
    json list = json::array();
    for (const auto& [d, s] : all_graph_subgroups(ag)) {
        list.push_back(json{{"H", subgroup_elements_json(d.H)},
                            {"rho", rho_json(ag, d)},
                            {"subgroup", subgroup_to_json(ag, s)}});
    }
    emit(json{{"arity", arity}, {"count", list.size()}, {"graphs", std::move(list)}});
    return 0;
}

void validate_mode(const SequenceFile& sf) {
    if (sf.mode == "general") {
        validate_sequence_families(sf.seq);
        return;
    }
    const Family* hfam = sf.mode == "h_family" ? &*sf.h_family : nullptr;
    const NInfinityCheck chk = validate_N_infinity(sf.seq, hfam);
    if (!chk.ok) throw InputError(chk.what);
}

int cmd_check(const std::string& path, bool strict) {
    const SequenceFile sf = sequence_from_json(read_json_file(path), strict);
    validate_mode(sf);
    const RealizabilityResult r = is_realizable(sf.seq);
    if (r.realizable) {
        emit(json{{"realizable", true}});
        return 0;
    }
    emit(json{{"realizable", false}, {"witness", witness_to_json(sf.seq, *r.witness)}});
    return 1;
}

int cmd_close(const std::string& path, const std::string& out_path) {
    const SequenceFile sf = sequence_from_json(read_json_file(path), false);
    validate_mode(sf);
    const FamilySequence closed = realizable_closure(sf.seq);
    const std::string text =
        canonical_dump(sequence_to_json(closed, sf.group_arg, sf.mode, sf.h_family));
    write_text_file(out_path, text);
    std::fputs(text.c_str(), stdout);
    return 0;
}

std::vector<int> parse_index_list(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        const std::string tok = s.substr(pos, next - pos);
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("bad element index '" + tok + "' in norm spec");
        }
        pos = next + 1;
    }
    return out;
}

NormPair parse_norm(const GroupPtr& g, const std::string& s) {
    const std::size_t colon = s.find(':');
    if (colon == std::string::npos)
        throw ParseError("norm spec must look like H:K (comma-separated generators)");
    for (int v : parse_index_list(s.substr(0, colon)))
        if (v < 0 || v >= g->order) throw InputError("norm generator out of range");
    NormPair p{subgroup_generated(g, parse_index_list(s.substr(0, colon))),
               subgroup_generated(g, parse_index_list(s.substr(colon + 1)))};
    for (int v : p.K.elements)
        if (!p.H.contains(v)) throw InputError("norm spec: K is not contained in H");
    return p;
}

int cmd_from_norms(const std::string& arg, int max_arity, const std::vector<std::string>& norms,
                   const std::string& out_path) {
    if (max_arity < 0) throw InputError("max-arity must be nonnegative");
    const GroupPtr g = load_group_arg(arg);
    std::vector<NormPair> pairs;
    for (const std::string& s : norms) pairs.push_back(parse_norm(g, s));
    const FamilySequence seq = norms_to_sequence(g, pairs, max_arity);
    const std::string text =
        canonical_dump(sequence_to_json(seq, arg, "n_infinity", std::nullopt));
    write_text_file(out_path, text);
    std::fputs(text.c_str(), stdout);
    return 0;
}

int cmd_enumerate(const std::string& arg, int max_arity, const std::string& mode,
                  const std::string& poset_path) {
    if (max_arity < 0) throw InputError("max-arity must be nonnegative");
    const GroupPtr g = load_group_arg(arg);

    std::optional<Family> hfam;
    std::string mode_tag = "full";
    if (mode != "full") {
        if (mode.rfind("h:", 0) != 0)
            throw ParseError("mode must be 'full' or 'h:<file>'");
        const json hj = read_json_file(mode.substr(2));
        if (!hj.is_array()) throw ParseError("h-family file must be a JSON array");
        std::vector<Subgroup> hs;
        for (const json& gens : hj) hs.push_back(subgroup_generated(g, gens.get<std::vector<int>>()));
        hfam = close_family(g, hs);
        json canon = json::array();
        for (const Subgroup& s : hfam->members) canon.push_back(s.elements);
        mode_tag = "h=" + hex64(fnv1a64(canon.dump()));
    }

    std::string table;
    for (int v : g->table) table += std::to_string(v) + ",";
    const std::string key = "enumerate/order=" + std::to_string(g->order) +
                            "/table=" + hex64(fnv1a64(table)) +
                            "/N=" + std::to_string(max_arity) + "/mode=" + mode_tag;

    std::string out_text, dot_text;
    if (const auto hit = Cache::instance().get(key)) {
        const json cached = json::parse(*hit);
        out_text = cached.at("stdout").get<std::string>();
        dot_text = cached.at("dot").get<std::string>();
    } else {
        const std::vector<FamilySequence> seqs =
            enumerate_realizable(g, max_arity, hfam ? &*hfam : nullptr);
        json list = json::array();
        for (const FamilySequence& s : seqs)
            list.push_back(sequence_to_json(s, arg, hfam ? "h_family" : "n_infinity", hfam));
        out_text = canonical_dump(
            json{{"count", seqs.size()}, {"sequences", std::move(list)}});
        dot_text = poset_dot(seqs, sequence_poset(seqs));
        if (Cache::instance().enabled())
            Cache::instance().put(key, json{{"stdout", out_text}, {"dot", dot_text}}.dump());
    }
    if (!poset_path.empty()) write_text_file(poset_path, dot_text);
    std::fputs(out_text.c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-group realizability engine for sequences of families"};
    app.require_subcommand(1);

    std::string cache_dir_flag;
    int threads = 1;
    app.add_option("--cache-dir", cache_dir_flag,
                   "cache directory (default: NINFTY_CACHE or the platform cache home)");
    app.add_option("--threads", threads, "internal parallelism bound")->check(CLI::PositiveNumber);

    std::string group_arg, seq_path, out_path, mode = "full", poset_path;
    int arity = 0, max_arity = 0;
    bool subgroups = false, conjugacy = false, strict = false;
    std::vector<std::string> norms;

    CLI::App* grp = app.add_subcommand("group", "inspect a finite group");
    grp->add_option("group", group_arg, "builtin spec (C2, S3, C2xC2, ...) or JSON file")
        ->required();
    grp->add_flag("--subgroups", subgroups, "list all subgroups");
    grp->add_flag("--conjugacy", conjugacy, "list subgroup conjugacy classes");

    CLI::App* gra = app.add_subcommand("graphs", "list graph subgroups of G x Sym(n)");
    gra->add_option("group", group_arg)->required();
    gra->add_option("--arity", arity)->required();

    CLI::App* seq = app.add_subcommand("seq", "operations on family sequences");
    seq->require_subcommand(1);

    CLI::App* chk = seq->add_subcommand("check", "decide realizability");
    chk->add_option("file", seq_path)->required();
    chk->add_flag("--strict", strict, "reject levels that are not already closed");

    CLI::App* cls = seq->add_subcommand("close", "realizable closure");
    cls->add_option("file", seq_path)->required();
    cls->add_option("-o,--output", out_path)->required();

    CLI::App* frn = seq->add_subcommand("from-norms", "minimal sequence realizing given norms");
    frn->add_option("group", group_arg)->required();
    frn->add_option("--max-arity", max_arity)->required();
    frn->add_option("--norm", norms, "norm H:K as comma-separated generator lists");
    frn->add_option("-o,--output", out_path)->required();

    CLI::App* enu = seq->add_subcommand("enumerate", "all realizable sequences");
    enu->add_option("group", group_arg)->required();
    enu->add_option("--max-arity", max_arity)->required();
    enu->add_option("--mode", mode, "full | h:<file>");
    enu->add_option("--poset", poset_path, "write the Hasse diagram as DOT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ninfty::Cache::instance().set_dir(ninfty::default_cache_dir(cache_dir_flag));
        if (grp->parsed()) return cmd_group(group_arg, subgroups, conjugacy);
        if (gra->parsed()) return cmd_graphs(group_arg, arity);
        if (chk->parsed()) return cmd_check(seq_path, strict);
        if (cls->parsed()) return cmd_close(seq_path, out_path);
        if (frn->parsed()) return cmd_from_norms(group_arg, max_arity, norms, out_path);
        if (enu->parsed()) return cmd_enumerate(group_arg, max_arity, mode, poset_path);
    } catch (const ninfty::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ninfty::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
