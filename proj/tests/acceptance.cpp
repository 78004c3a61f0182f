// Acceptance gate: one PASS/FAIL line per criterion, exit code = number
// of failed criteria.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "ninfty/io.hpp"
#include "ninfty/norms.hpp"
#include "oracle.hpp"

using namespace ninfty;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail = "") {
    std::cout << "criterion " << idx << " (" << name << "): " << (ok ? "PASS" : "FAIL");
    if (!ok && !detail.empty()) std::cout << " -- " << detail;
    std::cout << "\n";
    if (!ok) ++failures;
}

fs::path exe_dir() {
    std::error_code ec;
    const fs::path self = fs::read_symlink("/proc/self/exe", ec);
    return ec ? fs::current_path() : self.parent_path();
}

std::string bin_path() {
    const char* p = std::getenv("NINFTY_BIN");
    return p ? p : (exe_dir() / "ninfty").string();
}

std::string data_path(const std::string& name) {
    const char* p = std::getenv("NINFTY_DATA");
    if (p) return fs::path(p) / name;
    // default: the source tree's tests/data next to the build directory
    return exe_dir() / ".." / "tests" / "data" / name;
}

fs::path work_dir() {
    static const fs::path d = [] {
        auto p = fs::temp_directory_path() / "ninfty_acceptance";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return d;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = bin_path() + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return RunResult{-1, ""};
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
    const int status = pclose(p);
    return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, std::move(out)};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

FamilySequence extremal_sequence(const GroupPtr& g, int N, ExtremalKind kind) {
    std::vector<Family> fams;
    for (int n = 0; n <= N; ++n) fams.push_back(extremal_family(arity_product(g, n), kind));
    return make_sequence(g, N, std::move(fams));
}

FamilySequence truncated_complete(const GroupPtr& g, int N) {
    std::vector<Family> fams;
    for (int n = 0; n < N; ++n)
        fams.push_back(extremal_family(arity_product(g, n), ExtremalKind::AllGraphs));
    fams.push_back(extremal_family(arity_product(g, N), ExtremalKind::TrivialGraphs));
    return make_sequence(g, N, std::move(fams));
}

Witness witness_from_json(const GroupPtr& g, const json& w) {
    Witness out;
    out.n = w.at("n").get<int>();
    out.parts = w.at("parts").get<std::vector<int>>();
    out.datum.H = Subgroup{g, w.at("H").get<std::vector<int>>()};
    out.datum.k = static_cast<int>(out.parts.size());
    out.datum.parts = out.parts;
    const AsGroup as = subgroup_as_group(out.datum.H);
    auto hom_from = [&](const json& arr, int degree) {
        std::vector<int> images;
        for (const json& perm : arr)
            images.push_back(static_cast<int>(perm_rank(perm.get<Perm>())));
        return Homomorphism{as.group, symmetric_group(degree), std::move(images)};
    };
    out.datum.rho_k = hom_from(w.at("rho_k"), out.datum.k);
    for (int i = 0; i < out.datum.k; ++i)
        out.datum.block_rhos.push_back(hom_from(w.at("block_rhos")[i], out.parts[i]));
    const ArityGroup arn = arity_product(g, out.n);
    std::vector<int> elems;
    for (const json& pair : w.at("gamma"))
        elems.push_back(arn.pair_index(pair[0].get<int>(),
                                       static_cast<int>(perm_rank(pair[1].get<Perm>()))));
    std::sort(elems.begin(), elems.end());
    out.gamma = Subgroup{arn.prod, std::move(elems)};
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criteria ----

void criterion_1() {
    std::string detail;
    bool ok = true;
    for (const char* spec : {"C2", "C4"}) {
        const auto t0 = std::chrono::steady_clock::now();
        const GroupPtr g = make_builtin(spec);
        const FamilySequence seq = truncated_complete(g, 3);
        const std::string path = (work_dir() / (std::string("trunc_") + spec + ".json")).string();
        write_text_file(path,
                        canonical_dump(sequence_to_json(seq, spec, "n_infinity", std::nullopt)));
        const RunResult r = run_cli("seq check " + path);
        if (r.exit_code != 1) {
            ok = false;
            detail = std::string(spec) + ": exit " + std::to_string(r.exit_code);
            continue;
        }
        const json j = json::parse(r.out);
        const Witness w = witness_from_json(g, j.at("witness"));
        if (!verify_witness(seq, w) || seq.families[w.n].contains(wreath_graph(g, w.datum))) {
            ok = false;
            detail = std::string(spec) + ": witness does not verify";
        }
        const double dt = seconds_since(t0);
        if (dt >= 5.0) {
            ok = false;
            detail = std::string(spec) + ": took " + std::to_string(dt) + "s";
        }
    }
    report(1, "truncated complete sequence has the expected witness", ok, detail);
}

void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (const char* spec : {"C2", "C3", "C4", "K4", "S3"}) {
        const GroupPtr g = make_builtin(spec);
        for (ExtremalKind kind : {ExtremalKind::TrivialGraphs, ExtremalKind::AllGraphs}) {
            if (!is_realizable(extremal_sequence(g, 4, kind)).realizable) {
                ok = false;
                detail = std::string(spec) + ": extremal sequence not realizable";
            }
        }
    }
    const double dt = seconds_since(t0);
    if (dt >= 60.0) {
        ok = false;
        detail = "took " + std::to_string(dt) + "s";
    }
    report(2, "extremal realizability at N=4", ok, detail);
}

void criterion_3() {
    bool ok = true;
    std::string detail;
    for (const char* spec : {"C2", "C3", "C4", "K4", "S3"}) {
        const GroupPtr g = make_builtin(spec);
        for (int N = 0; N <= 3; ++N) {
            for (const FamilySequence& seq : enumerate_realizable(g, N)) {
                const AuditReport rep = audit_closure_properties(seq);
                if (!rep.all_ok()) {
                    ok = false;
                    detail = std::string(spec) + " N=" + std::to_string(N) + ": " +
                             rep.first_failure;
                }
            }
        }
    }
    report(3, "closure-property audit of all enumerated sequences", ok, detail);
}

void criterion_4() {
    bool ok = true;
    std::string detail;

    // verdict agreement on a spread of sequences for every group of
    // order <= 8 in the suite
    const std::vector<std::string> verdict_groups = {"C2",   "C3", "C4",     "K4", "C5",
                                                     "C6",   "S3", "C7",     "C8", "D4",
                                                     "C2xC4", "C2xC2xC2"};
    std::mt19937 rng(1789);
    for (const std::string& spec : verdict_groups) {
        const GroupPtr g =
            spec == "Q8" ? group_from_json(read_json_file(data_path("q8.json")))
                         : make_builtin(spec);
        std::vector<FamilySequence> suite;
        suite.push_back(extremal_sequence(g, 3, ExtremalKind::TrivialGraphs));
        suite.push_back(extremal_sequence(g, 3, ExtremalKind::AllGraphs));
        suite.push_back(truncated_complete(g, 3));
        for (int it = 0; it < 3; ++it) {
            std::vector<Family> fams;
            for (int n = 0; n <= 3; ++n) {
                const ArityGroup ag = arity_product(g, n);
                std::vector<Subgroup> seeds =
                    extremal_family(ag, ExtremalKind::TrivialGraphs).members;
                for (const auto& [d, gamma] : all_graph_subgroups(ag))
                    if (rng() % 4 == 0) seeds.push_back(gamma);
                fams.push_back(close_family(ag.prod, seeds));
            }
            suite.push_back(make_sequence(g, 3, std::move(fams)));
        }
        for (const FamilySequence& seq : suite) {
            if (is_realizable(seq).realizable != oracle::naive_is_realizable(seq)) {
                ok = false;
                detail = spec + ": verdict disagreement";
            }
        }
    }

    // Q8 from its table file: verdicts on the deterministic suite
    {
        const GroupPtr q8 = group_from_json(read_json_file(data_path("q8.json")));
        for (const FamilySequence& seq :
             {extremal_sequence(q8, 3, ExtremalKind::TrivialGraphs),
              extremal_sequence(q8, 3, ExtremalKind::AllGraphs), truncated_complete(q8, 3)}) {
            if (is_realizable(seq).realizable != oracle::naive_is_realizable(seq)) {
                ok = false;
                detail = "Q8: verdict disagreement";
            }
        }
    }

    // full enumeration agreement, byte-identical canonical JSON
    for (const char* spec : {"C2", "C3", "C4", "K4", "C6", "S3"}) {
        const GroupPtr g = make_builtin(spec);
        auto dump_sorted = [&](std::vector<FamilySequence> seqs) {
            std::vector<std::string> texts;
            for (const FamilySequence& s : seqs)
                texts.push_back(
                    canonical_dump(sequence_to_json(s, spec, "n_infinity", std::nullopt)));
            std::sort(texts.begin(), texts.end());
            std::string all;
            for (const std::string& t : texts) all += t;
            return all;
        };
        if (dump_sorted(enumerate_realizable(g, 3)) != dump_sorted(oracle::naive_enumerate(g, 3))) {
            ok = false;
            detail = std::string(spec) + ": enumeration sets differ";
        }
    }
    report(4, "oracle equivalence", ok, detail);
}

void criterion_5() {
    bool ok = true;
    std::string detail;
    const std::string dot = (work_dir() / "c2.dot").string();
    const RunResult e = run_cli("seq enumerate C2 --max-arity 2 --poset " + dot);
    json out;
    if (e.exit_code != 0) {
        ok = false;
        detail = "enumerate exit " + std::to_string(e.exit_code);
    } else {
        out = json::parse(e.out);
        if (out.at("count") != 2) {
            ok = false;
            detail = "expected 2 sequences";
        }
        const std::string d = slurp(dot);
        if (std::count(d.begin(), d.end(), '>') != 1) {
            ok = false;
            detail = "expected exactly 1 Hasse edge";
        }
    }
    const std::string fn = (work_dir() / "c2_norms.json").string();
    const RunResult f = run_cli("seq from-norms C2 --max-arity 2 --norm 1: -o " + fn);
    if (f.exit_code != 0) {
        ok = false;
        detail = "from-norms exit " + std::to_string(f.exit_code);
    } else if (ok) {
        // the larger of the two enumerated sequences, byte for byte
        std::vector<std::string> texts;
        for (const json& s : out.at("sequences")) texts.push_back(canonical_dump(s));
        std::sort(texts.begin(), texts.end(), [](const std::string& a, const std::string& b) {
            return a.size() < b.size();
        });
        if (slurp(fn) != texts.back()) {
            ok = false;
            detail = "from-norms output differs from the complete sequence";
        }
    }
    report(5, "C2 classification at N=2", ok, detail);
}

void criterion_6() {
    bool ok = true;
    std::string detail;
    std::vector<GroupPtr> groups;
    for (int n = 2; n <= 16; ++n) groups.push_back(cyclic_group(n));
    for (const char* spec : {"K4", "D4", "S3"}) groups.push_back(make_builtin(spec));
    groups.push_back(group_from_json(read_json_file(data_path("q8.json"))));
    groups.push_back(group_from_json(read_json_file(data_path("a4.json"))));
    for (const GroupPtr& g : groups) {
        const auto fast = all_subgroups(g);
        const auto slow = oracle::brute_subgroups(g);
        if (fast.size() != slow.size()) {
            ok = false;
            detail = g->label + ": subgroup count";
            continue;
        }
        for (std::size_t i = 0; i < fast.size(); ++i)
            if (fast[i].elements != slow[i].elements) {
                ok = false;
                detail = g->label + ": subgroup list";
            }
    }

    const GroupPtr q8 = group_from_json(read_json_file(data_path("q8.json")));
    const GroupPtr a4 = group_from_json(read_json_file(data_path("a4.json")));
    const std::vector<std::pair<GroupPtr, GroupPtr>> hom_cases = {
        {cyclic_group(16), cyclic_group(2)}, {make_builtin("D4"), cyclic_group(4)},
        {make_builtin("K4"), symmetric_group(3)}, {cyclic_group(6), symmetric_group(3)},
        {symmetric_group(3), symmetric_group(3)}, {q8, cyclic_group(2)},
        {a4, cyclic_group(3)}, {cyclic_group(12), cyclic_group(2)}};
    for (const auto& [h, t] : hom_cases) {
        if (static_cast<long long>(homomorphisms(h, t).size()) != oracle::brute_hom_count(h, t)) {
            ok = false;
            detail = h->label + " -> " + t->label + ": hom count";
        }
    }
    report(6, "group-core oracles", ok, detail);
}

void criterion_7() {
    bool ok = true;
    std::string detail;
    std::mt19937 rng(40499);
    for (const char* spec : {"C2", "C3", "C4", "K4", "S3"}) {
        const GroupPtr g = make_builtin(spec);

        // close_family: 200 randomized cases per group
        const auto subs = all_subgroups(g);
        const ArityGroup ag2 = arity_product(g, 2);
        const auto prod_subs = all_subgroups(ag2.prod);
        for (int it = 0; it < 200 && ok; ++it) {
            const auto& pool = (it % 2 == 0) ? subs : prod_subs;
            const GroupPtr amb = (it % 2 == 0) ? g : ag2.prod;
            std::vector<Subgroup> seeds, more;
            for (const Subgroup& s : pool) {
                if (rng() % 3 == 0) seeds.push_back(s);
                if (rng() % 3 == 0) more.push_back(s);
            }
            const Family f = close_family(amb, seeds);
            bool extensive = true;
            for (const Subgroup& s : seeds) extensive = extensive && f.contains(s);
            std::vector<Subgroup> bigger = seeds;
            bigger.insert(bigger.end(), more.begin(), more.end());
            if (!is_family(f).ok || !extensive || close_family(amb, f.members) != f ||
                !is_subfamily(f, close_family(amb, bigger))) {
                ok = false;
                detail = std::string(spec) + ": close_family law violated";
            }
        }

        // realizable_closure: randomized cases at N = 2
        for (int it = 0; it < 24 && ok; ++it) {
            auto random_seq = [&] {
                std::vector<Family> fams;
                for (int n = 0; n <= 2; ++n) {
                    const ArityGroup ag = arity_product(g, n);
                    std::vector<Subgroup> seeds =
                        extremal_family(ag, ExtremalKind::TrivialGraphs).members;
                    for (const auto& [d, gamma] : all_graph_subgroups(ag))
                        if (rng() % 3 == 0) seeds.push_back(gamma);
                    fams.push_back(close_family(ag.prod, seeds));
                }
                return make_sequence(g, 2, std::move(fams));
            };
            const FamilySequence seq = random_seq();
            const FamilySequence closed = realizable_closure(seq);
            bool extensive = true;
            for (int n = 0; n <= 2; ++n)
                extensive = extensive && is_subfamily(seq.families[n], closed.families[n]);
            FamilySequence bigger = seq;
            const FamilySequence other = random_seq();
            for (int n = 0; n <= 2; ++n)
                bigger.families[n] = family_union(bigger.families[n], other.families[n]);
            const FamilySequence closed_bigger = realizable_closure(bigger);
            bool monotone = true;
            for (int n = 0; n <= 2; ++n)
                monotone =
                    monotone && is_subfamily(closed.families[n], closed_bigger.families[n]);
            if (!extensive || !monotone || !is_realizable(closed).realizable ||
                !sequence_equal(realizable_closure(closed), closed)) {
                ok = false;
                detail = std::string(spec) + ": realizable_closure law violated";
            }
        }

        // graph roundtrips, exhaustive at n <= 4
        for (int n = 0; n <= 4 && ok; ++n) {
            const ArityGroup ag = arity_product(g, n);
            for (const auto& [d, gamma] : all_graph_subgroups(ag)) {
                const GraphDatum back = decompose_graph(ag, gamma);
                if (back.H != d.H || back.rho.images != d.rho.images ||
                    graph_of(ag, back) != gamma) {
                    ok = false;
                    detail = std::string(spec) + ": graph roundtrip at n=" + std::to_string(n);
                }
            }
        }
    }
    report(7, "algebraic laws", ok, detail);
}

void criterion_8() {
    bool ok = true;
    std::string detail;
    const std::string cache = (work_dir() / "cache").string();
    fs::remove_all(cache);

    const GroupPtr c2 = cyclic_group(2);
    const std::string seq_path = (work_dir() / "det_seq.json").string();
    write_text_file(seq_path, canonical_dump(sequence_to_json(
                                  truncated_complete(c2, 3), "C2", "n_infinity", std::nullopt)));

    const std::vector<std::string> commands = {
        "group S3 --subgroups --conjugacy",
        "graphs K4 --arity 2",
        "seq check " + seq_path,
        "seq close " + seq_path + " -o " + (work_dir() / "det_closed.json").string(),
        "seq from-norms C4 --max-arity 2 --norm 1: -o " + (work_dir() / "det_fn.json").string(),
        "seq enumerate K4 --max-arity 2 --poset " + (work_dir() / "det_poset.dot").string(),
    };
    const std::vector<std::string> outputs = {
        "", "", "", (work_dir() / "det_closed.json").string(),
        (work_dir() / "det_fn.json").string(), (work_dir() / "det_poset.dot").string()};

    for (std::size_t i = 0; i < commands.size(); ++i) {
        const RunResult cold = run_cli("--cache-dir " + cache + " " + commands[i]);
        const std::string file_cold = outputs[i].empty() ? "" : slurp(outputs[i]);
        const RunResult warm = run_cli("--cache-dir " + cache + " " + commands[i]);
        const std::string file_warm = outputs[i].empty() ? "" : slurp(outputs[i]);
        if (cold.exit_code != warm.exit_code || cold.out != warm.out ||
            file_cold != file_warm) {
            ok = false;
            detail = "command '" + commands[i] + "' is not deterministic";
        }
        // and from a separate empty cache directory
        const RunResult fresh =
            run_cli("--cache-dir " + cache + "_fresh" + std::to_string(i) + " " + commands[i]);
        if (fresh.exit_code != cold.exit_code || fresh.out != cold.out) {
            ok = false;
            detail = "command '" + commands[i] + "' depends on cache state";
        }
    }
    report(8, "CLI determinism, cache cold vs warm", ok, detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    return failures;
}
