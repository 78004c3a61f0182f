#include "ninfty/group.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "ninfty/cache.hpp"
#include "ninfty/errors.hpp"

namespace ninfty {

Limits& limits() {
    static Limits l;
    return l;
}

GroupPtr make_group(std::string label, int order, std::vector<int> table) {
    if (order < 1) throw InputError("group order must be positive");
    if (order > limits().group_order_cap)
        throw CapExceeded("group order " + std::to_string(order) + " exceeds cap " +
                          std::to_string(limits().group_order_cap));
    if (table.size() != static_cast<std::size_t>(order) * order)
        throw InputError("Cayley table has wrong size for order " + std::to_string(order));
    for (int v : table)
        if (v < 0 || v >= order) throw InputError("Cayley table entry out of range");

    auto g = std::make_shared<FiniteGroup>();
    g->label = std::move(label);
    g->order = order;
    g->table = std::move(table);

    // identity
    int id = -1;
    for (int e = 0; e < order; ++e) {
        bool ok = true;
        for (int x = 0; x < order && ok; ++x)
            ok = g->mul(e, x) == x && g->mul(x, e) == x;
        if (ok) {
            id = e;
            break;
        }
    }
    if (id < 0) throw InputError("Cayley table has no identity element");
    g->identity = id;

    // two-sided inverses
    g->inverse.assign(order, -1);
    for (int x = 0; x < order; ++x) {
        for (int y = 0; y < order; ++y) {
            if (g->mul(x, y) == id && g->mul(y, x) == id) {
                g->inverse[x] = y;
                break;
            }
        }
        if (g->inverse[x] < 0)
            throw InputError("element " + std::to_string(x) + " has no inverse");
    }

    // associativity: exhaustive below the cap, random sample above
    if (order <= limits().assoc_full_check_cap) {
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                for (int c = 0; c < order; ++c)
                    if (g->mul(g->mul(a, b), c) != g->mul(a, g->mul(b, c)))
                        throw InputError("Cayley table is not associative");
    } else {
        std::mt19937_64 rng(0x6e696e667479ULL);
        std::uniform_int_distribution<int> dist(0, order - 1);
        for (int i = 0; i < limits().assoc_sample_count; ++i) {
            const int a = dist(rng), b = dist(rng), c = dist(rng);
            if (g->mul(g->mul(a, b), c) != g->mul(a, g->mul(b, c)))
                throw InputError("Cayley table is not associative");
        }
    }
    return g;
}

GroupPtr cyclic_group(int n) {
    if (n < 1) throw ParseError("cyclic group needs n >= 1");
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
    return make_group("C" + std::to_string(n), n, std::move(t));
}

GroupPtr symmetric_group(int n) {
    if (n < 0) throw ParseError("symmetric group needs n >= 0");
    const std::uint64_t ord64 = factorial(n);
    if (ord64 > static_cast<std::uint64_t>(limits().group_order_cap))
        throw CapExceeded("S" + std::to_string(n) + " has order " + std::to_string(ord64) +
                          ", above cap " + std::to_string(limits().group_order_cap));
    const int order = static_cast<int>(ord64);
    std::vector<Perm> perms(order);
    for (int i = 0; i < order; ++i) perms[i] = perm_unrank(n, i);
    std::vector<int> t(static_cast<std::size_t>(order) * order);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            t[static_cast<std::size_t>(a) * order + b] =
                static_cast<int>(perm_rank(perm_mul(perms[a], perms[b])));
    return make_group("S" + std::to_string(n), order, std::move(t));
}

GroupPtr dihedral_group(int n) {
    if (n < 1) throw ParseError("dihedral group needs n >= 1");
    const int order = 2 * n;
    // element (eps, c): x -> eps*x + c mod n; index c for eps=+1, n+c for eps=-1
    auto compose = [n](int i, int j) {
        const int ei = i < n ? 1 : -1, ci = i % n;
        const int ej = j < n ? 1 : -1, cj = j % n;
        const int e = ei * ej;
        const int c = ((ei * cj + ci) % n + n) % n;
        return (e == 1 ? 0 : n) + c;
    };
    std::vector<int> t(static_cast<std::size_t>(order) * order);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) t[static_cast<std::size_t>(a) * order + b] = compose(a, b);
    return make_group("D" + std::to_string(n), order, std::move(t));
}

static GroupPtr parse_atom(const std::string& tok) {
    if (tok == "K4") {
        auto p = direct_product(cyclic_group(2), cyclic_group(2));
        auto g = std::make_shared<FiniteGroup>(*p.group);
        g->label = "K4";
        return g;
    }
    if (tok.size() >= 2 && (tok[0] == 'C' || tok[0] == 'S' || tok[0] == 'D')) {
        for (std::size_t i = 1; i < tok.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(tok[i])))
                throw ParseError("bad group spec token: " + tok);
        const int n = std::stoi(tok.substr(1));
        if (tok[0] == 'C') return cyclic_group(n);
        if (tok[0] == 'S') return symmetric_group(n);
        return dihedral_group(n);
    }
    throw ParseError("bad group spec token: " + tok);
}

GroupPtr make_builtin(const std::string& spec) {
    if (spec.empty()) throw ParseError("empty group spec");
    std::vector<std::string> toks;
    std::string cur;
    for (char c : spec) {
        if (c == 'x') {
            toks.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    toks.push_back(cur);
    GroupPtr g = parse_atom(toks[0]);
    for (std::size_t i = 1; i < toks.size(); ++i)
        g = direct_product(g, parse_atom(toks[i])).group;
    if (toks.size() > 1) {
        auto relabeled = std::make_shared<FiniteGroup>(*g);
        relabeled->label = spec;
        g = relabeled;
    }
    return g;
}

bool is_homomorphism(const Homomorphism& f) {
    const auto& s = *f.source;
    const auto& t = *f.target;
    if (f.images.size() != static_cast<std::size_t>(s.order)) return false;
    for (int v : f.images)
        if (v < 0 || v >= t.order) return false;
    if (f.images[s.identity] != t.identity) return false;
    for (int a = 0; a < s.order; ++a)
        for (int b = 0; b < s.order; ++b)
            if (f.images[s.mul(a, b)] != t.mul(f.images[a], f.images[b])) return false;
    return true;
}

Product direct_product(const GroupPtr& a, const GroupPtr& b) {
    const long long ord = static_cast<long long>(a->order) * b->order;
    if (ord > limits().group_order_cap)
        throw CapExceeded("product order " + std::to_string(ord) + " exceeds cap " +
                          std::to_string(limits().group_order_cap));
    const int n = static_cast<int>(ord);
    const int bo = b->order;
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x) {
        const int x1 = x / bo, x2 = x % bo;
        for (int y = 0; y < n; ++y) {
            const int y1 = y / bo, y2 = y % bo;
            t[static_cast<std::size_t>(x) * n + y] = a->mul(x1, y1) * bo + b->mul(x2, y2);
        }
    }
    Product p;
    p.group = make_group(a->label + "x" + b->label, n, std::move(t));
    p.proj1 = {p.group, a, {}};
    p.proj2 = {p.group, b, {}};
    p.proj1.images.resize(n);
    p.proj2.images.resize(n);
    for (int x = 0; x < n; ++x) {
        p.proj1.images[x] = x / bo;
        p.proj2.images[x] = x % bo;
    }
    p.incl1 = {a, p.group, {}};
    p.incl2 = {b, p.group, {}};
    p.incl1.images.resize(a->order);
    p.incl2.images.resize(b->order);
    for (int x = 0; x < a->order; ++x) p.incl1.images[x] = x * bo + b->identity;
    for (int y = 0; y < bo; ++y) p.incl2.images[y] = a->identity * bo + y;
    return p;
}

bool Subgroup::contains(int x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
}

bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements == b.elements; }
bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }

bool subgroup_less(const Subgroup& a, const Subgroup& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.elements < b.elements;
}

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup{g, {g->identity}}; }

Subgroup full_subgroup(const GroupPtr& g) {
    std::vector<int> e(g->order);
    for (int i = 0; i < g->order; ++i) e[i] = i;
    return Subgroup{g, std::move(e)};
}

Subgroup subgroup_generated(const GroupPtr& g, const std::vector<int>& gens) {
    std::vector<char> in(g->order, 0);
    std::vector<int> elems;
    auto add = [&](int x) {
        if (!in[x]) {
            in[x] = 1;
            elems.push_back(x);
        }
    };
    add(g->identity);
    for (int x : gens) {
        if (x < 0 || x >= g->order) throw InputError("generator index out of range");
        add(x);
    }
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            add(g->mul(elems[i], elems[j]));
            add(g->mul(elems[j], elems[i]));
        }
    std::sort(elems.begin(), elems.end());
    return Subgroup{g, std::move(elems)};
}

static std::string group_cache_key(const FiniteGroup& g, const char* op) {
    std::ostringstream ss;
    ss << op << "/order=" << g.order << "/table=";
    for (int v : g.table) ss << v << ',';
    return ss.str();
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
    if (g->order > limits().subgroup_enum_cap)
        throw CapExceeded("subgroup enumeration refused for order " + std::to_string(g->order) +
                          " (cap " + std::to_string(limits().subgroup_enum_cap) + ")");

    const std::string key = group_cache_key(*g, "all_subgroups");
    if (auto hit = Cache::instance().get(key)) {
        std::vector<Subgroup> out;
        std::istringstream in(*hit);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::vector<int> elems;
            std::istringstream ls(line);
            std::string item;
            while (std::getline(ls, item, ',')) elems.push_back(std::stoi(item));
            out.push_back(Subgroup{g, std::move(elems)});
        }
        if (!out.empty()) return out;
    }

    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> subs;
    auto add = [&](std::vector<int> elems) {
        if (seen.insert(elems).second) subs.push_back(std::move(elems));
    };
    add({g->identity});
    for (int x = 0; x < g->order; ++x) add(subgroup_generated(g, {x}).elements);

    // close under pairwise join; every subgroup is a join of cyclics
    for (std::size_t i = 0; i < subs.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (std::includes(subs[i].begin(), subs[i].end(), subs[j].begin(), subs[j].end()))
                continue;
            std::vector<int> gens = subs[i];
            gens.insert(gens.end(), subs[j].begin(), subs[j].end());
            add(subgroup_generated(g, gens).elements);
        }
    }

    std::sort(subs.begin(), subs.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<Subgroup> out;
    out.reserve(subs.size());
    for (auto& e : subs) out.push_back(Subgroup{g, std::move(e)});

    if (Cache::instance().enabled()) {
        std::ostringstream payload;
        for (const auto& s : out) {
            for (std::size_t i = 0; i < s.elements.size(); ++i)
                payload << (i ? "," : "") << s.elements[i];
            payload << '\n';
        }
        Cache::instance().put(key, payload.str());
    }
    return out;
}

Subgroup conjugate(const Subgroup& s, int g) {
    const auto& G = *s.ambient;
    std::vector<int> elems;
    elems.reserve(s.elements.size());
    const int gi = G.inv(g);
    for (int x : s.elements) elems.push_back(G.mul(G.mul(g, x), gi));
    std::sort(elems.begin(), elems.end());
    return Subgroup{s.ambient, std::move(elems)};
}

std::vector<std::vector<int>> subgroup_conjugacy_classes(const GroupPtr& g,
                                                         const std::vector<Subgroup>& subs) {
    std::vector<std::vector<int>> classes;
    std::vector<char> done(subs.size(), 0);
    auto find = [&](const Subgroup& s) -> int {
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i] == s) return static_cast<int>(i);
        return -1;
    };
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (done[i]) continue;
        std::vector<int> cls;
        for (int x = 0; x < g->order; ++x) {
            const int j = find(conjugate(subs[i], x));
            if (j >= 0 && !done[j]) {
                done[j] = 1;
                cls.push_back(j);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    return classes;
}

AsGroup subgroup_as_group(const Subgroup& s) {
    const auto& G = *s.ambient;
    const int n = s.order();
    std::vector<int> pos(G.order, -1);
    for (int i = 0; i < n; ++i) pos[s.elements[i]] = i;
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int p = pos[G.mul(s.elements[i], s.elements[j])];
            if (p < 0) throw InputError("element set is not closed under multiplication");
            t[static_cast<std::size_t>(i) * n + j] = p;
        }
    AsGroup out;
    out.group = make_group(G.label + "<" + std::to_string(n) + ">", n, std::move(t));
    out.embedding = Homomorphism{out.group, s.ambient, s.elements};
    return out;
}

std::vector<int> minimal_generating_set(const GroupPtr& g) {
    std::vector<int> gens;
    Subgroup cur = trivial_subgroup(g);
    while (cur.order() < g->order) {
        int best = -1, best_size = cur.order();
        for (int x = 0; x < g->order; ++x) {
            if (cur.contains(x)) continue;
            std::vector<int> trial = gens;
            trial.push_back(x);
            const int sz = subgroup_generated(g, trial).order();
            if (sz > best_size) {
                best_size = sz;
                best = x;
            }
        }
        gens.push_back(best);
        cur = subgroup_generated(g, gens);
    }
    return gens;
}

namespace {

// Extend identity+generator images by word closure. Returns false on
// contradiction. On success img is total and verified multiplicative.
bool close_hom(const FiniteGroup& s, const FiniteGroup& t, std::vector<int>& img) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < s.order; ++a) {
            if (img[a] < 0) continue;
            for (int b = 0; b < s.order; ++b) {
                if (img[b] < 0) continue;
                const int c = s.mul(a, b);
                const int v = t.mul(img[a], img[b]);
                if (img[c] < 0) {
                    img[c] = v;
                    changed = true;
                } else if (img[c] != v) {
                    return false;
                }
            }
        }
    }
    for (int v : img)
        if (v < 0) return false;  // generators did not generate; cannot happen
    return true;
}

}  // namespace

std::vector<Homomorphism> homomorphisms(const GroupPtr& h, const GroupPtr& t) {
    const std::vector<int> gens = minimal_generating_set(h);
    std::vector<Homomorphism> out;
    std::vector<int> choice(gens.size(), 0);
    while (true) {
        std::vector<int> img(h->order, -1);
        img[h->identity] = t->identity;
        for (std::size_t i = 0; i < gens.size(); ++i) img[gens[i]] = choice[i];
        if (close_hom(*h, *t, img)) out.push_back(Homomorphism{h, t, std::move(img)});
        // next assignment in lexicographic order
        std::size_t i = gens.size();
        while (i > 0 && choice[i - 1] == t->order - 1) choice[--i] = 0;
        if (i == 0) break;
        ++choice[i - 1];
    }
    std::sort(out.begin(), out.end(),
              [](const Homomorphism& a, const Homomorphism& b) { return a.images < b.images; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Homomorphism& a, const Homomorphism& b) {
                              return a.images == b.images;
                          }),
              out.end());
    return out;
}

Homomorphism trivial_homomorphism(const GroupPtr& source, const GroupPtr& target) {
    return Homomorphism{source, target, std::vector<int>(source->order, target->identity)};
}

Homomorphism identity_homomorphism(const GroupPtr& g) {
    std::vector<int> img(g->order);
    for (int i = 0; i < g->order; ++i) img[i] = i;
    return Homomorphism{g, g, std::move(img)};
}

}  // namespace ninfty
