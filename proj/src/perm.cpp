#include "ninfty/perm.hpp"

#include <algorithm>

#include "ninfty/errors.hpp"

namespace ninfty {

Perm perm_identity(int n) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

bool perm_is_valid(const Perm& p) {
    const int n = static_cast<int>(p.size());
    std::vector<char> seen(n, 0);
    for (int v : p) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

Perm perm_mul(const Perm& a, const Perm& b) {
    if (a.size() != b.size()) throw InputError("perm_mul: degree mismatch");
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm perm_inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
}

std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

std::uint64_t perm_rank(const Perm& p) {
    const int n = static_cast<int>(p.size());
    std::uint64_t rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (p[j] < p[i]) ++smaller;
        rank += static_cast<std::uint64_t>(smaller) * factorial(n - 1 - i);
    }
    return rank;
}

Perm perm_unrank(int degree, std::uint64_t rank) {
    std::vector<int> pool(degree);
    for (int i = 0; i < degree; ++i) pool[i] = i;
    Perm p(degree);
    for (int i = 0; i < degree; ++i) {
        const std::uint64_t f = factorial(degree - 1 - i);
        const int idx = static_cast<int>(rank / f);
        rank %= f;
        p[i] = pool[idx];
        pool.erase(pool.begin() + idx);
    }
    return p;
}

}  // namespace ninfty
