#pragma once

#include <cstdint>
#include <vector>

namespace ninfty {

/// Permutation in 0-based one-line notation: p[i] is the image of i.
using Perm = std::vector<int>;

Perm perm_identity(int n);
bool perm_is_valid(const Perm& p);

/// Function composition: (a*b)(i) = a(b(i)), i.e. apply b first.
Perm perm_mul(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& p);

std::uint64_t factorial(int n);

/// Lexicographic rank of a permutation among all of the same degree.
std::uint64_t perm_rank(const Perm& p);
Perm perm_unrank(int degree, std::uint64_t rank);

}  // namespace ninfty
