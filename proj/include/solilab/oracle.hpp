#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "matrix.hpp"

namespace solilab {

/// Leibniz-formula determinant over a commutative field. Brute force and
/// independent of the elimination used by inverse(); intended for small
/// matrices in self-tests.
template <Field F>
F leibniz_determinant(const Matrix<F>& m) {
    const std::size_t n = m.dim();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    F total = zero_like(m.proto());
    do {
        std::size_t inversions = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                if (perm[a] > perm[b]) ++inversions;
        F term = one_like(m.proto());
        for (std::size_t r = 0; r < n; ++r) term *= m(r, perm[r]);
        if (inversions % 2) total -= term;
        else total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

} // namespace solilab
