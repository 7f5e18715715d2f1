// Test-only independent oracles.  These must stay independent of the
// implementation paths they check.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "bcoh/words.hpp"

namespace oracles {

// Plain subword counting on a finite reduced word (all start positions).
inline long count_occurrences(const bcoh::Word& w, const bcoh::Word& pat) {
    const auto& ws = w.letters();
    const auto& ps = pat.letters();
    if (ps.empty() || ws.size() < ps.size()) return 0;
    long cnt = 0;
    for (std::size_t i = 0; i + ps.size() <= ws.size(); ++i) {
        bool hit = true;
        for (std::size_t j = 0; j < ps.size() && hit; ++j)
            if (!(ws[i + j] == ps[j])) hit = false;
        if (hit) ++cnt;
    }
    return cnt;
}

// Big Brooks counting quasimorphism, not homogenized.
inline double brooks_raw(const bcoh::Word& w, const bcoh::Word& pat) {
    return static_cast<double>(count_occurrences(w, pat) -
                               count_occurrences(w, bcoh::invert(pat)));
}

// Homogenization lim phi(w^n)/n, evaluated through the exact tail increment
// (phi(w^{2n}) - phi(w^n))/n: the O(1) boundary contributions of the
// conjugating prefix cancel, so this equals the limit once n exceeds the
// word lengths involved.
inline double brooks_limit(const bcoh::Word& w, const bcoh::Word& pat,
                           int n = 32) {
    return (brooks_raw(bcoh::pow(w, 2 * n), pat) -
            brooks_raw(bcoh::pow(w, n), pat)) /
           n;
}

// Lobachevsky function via its Fourier series, L(t) = 1/2 sum sin(2nt)/n^2.
inline double lobachevsky(double theta, long terms = 1000000) {
    double s = 0.0;
    for (long n = terms; n >= 1; --n)
        s += std::sin(2.0 * n * theta) / (static_cast<double>(n) * n);
    return 0.5 * s;
}

// Volume of the ideal regular tetrahedron in H^3.
inline double ideal_tetrahedron_volume() {
    return 2.0 * lobachevsky(std::acos(-1.0) / 6.0);
}

}  // namespace oracles
