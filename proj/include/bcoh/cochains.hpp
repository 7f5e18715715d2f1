// Homogeneous bounded cochains on F2, the coboundary operator, Brooks
// counting quasimorphisms and their associated bounded 2-cocycles.
#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bcoh/rng.hpp"
#include "bcoh/words.hpp"

namespace bcoh {

// Degree-n homogeneous cochain: right-invariant function on (n+1)-tuples.
struct Cochain {
    int degree = 0;
    std::function<double(const std::vector<Word>&)> eval;
    std::optional<double> sup_bound;

    double operator()(const std::vector<Word>& tuple) const {
        if (static_cast<int>(tuple.size()) != degree + 1)
            throw std::invalid_argument("Cochain: tuple arity != degree+1");
        return eval(tuple);
    }
};

struct Quasimorphism {
    std::function<double(const Word&)> eval;
    std::optional<double> defect_bound;
    bool homogeneous = false;

    double operator()(const Word& w) const { return eval(w); }
};

inline Cochain zero_cochain(int degree) {
    Cochain c;
    c.degree = degree;
    c.sup_bound = 0.0;
    c.eval = [](const std::vector<Word>&) { return 0.0; };
    return c;
}

// dc(g_0,...,g_{n+1}) = sum_i (-1)^i c(...,omit g_i,...)
inline Cochain coboundary(const Cochain& c) {
    Cochain d;
    d.degree = c.degree + 1;
    if (c.sup_bound) d.sup_bound = (c.degree + 2) * *c.sup_bound;
    auto inner = c.eval;
    int n = c.degree;
    d.eval = [inner, n](const std::vector<Word>& tuple) {
        double s = 0.0;
        double sign = 1.0;
        std::vector<Word> face(tuple.size() - 1);
        for (std::size_t omit = 0; omit < tuple.size(); ++omit) {
            std::size_t k = 0;
            for (std::size_t j = 0; j < tuple.size(); ++j)
                if (j != omit) face[k++] = tuple[j];
            s += sign * inner(face);
            sign = -sign;
        }
        (void)n;
        return s;
    };
    return d;
}

namespace detail {

inline bool is_proper_power(const Word& w) {
    const auto& ls = w.letters();
    std::size_t n = ls.size();
    for (std::size_t d = 1; d * 2 <= n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i)
            if (!(ls[i] == ls[i % d])) ok = false;
        if (ok) return true;
    }
    return false;
}

// Occurrences of `pat` in the bi-infinite periodic word core^inf, counted at
// the |core| start positions of one period.
inline long cyclic_count(const std::vector<Letter>& core,
                         const std::vector<Letter>& pat) {
    if (core.empty() || pat.size() == 0) return 0;
    const std::size_t L = core.size();
    long cnt = 0;
    for (std::size_t i = 0; i < L; ++i) {
        bool hit = true;
        for (std::size_t j = 0; j < pat.size() && hit; ++j)
            if (!(core[(i + j) % L] == pat[j])) hit = false;
        if (hit) ++cnt;
    }
    return cnt;
}

}  // namespace detail

// Homogeneous Brooks counting quasimorphism for a reduced pattern that is not
// a proper power.  Values are exact: per-period occurrence counts on the
// cyclically reduced core, pattern minus inverse pattern.
inline Quasimorphism brooks_homogeneous(const Word& pattern) {
    if (pattern.empty())
        throw std::invalid_argument("brooks_homogeneous: empty pattern");
    if (detail::is_proper_power(pattern))
        throw std::invalid_argument("brooks_homogeneous: pattern is a proper power");
    auto pat = pattern.letters();
    auto pat_inv = invert(pattern).letters();
    Quasimorphism q;
    q.homogeneous = true;
    std::size_t m = pat.size();
    q.defect_bound = (m == 1) ? 0.0 : 12.0 * static_cast<double>(m - 1);
    q.eval = [pat, pat_inv](const Word& w) -> double {
        auto [core, conj] = cyclically_reduce(w);
        (void)conj;
        if (core.empty()) return 0.0;
        return static_cast<double>(detail::cyclic_count(core.letters(), pat) -
                                   detail::cyclic_count(core.letters(), pat_inv));
    };
    return q;
}

// c(g0,g1,g2) = q(g0 g1^-1) + q(g1 g2^-1) - q(g0 g2^-1).
// Right-invariant by construction; a cocycle; |c| <= D(q).
inline Cochain qm_to_two_cocycle(const Quasimorphism& q) {
    if (!q.homogeneous)
        throw std::invalid_argument("qm_to_two_cocycle: q must be homogeneous");
    Cochain c;
    c.degree = 2;
    c.sup_bound = q.defect_bound;
    auto f = q.eval;
    c.eval = [f](const std::vector<Word>& t) {
        return f(multiply(t[0], invert(t[1]))) + f(multiply(t[1], invert(t[2]))) -
               f(multiply(t[0], invert(t[2])));
    };
    return c;
}

// Seeded random reduced word of length exactly len.
inline Word random_word(CounterRng& rng, std::size_t len) {
    std::vector<Letter> ls;
    ls.reserve(len);
    while (ls.size() < len) {
        Letter l{static_cast<Gen>(rng.next_below(2)),
                 rng.next_below(2) ? 1 : -1};
        if (!ls.empty() && is_inverse_pair(ls.back(), l)) continue;
        ls.push_back(l);
    }
    return Word::reduce(ls);
}

inline Word random_word_up_to(CounterRng& rng, std::size_t max_len) {
    return random_word(rng, rng.next_below(max_len + 1));
}

// Sampled sup of |q(u)+q(v)-q(uv)|: a certified lower bound for D(q).
// Nested sampling (same seed) makes the estimate monotone in `samples`.
inline double defect_estimate(const Quasimorphism& q, std::size_t max_len,
                              std::size_t samples, std::uint64_t seed = 0xdefec7) {
    if (samples < 1) throw std::invalid_argument("defect_estimate: samples < 1");
    double best = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        CounterRng rng(seed, i);
        Word u = random_word_up_to(rng, max_len);
        Word v = random_word_up_to(rng, max_len);
        double d = std::fabs(q(u) + q(v) - q(multiply(u, v)));
        if (d > best) best = d;
    }
    return best;
}

// Sampled sup of |c| over random tuples: a lower bound for ||c||_sup.
inline double sup_norm_estimate(const Cochain& c, std::size_t max_len,
                                std::size_t samples, std::uint64_t seed = 0x5a11) {
    if (samples < 1) throw std::invalid_argument("sup_norm_estimate: samples < 1");
    double best = 0.0;
    std::vector<Word> tuple(c.degree + 1);
    for (std::size_t i = 0; i < samples; ++i) {
        CounterRng rng(seed, i);
        for (auto& w : tuple) w = random_word_up_to(rng, max_len);
        double v = std::fabs(c(tuple));
        if (v > best) best = v;
    }
    return best;
}

}  // namespace bcoh
