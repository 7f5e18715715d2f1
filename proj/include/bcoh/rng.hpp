// Counter-based RNG: sample i of a seeded stream is a pure function of
// (seed, i), so parallel evaluation order cannot change any draw.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace bcoh {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}
}  // namespace detail

// One independent substream per (seed, counter) pair.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t counter)
        : key_(detail::splitmix64(seed ^ 0x6a09e667f3bcc909ull) ^
               detail::splitmix64(counter * 0x9e3779b97f4a7c15ull + 1)) {}

    std::uint64_t next_u64() {
        return detail::splitmix64(key_ ^ detail::splitmix64(++idx_));
    }

    // uniform in [0,1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t key_;
    std::uint64_t idx_ = 0;
};

// Pairwise sum over f(0..n-1) with a fixed reduction tree; bit-identical
// for any partitioning of the index range across workers.
template <typename F>
double pairwise_sum(std::uint64_t lo, std::uint64_t hi, F&& f) {
    const std::uint64_t n = hi - lo;
    if (n <= 64) {
        double s = 0.0;
        for (std::uint64_t i = lo; i < hi; ++i) s += f(i);
        return s;
    }
    // split at the largest power of two strictly below n
    std::uint64_t half = 1;
    while (half * 2 < n) half *= 2;
    return pairwise_sum(lo, lo + half, f) + pairwise_sum(lo + half, hi, f);
}

struct MeanVar {
    double mean = 0.0;
    double var = 0.0;     // population variance of the samples
    double sem = 0.0;     // standard error of the mean
    std::uint64_t n = 0;
};

inline MeanVar mean_var(const std::vector<double>& v) {
    MeanVar r;
    r.n = v.size();
    if (v.empty()) return r;
    r.mean = pairwise_sum(0, v.size(), [&](std::uint64_t i) { return v[i]; }) /
             static_cast<double>(v.size());
    double m = r.mean;
    r.var = pairwise_sum(0, v.size(),
                         [&](std::uint64_t i) {
                             double d = v[i] - m;
                             return d * d;
                         }) /
            static_cast<double>(v.size());
    r.sem = std::sqrt(r.var / static_cast<double>(v.size()));
    return r;
}

}  // namespace bcoh
