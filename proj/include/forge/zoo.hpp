#pragma once

// Example families: sum complexes and Linial-Meshulam style random complexes.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "forge/complex.hpp"
#include "forge/errors.hpp"

namespace forge {

inline constexpr std::size_t kDefaultFaceCap = 10'000'000;

/// C(n, k), saturating at SIZE_MAX.
inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > SIZE_MAX) return SIZE_MAX;
    }
    return static_cast<std::size_t>(r);
}

/// Calls f(combo) for every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    Simplex c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = static_cast<Vertex>(i);
    for (;;) {
        f(static_cast<const Simplex&>(c));
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

struct SumComplexSpec {
    std::size_t n = 0;
    std::vector<long long> A;

    int d() const { return static_cast<int>(A.size()) - 1; }
};

/// Residues of A mod n, sorted; throws unless 1 <= |A| <= n with distinct residues.
inline std::vector<std::size_t> validate(const SumComplexSpec& s) {
    if (s.n == 0) throw InputError("sum_complex: n must be positive");
    if (s.A.empty() || s.A.size() > s.n) throw InputError("sum_complex: need 1 <= |A| <= n");
    std::set<std::size_t> res;
    for (long long a : s.A) {
        const long long n = static_cast<long long>(s.n);
        if (!res.insert(static_cast<std::size_t>(((a % n) + n) % n)).second)
            throw InputError("sum_complex: elements of A must be distinct mod n");
    }
    return {res.begin(), res.end()};
}

/// Vertex set Z/n, complete (|A|-2)-skeleton, and every |A|-subset whose sum mod n lies in A.
inline SimplicialComplex sum_complex(const SumComplexSpec& spec, std::size_t face_cap = kDefaultFaceCap) {
    const auto residues = validate(spec);
    const std::size_t n = spec.n, k = spec.A.size();
    if (binomial(n, k) > face_cap) throw InputError("sum_complex: C(n, |A|) exceeds the face cap");
    std::vector<char> in_a(n, 0);
    for (auto r : residues) in_a[r] = 1;
    std::vector<Simplex> facets;
    if (k >= 2) for_each_combination(n, k - 1, [&](const Simplex& c) { facets.push_back(c); });
    for_each_combination(n, k, [&](const Simplex& c) {
        std::size_t sum = 0;
        for (Vertex v : c) sum += v;
        if (in_a[sum % n]) facets.push_back(c);
    });
    return build_complex(std::span<const Simplex>(facets), n);
}

/// Uniform integer in [0, bound) by rejection; identical on every platform.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw InputError("uniform_below: empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x < limit) return x % bound;
    }
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

namespace detail {

inline SimplicialComplex random_complex_from(std::size_t n, int d, std::size_t num_top_faces, std::mt19937_64& rng) {
    const auto ud = static_cast<std::size_t>(d);
    std::vector<Simplex> candidates;
    candidates.reserve(binomial(n, ud + 1));
    for_each_combination(n, ud + 1, [&](const Simplex& c) { candidates.push_back(c); });
    // partial Fisher-Yates
    for (std::size_t i = 0; i < num_top_faces; ++i) {
        const std::size_t j = i + uniform_below(rng, candidates.size() - i);
        std::swap(candidates[i], candidates[j]);
    }
    candidates.resize(num_top_faces);
    std::sort(candidates.begin(), candidates.end());
    std::vector<Simplex> facets;
    for_each_combination(n, ud, [&](const Simplex& c) { facets.push_back(c); });
    facets.insert(facets.end(), candidates.begin(), candidates.end());
    return build_complex(std::span<const Simplex>(facets), n);
}

inline void check_random_args(std::size_t n, int d, std::size_t face_cap) {
    if (d < 1) throw InputError("random_complex: d must be at least 1");
    if (n < static_cast<std::size_t>(d) + 1) throw InputError("random_complex: need n >= d + 1");
    if (binomial(n, static_cast<std::size_t>(d) + 1) > face_cap)
        throw InputError("random_complex: C(n, d+1) exceeds the face cap");
}

}  // namespace detail

/// Complete (d-1)-skeleton on n vertices plus num_top_faces d-faces chosen
/// uniformly without replacement.
inline SimplicialComplex random_complex(std::size_t n, int d, std::size_t num_top_faces, std::uint64_t seed,
                                        std::size_t face_cap = kDefaultFaceCap) {
    detail::check_random_args(n, d, face_cap);
    if (num_top_faces > binomial(n, static_cast<std::size_t>(d) + 1))
        throw InputError("random_complex: more top faces requested than exist");
    std::mt19937_64 rng(seed);
    return detail::random_complex_from(n, d, num_top_faces, rng);
}

/// Linial-Meshulam Y_d(n, p): the face count is drawn Binomial(C(n, d+1), p) first.
inline SimplicialComplex random_complex_p(std::size_t n, int d, double p, std::uint64_t seed,
                                          std::size_t face_cap = kDefaultFaceCap) {
    detail::check_random_args(n, d, face_cap);
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("random_complex: p must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    const std::size_t total = binomial(n, static_cast<std::size_t>(d) + 1);
    std::size_t count = 0;
    for (std::size_t i = 0; i < total; ++i) count += uniform_unit(rng) < p;
    return detail::random_complex_from(n, d, count, rng);
}

}  // namespace forge
