// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// if any gating criterion fails or exceeds its time limit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "forge/cli.hpp"
#include "forge/coloring.hpp"
#include "forge/construct.hpp"
#include "forge/homology.hpp"
#include "forge/smith.hpp"
#include "forge/zoo.hpp"

using namespace forge;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> run;
};

// Collects failures; the first few are kept for the report line.
struct Tally {
    std::size_t checks = 0, failures = 0;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        ++failures;
        if (notes.size() < 4) notes.push_back(what);
    }

    Outcome outcome(const std::string& extra = "") const {
        std::ostringstream s;
        s << checks - failures << "/" << checks << " checks";
        if (!extra.empty()) s << "; " << extra;
        for (const auto& n : notes) s << "; " << n;
        return {failures == 0, s.str()};
    }
};

// 2^v <= m^c, i.e. v <= c * log2(m), decided exactly.
bool within_log_bound(std::size_t v, std::size_t c, const mpz_class& m) {
    mpz_class lhs, rhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), 2, v);
    mpz_pow_ui(rhs.get_mpz_t(), m.get_mpz_t(), c);
    return lhs <= rhs;
}

const std::vector<int> kDims = {2, 3, 4};

const std::vector<mpz_class>& orders() {
    static const std::vector<mpz_class> v = {2, 3, 25, 100, 12345, mpz_class(1) << 20};
    return v;
}

struct Case {
    int d;
    std::string label;
    SimplicialComplex x;
    GroupStructure expected_torsion;
};

// Complexes of criterion 1 plus the two realized groups; built once.
const std::vector<Case>& reduction_cases() {
    static const std::vector<Case> cases = [] {
        std::vector<Case> out;
        for (int d : kDims)
            for (const auto& m : orders())
                out.push_back({d, "d=" + std::to_string(d) + " m=" + m.get_str(), assemble_cyclic(d, m),
                               GroupStructure::cyclic(m)});
        out.push_back({2, "d=2 (4,6)", realize_group(2, {4, 6}), GroupStructure::from_cyclic(0, {4, 6})});
        out.push_back({3, "d=3 (3,9,27)", realize_group(3, {3, 9, 27}), GroupStructure::from_cyclic(0, {3, 9, 27})});
        return out;
    }();
    return cases;
}

Outcome cyclic_realization() {
    Tally t;
    for (const auto& c : reduction_cases()) {
        if (c.label.find('(') != std::string::npos) continue;
        const auto h = homology(c.x, c.d - 1);
        const mpz_class m = c.expected_torsion.torsion_order();
        const std::size_t free = c.d >= 3 ? 0 : mpz_popcount(m.get_mpz_t()) - 1;
        t.expect(h.torsion_part() == c.expected_torsion && h.free_rank() == free,
                 c.label + " gave " + h.to_string());
    }
    return t.outcome();
}

Outcome worked_example() {
    const auto h = homology(assemble_cyclic(2, 25), 1);
    return {h == GroupStructure(2, {25}), "H_1 = " + h.to_string()};
}

Outcome degree_vertex_bounds() {
    Tally t;
    std::vector<mpz_class> ms;
    for (long m = 2; m <= 1000; ++m) ms.emplace_back(m);
    ms.emplace_back(1'000'000);
    ms.emplace_back("10000000000");
    std::size_t worst_delta[5] = {0, 0, 0, 0, 0};
    for (int d : kDims) {
        const auto k = constants(d);
        const std::size_t delta_cap = d == 2 ? 34 : k.K - 1;
        const std::size_t v_coeff = d == 2 ? 50 : k.K;
        for (const auto& m : ms) {
            const auto x = assemble_cyclic(d, m);
            const auto delta = degree_profile(x).delta_max;
            worst_delta[d] = std::max(worst_delta[d], delta);
            t.expect(delta <= delta_cap, "d=" + std::to_string(d) + " m=" + m.get_str() + " delta " + std::to_string(delta));
            t.expect(within_log_bound(x.num_vertices(), v_coeff, m),
                     "d=" + std::to_string(d) + " m=" + m.get_str() + " |V| " + std::to_string(x.num_vertices()));
        }
    }
    return t.outcome("max delta " + std::to_string(worst_delta[2]) + "/" + std::to_string(worst_delta[3]) + "/" +
                     std::to_string(worst_delta[4]) + " for d=2/3/4");
}

Outcome sphere_counts() {
    Tally t;
    for (int d = 1; d <= 5; ++d) {
        const auto ud = static_cast<std::size_t>(d);
        for (std::size_t k = 1; k <= 50; ++k) {
            const auto s = sphere_with_slots(d, k).complex;
            const std::string tag = "d=" + std::to_string(d) + " k=" + std::to_string(k);
            t.expect(s.num_vertices() == (ud * ud + ud + 1) * k + (ud + 2) * (ud + 2), tag + " vertex count");
            t.expect(degree_profile(s).at(0, 1) <= (ud + 1) * (ud * ud + ud + 2), tag + " vertex degree");
            t.expect(euler_characteristic(s) == 1 + (d % 2 == 0 ? 1 : -1), tag + " euler characteristic");
            std::map<Simplex, int> cofaces;
            for (const auto& f : s.faces(d))
                for (std::size_t i = 0; i < f.size(); ++i) {
                    Simplex g = f;
                    g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
                    ++cofaces[g];
                }
            bool pseudo = cofaces.size() == s.num_faces(d - 1);
            for (const auto& [g, c] : cofaces) pseudo = pseudo && c == 2;
            t.expect(pseudo, tag + " codimension-1 faces not in exactly two facets");
        }
    }
    return t.outcome();
}

Outcome sum_complex_goldens() {
    Tally t;
    const auto a = torsion(sum_complex({41, {0, 1, 3}}), 1);
    t.expect(a == GroupStructure::from_cyclic(0, {83, 83, mpz_class("313156754870106981917996329463")}),
             "n=41 gave " + a.to_string());
    const auto b = torsion(sum_complex({11, {1, 2, 3, 5, 8}}), 3);
    t.expect(b.torsion_order() == 72'900'000, "n=11 order " + b.torsion_order().get_str());
    t.expect(b == GroupStructure(0, {3, 30, 30, 30, 30, 30}), "n=11 gave " + b.to_string());
    return t.outcome();
}

Outcome reduction_correctness() {
    Tally t;
    std::size_t in_total = 0, out_total = 0;
    for (const auto& c : reduction_cases())
        for (Method method : {Method::greedy, Method::lll})
            for (std::uint64_t seed : {1u, 2u, 3u}) {
                const std::string tag = c.label + " " + to_string(method) + " seed " + std::to_string(seed);
                try {
                    const auto r = reduce(c.x, {method, seed});
                    t.expect(r.report.verified, tag + " not verified");
                    t.expect(verify_pattern_coloring(c.x, r.coloring, c.d - 1), tag + " coloring rejected");
                    // recomputed here rather than trusting the report
                    t.expect(torsion(r.complex, c.d - 1) == c.expected_torsion, tag + " torsion changed");
                    in_total += c.x.num_vertices();
                    out_total += r.complex.num_vertices();
                } catch (const std::exception& e) {
                    t.expect(false, tag + ": " + e.what());
                }
            }
    return t.outcome("vertices " + std::to_string(in_total) + " -> " + std::to_string(out_total));
}

Outcome lll_arithmetic() {
    Tally t;
    // independent rational check, with e replaced by 2.7183 > e
    const mpq_class e(27183, 10000);
    std::vector<std::size_t> ns;
    for (std::size_t n = 1; n <= 2000; ++n) ns.push_back(n);
    for (std::size_t n = 4000; n <= 1'000'000; n = n * 3 / 2) ns.push_back(n);
    ns.push_back(1'000'000);
    for (int d = 2; d <= 5; ++d) {
        const auto k = constants(d).K;
        const mpq_class dq(d), kq(static_cast<unsigned long>(k));
        // pairs of intersecting faces: p = dK/c2, at most d^4 K^4 dependents
        const mpq_class c2 = 3 * dq * dq * dq * dq * dq * kq * kq * kq * kq * kq;
        const mpq_class p2 = dq * kq / c2;
        const mpq_class t2 = dq * dq * dq * dq * kq * kq * kq * kq;
        t.expect(e * p2 * (t2 + 1) <= 1, "intersecting inequality d=" + std::to_string(d));
        t.expect(lll_intersecting_feasible(d, k), "library disagrees, intersecting d=" + std::to_string(d));
        mpq_class sixk2d = 1;
        for (int i = 0; i < d; ++i) sixk2d *= 6 * kq * kq;
        for (std::size_t n : ns) {
            const mpq_class nq(static_cast<unsigned long>(n));
            // disjoint pairs: p = 1/(6K^2)^d per n, at most 2K^2 n dependents
            const mpq_class p3 = 1 / (sixk2d * nq);
            t.expect(e * p3 * (2 * kq * kq * nq + 1) <= 1, "disjoint inequality d=" + std::to_string(d));
            t.expect(lll_disjoint_feasible(d, k, n), "library disagrees, disjoint d=" + std::to_string(d));
            mpz_class root = 1;
            while (true) {
                mpz_class p;
                mpz_pow_ui(p.get_mpz_t(), root.get_mpz_t(), static_cast<unsigned long>(d));
                if (p >= n) break;
                ++root;
            }
            mpz_class bound = 18 * root;
            for (int i = 0; i < 8; ++i) bound *= static_cast<unsigned long>(k);
            for (int i = 0; i < 6; ++i) bound *= d;
            t.expect(lll_color_bound(d, k, n) <= bound, "palette exceeds bound d=" + std::to_string(d));
        }
    }
    // an actual coloring stays under the bound
    const auto x = assemble_cyclic(2, 25);
    const auto k = constants(2).K;
    const auto c = lll_coloring(x, k, 11);
    mpz_class root = 1;
    while (root * root < x.num_vertices()) ++root;
    mpz_class bound = 18 * root * 64;
    for (int i = 0; i < 8; ++i) bound *= static_cast<unsigned long>(k);
    t.expect(mpz_class(static_cast<unsigned long>(c.num_colors)) <= bound, "coloring uses too many colors");
    return t.outcome();
}

Outcome report_targets() {
    Tally t;
    cli::RunConfig cfg;
    const std::pair<int, std::size_t> targets[] = {{2, 46}, {3, 39}};
    std::ostringstream soft;
    for (const auto& [d, ref] : targets) {
        const auto cell = cli::report_cell(d, "10^10", Method::greedy, 0, cfg);
        t.expect(cell.torsion_ok == "yes", "d=" + std::to_string(d) + " torsion " + cell.torsion_ok);
        t.expect(cell.vertices_reduced < cell.vertices_initial, "d=" + std::to_string(d) + " did not shrink");
        soft << " d=" << d << ": " << cell.vertices_initial << " -> " << cell.vertices_reduced << " (reference " << ref
             << ", " << (cell.vertices_reduced <= 3 * ref ? "within" : "outside") << " 3x)";
    }
    return t.outcome("soft target, non-gating:" + soft.str());
}

// Cofactor expansion along the first row.
mpz_class cofactor_det(const std::vector<std::vector<mpz_class>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    mpz_class total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        std::vector<std::vector<mpz_class>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<mpz_class> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(a[i][c]);
            minor.push_back(std::move(row));
        }
        const mpz_class term = a[0][j] * cofactor_det(minor);
        total += (j % 2 == 0) ? term : mpz_class(-term);
    }
    return total;
}

// Invariant factors from gcds of k x k minors.
std::vector<mpz_class> determinantal_factors(const std::vector<std::vector<mpz_class>>& a) {
    const std::size_t n = a.size();
    std::vector<mpz_class> out;
    mpz_class prev = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        mpz_class g = 0;
        for (unsigned rows = 0; rows < (1u << n); ++rows) {
            if (static_cast<std::size_t>(__builtin_popcount(rows)) != k) continue;
            for (unsigned cols = 0; cols < (1u << n); ++cols) {
                if (static_cast<std::size_t>(__builtin_popcount(cols)) != k) continue;
                std::vector<std::vector<mpz_class>> m;
                for (std::size_t i = 0; i < n; ++i) {
                    if (!(rows >> i & 1)) continue;
                    std::vector<mpz_class> row;
                    for (std::size_t j = 0; j < n; ++j)
                        if (cols >> j & 1) row.push_back(a[i][j]);
                    m.push_back(std::move(row));
                }
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), mpz_class(cofactor_det(m)).get_mpz_t());
            }
        }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    out.resize(n, 0);
    return out;
}

std::vector<std::vector<mpz_class>> multiply(const std::vector<std::vector<mpz_class>>& a,
                                             const std::vector<std::vector<mpz_class>>& b) {
    std::vector<std::vector<mpz_class>> c(a.size(), std::vector<mpz_class>(b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

bool boundary_squares_to_zero(const SimplicialComplex& x) {
    for (int i = 2; i <= x.dimension(); ++i)
        if (!(boundary_matrix(x, i - 1) * boundary_matrix(x, i)).is_zero()) return false;
    return true;
}

SimplicialComplex random_small(std::mt19937& rng) {
    const std::size_t n = 5 + rng() % 4;
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::vector<Simplex> facets;
    const int count = 3 + static_cast<int>(rng() % 8);
    for (int k = 0; k < count; ++k) {
        std::shuffle(all.begin(), all.end(), rng);
        facets.emplace_back(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(2 + rng() % 3));
    }
    return build_complex(facets, n);
}

Outcome property_suites() {
    Tally t;
    std::vector<std::pair<std::string, SimplicialComplex>> constructions;
    for (int d = 2; d <= 5; ++d) {
        constructions.emplace_back("P(" + std::to_string(d) + ")", building_block(d).complex);
        constructions.emplace_back("telescope", telescope(d, 4).complex);
        constructions.emplace_back("punctured sphere", punctured_sphere(d, 3).complex);
    }
    for (const auto& c : reduction_cases()) constructions.emplace_back(c.label, c.x);
    for (const auto& [name, x] : constructions) t.expect(boundary_squares_to_zero(x), "boundary squared nonzero: " + name);

    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> entry(-6, 6);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::vector<mpz_class>> a(6, std::vector<mpz_class>(6));
        for (auto& row : a)
            for (auto& v : row) v = entry(rng);
        if (trial % 10 == 0) a[5] = a[0];  // some singular ones
        const auto snf = smith_normal_form(IntegerMatrix::from_dense(a), true);
        t.expect(snf.diag == determinantal_factors(a), "SNF differs from minor gcds");
        bool chain = true;
        for (std::size_t i = 0; i + 1 < snf.diag.size(); ++i)
            chain = chain && (snf.diag[i] == 0 ? snf.diag[i + 1] == 0 : snf.diag[i + 1] % snf.diag[i] == 0);
        t.expect(chain, "divisibility chain broken");
        const auto u = snf.U->to_dense(), v = snf.V->to_dense();
        auto uav = multiply(multiply(u, a), v);
        bool diagonal = true;
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) diagonal = diagonal && uav[i][j] == (i == j ? snf.diag[i] : 0);
        t.expect(diagonal, "U A V is not the diagonal");
        t.expect(abs(cofactor_det(u)) == 1 && abs(cofactor_det(v)) == 1, "witness not unimodular");
        mpz_class prod = 1;
        for (const auto& d : snf.diag) prod *= d;
        t.expect(abs(cofactor_det(a)) == prod, "|det| not preserved");
    }

    for (int trial = 0; trial < 50; ++trial) {
        const auto x = random_small(rng);
        const auto sx = suspension(x);
        for (int i : {1, 2}) t.expect(homology(x, i) == homology(sx, i + 1), "suspension shift fails");
    }

    const std::vector<Simplex> rp2 = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                      {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}};
    const std::vector<SimplicialComplex> fixtures = {build_complex(rp2, 6), assemble_cyclic(2, 25),
                                                     building_block(3).complex, sum_complex({7, {0, 1, 3}})};
    for (const auto& x : fixtures) {
        const auto base = homology_all(x);
        for (int k = 0; k < 20; ++k) {
            std::vector<Vertex> perm(x.num_vertices());
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            t.expect(homology_all(relabel(x, perm)) == base, "relabeling changed homology");
        }
    }
    return t.outcome();
}

struct MagnitudeRow {
    std::size_t n;
    std::vector<long long> a;
    double mantissa;
    int exponent;
};

Outcome random_and_magnitudes() {
    Tally t;
    for (std::size_t n = 3; n <= 10; ++n)
        for (int d = 1; d <= 4 && static_cast<std::size_t>(d) + 1 < n; ++d) {
            const std::string tag = "n=" + std::to_string(n) + " d=" + std::to_string(d);
            const auto empty = random_complex(n, d, 0, n);
            const auto h = homology(empty, d - 1, true);
            const std::size_t expect_free = binomial(n - 1, static_cast<std::size_t>(d));
            t.expect(h.free_rank() == expect_free && h.torsion_part().is_trivial(), tag + " empty: " + h.to_string());
            const auto full = random_complex(n, d, binomial(n, static_cast<std::size_t>(d) + 1), n);
            t.expect(homology(full, d - 1, true).is_trivial(), tag + " full not acyclic");
        }

    const std::vector<MagnitudeRow> rows = {
        {41, {0, 1, 3}, 2.157, 33},
        {47, {0, 2, 7}, 1.205, 63},  // the reference lists this value under n = 43, which gives about 4.9e52
        {53, {0, 6, 21}, 1.972, 84},
        {19, {0, 2, 3, 4}, 2.758, 29},
        {23, {0, 1, 3, 4}, 4.493, 38},
        {29, {0, 1, 5, 11}, 3.730, 253},
        {13, {0, 1, 3, 4, 5}, 4.118, 16},
        {17, {0, 2, 7, 8, 9}, 4.011, 102},
        {19, {0, 1, 2, 3, 6}, 2.377, 150},
    };
    for (const auto& row : rows) {
        const int d = static_cast<int>(row.a.size()) - 1;
        const auto order = torsion(sum_complex({row.n, row.a}), d - 1).torsion_order();
        const int exponent = static_cast<int>(order.get_str().size()) - 1;
        std::ostringstream tag;
        tag << "n=" << row.n << " exponent " << exponent << " vs " << row.exponent;
        t.expect(std::abs(exponent - row.exponent) <= 1, tag.str());
    }
    return t.outcome();
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "cyclic realization is exact", 60, cyclic_realization},
        {2, "worked example d=2 m=25", 1, worked_example},
        {3, "degree and vertex bounds", 120, degree_vertex_bounds},
        {4, "slotted sphere counts", 60, sphere_counts},
        {5, "sum complex golden values", 600, sum_complex_goldens},
        {6, "reduction preserves torsion", 600, reduction_correctness},
        {7, "LLL feasibility arithmetic", 1, lll_arithmetic},
        {8, "report at m=10^10", 900, report_targets},
        {9, "property suites", 300, property_suites},
        {10, "random boundary cases and torsion magnitudes", 600, random_and_magnitudes},
    };
    bool all_pass = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.limit_seconds;
        const bool pass = o.pass && in_time;
        all_pass = all_pass && pass;
        std::printf("%s  %2d  %-46s %8.2f s (limit %g s%s)  %s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                    c.limit_seconds, in_time ? "" : ", exceeded", o.detail.c_str());
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
