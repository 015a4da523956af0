#pragma once

// Smith normal form over Z for sparse matrices.
//
// Elimination runs in two phases. The first takes unit pivots only, choosing
// the sparsest column that still holds a +-1 and, inside it, the shortest
// row; boundary matrices are mostly eliminated here with no coefficient
// growth. The second phase works on the unit-free core, always pivoting on an
// entry of least magnitude and using extended-gcd row/column combinations when
// the pivot does not divide its neighbours. The resulting diagonal form is
// brought to the divisibility chain with gcd/lcm exchanges.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "forge/errors.hpp"
#include "forge/matrix.hpp"

namespace forge {

struct SNFResult {
    /// Length min(rows, cols): invariant factors d1 | d2 | ... then zeros.
    std::vector<mpz_class> diag;
    std::size_t rank = 0;
    /// Present when requested: U * M * V equals the diagonal matrix.
    std::optional<IntegerMatrix> U;
    std::optional<IntegerMatrix> V;

    std::vector<mpz_class> nontrivial_factors() const {
        std::vector<mpz_class> out;
        for (std::size_t i = 0; i < rank; ++i)
            if (diag[i] != 1) out.push_back(diag[i]);
        return out;
    }
};

/// Turns any list of positive integers into the invariant-factor chain of the
/// same cyclic decomposition: pairwise (a, b) -> (gcd, lcm) until d_i | d_j.
inline void normalize_divisibility_chain(std::vector<mpz_class>& d) {
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (mpz_divisible_p(d[j].get_mpz_t(), d[i].get_mpz_t())) continue;
            mpz_class g = gcd(d[i], d[j]);
            mpz_class l = (d[i] / g) * d[j];
            d[i] = std::move(g);
            d[j] = std::move(l);
        }
}

namespace detail {

struct SparseEntry {
    std::uint32_t idx;
    mpz_class val;
};
using SparseVec = std::vector<SparseEntry>;  // sorted by idx, no zeros

inline const mpz_class* find_entry(const SparseVec& v, std::uint32_t idx) {
    auto it = std::lower_bound(v.begin(), v.end(), idx,
                               [](const SparseEntry& e, std::uint32_t k) { return e.idx < k; });
    return (it != v.end() && it->idx == idx) ? &it->val : nullptr;
}

/// dst += q * src. Calls on_create(idx) for new nonzeros and on_cancel(idx)
/// for entries that became zero.
template <class OnCreate, class OnCancel>
void axpy(SparseVec& dst, const mpz_class& q, const SparseVec& src, OnCreate&& on_create, OnCancel&& on_cancel) {
    SparseVec out;
    out.reserve(dst.size() + src.size());
    auto a = dst.begin();
    auto b = src.begin();
    mpz_class tmp;
    while (a != dst.end() || b != src.end()) {
        if (b == src.end() || (a != dst.end() && a->idx < b->idx)) {
            out.push_back(std::move(*a));
            ++a;
        } else if (a == dst.end() || b->idx < a->idx) {
            tmp = q * b->val;
            on_create(b->idx);
            out.push_back(SparseEntry{b->idx, tmp});
            ++b;
        } else {
            tmp = a->val + q * b->val;
            if (tmp == 0)
                on_cancel(a->idx);
            else
                out.push_back(SparseEntry{a->idx, tmp});
            ++a;
            ++b;
        }
    }
    dst = std::move(out);
}

inline void axpy(SparseVec& dst, const mpz_class& q, const SparseVec& src) {
    axpy(dst, q, src, [](std::uint32_t) {}, [](std::uint32_t) {});
}

/// (x, y) <- (s x + t y, u x + v y)
inline void combine(SparseVec& x, SparseVec& y, const mpz_class& s, const mpz_class& t, const mpz_class& u,
                    const mpz_class& v) {
    SparseVec nx = x;
    for (auto& e : nx) e.val *= s;
    axpy(nx, t, y);
    SparseVec ny = y;
    for (auto& e : ny) e.val *= v;
    axpy(ny, u, x);
    x = std::move(nx);
    y = std::move(ny);
}

inline void set_entry(SparseVec& v, std::uint32_t idx, mpz_class val) {
    auto it = std::lower_bound(v.begin(), v.end(), idx,
                               [](const SparseEntry& e, std::uint32_t k) { return e.idx < k; });
    const bool present = it != v.end() && it->idx == idx;
    if (val == 0) {
        if (present) v.erase(it);
    } else if (present) {
        it->val = std::move(val);
    } else {
        v.insert(it, SparseEntry{idx, std::move(val)});
    }
}

class SmithEliminator {
  public:
    SmithEliminator(const IntegerMatrix& m, bool track)
        : nrows_(m.rows()),
          ncols_(m.cols()),
          rows_(m.rows()),
          col_rows_(m.cols()),
          col_count_(m.cols(), 0),
          row_alive_(m.rows(), 1),
          col_alive_(m.cols(), 1),
          track_(track) {
        for (std::size_t c = 0; c < ncols_; ++c)
            for (const auto& [r, v] : m.column(c)) {
                rows_[r].push_back(SparseEntry{static_cast<std::uint32_t>(c), v});
                col_rows_[c].push_back(static_cast<std::uint32_t>(r));
                ++col_count_[c];
            }
        if (track_) {
            u_rows_.resize(nrows_);
            for (std::size_t i = 0; i < nrows_; ++i)
                u_rows_[i].push_back(SparseEntry{static_cast<std::uint32_t>(i), mpz_class(1)});
            v_cols_.resize(ncols_);
            for (std::size_t j = 0; j < ncols_; ++j)
                v_cols_[j].push_back(SparseEntry{static_cast<std::uint32_t>(j), mpz_class(1)});
        }
    }

    SNFResult run() {
        unit_phase();
        core_phase();
        return finish();
    }

  private:
    struct Pivot {
        std::uint32_t row;
        std::uint32_t col;
        mpz_class value;
    };

    // Rows currently holding a nonzero in column c (cleans the stored list).
    const std::vector<std::uint32_t>& column_rows(std::uint32_t c) {
        auto& list = col_rows_[c];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        std::erase_if(list, [&](std::uint32_t r) { return !row_alive_[r] || find_entry(rows_[r], c) == nullptr; });
        return list;
    }

    void row_axpy(std::uint32_t dst, const mpz_class& q, std::uint32_t src, std::vector<std::uint32_t>* touched) {
        axpy(
            rows_[dst], q, rows_[src],
            [&](std::uint32_t c) {
                ++col_count_[c];
                col_rows_[c].push_back(dst);
                if (touched) touched->push_back(c);
            },
            [&](std::uint32_t c) {
                --col_count_[c];
                if (touched) touched->push_back(c);
            });
        if (track_) axpy(u_rows_[dst], q, u_rows_[src]);
    }

    void detach_row(std::uint32_t r) {
        for (const auto& e : rows_[r]) --col_count_[e.idx];
    }
    void attach_row(std::uint32_t r) {
        for (const auto& e : rows_[r]) {
            ++col_count_[e.idx];
            col_rows_[e.idx].push_back(r);
        }
    }

    void set_matrix_entry(std::uint32_t r, std::uint32_t c, mpz_class val) {
        const bool before = find_entry(rows_[r], c) != nullptr;
        const bool after = val != 0;
        set_entry(rows_[r], c, std::move(val));
        if (before && !after) --col_count_[c];
        if (!before && after) {
            ++col_count_[c];
            col_rows_[c].push_back(r);
        }
    }

    void kill(std::uint32_t r, std::uint32_t c, mpz_class value) {
        detach_row(r);
        rows_[r].clear();
        row_alive_[r] = 0;
        col_alive_[c] = 0;
        pivots_.push_back(Pivot{r, c, std::move(value)});
    }

    void unit_phase() {
        using Item = std::pair<std::uint32_t, std::uint32_t>;  // (count, col)
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        std::vector<char> parked(ncols_, 0);
        for (std::uint32_t c = 0; c < ncols_; ++c)
            if (col_count_[c] > 0) heap.emplace(col_count_[c], c);
        std::vector<std::uint32_t> touched;
        while (!heap.empty()) {
            auto [cnt, c] = heap.top();
            heap.pop();
            if (!col_alive_[c] || parked[c] || cnt != col_count_[c] || cnt == 0) continue;
            const auto& rows = column_rows(c);
            std::uint32_t best = UINT32_MAX;
            std::size_t best_len = SIZE_MAX;
            for (std::uint32_t r : rows) {
                const mpz_class* v = find_entry(rows_[r], c);
                if ((*v == 1 || *v == -1) && rows_[r].size() < best_len) {
                    best = r;
                    best_len = rows_[r].size();
                }
            }
            if (best == UINT32_MAX) {
                parked[c] = 1;
                continue;
            }
            const std::uint32_t r = best;
            const mpz_class p = *find_entry(rows_[r], c);  // p == 1/p
            touched.clear();
            const std::vector<std::uint32_t> others(rows.begin(), rows.end());
            for (std::uint32_t i : others) {
                if (i == r) continue;
                mpz_class q = -(*find_entry(rows_[i], c)) * p;
                row_axpy(i, q, r, &touched);
            }
            // Column operations clearing the rest of row r only touch row r.
            if (track_)
                for (const auto& e : rows_[r])
                    if (e.idx != c) axpy(v_cols_[e.idx], mpz_class(-e.val * p), v_cols_[c]);
            for (const auto& e : rows_[r]) touched.push_back(e.idx);
            kill(r, c, p);
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
            for (std::uint32_t j : touched) {
                if (!col_alive_[j]) continue;
                parked[j] = 0;
                if (col_count_[j] > 0) heap.emplace(col_count_[j], j);
            }
        }
    }

    // Least |value|, ties broken by Markowitz cost.
    bool select_core_pivot(std::uint32_t& pr, std::uint32_t& pc) {
        const mpz_class* best = nullptr;
        std::size_t best_cost = SIZE_MAX;
        for (std::uint32_t r = 0; r < nrows_; ++r) {
            if (!row_alive_[r]) continue;
            const std::size_t rlen = rows_[r].size();
            for (const auto& e : rows_[r]) {
                const int cmp = best ? mpz_cmpabs(e.val.get_mpz_t(), best->get_mpz_t()) : -1;
                if (cmp > 0) continue;
                const std::size_t cost = (rlen - 1) * (col_count_[e.idx] - 1);
                if (cmp < 0 || cost < best_cost) {
                    best = &e.val;
                    best_cost = cost;
                    pr = r;
                    pc = e.idx;
                }
            }
        }
        return best != nullptr;
    }

    void core_phase() {
        if (!track_) {
            modular_core();
            return;
        }
        std::uint32_t r = 0;
        std::uint32_t c = 0;
        mpz_class g, s, t, u, v;
        while (select_core_pivot(r, c)) {
            for (;;) {
                // Clear column c below/above the pivot with row operations.
                const std::vector<std::uint32_t> rows = column_rows(c);
                for (std::uint32_t i : rows) {
                    if (i == r) continue;
                    const mpz_class p = *find_entry(rows_[r], c);
                    const mpz_class a = *find_entry(rows_[i], c);
                    if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
                        row_axpy(i, mpz_class(-(a / p)), r, nullptr);
                    } else {
                        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t(), a.get_mpz_t());
                        u = a / g;
                        v = -(p / g);
                        detach_row(r);
                        detach_row(i);
                        combine(rows_[r], rows_[i], s, t, u, v);
                        attach_row(r);
                        attach_row(i);
                        if (track_) combine(u_rows_[r], u_rows_[i], s, t, u, v);
                    }
                }
                // Clear row r with column operations.
                bool dirty = false;
                std::vector<std::uint32_t> cols;
                for (const auto& e : rows_[r])
                    if (e.idx != c) cols.push_back(e.idx);
                for (std::uint32_t j : cols) {
                    const mpz_class p = *find_entry(rows_[r], c);
                    const mpz_class* aj = find_entry(rows_[r], j);
                    if (!aj) continue;
                    const mpz_class a = *aj;
                    if (!dirty && mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
                        // Column c is clean, so col_j -= (a/p) col_c only zeroes (r, j).
                        set_matrix_entry(r, j, 0);
                        if (track_) axpy(v_cols_[j], mpz_class(-(a / p)), v_cols_[c]);
                    } else if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
                        column_axpy(j, mpz_class(-(a / p)), c);
                    } else {
                        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t(), a.get_mpz_t());
                        column_combine(c, j, s, t, mpz_class(a / g), mpz_class(-(p / g)));
                        dirty = true;
                    }
                }
                if (!dirty) break;
            }
            kill(r, c, *find_entry(rows_[r], c));
        }
    }

    using Dense = std::vector<std::vector<mpz_class>>;

    // Fraction-free echelon form. Returns the rank; `minor` receives the last
    // pivot, which is a nonzero rank x rank minor of `a`.
    static std::size_t bareiss_rank(Dense a, mpz_class& minor) {
        const std::size_t m = a.size(), n = a.empty() ? 0 : a[0].size();
        mpz_class prev = 1, tmp;
        std::size_t k = 0;
        for (std::size_t j = 0; j < n && k < m; ++j) {
            std::size_t p = m;
            std::size_t best_bits = SIZE_MAX;
            for (std::size_t i = k; i < m; ++i)
                if (a[i][j] != 0) {
                    const std::size_t b = mpz_sizeinbase(a[i][j].get_mpz_t(), 2);
                    if (b < best_bits) {
                        best_bits = b;
                        p = i;
                    }
                }
            if (p == m) continue;
            std::swap(a[k], a[p]);
            for (std::size_t i = k + 1; i < m; ++i) {
                for (std::size_t l = j + 1; l < n; ++l) {
                    tmp = a[i][l] * a[k][j];
                    mpz_submul(tmp.get_mpz_t(), a[i][j].get_mpz_t(), a[k][l].get_mpz_t());
                    mpz_divexact(a[i][l].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
                }
                a[i][j] = 0;
            }
            prev = a[k][j];
            ++k;
        }
        minor = prev;
        return k;
    }

    // Row-reduces `a` modulo n to upper echelon form with extended-gcd row
    // operations; zero rows are dropped.
    static void echelon_mod(Dense& a, const mpz_class& n) {
        const std::size_t m = a.size(), cols = a.empty() ? 0 : a[0].size();
        mpz_class g, s, t, u, v, x, y;
        std::size_t k = 0;
        for (std::size_t j = 0; j < cols && k < m; ++j) {
            std::size_t p = m;
            std::size_t best_bits = SIZE_MAX;
            for (std::size_t i = k; i < m; ++i)
                if (a[i][j] != 0) {
                    const std::size_t b = mpz_sizeinbase(a[i][j].get_mpz_t(), 2);
                    if (b < best_bits) {
                        best_bits = b;
                        p = i;
                    }
                }
            if (p == m) continue;
            std::swap(a[k], a[p]);
            for (std::size_t i = k + 1; i < m; ++i) {
                if (a[i][j] == 0) continue;
                if (mpz_divisible_p(a[i][j].get_mpz_t(), a[k][j].get_mpz_t())) {
                    const mpz_class q = a[i][j] / a[k][j];
                    for (std::size_t l = j; l < cols; ++l) {
                        mpz_submul(a[i][l].get_mpz_t(), q.get_mpz_t(), a[k][l].get_mpz_t());
                        mpz_mod(a[i][l].get_mpz_t(), a[i][l].get_mpz_t(), n.get_mpz_t());
                    }
                } else {
                    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[k][j].get_mpz_t(), a[i][j].get_mpz_t());
                    u = -(a[i][j] / g);
                    v = a[k][j] / g;
                    for (std::size_t l = j; l < cols; ++l) {
                        x = s * a[k][l] + t * a[i][l];
                        y = u * a[k][l] + v * a[i][l];
                        mpz_mod(a[k][l].get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
                        mpz_mod(a[i][l].get_mpz_t(), y.get_mpz_t(), n.get_mpz_t());
                    }
                }
            }
            if (a[k][j] != 0) ++k;
        }
        a.resize(k);
    }

    static Dense transpose(const Dense& a) {
        const std::size_t m = a.size(), n = a.empty() ? 0 : a[0].size();
        Dense t(n, std::vector<mpz_class>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) t[j][i] = a[i][j];
        return t;
    }

    // Invariant factors of the remaining core without coefficient growth.
    // With D a nonzero rank x rank minor every invariant factor divides D, so
    // computing modulo N = 2|D| (equivalently, of [core | N I]) recovers them
    // exactly: factors of the core show up as gcd(entry, N) < N.
    void modular_core() {
        std::vector<std::uint32_t> live_rows, live_cols;
        std::vector<std::uint32_t> col_pos(ncols_, UINT32_MAX);
        for (std::uint32_t j = 0; j < ncols_; ++j)
            if (col_alive_[j] && col_count_[j] > 0) {
                col_pos[j] = static_cast<std::uint32_t>(live_cols.size());
                live_cols.push_back(j);
            }
        for (std::uint32_t i = 0; i < nrows_; ++i)
            if (row_alive_[i] && !rows_[i].empty()) live_rows.push_back(i);
        if (live_rows.empty()) return;
        Dense a(live_rows.size(), std::vector<mpz_class>(live_cols.size(), 0));
        for (std::size_t i = 0; i < live_rows.size(); ++i)
            for (const auto& e : rows_[live_rows[i]]) a[i][col_pos[e.idx]] = e.val;
        if (a.size() > a[0].size()) a = transpose(a);

        mpz_class minor;
        const std::size_t rank = bareiss_rank(a, minor);
        const mpz_class n = 2 * abs(minor);
        for (auto& row : a)
            for (auto& v : row) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        for (int pass = 0;; ++pass) {
            if (pass > 64) throw VerificationError("smith_normal_form: modular diagonalization did not settle");
            echelon_mod(a, n);
            bool diagonal = true;
            for (std::size_t i = 0; i < a.size() && diagonal; ++i)
                for (std::size_t j = 0; j < a[i].size(); ++j)
                    if (j != i && a[i][j] != 0) {
                        diagonal = false;
                        break;
                    }
            if (diagonal) break;
            a = transpose(a);
        }
        std::vector<mpz_class> factors;
        for (std::size_t i = 0; i < a.size(); ++i) {
            mpz_class g = gcd(a[i][i], n);
            if (g != n) factors.push_back(std::move(g));
        }
        if (factors.size() != rank) throw VerificationError("smith_normal_form: modular rank disagrees with exact rank");
        for (auto& f : factors) pivots_.push_back(Pivot{0, 0, std::move(f)});
    }

    // col_j += q col_c
    void column_axpy(std::uint32_t j, const mpz_class& q, std::uint32_t c) {
        const std::vector<std::uint32_t> rows = column_rows(c);
        for (std::uint32_t i : rows) {
            const mpz_class* ac = find_entry(rows_[i], c);
            const mpz_class* aj = find_entry(rows_[i], j);
            mpz_class nv = (aj ? *aj : mpz_class(0)) + q * (*ac);
            set_matrix_entry(i, j, std::move(nv));
        }
        if (track_) axpy(v_cols_[j], q, v_cols_[c]);
    }

    // (col_c, col_j) <- (s col_c + t col_j, u col_c + v col_j)
    void column_combine(std::uint32_t c, std::uint32_t j, const mpz_class& s, const mpz_class& t,
                        const mpz_class& u, const mpz_class& v) {
        std::vector<std::uint32_t> rows = column_rows(c);
        const auto& rj = column_rows(j);
        rows.insert(rows.end(), rj.begin(), rj.end());
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        for (std::uint32_t i : rows) {
            const mpz_class* pc = find_entry(rows_[i], c);
            const mpz_class* pj = find_entry(rows_[i], j);
            const mpz_class ac = pc ? *pc : mpz_class(0);
            const mpz_class aj = pj ? *pj : mpz_class(0);
            set_matrix_entry(i, c, s * ac + t * aj);
            set_matrix_entry(i, j, u * ac + v * aj);
        }
        if (track_) combine(v_cols_[c], v_cols_[j], s, t, u, v);
    }

    SNFResult finish() {
        SNFResult res;
        const std::size_t n = std::min(nrows_, ncols_);
        res.rank = pivots_.size();
        // Units first, then the rest; both in pivot order.
        std::vector<std::size_t> order(pivots_.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::stable_partition(order.begin(), order.end(), [&](std::size_t k) { return mpz_cmpabs_ui(pivots_[k].value.get_mpz_t(), 1) == 0; });
        std::vector<mpz_class> d;
        d.reserve(order.size());
        for (std::size_t k : order) d.push_back(abs(pivots_[k].value));

        if (!track_) {
            std::size_t first_big = 0;
            while (first_big < d.size() && d[first_big] == 1) ++first_big;
            std::vector<mpz_class> tail(d.begin() + static_cast<std::ptrdiff_t>(first_big), d.end());
            normalize_divisibility_chain(tail);
            std::copy(tail.begin(), tail.end(), d.begin() + static_cast<std::ptrdiff_t>(first_big));
            res.diag = std::move(d);
            res.diag.resize(n, 0);
            return res;
        }

        // Assemble U (rows) and V (columns) with pivot k moved to position k.
        std::vector<SparseVec> urows;
        std::vector<SparseVec> vcols;
        std::vector<char> used_row(nrows_, 0);
        std::vector<char> used_col(ncols_, 0);
        for (std::size_t k : order) {
            const auto& pv = pivots_[k];
            SparseVec ur = u_rows_[pv.row];
            if (pv.value < 0)
                for (auto& e : ur) e.val = -e.val;
            urows.push_back(std::move(ur));
            vcols.push_back(v_cols_[pv.col]);
            used_row[pv.row] = 1;
            used_col[pv.col] = 1;
        }
        for (std::uint32_t i = 0; i < nrows_; ++i)
            if (!used_row[i]) urows.push_back(u_rows_[i]);
        for (std::uint32_t j = 0; j < ncols_; ++j)
            if (!used_col[j]) vcols.push_back(v_cols_[j]);

        mpz_class g, s, t;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] == 1) continue;
            for (std::size_t j = i + 1; j < d.size(); ++j) {
                if (mpz_divisible_p(d[j].get_mpz_t(), d[i].get_mpz_t())) continue;
                mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
                const mpz_class a_g = d[i] / g;
                const mpz_class b_g = d[j] / g;
                // rows: (s, t; -b/g, a/g), columns: (1, -t b/g; 1, s a/g)
                combine(urows[i], urows[j], s, t, mpz_class(-b_g), a_g);
                combine(vcols[i], vcols[j], mpz_class(1), mpz_class(1), mpz_class(-t * b_g), mpz_class(s * a_g));
                d[j] = a_g * d[j];
                d[i] = g;
            }
        }

        auto to_matrix = [](const std::vector<SparseVec>& vecs, std::size_t dim, bool as_rows) {
            std::vector<std::vector<IntegerMatrix::Entry>> cols(dim);
            for (std::size_t k = 0; k < vecs.size(); ++k)
                for (const auto& e : vecs[k]) {
                    if (as_rows)
                        cols[e.idx].emplace_back(k, e.val);
                    else
                        cols[k].emplace_back(e.idx, e.val);
                }
            return IntegerMatrix(dim, dim, std::move(cols));
        };
        res.U = to_matrix(urows, nrows_, true);
        res.V = to_matrix(vcols, ncols_, false);
        res.diag = std::move(d);
        res.diag.resize(n, 0);
        return res;
    }

    std::size_t nrows_;
    std::size_t ncols_;
    std::vector<SparseVec> rows_;
    std::vector<std::vector<std::uint32_t>> col_rows_;
    std::vector<std::uint32_t> col_count_;
    std::vector<char> row_alive_;
    std::vector<char> col_alive_;
    std::vector<Pivot> pivots_;
    bool track_;
    std::vector<SparseVec> u_rows_;  // row i of U, over original row indices
    std::vector<SparseVec> v_cols_;  // column j of V, over original column indices
};

}  // namespace detail

inline SNFResult smith_normal_form(const IntegerMatrix& m, bool want_witnesses = false) {
    return detail::SmithEliminator(m, want_witnesses).run();
}

/// An integer solution of M z = rhs, if one exists.
inline std::optional<std::vector<mpz_class>> solve_integer(const IntegerMatrix& m, std::span<const mpz_class> rhs) {
    if (rhs.size() != m.rows()) throw InputError("solve_integer: right-hand side has wrong length");
    const SNFResult snf = smith_normal_form(m, true);
    // U M V = D  =>  D (V^-1 z) = U rhs
    const std::vector<mpz_class> y = snf.U->apply(rhs);
    std::vector<mpz_class> w(m.cols(), 0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < snf.rank) {
            if (!mpz_divisible_p(y[i].get_mpz_t(), snf.diag[i].get_mpz_t())) return std::nullopt;
            w[i] = y[i] / snf.diag[i];
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return snf.V->apply(w);
}

}  // namespace forge
