#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "forge/errors.hpp"

namespace forge {

/// Sparse matrix of arbitrary-precision integers, stored column-major.
/// Every column is kept sorted by row index and never holds an explicit zero.
class IntegerMatrix {
  public:
    using Entry = std::pair<std::size_t, mpz_class>;  // (row, value)

    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    /// Builds from unsorted column data; duplicate (row, col) entries are summed.
    IntegerMatrix(std::size_t rows, std::size_t cols, std::vector<std::vector<Entry>> columns)
        : rows_(rows), cols_(std::move(columns)) {
        if (cols_.size() != cols) throw InputError("IntegerMatrix: column count mismatch");
        for (auto& col : cols_) normalize_column(col, rows_);
    }

    static IntegerMatrix identity(std::size_t n) {
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.cols_[i].emplace_back(i, mpz_class(1));
        return m;
    }

    template <class T>
    static IntegerMatrix from_dense(const std::vector<std::vector<T>>& dense) {
        const std::size_t r = dense.size();
        const std::size_t c = r == 0 ? 0 : dense.front().size();
        IntegerMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (dense[i].size() != c) throw InputError("IntegerMatrix::from_dense: ragged rows");
            for (std::size_t j = 0; j < c; ++j) {
                mpz_class v(dense[i][j]);
                if (v != 0) m.cols_[j].emplace_back(i, std::move(v));
            }
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_.size(); }

    const std::vector<Entry>& column(std::size_t c) const { return cols_.at(c); }

    mpz_class at(std::size_t r, std::size_t c) const {
        check_index(r, c);
        const auto& col = cols_[c];
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const Entry& e, std::size_t row) { return e.first < row; });
        if (it != col.end() && it->first == r) return it->second;
        return 0;
    }

    void set(std::size_t r, std::size_t c, const mpz_class& v) {
        check_index(r, c);
        auto& col = cols_[c];
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const Entry& e, std::size_t row) { return e.first < row; });
        const bool present = it != col.end() && it->first == r;
        if (v == 0) {
            if (present) col.erase(it);
        } else if (present) {
            it->second = v;
        } else {
            col.insert(it, Entry{r, v});
        }
    }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& col : cols_) n += col.size();
        return n;
    }

    bool is_zero() const { return nonzeros() == 0; }

    IntegerMatrix transposed() const {
        std::vector<std::vector<Entry>> t(rows_);
        for (std::size_t c = 0; c < cols_.size(); ++c)
            for (const auto& [r, v] : cols_[c]) t[r].emplace_back(c, v);
        IntegerMatrix out(cols_.size(), rows_);
        out.cols_ = std::move(t);
        return out;
    }

    /// Matrix-vector product M x.
    std::vector<mpz_class> apply(std::span<const mpz_class> x) const {
        if (x.size() != cols()) throw InputError("IntegerMatrix::apply: dimension mismatch");
        std::vector<mpz_class> y(rows_, 0);
        for (std::size_t c = 0; c < cols_.size(); ++c) {
            if (x[c] == 0) continue;
            for (const auto& [r, v] : cols_[c]) y[r] += v * x[c];
        }
        return y;
    }

    std::vector<std::vector<mpz_class>> to_dense() const {
        std::vector<std::vector<mpz_class>> d(rows_, std::vector<mpz_class>(cols(), 0));
        for (std::size_t c = 0; c < cols_.size(); ++c)
            for (const auto& [r, v] : cols_[c]) d[r][c] = v;
        return d;
    }

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
        if (a.cols() != b.rows()) throw InputError("IntegerMatrix product: dimension mismatch");
        IntegerMatrix out(a.rows(), b.cols());
        std::map<std::size_t, mpz_class> acc;
        for (std::size_t j = 0; j < b.cols(); ++j) {
            acc.clear();
            for (const auto& [k, bv] : b.cols_[j])
                for (const auto& [i, av] : a.cols_[k]) acc[i] += av * bv;
            auto& col = out.cols_[j];
            for (auto& [i, v] : acc)
                if (v != 0) col.emplace_back(i, std::move(v));
        }
        return out;
    }

    friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_;
    }

  private:
    static void normalize_column(std::vector<Entry>& col, std::size_t rows) {
        std::sort(col.begin(), col.end(), [](const Entry& x, const Entry& y) { return x.first < y.first; });
        std::vector<Entry> merged;
        merged.reserve(col.size());
        for (auto& e : col) {
            if (e.first >= rows) throw InputError("IntegerMatrix: row index out of range");
            if (!merged.empty() && merged.back().first == e.first)
                merged.back().second += e.second;
            else
                merged.push_back(std::move(e));
        }
        std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
        col = std::move(merged);
    }

    void check_index(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_.size()) throw InputError("IntegerMatrix: index out of range");
    }

    std::size_t rows_ = 0;
    std::vector<std::vector<Entry>> cols_;
};

}  // namespace forge
