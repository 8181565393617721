#pragma once

#include <optional>
#include <vector>

#include "qcb/ratfunc.hpp"

namespace qcb {

using Vec = std::vector<RatFunc>;

/// Dense row-major matrix over Q(v).
class Mat {
public:
    Mat() = default;
    Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static Mat identity(size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    RatFunc& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    const RatFunc& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    Vec row(size_t r) const;
    Vec col(size_t c) const;
    void set_col(size_t c, const Vec& v);

    Mat operator*(const Mat& o) const;
    Vec apply(const Vec& x) const;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<RatFunc> a_;
};

size_t rank(Mat m);

/// Exact inverse; throws when singular.
Mat invert(const Mat& m);

/// One solution x of (columns) x = target, or nullopt when inconsistent.
/// Free variables are set to zero; pass expect_unique to assert full column
/// rank.
std::optional<Vec> solve_columns(const std::vector<Vec>& columns, const Vec& target,
                                 bool expect_unique = false);

/// Basis of the null space {x : m x = 0}.
std::vector<Vec> kernel_basis(const Mat& m);

/// Row-reduced span of the given vectors together with a membership reducer:
/// reduce(x) eliminates the pivot coordinates of the span; the result is zero
/// exactly when x lies in the span.
class SpanReducer {
public:
    explicit SpanReducer(const std::vector<Vec>& vectors);
    size_t dim() const { return rows_.size(); }
    size_t ambient() const { return ambient_; }
    Vec reduce(Vec x) const;
    bool contains(const Vec& x) const;

private:
    size_t ambient_ = 0;
    std::vector<Vec> rows_;     // rref rows, each with leading 1
    std::vector<size_t> lead_;  // pivot column per row
};

}  // namespace qcb
