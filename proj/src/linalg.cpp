#include "qcb/linalg.hpp"

#include "qcb/error.hpp"

namespace qcb {

Mat Mat::identity(size_t n) {
    Mat m(n, n);
    for (size_t k = 0; k < n; ++k) m.at(k, k) = RatFunc::one();
    return m;
}

Vec Mat::row(size_t r) const {
    Vec v(cols_);
    for (size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
}

Vec Mat::col(size_t c) const {
    Vec v(rows_);
    for (size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

void Mat::set_col(size_t c, const Vec& v) {
    check(v.size() == rows_, "column size mismatch");
    for (size_t r = 0; r < rows_; ++r) at(r, c) = v[r];
}

Mat Mat::operator*(const Mat& o) const {
    check(cols_ == o.rows_, "matrix product size mismatch");
    Mat r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

Vec Mat::apply(const Vec& x) const {
    check(x.size() == cols_, "vector size mismatch");
    Vec y(rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c)
            if (!at(r, c).is_zero() && !x[c].is_zero()) y[r] += at(r, c) * x[c];
    return y;
}

namespace {

// In-place Gauss-Jordan to reduced row echelon form; returns pivot columns.
std::vector<size_t> rref(Mat& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t p = r;
        while (p < m.rows() && m.at(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
        RatFunc inv = m.at(r, c).inverse();
        for (size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            RatFunc f = m.at(i, c);
            for (size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

size_t rank(Mat m) { return rref(m).size(); }

Mat invert(const Mat& m) {
    check(m.rows() == m.cols(), "inverse needs a square matrix");
    size_t n = m.rows();
    Mat aug(n, 2 * n);
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, n + r) = RatFunc::one();
    }
    auto pivots = rref(aug);
    check(pivots.size() == n && pivots.back() == n - 1, "singular matrix");
    Mat inv(n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
    return inv;
}

std::optional<Vec> solve_columns(const std::vector<Vec>& columns, const Vec& target,
                                 bool expect_unique) {
    size_t n = columns.size();
    size_t rows = target.size();
    for (const auto& c : columns) check(c.size() == rows, "column size mismatch");
    Mat aug(rows, n + 1);
    for (size_t c = 0; c < n; ++c)
        for (size_t r = 0; r < rows; ++r) aug.at(r, c) = columns[c][r];
    for (size_t r = 0; r < rows; ++r) aug.at(r, n) = target[r];
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;  // inconsistent
    if (expect_unique) check(pivots.size() == n, "solution is not unique");
    Vec x(n);
    for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.at(k, n);
    return x;
}

std::vector<Vec> kernel_basis(const Mat& m) {
    Mat r = m;
    auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        Vec x(m.cols());
        x[c] = RatFunc::one();
        for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -r.at(k, c);
        basis.push_back(x);
    }
    return basis;
}

SpanReducer::SpanReducer(const std::vector<Vec>& vectors) {
    if (!vectors.empty()) ambient_ = vectors[0].size();
    for (const auto& v : vectors) {
        check(v.size() == ambient_, "vector size mismatch");
        Vec r = reduce(v);
        size_t lead = ambient_;
        for (size_t c = 0; c < ambient_; ++c)
            if (!r[c].is_zero()) {
                lead = c;
                break;
            }
        if (lead == ambient_) continue;  // dependent
        RatFunc inv = r[lead].inverse();
        for (auto& x : r) x *= inv;
        // keep existing rows reduced against the new one
        for (size_t k = 0; k < rows_.size(); ++k) {
            RatFunc f = rows_[k][lead];
            if (f.is_zero()) continue;
            for (size_t c = 0; c < ambient_; ++c) rows_[k][c] -= f * r[c];
        }
        rows_.push_back(std::move(r));
        lead_.push_back(lead);
    }
}

Vec SpanReducer::reduce(Vec x) const {
    check(x.size() == ambient_ || rows_.empty(), "vector size mismatch");
    for (size_t k = 0; k < rows_.size(); ++k) {
        RatFunc f = x[lead_[k]];
        if (f.is_zero()) continue;
        for (size_t c = 0; c < ambient_; ++c) x[c] -= f * rows_[k][c];
    }
    return x;
}

bool SpanReducer::contains(const Vec& x) const {
    Vec r = reduce(x);
    for (const auto& c : r)
        if (!c.is_zero()) return false;
    return true;
}

}  // namespace qcb
