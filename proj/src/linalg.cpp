#include "carnot/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace carnot {

Vec zero_vec(std::size_t n) { return Vec(n, Rational(0)); }

Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v = zero_vec(n);
    v.at(i) = 1;
    return v;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

static void check_same_size(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
}

Vec add(const Vec& a, const Vec& b) {
    check_same_size(a, b);
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    check_same_size(a, b);
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scale(const Rational& c, const Vec& v) {
    Vec r(v);
    for (auto& x : r) x *= c;
    return r;
}

Vec negate(const Vec& v) { return scale(Rational(-1), v); }

Rational dot(const Vec& a, const Vec& b) {
    check_same_size(a, b);
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec mat_apply(const Mat& m, const Vec& x) {
    Vec y;
    y.reserve(m.size());
    for (const auto& row : m) y.push_back(dot(row, x));
    return y;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t n = a.size(), k = b.size(), m = b[0].size();
    Mat c(n, zero_vec(m));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != k) throw std::invalid_argument("matrix shape mismatch");
        for (std::size_t j = 0; j < k; ++j) {
            if (sgn(a[i][j]) == 0) continue;
            for (std::size_t l = 0; l < m; ++l) c[i][l] += a[i][j] * b[j][l];
        }
    }
    return c;
}

Vec column(const Mat& m, std::size_t j) {
    Vec c;
    c.reserve(m.size());
    for (const auto& row : m) c.push_back(row.at(j));
    return c;
}

Mat transpose(const Mat& m) {
    if (m.empty()) return {};
    Mat t(m[0].size(), zero_vec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

Echelon rref(Mat rows) {
    Echelon e;
    if (rows.empty()) return e;
    const std::size_t ncols = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != ncols) throw std::invalid_argument("inconsistent row lengths");

    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < ncols && pivot_row < rows.size(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < rows.size() && sgn(rows[sel][col]) == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[pivot_row], rows[sel]);
        const Rational inv = 1 / rows[pivot_row][col];
        for (auto& x : rows[pivot_row]) x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || sgn(rows[r][col]) == 0) continue;
            const Rational f = rows[r][col];
            for (std::size_t c = col; c < ncols; ++c) rows[r][c] -= f * rows[pivot_row][c];
        }
        e.pivots.push_back(col);
        ++pivot_row;
    }
    rows.resize(pivot_row);
    e.rows = std::move(rows);
    return e;
}

std::size_t rank(const Mat& rows) { return rref(rows).rows.size(); }

Mat kernel_basis(const Mat& rows, std::size_t ncols) {
    if (rows.empty()) {
        Mat full;
        for (std::size_t i = 0; i < ncols; ++i) full.push_back(unit_vec(ncols, i));
        return full;
    }
    Echelon e = rref(rows);
    std::vector<bool> is_pivot(ncols, false);
    for (std::size_t p : e.pivots) is_pivot[p] = true;

    Mat basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        Vec v = zero_vec(ncols);
        v[free] = 1;
        for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

bool EchelonBasis::insert(Vec v) {
    if (v.size() != ncols_) throw std::invalid_argument("EchelonBasis: size mismatch");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational f = v[pivots_[r]];
        if (sgn(f) == 0) continue;
        for (std::size_t c = 0; c < ncols_; ++c) v[c] -= f * rows_[r][c];
    }
    std::size_t piv = 0;
    while (piv < ncols_ && sgn(v[piv]) == 0) ++piv;
    if (piv == ncols_) return false;

    const Rational inv = 1 / v[piv];
    for (auto& x : v) x *= inv;
    // reduce earlier rows against the new pivot, then keep rows sorted by pivot
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational f = rows_[r][piv];
        if (sgn(f) == 0) continue;
        for (std::size_t c = 0; c < ncols_; ++c) rows_[r][c] -= f * v[c];
    }
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), piv);
    const std::size_t pos = static_cast<std::size_t>(it - pivots_.begin());
    pivots_.insert(it, piv);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    return true;
}

bool EchelonBasis::contains(Vec v) const {
    if (v.size() != ncols_) throw std::invalid_argument("EchelonBasis: size mismatch");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational f = v[pivots_[r]];
        if (sgn(f) == 0) continue;
        for (std::size_t c = 0; c < ncols_; ++c) v[c] -= f * rows_[r][c];
    }
    return is_zero(v);
}

std::optional<Vec> EchelonBasis::coordinates(const Vec& v) const {
    if (v.size() != ncols_) throw std::invalid_argument("EchelonBasis: size mismatch");
    // rows are fully reduced, so the coefficient of row r is v[pivot_r]
    Vec coef;
    coef.reserve(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) coef.push_back(v[pivots_[r]]);
    Vec recon = zero_vec(ncols_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (std::size_t c = 0; c < ncols_; ++c) recon[c] += coef[r] * rows_[r][c];
    if (recon != v) return std::nullopt;
    return coef;
}

}  // namespace carnot
