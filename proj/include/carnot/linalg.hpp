#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;  // row-major list of rows

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
bool is_zero(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Rational& c, const Vec& v);
Vec negate(const Vec& v);
Rational dot(const Vec& a, const Vec& b);

/// y = M x, with M given as rows.
Vec mat_apply(const Mat& m, const Vec& x);
Mat mat_mul(const Mat& a, const Mat& b);
Vec column(const Mat& m, std::size_t j);
Mat transpose(const Mat& m);

/// Reduced row echelon form. Pivots are chosen at the lowest available
/// column and row, so bases produced from it are reproducible.
struct Echelon {
    Mat rows;                     // nonzero rows, pivot entries normalized to 1
    std::vector<std::size_t> pivots;  // pivot column per row
};
Echelon rref(Mat rows);

std::size_t rank(const Mat& rows);

/// Exact basis of {x : rows * x = 0}. Empty input means the full space.
Mat kernel_basis(const Mat& rows, std::size_t ncols);

/// Incremental reduced echelon basis of a row span.
class EchelonBasis {
  public:
    explicit EchelonBasis(std::size_t ncols) : ncols_(ncols) {}

    /// Inserts v into the span; returns true if the rank grew.
    bool insert(Vec v);
    bool contains(Vec v) const;
    /// Coefficients expressing v in the stored rows, if v lies in the span.
    std::optional<Vec> coordinates(const Vec& v) const;

    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return ncols_; }
    const Mat& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

  private:
    std::size_t ncols_;
    Mat rows_;
    std::vector<std::size_t> pivots_;  // strictly increasing
};

}  // namespace carnot
