#pragma once

#include <optional>

#include "carnot/algebra.hpp"
#include "carnot/vector_field.hpp"

namespace carnot {

/// Group operations in exponential coordinates of the first kind. Points are
/// coordinate vectors of length algebra().dim(). Supports step <= 3, where
/// the truncated product series is the exact group law.
class CarnotGroup {
  public:
    explicit CarnotGroup(AlgebraPtr alg);

    const StratifiedAlgebra& algebra() const { return *alg_; }
    AlgebraPtr algebra_ptr() const { return alg_; }

    Vec identity() const { return zero_vec(alg_->dim()); }

    /// exp^{-1}(exp(p) exp(q)).
    Vec product(const Vec& p, const Vec& q) const;
    Vec inverse(const Vec& p) const { return negate(p); }
    /// Conjugation-free shorthand for inverse(p) * q.
    Vec difference(const Vec& p, const Vec& q) const { return product(inverse(p), q); }

    /// Coordinate i scaled by lambda^degree(i).
    Vec dilate(const Vec& p, const Rational& lambda) const;

    /// The left-invariant field extending the i-th basis vector, with exact
    /// polynomial coefficients (0-based index).
    PolyVectorField left_invariant_field(std::size_t i) const;

    /// Coefficients c_i(x) with v = sum_i c_i(x) X_i(x); exact, always
    /// solvable because the frame matrix is unitriangular.
    std::vector<MultiPoly> frame_coefficients(const PolyVectorField& v) const;

  private:
    std::vector<MultiPoly> symbolic_bracket(const std::vector<MultiPoly>& u,
                                            const std::vector<MultiPoly>& v) const;

    AlgebraPtr alg_;
};

/// Step-2 data: [X_j, X_l] = sum_k B^k_{lj} Y_k with skew-symmetric B^k.
struct Step2Form {
    std::size_t m = 0;        // first stratum dimension
    std::size_t centers = 0;  // second stratum dimension
    std::vector<Mat> B;       // centers matrices, each m x m
};

/// Extracts the B-matrices of a step-2 algebra; nullopt if step != 2.
std::optional<Step2Form> step2_form(const StratifiedAlgebra& alg);

/// Closed-form step-2 product: x + xt in the first stratum and
/// y_k + yt_k + (1/2) B^k_{jl} xt_j x_l in the centers.
Vec step2_product(const Step2Form& f, const Vec& a, const Vec& b);

/// Double-precision mirror of the closed form, for numeric curve work.
std::vector<double> step2_product_d(const Step2Form& f, std::span<const double> a,
                                    std::span<const double> b);
std::vector<double> step2_inverse_d(std::span<const double> a);

}  // namespace carnot
