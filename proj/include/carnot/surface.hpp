#pragma once

#include <optional>

#include "carnot/group.hpp"

namespace carnot {

/// Level-set hypersurface {f = 0} in a Carnot group, with polynomial f in
/// the exponential coordinates of the ambient algebra.
class LevelSurface {
  public:
    LevelSurface(AlgebraPtr alg, MultiPoly f);

    const StratifiedAlgebra& algebra() const { return *alg_; }
    AlgebraPtr algebra_ptr() const { return alg_; }
    const MultiPoly& f() const { return f_; }

    bool contains(const Vec& p) const;

    /// The polynomials X_1 f, ..., X_m f (built once, cached).
    const std::vector<MultiPoly>& gradient_polys() const { return grad_; }

  private:
    AlgebraPtr alg_;
    MultiPoly f_;
    std::vector<MultiPoly> grad_;
};

/// (X_1 f, ..., X_m f) evaluated at p, exact.
Vec horizontal_gradient(const LevelSurface& s, const Vec& p);

bool is_characteristic(const LevelSurface& s, const Vec& p);

struct TangentGroupReport {
    Vec point;
    Vec horizontal_gradient;
    bool characteristic = false;
    std::optional<Subalgebra> tangent;  // codimension 1, graded
    std::size_t ambient_q = 0;
    std::size_t tangent_q = 0;
    // set by the catalog pipeline for the mu-family surface
    std::optional<Rational> mu;
    std::optional<Rational> invariant;
    bool invariant_defined = false;
};

/// Tangent group at a non-characteristic point: the kernel of the horizontal
/// gradient covector inside V_1, plus every higher stratum. Throws
/// std::domain_error at characteristic points.
TangentGroupReport tangent_group(const LevelSurface& s, const Vec& p);

/// Rectangular rational grid over a subset of the coordinates; the other
/// coordinates stay fixed at the base point values.
struct GridSpec {
    std::vector<std::size_t> vars;
    Vec lo, hi;
    std::vector<std::size_t> count;  // samples per varying coordinate, >= 1
    Vec base;                        // length n; defaults to the origin when empty
    Rational tolerance = Rational(0);
};

/// Characteristic points among grid points with |f| <= tolerance, exact.
std::vector<Vec> scan_characteristic(const LevelSurface& s, const GridSpec& grid);

struct DistributionBasis {
    Mat horizontal_coeffs;  // combinations of X_1..X_m, rows echelonized
    Mat ambient_vectors;    // the same combinations evaluated at the point
};

/// Basis of V_1(p) /\ T_p S in a Heisenberg group at a non-characteristic
/// point; always (2n-1)-dimensional.
DistributionBasis induced_distribution(const LevelSurface& s, const Vec& p);

/// Polynomial frame spanning the induced distribution of a surface in a
/// Heisenberg group of rank >= 2. For rank 2 these are the three classical
/// fields built from the horizontal gradient, independent wherever the
/// gradient is nonzero. For rank > 2 the frame is assembled blockwise from
/// the pivot pair (pivot, pivot+n) against every other index pair; it spans
/// the distribution wherever the pivot block of the gradient is nonzero.
std::vector<PolyVectorField> y_frame(const LevelSurface& s, std::size_t pivot = 0);

/// Dimensions of the iterated bracket spans of the frame at p, up to
/// maxdepth. Requires every frame field to annihilate f at p.
std::vector<std::size_t> growth_vector(const LevelSurface& s,
                                       const std::vector<PolyVectorField>& frame, const Vec& p,
                                       std::size_t maxdepth);

}  // namespace carnot
