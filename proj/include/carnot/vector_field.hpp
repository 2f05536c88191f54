#pragma once

#include <vector>

#include "carnot/poly.hpp"

namespace carnot {

/// Vector field on R^n whose components are polynomials in the n coordinates.
class PolyVectorField {
  public:
    explicit PolyVectorField(std::size_t dim)
        : dim_(dim), comp_(dim, MultiPoly(dim)) {}
    explicit PolyVectorField(std::vector<MultiPoly> components);

    /// The coordinate field d/dx_i.
    static PolyVectorField coordinate(std::size_t dim, std::size_t i);
    /// Constant field with the given coefficient vector.
    static PolyVectorField constant(const Vec& v);

    std::size_t dim() const { return dim_; }
    const MultiPoly& component(std::size_t j) const { return comp_.at(j); }
    bool is_zero() const;

    /// Directional derivative: sum_j comp_j * dp/dx_j.
    MultiPoly apply(const MultiPoly& p) const;

    Vec eval(std::span<const Rational> x) const;
    std::vector<double> eval_d(std::span<const double> x) const;

    PolyVectorField& operator+=(const PolyVectorField& o);
    PolyVectorField& operator-=(const PolyVectorField& o);
    friend PolyVectorField operator+(PolyVectorField a, const PolyVectorField& b) { return a += b; }
    friend PolyVectorField operator-(PolyVectorField a, const PolyVectorField& b) { return a -= b; }
    friend PolyVectorField operator*(const MultiPoly& f, const PolyVectorField& v);
    friend PolyVectorField operator*(const Rational& c, const PolyVectorField& v);

    bool operator==(const PolyVectorField& o) const = default;

  private:
    std::size_t dim_;
    std::vector<MultiPoly> comp_;
};

/// Commutator of vector fields: [v,w]_j = v(w_j) - w(v_j).
PolyVectorField field_bracket(const PolyVectorField& v, const PolyVectorField& w);

}  // namespace carnot
