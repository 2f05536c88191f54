#include "carnot/vector_field.hpp"

#include <stdexcept>

namespace carnot {

PolyVectorField::PolyVectorField(std::vector<MultiPoly> components)
    : dim_(components.size()), comp_(std::move(components)) {
    for (const auto& c : comp_)
        if (c.nvars() != dim_)
            throw std::invalid_argument("PolyVectorField: component arity mismatch");
}

PolyVectorField PolyVectorField::coordinate(std::size_t dim, std::size_t i) {
    PolyVectorField f(dim);
    f.comp_.at(i) = MultiPoly::constant(dim, Rational(1));
    return f;
}

PolyVectorField PolyVectorField::constant(const Vec& v) {
    PolyVectorField f(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) f.comp_[i] = MultiPoly::constant(v.size(), v[i]);
    return f;
}

bool PolyVectorField::is_zero() const {
    for (const auto& c : comp_)
        if (!c.is_zero()) return false;
    return true;
}

MultiPoly PolyVectorField::apply(const MultiPoly& p) const {
    if (p.nvars() != dim_) throw std::invalid_argument("poly_apply: arity mismatch");
    MultiPoly r(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        if (comp_[j].is_zero()) continue;
        r += comp_[j] * p.derivative(j);
    }
    return r;
}

Vec PolyVectorField::eval(std::span<const Rational> x) const {
    Vec v;
    v.reserve(dim_);
    for (const auto& c : comp_) v.push_back(c.eval(x));
    return v;
}

std::vector<double> PolyVectorField::eval_d(std::span<const double> x) const {
    std::vector<double> v;
    v.reserve(dim_);
    for (const auto& c : comp_) v.push_back(c.eval_d(x));
    return v;
}

PolyVectorField& PolyVectorField::operator+=(const PolyVectorField& o) {
    if (dim_ != o.dim_) throw std::invalid_argument("PolyVectorField: dimension mismatch");
    for (std::size_t j = 0; j < dim_; ++j) comp_[j] += o.comp_[j];
    return *this;
}

PolyVectorField& PolyVectorField::operator-=(const PolyVectorField& o) {
    if (dim_ != o.dim_) throw std::invalid_argument("PolyVectorField: dimension mismatch");
    for (std::size_t j = 0; j < dim_; ++j) comp_[j] -= o.comp_[j];
    return *this;
}

PolyVectorField operator*(const MultiPoly& f, const PolyVectorField& v) {
    if (f.nvars() != v.dim_) throw std::invalid_argument("PolyVectorField: arity mismatch");
    PolyVectorField r(v.dim_);
    for (std::size_t j = 0; j < v.dim_; ++j) r.comp_[j] = f * v.comp_[j];
    return r;
}

PolyVectorField operator*(const Rational& c, const PolyVectorField& v) {
    PolyVectorField r(v.dim_);
    for (std::size_t j = 0; j < v.dim_; ++j) r.comp_[j] = c * v.comp_[j];
    return r;
}

PolyVectorField field_bracket(const PolyVectorField& v, const PolyVectorField& w) {
    if (v.dim() != w.dim()) throw std::invalid_argument("field_bracket: dimension mismatch");
    std::vector<MultiPoly> comps;
    comps.reserve(v.dim());
    for (std::size_t j = 0; j < v.dim(); ++j)
        comps.push_back(v.apply(w.component(j)) - w.apply(v.component(j)));
    return PolyVectorField(std::move(comps));
}

}  // namespace carnot
