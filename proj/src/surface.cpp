#include "carnot/surface.hpp"

#include <stdexcept>

#include "carnot/catalog.hpp"

namespace carnot {

LevelSurface::LevelSurface(AlgebraPtr alg, MultiPoly f) : alg_(std::move(alg)), f_(std::move(f)) {
    if (!alg_) throw std::invalid_argument("LevelSurface: null algebra");
    if (f_.nvars() != alg_->dim())
        throw std::invalid_argument("LevelSurface: f arity must match the ambient dimension");
    if (f_.is_zero()) throw std::invalid_argument("LevelSurface: zero defining function");
    const CarnotGroup g(alg_);
    for (std::size_t i = 0; i < alg_->first_stratum_dim(); ++i)
        grad_.push_back(g.left_invariant_field(i).apply(f_));
}

bool LevelSurface::contains(const Vec& p) const { return sgn(f_.eval(p)) == 0; }

Vec horizontal_gradient(const LevelSurface& s, const Vec& p) {
    if (p.size() != s.algebra().dim())
        throw std::invalid_argument("horizontal_gradient: dimension mismatch");
    Vec g;
    g.reserve(s.gradient_polys().size());
    for (const auto& gi : s.gradient_polys()) g.push_back(gi.eval(p));
    return g;
}

bool is_characteristic(const LevelSurface& s, const Vec& p) {
    return is_zero(horizontal_gradient(s, p));
}

TangentGroupReport tangent_group(const LevelSurface& s, const Vec& p) {
    const StratifiedAlgebra& a = s.algebra();
    TangentGroupReport rep;
    rep.point = p;
    rep.horizontal_gradient = horizontal_gradient(s, p);
    rep.characteristic = is_zero(rep.horizontal_gradient);
    rep.ambient_q = a.homogeneous_dimension();
    if (rep.characteristic)
        throw std::domain_error("tangent group undefined at a characteristic point");

    const std::size_t n = a.dim(), m = a.first_stratum_dim();
    Mat gens;
    for (const auto& kv : kernel_basis({rep.horizontal_gradient}, m)) {
        Vec v = zero_vec(n);
        for (std::size_t i = 0; i < m; ++i) v[i] = kv[i];
        gens.push_back(std::move(v));
    }
    for (std::size_t i = m; i < n; ++i) gens.push_back(unit_vec(n, i));
    rep.tangent = Subalgebra::span(s.algebra_ptr(), gens);
    rep.tangent_q = rep.tangent->homogeneous_dimension();
    return rep;
}

std::vector<Vec> scan_characteristic(const LevelSurface& s, const GridSpec& grid) {
    const std::size_t n = s.algebra().dim();
    if (grid.vars.empty()) throw std::invalid_argument("scan_characteristic: empty grid");
    if (grid.vars.size() != grid.lo.size() || grid.vars.size() != grid.hi.size() ||
        grid.vars.size() != grid.count.size())
        throw std::invalid_argument("scan_characteristic: inconsistent grid spec");
    for (std::size_t c : grid.count)
        if (c == 0) throw std::invalid_argument("scan_characteristic: empty grid");

    Vec point = grid.base.empty() ? zero_vec(n) : grid.base;
    if (point.size() != n) throw std::invalid_argument("scan_characteristic: bad base point");

    std::vector<Vec> found;
    std::vector<std::size_t> idx(grid.vars.size(), 0);
    while (true) {
        for (std::size_t d = 0; d < grid.vars.size(); ++d) {
            const Rational t = grid.count[d] == 1
                                   ? grid.lo[d]
                                   : grid.lo[d] + (grid.hi[d] - grid.lo[d]) *
                                                      rat(static_cast<long>(idx[d])) /
                                                      rat(static_cast<long>(grid.count[d] - 1));
            point[grid.vars[d]] = t;
        }
        if (abs(s.f().eval(point)) <= grid.tolerance && is_characteristic(s, point))
            found.push_back(point);

        std::size_t d = 0;
        while (d < idx.size() && ++idx[d] == grid.count[d]) idx[d++] = 0;
        if (d == idx.size()) break;
    }
    return found;
}

DistributionBasis induced_distribution(const LevelSurface& s, const Vec& p) {
    const StratifiedAlgebra& a = s.algebra();
    if (!heisenberg_rank(a))
        throw std::invalid_argument("induced_distribution: ambient must be a Heisenberg group");
    const Vec grad = horizontal_gradient(s, p);
    if (is_zero(grad))
        throw std::domain_error("induced distribution undefined at a characteristic point");

    const CarnotGroup g(s.algebra_ptr());
    DistributionBasis basis;
    basis.horizontal_coeffs = kernel_basis({grad}, a.first_stratum_dim());
    for (const auto& c : basis.horizontal_coeffs) {
        Vec v = zero_vec(a.dim());
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (sgn(c[i]) == 0) continue;
            v = add(v, scale(c[i], g.left_invariant_field(i).eval(p)));
        }
        basis.ambient_vectors.push_back(std::move(v));
    }
    return basis;
}

std::vector<PolyVectorField> y_frame(const LevelSurface& s, std::size_t pivot) {
    const StratifiedAlgebra& a = s.algebra();
    const auto rank = heisenberg_rank(a);
    if (!rank) throw std::invalid_argument("y_frame: ambient must be a Heisenberg group");
    const std::size_t nbar = *rank;
    if (nbar < 2) throw std::invalid_argument("y_frame: Heisenberg rank must be at least 2");
    if (pivot >= nbar) throw std::invalid_argument("y_frame: pivot out of range");

    const CarnotGroup g(s.algebra_ptr());
    std::vector<PolyVectorField> fields;
    for (std::size_t i = 0; i < 2 * nbar; ++i) fields.push_back(g.left_invariant_field(i));
    const auto& grad = s.gradient_polys();

    // per index pair (i, j, i+n, j+n) the three gradient-orthogonal fields
    const auto triple = [&](std::size_t i, std::size_t j) {
        const std::size_t i2 = i + nbar, j2 = j + nbar;
        const auto &fi = grad[i], &fj = grad[j], &fi2 = grad[i2], &fj2 = grad[j2];
        std::vector<PolyVectorField> out;
        out.push_back((-fj) * fields[i] + fi * fields[j] + (-fj2) * fields[i2] +
                      fi2 * fields[j2]);
        out.push_back((-fi2) * fields[i] + fj2 * fields[j] + fi * fields[i2] +
                      (-fj) * fields[j2]);
        out.push_back((-fj2) * fields[i] + (-fi2) * fields[j] + fj * fields[i2] +
                      fi * fields[j2]);
        return out;
    };

    std::vector<PolyVectorField> frame;
    for (std::size_t j = 0; j < nbar; ++j) {
        if (j == pivot) continue;
        for (auto& y : triple(pivot, j)) frame.push_back(std::move(y));
    }
    return frame;
}

std::vector<std::size_t> growth_vector(const LevelSurface& s,
                                       const std::vector<PolyVectorField>& frame, const Vec& p,
                                       std::size_t maxdepth) {
    if (frame.empty()) throw std::invalid_argument("growth_vector: empty frame");
    for (const auto& v : frame)
        if (sgn(v.apply(s.f()).eval(p)) != 0)
            throw std::invalid_argument("growth_vector: frame is not tangent to the surface");

    const std::size_t n = s.algebra().dim();
    std::vector<std::size_t> dims;
    EchelonBasis span(n);
    std::vector<PolyVectorField> level = frame;
    for (const auto& v : level) span.insert(v.eval(p));
    dims.push_back(span.rank());
    for (std::size_t depth = 2; depth <= maxdepth; ++depth) {
        std::vector<PolyVectorField> next;
        for (const auto& u : frame)
            for (const auto& v : level) {
                PolyVectorField b = field_bracket(u, v);
                if (!b.is_zero()) {
                    span.insert(b.eval(p));
                    next.push_back(std::move(b));
                }
            }
        dims.push_back(span.rank());
        level = std::move(next);
        if (level.empty()) {
            while (dims.size() < maxdepth) dims.push_back(span.rank());
            break;
        }
    }
    return dims;
}

}  // namespace carnot
