#include "carnot/group.hpp"

#include <stdexcept>

namespace carnot {

CarnotGroup::CarnotGroup(AlgebraPtr alg) : alg_(std::move(alg)) {
    if (!alg_) throw std::invalid_argument("CarnotGroup: null algebra");
    if (alg_->step() > 3)
        throw std::domain_error("CarnotGroup: only steps 1..3 are supported");
}

Vec CarnotGroup::product(const Vec& p, const Vec& q) const {
    const StratifiedAlgebra& a = *alg_;
    if (p.size() != a.dim() || q.size() != a.dim())
        throw std::invalid_argument("product: dimension mismatch");
    Vec z = add(p, q);
    if (a.step() >= 2) {
        const Vec pq = a.bracket(p, q);
        z = add(z, scale(rat(1, 2), pq));
        if (a.step() >= 3) {
            z = add(z, scale(rat(1, 12), a.bracket(p, pq)));
            z = add(z, scale(rat(-1, 12), a.bracket(q, pq)));
        }
    }
    return z;
}

Vec CarnotGroup::dilate(const Vec& p, const Rational& lambda) const {
    const StratifiedAlgebra& a = *alg_;
    if (p.size() != a.dim()) throw std::invalid_argument("dilate: dimension mismatch");
    Vec out(p);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] *= pow_int(lambda, static_cast<long>(a.degree(i)));
    return out;
}

std::vector<MultiPoly> CarnotGroup::symbolic_bracket(const std::vector<MultiPoly>& u,
                                                     const std::vector<MultiPoly>& v) const {
    const StratifiedAlgebra& a = *alg_;
    const std::size_t n = a.dim();
    std::vector<MultiPoly> out(n, MultiPoly(n));
    for (const auto& t : a.bracket_table()) {
        // c * (u_i v_j - u_j v_i) contributes to coordinate k
        out[t.k] += t.c * (u[t.i] * v[t.j] - u[t.j] * v[t.i]);
    }
    return out;
}

PolyVectorField CarnotGroup::left_invariant_field(std::size_t i) const {
    const StratifiedAlgebra& a = *alg_;
    const std::size_t n = a.dim();
    if (i >= n) throw std::invalid_argument("left_invariant_field: index out of range");

    // d/dt at t=0 of product(x, t e_i): the t-linear part of the group law,
    //   e_i + (1/2)[x, e_i] + (1/12)[x, [x, e_i]]
    std::vector<MultiPoly> x(n, MultiPoly(n)), ei(n, MultiPoly(n));
    for (std::size_t j = 0; j < n; ++j) x[j] = MultiPoly::variable(n, j);
    ei[i] = MultiPoly::constant(n, Rational(1));

    std::vector<MultiPoly> comps = ei;
    if (a.step() >= 2) {
        const auto xe = symbolic_bracket(x, ei);
        for (std::size_t j = 0; j < n; ++j) comps[j] += rat(1, 2) * xe[j];
        if (a.step() >= 3) {
            const auto xxe = symbolic_bracket(x, xe);
            for (std::size_t j = 0; j < n; ++j) comps[j] += rat(1, 12) * xxe[j];
        }
    }
    return PolyVectorField(std::move(comps));
}

std::vector<MultiPoly> CarnotGroup::frame_coefficients(const PolyVectorField& v) const {
    const StratifiedAlgebra& a = *alg_;
    const std::size_t n = a.dim();
    if (v.dim() != n) throw std::invalid_argument("frame_coefficients: dimension mismatch");
    PolyVectorField rest = v;
    std::vector<MultiPoly> coef;
    coef.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        MultiPoly c = rest.component(i);
        coef.push_back(c);
        if (!c.is_zero()) rest -= c * left_invariant_field(i);
    }
    if (!rest.is_zero())
        throw std::logic_error("frame_coefficients: field did not reduce to zero");
    return coef;
}

std::optional<Step2Form> step2_form(const StratifiedAlgebra& alg) {
    if (alg.step() != 2) return std::nullopt;
    Step2Form f;
    f.m = alg.strata()[0];
    f.centers = alg.strata()[1];
    f.B.assign(f.centers, Mat(f.m, zero_vec(f.m)));
    for (std::size_t k = 0; k < f.centers; ++k)
        for (std::size_t a = 0; a < f.m; ++a)
            for (std::size_t b = 0; b < f.m; ++b)
                f.B[k][a][b] = alg.structure_constant(b, a, f.m + k);
    return f;
}

Vec step2_product(const Step2Form& f, const Vec& a, const Vec& b) {
    const std::size_t n = f.m + f.centers;
    if (a.size() != n || b.size() != n)
        throw std::invalid_argument("step2_product: dimension mismatch");
    Vec z = add(a, b);
    for (std::size_t k = 0; k < f.centers; ++k) {
        Rational s(0);
        for (std::size_t j = 0; j < f.m; ++j) {
            if (sgn(b[j]) == 0) continue;
            for (std::size_t l = 0; l < f.m; ++l) s += f.B[k][j][l] * b[j] * a[l];
        }
        z[f.m + k] += rat(1, 2) * s;
    }
    return z;
}

std::vector<double> step2_product_d(const Step2Form& f, std::span<const double> a,
                                    std::span<const double> b) {
    const std::size_t n = f.m + f.centers;
    if (a.size() != n || b.size() != n)
        throw std::invalid_argument("step2_product_d: dimension mismatch");
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = a[i] + b[i];
    for (std::size_t k = 0; k < f.centers; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < f.m; ++j)
            for (std::size_t l = 0; l < f.m; ++l)
                s += to_double(f.B[k][j][l]) * b[j] * a[l];
        z[f.m + k] += 0.5 * s;
    }
    return z;
}

std::vector<double> step2_inverse_d(std::span<const double> a) {
    std::vector<double> z(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) z[i] = -a[i];
    return z;
}

}  // namespace carnot
