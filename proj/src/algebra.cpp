#include "carnot/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace carnot {

bool ValidationReport::ok() const {
    if (!jacobi_failures.empty() || !grading_violations.empty() || !top_bracket_trivial)
        return false;
    return std::all_of(stratum_generation.begin(), stratum_generation.end(),
                       [](const StratumCheck& s) { return s.generated; });
}

StratifiedAlgebra::StratifiedAlgebra(std::string name, std::vector<std::size_t> strata,
                                     std::vector<std::string> labels,
                                     std::vector<BracketTerm> brackets)
    : name_(std::move(name)), strata_(std::move(strata)), labels_(std::move(labels)) {
    if (strata_.empty()) throw std::invalid_argument("algebra: no strata");
    for (std::size_t d : strata_)
        if (d == 0) throw std::invalid_argument("algebra: empty stratum");
    n_ = std::accumulate(strata_.begin(), strata_.end(), std::size_t{0});
    if (labels_.empty()) {
        for (std::size_t i = 0; i < n_; ++i) labels_.push_back("e" + std::to_string(i));
    }
    if (labels_.size() != n_) throw std::invalid_argument("algebra: label count mismatch");

    degree_.resize(n_);
    std::size_t idx = 0;
    for (std::size_t s = 0; s < strata_.size(); ++s)
        for (std::size_t r = 0; r < strata_[s]; ++r) degree_[idx++] = s + 1;

    bracket_of_.assign(n_, {});
    for (std::size_t i = 0; i < n_; ++i) bracket_of_[i].assign(n_, zero_vec(n_));
    for (auto t : brackets) {
        if (t.i >= n_ || t.j >= n_ || t.k >= n_)
            throw std::invalid_argument("algebra: bracket index out of range");
        if (t.i == t.j) throw std::invalid_argument("algebra: [e_i, e_i] entry");
        if (t.i > t.j) {
            std::swap(t.i, t.j);
            t.c = -t.c;
        }
        bracket_of_[t.i][t.j][t.k] += t.c;
    }
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k)
                if (sgn(bracket_of_[i][j][k]) != 0)
                    table_.push_back({i, j, k, bracket_of_[i][j][k]});
}

std::pair<std::size_t, std::size_t> StratifiedAlgebra::stratum_span(std::size_t s) const {
    if (s < 1 || s > strata_.size()) throw std::invalid_argument("stratum index out of range");
    std::size_t begin = 0;
    for (std::size_t t = 0; t + 1 < s; ++t) begin += strata_[t];
    return {begin, begin + strata_[s - 1]};
}

std::size_t StratifiedAlgebra::homogeneous_dimension() const {
    std::size_t q = 0;
    for (std::size_t s = 0; s < strata_.size(); ++s) q += (s + 1) * strata_[s];
    return q;
}

Rational StratifiedAlgebra::structure_constant(std::size_t i, std::size_t j,
                                               std::size_t k) const {
    if (i == j) return Rational(0);
    if (i < j) return bracket_of_[i][j][k];
    return -bracket_of_[j][i][k];
}

Vec StratifiedAlgebra::bracket(const Vec& u, const Vec& v) const {
    if (u.size() != n_ || v.size() != n_)
        throw std::invalid_argument("bracket: dimension mismatch");
    Vec out = zero_vec(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (sgn(u[i]) == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (sgn(v[j]) == 0 || i == j) continue;
            const Vec& bij = i < j ? bracket_of_[i][j] : bracket_of_[j][i];
            if (is_zero(bij)) continue;
            const Rational f = i < j ? u[i] * v[j] : -u[i] * v[j];
            for (std::size_t k = 0; k < n_; ++k) out[k] += f * bij[k];
        }
    }
    return out;
}

ValidationReport StratifiedAlgebra::validate() const {
    ValidationReport rep;

    for (const auto& t : table_) {
        if (degree_[t.k] != degree_[t.i] + degree_[t.j])
            rep.grading_violations.push_back({t.i, t.j, t.k, t.c});
        if (degree_[t.i] + degree_[t.j] > step()) rep.top_bracket_trivial = false;
    }

    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            for (std::size_t k = j + 1; k < n_; ++k) {
                Vec jac = bracket(bracket_of_[i][j], unit_vec(n_, k));
                jac = add(jac, bracket(bracket_of_[j][k], unit_vec(n_, i)));
                jac = add(jac, bracket(negate(bracket_of_[i][k]), unit_vec(n_, j)));
                if (!is_zero(jac)) rep.jacobi_failures.push_back({{i, j, k}, std::move(jac)});
            }

    const auto [v1_begin, v1_end] = stratum_span(1);
    for (std::size_t s = 1; s < step(); ++s) {
        const auto [b, e] = stratum_span(s);
        EchelonBasis gen(n_);
        for (std::size_t a = v1_begin; a < v1_end; ++a)
            for (std::size_t x = b; x < e; ++x)
                gen.insert(a < x ? bracket_of_[a][x] : negate(bracket_of_[x][a]));
        rep.stratum_generation.push_back({s + 1, gen.rank() == strata_[s]});
    }
    const auto [tb, te] = stratum_span(step());
    for (std::size_t a = v1_begin; a < v1_end; ++a)
        for (std::size_t x = tb; x < te; ++x)
            if (a != x && !is_zero(a < x ? bracket_of_[a][x] : bracket_of_[x][a]))
                rep.top_bracket_trivial = false;

    return rep;
}

Subalgebra::Subalgebra(AlgebraPtr alg, EchelonBasis basis)
    : alg_(std::move(alg)), basis_(std::move(basis)) {
    const StratifiedAlgebra& a = *alg_;
    const std::size_t n = a.dim();

    // graded <=> dim(span) == sum_s dim(span /\ V_s); the intersections are
    // recovered constructively from kernels of the basis restricted to the
    // complementary coordinates
    EchelonBasis graded_rows(n);
    std::vector<std::size_t> degs;
    for (std::size_t s = 1; s <= a.step(); ++s) {
        const auto [b, e] = a.stratum_span(s);
        // rows of basis with the columns outside stratum s; kernel of the
        // transpose gives the combinations falling inside V_s
        Mat outside;
        for (const auto& row : basis_.rows()) {
            Vec r;
            for (std::size_t c = 0; c < n; ++c)
                if (c < b || c >= e) r.push_back(row[c]);
            outside.push_back(std::move(r));
        }
        const Mat combos = kernel_basis(transpose(outside), basis_.rank());
        for (const auto& combo : combos) {
            Vec v = zero_vec(n);
            for (std::size_t r = 0; r < combo.size(); ++r)
                if (sgn(combo[r]) != 0) v = add(v, scale(combo[r], basis_.rows()[r]));
            if (graded_rows.insert(v)) {
                graded_basis_.push_back(v);
                degs.push_back(s);
            }
        }
    }
    graded_ = graded_rows.rank() == basis_.rank();
    if (graded_) {
        graded_degrees_ = std::move(degs);
    } else {
        graded_basis_.clear();
    }
}

Subalgebra Subalgebra::closure(AlgebraPtr alg, const Mat& generators) {
    const std::size_t n = alg->dim();
    EchelonBasis basis(n);
    for (const auto& g : generators) {
        if (g.size() != n) throw std::invalid_argument("closure: generator dimension mismatch");
        basis.insert(g);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        const Mat current = basis.rows();
        for (std::size_t i = 0; i < current.size(); ++i)
            for (std::size_t j = i + 1; j < current.size(); ++j)
                if (basis.insert(alg->bracket(current[i], current[j]))) grew = true;
    }
    return Subalgebra(std::move(alg), std::move(basis));
}

Subalgebra Subalgebra::span(AlgebraPtr alg, const Mat& vectors) {
    Subalgebra sub = closure(alg, vectors);
    if (sub.dim() != rank(vectors))
        throw std::invalid_argument("span: subspace is not bracket-closed");
    return sub;
}

const std::vector<std::size_t>& Subalgebra::graded_degrees() const {
    if (!graded_) throw std::domain_error("subalgebra is not graded");
    return graded_degrees_;
}

const Mat& Subalgebra::graded_basis() const {
    if (!graded_) throw std::domain_error("subalgebra is not graded");
    return graded_basis_;
}

std::size_t Subalgebra::homogeneous_dimension() const {
    if (!graded_)
        throw std::domain_error("homogeneous dimension requires a graded basis");
    return std::accumulate(graded_degrees_.begin(), graded_degrees_.end(), std::size_t{0});
}

HomomorphismReport check_carnot_homomorphism(const StratifiedAlgebra& src,
                                             const StratifiedAlgebra& dst, const Mat& map) {
    if (map.size() != dst.dim())
        throw std::invalid_argument("homomorphism: matrix must have dst.dim rows");
    for (const auto& row : map)
        if (row.size() != src.dim())
            throw std::invalid_argument("homomorphism: matrix must have src.dim columns");

    HomomorphismReport rep;
    for (std::size_t j = 0; j < src.dim(); ++j) {
        const Vec img = column(map, j);
        const std::size_t d = src.degree(j);
        const auto [b, e] = d <= dst.step() ? dst.stratum_span(d)
                                            : std::pair<std::size_t, std::size_t>{0, 0};
        for (std::size_t k = 0; k < dst.dim(); ++k) {
            if (sgn(img[k]) == 0) continue;
            if (d > dst.step() || k < b || k >= e) {
                rep.stratum_violations.push_back(j);
                rep.stratum_respected = false;
                break;
            }
        }
    }
    for (std::size_t i = 0; i < src.dim(); ++i)
        for (std::size_t j = i + 1; j < src.dim(); ++j) {
            const Vec lhs = mat_apply(map, src.bracket(unit_vec(src.dim(), i),
                                                       unit_vec(src.dim(), j)));
            const Vec rhs = dst.bracket(column(map, i), column(map, j));
            if (lhs != rhs) {
                rep.bracket_violations.emplace_back(i, j);
                rep.brackets_preserved = false;
            }
        }
    return rep;
}

std::pair<std::size_t, std::size_t> image_dimension_drop(const StratifiedAlgebra& src,
                                                         const StratifiedAlgebra& dst,
                                                         const Mat& map) {
    if (!check_carnot_homomorphism(src, dst, map).ok())
        throw std::invalid_argument("image_dimension_drop: not a Carnot homomorphism");
    // columns of a stratum-respecting map live in single strata, so the image
    // is graded and its Q is the degree-weighted sum of per-stratum ranks
    std::size_t q_image = 0;
    for (std::size_t s = 1; s <= src.step(); ++s) {
        Mat cols;
        for (std::size_t j = 0; j < src.dim(); ++j)
            if (src.degree(j) == s) cols.push_back(column(map, j));
        q_image += s * rank(cols);
    }
    return {src.homogeneous_dimension(), q_image};
}

}  // namespace carnot
