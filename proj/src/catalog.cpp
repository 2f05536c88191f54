#include "carnot/catalog.hpp"

#include <stdexcept>

namespace carnot {

AlgebraPtr make_g_mu(const Rational& mu) {
    std::vector<BracketTerm> table = {
        {0, 1, 3, rat(1)},  {0, 2, 5, rat(-1)}, {1, 2, 4, rat(1)},
        {0, 4, 6, rat(-1)}, {1, 5, 6, mu},      {2, 3, 6, 1 - mu},
    };
    return std::make_shared<StratifiedAlgebra>(
        "g_mu(" + to_string(mu) + ")", std::vector<std::size_t>{3, 3, 1},
        std::vector<std::string>{"X1", "X2", "X3", "X4", "X5", "X6", "X7"}, std::move(table));
}

AlgebraPtr make_g8() {
    std::vector<BracketTerm> table = {
        {1, 2, 4, rat(1)}, {1, 3, 6, rat(-1)}, {0, 1, 4, rat(1)},  {2, 3, 5, rat(1)},
        {1, 5, 7, rat(-1)}, {3, 4, 7, rat(1)},  {0, 6, 7, rat(1)},
    };
    return std::make_shared<StratifiedAlgebra>(
        "g8", std::vector<std::size_t>{4, 3, 1},
        std::vector<std::string>{"X0", "X1", "X2", "X3", "X4", "X5", "X6", "X7"},
        std::move(table));
}

AlgebraPtr make_heisenberg(std::size_t n) {
    if (n < 1) throw std::invalid_argument("heisenberg: rank must be at least 1");
    std::vector<BracketTerm> table;
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < n; ++j) table.push_back({j, j + n, 2 * n, rat(1)});
    for (std::size_t j = 1; j <= 2 * n; ++j) labels.push_back("X" + std::to_string(j));
    labels.push_back("Y1");
    return std::make_shared<StratifiedAlgebra>("heis(" + std::to_string(n) + ")",
                                               std::vector<std::size_t>{2 * n, 1},
                                               std::move(labels), std::move(table));
}

AlgebraPtr make_heisenberg_x_r(std::size_t n) {
    if (n < 1) throw std::invalid_argument("heisxR: rank must be at least 1");
    std::vector<BracketTerm> table;
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < n; ++j) table.push_back({j, j + n, 2 * n + 1, rat(1)});
    for (std::size_t j = 1; j <= 2 * n; ++j) labels.push_back("X" + std::to_string(j));
    labels.push_back("U");
    labels.push_back("Y1");
    return std::make_shared<StratifiedAlgebra>("heisxR(" + std::to_string(n) + ")",
                                               std::vector<std::size_t>{2 * n + 1, 1},
                                               std::move(labels), std::move(table));
}

std::optional<std::size_t> heisenberg_rank(const StratifiedAlgebra& alg) {
    if (alg.step() != 2 || alg.strata()[1] != 1) return std::nullopt;
    const std::size_t m = alg.first_stratum_dim();
    if (m % 2 != 0) return std::nullopt;
    const std::size_t n = m / 2;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const Rational expected = (j == i + n) ? rat(1) : rat(0);
            if (alg.structure_constant(i, j, m) != expected) return std::nullopt;
        }
    return n;
}

ClassInvariantReport invariant_I(const Rational& mu) {
    ClassInvariantReport rep;
    rep.mu = mu;
    if (mu == 0 || mu == 1) return rep;
    rep.defined = true;
    rep.value = pow_int(1 - mu + mu * mu, 3) / (mu * mu * (mu - 1) * (mu - 1));
    return rep;
}

FamilyRelation classify_family(const Rational& mu1, const Rational& mu2) {
    const auto a = invariant_I(mu1), b = invariant_I(mu2);
    if (!a.defined || !b.defined) return FamilyRelation::Indeterminate;
    return a.value == b.value ? FamilyRelation::Equal : FamilyRelation::Distinct;
}

const char* to_string(FamilyRelation r) {
    switch (r) {
        case FamilyRelation::Equal: return "equal";
        case FamilyRelation::Distinct: return "distinct";
        case FamilyRelation::Indeterminate: return "indeterminate";
    }
    return "?";
}

Mat lambda_family_generators(const Rational& lambda) {
    Vec y2 = unit_vec(8, 2);
    y2[0] = lambda;
    return {unit_vec(8, 1), std::move(y2), unit_vec(8, 3)};
}

Mat lambda_family_embedding(const Rational& lambda) {
    Mat m(8, zero_vec(7));
    m[1][0] = 1;                 // X1 -> X1
    m[2][1] = 1;                 // X2 -> X2 + lambda X0
    m[0][1] = lambda;
    m[3][2] = 1;                 // X3 -> X3
    m[4][3] = 1 - lambda;        // X4 -> (1 - lambda) X4
    m[5][4] = 1;                 // X5 -> X5
    m[6][5] = 1;                 // X6 -> X6
    m[7][6] = 1;                 // X7 -> X7
    return m;
}

LevelSurface make_surface_s() {
    AlgebraPtr g = make_g8();
    MultiPoly f(8);
    f.add_term({0, 0, 3, 0, 0, 0, 0, 0}, rat(1, 3));
    f.add_term({1, 0, 0, 0, 0, 0, 0, 0}, rat(1));
    return LevelSurface(std::move(g), std::move(f));
}

Vec project_to_surface_s(Vec p) {
    if (p.size() != 8) throw std::invalid_argument("surface point must have 8 coordinates");
    p[0] = -pow_int(p[2], 3) / 3;
    return p;
}

TangentGroupReport tangent_class_of_s(const Vec& p) {
    const LevelSurface s = make_surface_s();
    if (!s.contains(p)) throw std::invalid_argument("point is not on the surface");

    TangentGroupReport rep = tangent_group(s, p);
    const Rational mu = -(p[2] * p[2]);
    rep.mu = mu;
    const auto inv = invariant_I(mu);
    rep.invariant_defined = inv.defined;
    if (inv.defined) rep.invariant = inv.value;

    // cross-check: the family embedding with lambda = mu must be a
    // homomorphism landing exactly on the tangent subalgebra
    const AlgebraPtr gmu = make_g_mu(mu);
    const Mat emb = lambda_family_embedding(mu);
    if (!check_carnot_homomorphism(*gmu, s.algebra(), emb).ok())
        throw std::logic_error("tangent class: family embedding is not a homomorphism");
    EchelonBasis image(8);
    for (std::size_t j = 0; j < 7; ++j) image.insert(column(emb, j));
    if (image.rank() != rep.tangent->dim())
        throw std::logic_error("tangent class: embedding image has wrong dimension");
    for (const auto& row : image.rows())
        if (!rep.tangent->contains(row))
            throw std::logic_error("tangent class: embedding image is not the tangent");
    return rep;
}

HyperplaneDecomposition vertical_hyperplane_decomposition(AlgebraPtr hn, const Vec& covector) {
    const auto rank_opt = heisenberg_rank(*hn);
    if (!rank_opt)
        throw std::invalid_argument("hyperplane decomposition: ambient must be Heisenberg");
    const std::size_t nbar = *rank_opt, m = 2 * nbar;
    if (covector.size() != m)
        throw std::invalid_argument("hyperplane decomposition: covector must have length 2n");
    if (is_zero(covector))
        throw std::invalid_argument("hyperplane decomposition: zero covector");
    if (nbar < 2)
        throw std::domain_error(
            "hyperplane decomposition: rank-1 kernels are abelian R x R, outside this "
            "decomposition");

    const auto omega = [&](const Vec& u, const Vec& v) {
        Rational s(0);
        for (std::size_t a = 0; a < m; ++a) {
            if (sgn(u[a]) == 0) continue;
            for (std::size_t b = 0; b < m; ++b)
                if (sgn(v[b]) != 0) s += u[a] * v[b] * hn->structure_constant(a, b, m);
        }
        return s;
    };

    const Mat kernel = kernel_basis({covector}, m);

    // radical of the restricted symplectic form: one-dimensional by parity
    Mat gram(kernel.size(), zero_vec(kernel.size()));
    for (std::size_t r = 0; r < kernel.size(); ++r)
        for (std::size_t c = 0; c < kernel.size(); ++c) gram[r][c] = omega(kernel[r], kernel[c]);
    const Mat radical = kernel_basis(gram, kernel.size());
    if (radical.size() != 1)
        throw std::logic_error("hyperplane decomposition: radical is not one-dimensional");
    Vec central = zero_vec(m);
    for (std::size_t r = 0; r < kernel.size(); ++r)
        central = add(central, scale(radical[0][r], kernel[r]));

    // complete the central direction to a basis of the kernel
    EchelonBasis complete(m);
    complete.insert(central);
    std::vector<Vec> pool;
    for (const auto& row : kernel)
        if (complete.insert(row)) pool.push_back(row);

    // symplectic reduction of the complement
    std::vector<std::pair<Vec, Vec>> pairs;
    while (!pool.empty()) {
        Vec u = pool.front();
        pool.erase(pool.begin());
        std::size_t w_idx = pool.size();
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (sgn(omega(u, pool[i])) != 0) {
                w_idx = i;
                break;
            }
        if (w_idx == pool.size())
            throw std::logic_error("hyperplane decomposition: degenerate complement");
        Vec w = scale(1 / omega(u, pool[w_idx]), pool[w_idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(w_idx));
        for (auto& r : pool) {
            const Rational rw = omega(r, w), ru = omega(r, u);
            r = add(r, add(scale(-rw, u), scale(ru, w)));
        }
        pairs.emplace_back(std::move(u), std::move(w));
    }

    const std::size_t k = nbar - 1;
    if (pairs.size() != k)
        throw std::logic_error("hyperplane decomposition: wrong number of symplectic pairs");

    const auto embed = [&](const Vec& first_stratum) {
        Vec v = zero_vec(m + 1);
        for (std::size_t i = 0; i < m; ++i) v[i] = first_stratum[i];
        return v;
    };

    std::vector<std::pair<Vec, Vec>> embedded_pairs;
    for (auto& [p, q] : pairs) embedded_pairs.emplace_back(embed(p), embed(q));

    Mat columns;  // target basis: Z_1..Z_k, Z_{k+1}..Z_{2k}, U, Y1
    for (std::size_t j = 0; j < k; ++j) columns.push_back(embedded_pairs[j].first);
    for (std::size_t j = 0; j < k; ++j) columns.push_back(embedded_pairs[j].second);
    columns.push_back(embed(central));
    columns.push_back(unit_vec(m + 1, m));

    return HyperplaneDecomposition{hn,
                                   make_heisenberg_x_r(k),
                                   Subalgebra::span(hn, columns),
                                   embed(central),
                                   std::move(embedded_pairs),
                                   transpose(columns)};
}

LevelSurface every_tangent_sphere(AlgebraPtr alg) {
    const std::size_t n = alg->dim(), m = alg->first_stratum_dim();
    MultiPoly f(n);
    for (std::size_t i = 0; i < m; ++i) {
        MultiPoly::Exponents e(n, 0);
        e[i] = 2;
        f.add_term(e, rat(1));
    }
    f.add_term(MultiPoly::Exponents(n, 0), rat(-1));
    return LevelSurface(std::move(alg), std::move(f));
}

std::optional<Vec> sphere_point_for_covector(const StratifiedAlgebra& alg, const Vec& covector) {
    const std::size_t m = alg.first_stratum_dim();
    if (covector.size() != m)
        throw std::invalid_argument("sphere point: covector must have length m");
    if (is_zero(covector)) throw std::invalid_argument("sphere point: zero covector");
    Rational norm2(0);
    for (const auto& c : covector) norm2 += c * c;
    Rational norm;
    if (!rational_sqrt(norm2, norm)) return std::nullopt;
    Vec p = zero_vec(alg.dim());
    for (std::size_t i = 0; i < m; ++i) p[i] = covector[i] / norm;
    return p;
}

}  // namespace carnot
