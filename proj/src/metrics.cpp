#include "carnot/metrics.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace carnot {

std::vector<std::size_t> coordinate_degrees(const StratifiedAlgebra& alg) {
    std::vector<std::size_t> d(alg.dim());
    for (std::size_t i = 0; i < alg.dim(); ++i) d[i] = alg.degree(i);
    return d;
}

QuasiNorm::QuasiNorm(AlgebraPtr alg) : alg_(std::move(alg)) {
    lcm_ = 1;
    for (std::size_t s = 1; s <= alg_->step(); ++s) lcm_ = std::lcm(lcm_, s);
}

Rational QuasiNorm::exact_power(const Vec& x) const {
    if (x.size() != alg_->dim()) throw std::invalid_argument("quasi norm: dimension mismatch");
    Rational best(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Rational p = pow_int(abs(x[i]), static_cast<long>(lcm_ / alg_->degree(i)));
        if (p > best) best = p;
    }
    return best;
}

double QuasiNorm::value(const Vec& x) const {
    if (x.size() != alg_->dim()) throw std::invalid_argument("quasi norm: dimension mismatch");
    double best = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = std::pow(std::fabs(to_double(x[i])), 1.0 / double(alg_->degree(i)));
        best = std::max(best, v);
    }
    return best;
}

double quasi_norm(const CarnotGroup& g, const Vec& x) {
    return QuasiNorm(g.algebra_ptr()).value(x);
}

double quasi_distance(const CarnotGroup& g, const Vec& p, const Vec& q) {
    return quasi_norm(g, g.difference(p, q));
}

Rational quasi_distance_exact_power(const CarnotGroup& g, const Vec& p, const Vec& q) {
    return QuasiNorm(g.algebra_ptr()).exact_power(g.difference(p, q));
}

double quasi_norm_d(std::span<const std::size_t> degrees, std::span<const double> x) {
    if (degrees.size() != x.size()) throw std::invalid_argument("quasi norm: dimension mismatch");
    double best = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        best = std::max(best, std::pow(std::fabs(x[i]), 1.0 / double(degrees[i])));
    return best;
}

namespace {

Rational random_rational(std::mt19937_64& rng, long num_range, long den_max) {
    std::uniform_int_distribution<long> num(-num_range, num_range), den(1, den_max);
    return rat(num(rng), den(rng));
}

Vec random_point(std::mt19937_64& rng, std::size_t n) {
    Vec v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(random_rational(rng, 8, 4));
    return v;
}

}  // namespace

TriangleCalibration calibrate_triangle_constant(const CarnotGroup& g, std::size_t samples,
                                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = g.algebra().dim();
    TriangleCalibration cal;
    cal.samples = samples;
    cal.seed = seed;
    for (std::size_t s = 0; s < samples; ++s) {
        const Vec p = random_point(rng, n), q = random_point(rng, n), r = random_point(rng, n);
        const double via = quasi_distance(g, p, q) + quasi_distance(g, q, r);
        const double direct = quasi_distance(g, p, r);
        if (via > 1e-12) cal.constant = std::max(cal.constant, direct / via);
    }
    return cal;
}

namespace {

double vec_norm_d(const Vec& v) {
    double s = 0.0;
    for (const auto& x : v) {
        const double d = to_double(x);
        s += d * d;
    }
    return std::sqrt(s);
}

/// Rational approximation of |x|^(1/root) with denominator 2^(3 + level),
/// clamped away from zero so products stay well-defined.
Rational balanced_root(double x, int root, int level) {
    const long den = 1L << std::min(3 + std::max(level, 0), 40);
    const double r = std::pow(std::fabs(x), 1.0 / root);
    long num = std::lround(r * double(den));
    if (num <= 0) num = 1;
    return rat(num, den);
}

/// x with sum_i x_i rows_i = target, if solvable.
std::optional<Vec> solve_combination(const Mat& rows, const Vec& target) {
    if (rows.empty()) return is_zero(target) ? std::optional<Vec>(Vec{}) : std::nullopt;
    const std::size_t k = rows.size(), n = rows[0].size();
    // augmented system over the transpose
    Mat aug(n, zero_vec(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < k; ++r) aug[i][r] = rows[r][i];
        aug[i][k] = target[i];
    }
    const Echelon e = rref(std::move(aug));
    Vec x = zero_vec(k);
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        if (e.pivots[r] == k) return std::nullopt;  // inconsistent
        x[e.pivots[r]] = e.rows[r][k];
    }
    return x;
}

}  // namespace

HorizontalWord cc_upper_word(const CarnotGroup& g, const Vec& target, int level) {
    const StratifiedAlgebra& a = g.algebra();
    const std::size_t n = a.dim(), m = a.first_stratum_dim();
    if (target.size() != n) throw std::invalid_argument("cc word: dimension mismatch");

    HorizontalWord word;
    word.endpoint = g.identity();
    const auto push = [&](const Vec& seg) {  // seg has length m
        Vec full = zero_vec(n);
        for (std::size_t i = 0; i < m; ++i) full[i] = seg[i];
        word.endpoint = g.product(word.endpoint, full);
        word.segments.push_back(seg);
        word.cost += vec_norm_d(seg);
    };
    const auto push_unit = [&](std::size_t i, const Rational& t) {
        Vec seg = zero_vec(m);
        seg[i] = t;
        push(seg);
    };
    // group commutator of exp(t_a e_a) and exp(t_b e_b), four segments
    const auto push_comm = [&](std::size_t ia, const Rational& ta, std::size_t ib,
                               const Rational& tb) {
        push_unit(ia, ta);
        push_unit(ib, tb);
        push_unit(ia, -ta);
        push_unit(ib, -tb);
    };

    // first stratum: one straight segment
    Vec v1(target.begin(), target.begin() + m);
    if (!is_zero(v1)) push(v1);

    // second stratum: commutator moves; the product of two elements with
    // trivial first stratum just adds in V2 and V3, so moves can be solved
    // for independently
    if (a.step() >= 2) {
        const auto [b2, e2] = a.stratum_span(2);
        const auto slice = [&](const Vec& v, std::size_t b, std::size_t e) {
            return Vec(v.begin() + static_cast<std::ptrdiff_t>(b),
                       v.begin() + static_cast<std::ptrdiff_t>(e));
        };
        Vec rem = g.difference(word.endpoint, target);
        Vec r2 = slice(rem, b2, e2);
        if (!is_zero(r2)) {
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            Mat betas;
            EchelonBasis pick(e2 - b2);
            for (std::size_t i = 0; i < m && pick.rank() < e2 - b2; ++i)
                for (std::size_t j = i + 1; j < m && pick.rank() < e2 - b2; ++j) {
                    const Vec beta =
                        slice(a.bracket(unit_vec(n, i), unit_vec(n, j)), b2, e2);
                    if (pick.insert(beta)) {
                        pairs.emplace_back(i, j);
                        betas.push_back(beta);
                    }
                }
            const auto coeffs = solve_combination(betas, r2);
            if (!coeffs) throw std::logic_error("cc word: V2 moves do not span");
            for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
                const Rational t = (*coeffs)[idx];
                if (sgn(t) == 0) continue;
                const Rational alpha = balanced_root(to_double(t), 2, level);
                push_comm(pairs[idx].first, alpha, pairs[idx].second, t / alpha);
            }
        }
    }

    // third stratum: iterated commutators [[e_a, e_b], e_c]
    if (a.step() >= 3) {
        const auto [b3, e3] = a.stratum_span(3);
        Vec rem = g.difference(word.endpoint, target);
        Vec r3(rem.begin() + static_cast<std::ptrdiff_t>(b3),
               rem.begin() + static_cast<std::ptrdiff_t>(e3));
        if (!is_zero(r3)) {
            std::vector<std::array<std::size_t, 3>> triples;
            Mat gammas;
            EchelonBasis pick(e3 - b3);
            for (std::size_t i = 0; i < m && pick.rank() < e3 - b3; ++i)
                for (std::size_t j = i + 1; j < m && pick.rank() < e3 - b3; ++j)
                    for (std::size_t c = 0; c < m && pick.rank() < e3 - b3; ++c) {
                        const Vec full = a.bracket(
                            a.bracket(unit_vec(n, i), unit_vec(n, j)), unit_vec(n, c));
                        const Vec gamma(full.begin() + static_cast<std::ptrdiff_t>(b3),
                                        full.begin() + static_cast<std::ptrdiff_t>(e3));
                        if (pick.insert(gamma)) {
                            triples.push_back({i, j, c});
                            gammas.push_back(gamma);
                        }
                    }
            const auto coeffs = solve_combination(gammas, r3);
            if (!coeffs) throw std::logic_error("cc word: V3 moves do not span");
            for (std::size_t idx = 0; idx < triples.size(); ++idx) {
                const Rational t = (*coeffs)[idx];
                if (sgn(t) == 0) continue;
                const auto [ia, ib, ic] = triples[idx];
                const Rational alpha = balanced_root(to_double(t), 3, level);
                const Rational beta = alpha;
                const Rational gamma = t / (alpha * beta);
                // [[exp(alpha a), exp(beta b)], exp(gamma c)] as a word
                push_comm(ia, alpha, ib, beta);
                push_unit(ic, gamma);
                push_comm(ib, beta, ia, alpha);  // inverse of the first commutator word
                push_unit(ic, -gamma);
            }
        }
    }

    if (word.endpoint != target)
        throw std::logic_error("cc word: endpoint mismatch after corrections");
    return word;
}

CcUpperBound cc_upper_bound(const CarnotGroup& g, const Vec& p, const Vec& q, int budget) {
    const Vec target = g.difference(p, q);
    CcUpperBound best;
    best.budget = budget;
    best.length = std::numeric_limits<double>::infinity();
    for (int level = 0; level <= std::max(budget, 0); ++level) {
        const HorizontalWord w = cc_upper_word(g, target, level);
        if (w.cost < best.length) {
            best.length = w.cost;
            best.segments = w.segments.size();
        }
    }
    return best;
}

std::pair<Vec, Vec> split_point(const CarnotGroup& g, const Vec& u,
                                const VerticalSplitting& split) {
    const StratifiedAlgebra& a = g.algebra();
    const std::size_t m = a.first_stratum_dim();
    if (split.covector.size() != m || split.axis >= m)
        throw std::invalid_argument("splitting: covector must live on the first stratum");
    if (sgn(split.covector[split.axis]) == 0)
        throw std::invalid_argument("splitting is not complementary");
    Rational c(0);
    for (std::size_t i = 0; i < m; ++i) c += split.covector[i] * u[i];
    c /= split.covector[split.axis];
    Vec h = zero_vec(a.dim());
    h[split.axis] = c;
    return {g.product(u, g.inverse(h)), h};
}

bool cone_membership(const CarnotGroup& g, const Vec& p, const Vec& q, double alpha,
                     const VerticalSplitting& split) {
    const auto [w, h] = split_point(g, g.difference(p, q), split);
    return quasi_norm(g, w) <= alpha * quasi_norm(g, h);
}

}  // namespace carnot
