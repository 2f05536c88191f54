#include "carnot/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>

#include "carnot/catalog.hpp"

namespace carnot {

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CARNOT_KIT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count ? count : 1)));
    if (threads == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    for (auto& th : pool) th.join();
}

Step2GraphSetup::Step2GraphSetup(AlgebraPtr algebra, MultiPoly phi, double lipschitz_bound)
    : alg_(std::move(algebra)), phi_(std::move(phi)), lip_(lipschitz_bound) {
    const auto form = step2_form(*alg_);
    if (!form) throw std::invalid_argument("graph setup: algebra must have step 2");
    form_ = *form;
    if (form_.m < 2) throw std::invalid_argument("graph setup: first stratum too small");
    if (phi_.nvars() != wdim())
        throw std::invalid_argument("graph setup: phi arity must be m-1+centers");
    if (lip_ <= 0) throw std::invalid_argument("graph setup: Lipschitz bound must be positive");
}

Vec Step2GraphSetup::embed_w(const Vec& w) const {
    if (w.size() != wdim()) throw std::invalid_argument("embed_w: dimension mismatch");
    Vec p = zero_vec(alg_->dim());
    for (std::size_t i = 0; i + 1 < form_.m; ++i) p[i + 1] = w[i];
    for (std::size_t k = 0; k < form_.centers; ++k) p[form_.m + k] = w[form_.m - 1 + k];
    return p;
}

Vec Step2GraphSetup::lift(const Vec& w) const {
    Vec p = embed_w(w);
    Vec h = zero_vec(alg_->dim());
    h[0] = phi_.eval(w);
    return step2_product(form_, p, h);
}

std::vector<double> Step2GraphSetup::lift_d(std::span<const double> w) const {
    if (w.size() != wdim()) throw std::invalid_argument("lift_d: dimension mismatch");
    const std::size_t n = alg_->dim();
    std::vector<double> p(n, 0.0), h(n, 0.0);
    for (std::size_t i = 0; i + 1 < form_.m; ++i) p[i + 1] = w[i];
    for (std::size_t k = 0; k < form_.centers; ++k) p[form_.m + k] = w[form_.m - 1 + k];
    h[0] = phi_.eval_d(w);
    return step2_product_d(form_, p, h);
}

std::vector<PolyVectorField> build_D_phi(const Step2GraphSetup& setup) {
    const std::size_t m = setup.m(), centers = setup.centers(), wd = setup.wdim();
    const auto& B = setup.form().B;
    std::vector<PolyVectorField> fields;
    for (std::size_t j = 1; j < m; ++j) {
        std::vector<MultiPoly> comp(wd, MultiPoly(wd));
        comp[j - 1] = MultiPoly::constant(wd, rat(1));
        for (std::size_t k = 0; k < centers; ++k) {
            MultiPoly yk(wd);
            for (std::size_t l = 1; l < m; ++l)
                if (sgn(B[k][j][l]) != 0)
                    yk += (rat(1, 2) * B[k][j][l]) * MultiPoly::variable(wd, l - 1);
            if (sgn(B[k][j][0]) != 0) yk += B[k][j][0] * setup.phi();
            comp[m - 1 + k] += yk;
        }
        fields.emplace_back(std::move(comp));
    }
    return fields;
}

namespace {

struct DoubleForm {
    std::size_t m, centers;
    std::vector<std::vector<std::vector<double>>> B;
};

DoubleForm to_double_form(const Step2Form& f) {
    DoubleForm d{f.m, f.centers, {}};
    d.B.resize(f.centers);
    for (std::size_t k = 0; k < f.centers; ++k) {
        d.B[k].assign(f.m, std::vector<double>(f.m, 0.0));
        for (std::size_t a = 0; a < f.m; ++a)
            for (std::size_t b = 0; b < f.m; ++b) d.B[k][a][b] = to_double(f.B[k][a][b]);
    }
    return d;
}

// W-state derivative under piecewise-constant controls (Eq. of motion of the
// projected fields): x' = a, y'_k = a_j (B_jl x_l / 2 + phi B_j0)
void derivative(const Step2GraphSetup& setup, const DoubleForm& B,
                std::span<const double> state, std::span<const double> a,
                std::vector<double>& out) {
    const std::size_t m = B.m, centers = B.centers;
    out.assign(state.size(), 0.0);
    for (std::size_t j = 1; j < m; ++j) out[j - 1] = a[j - 1];
    const double phi = setup.phi().eval_d(state);
    for (std::size_t k = 0; k < centers; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j < m; ++j) {
            if (a[j - 1] == 0.0) continue;
            double coeff = B.B[k][j][0] * phi;
            for (std::size_t l = 1; l < m; ++l) coeff += 0.5 * B.B[k][j][l] * state[l - 1];
            s += a[j - 1] * coeff;
        }
        out[m - 1 + k] = s;
    }
}

}  // namespace

HorizontalCurve integrate_horizontal(const Step2GraphSetup& setup,
                                     const ControlSchedule& schedule,
                                     const std::vector<double>& start, double rk4_step) {
    if (start.size() != setup.wdim())
        throw std::invalid_argument("integrate: start point dimension mismatch");
    if (rk4_step <= 0) throw std::invalid_argument("integrate: step must be positive");
    const DoubleForm B = to_double_form(setup.form());

    HorizontalCurve curve;
    curve.schedule = schedule;
    curve.times.push_back(0.0);
    curve.nodes.push_back(start);

    std::vector<double> state = start, k1, k2, k3, k4, tmp(state.size());
    double t = 0.0;
    for (std::size_t seg = 0; seg < schedule.size(); ++seg) {
        const auto& [duration, a] = schedule[seg];
        if (a.size() + 1 != setup.m())
            throw std::invalid_argument("integrate: control dimension mismatch");
        if (duration < 0) throw std::invalid_argument("integrate: negative duration");
        if (duration == 0) continue;
        const std::size_t substeps = std::max<std::size_t>(1, std::llround(std::ceil(duration / rk4_step)));
        const double h = duration / double(substeps);
        for (std::size_t s = 0; s < substeps; ++s) {
            derivative(setup, B, state, a, k1);
            for (std::size_t i = 0; i < state.size(); ++i) tmp[i] = state[i] + 0.5 * h * k1[i];
            derivative(setup, B, tmp, a, k2);
            for (std::size_t i = 0; i < state.size(); ++i) tmp[i] = state[i] + 0.5 * h * k2[i];
            derivative(setup, B, tmp, a, k3);
            for (std::size_t i = 0; i < state.size(); ++i) tmp[i] = state[i] + h * k3[i];
            derivative(setup, B, tmp, a, k4);
            for (std::size_t i = 0; i < state.size(); ++i)
                state[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            if (!std::isfinite(state[0]))
                throw std::runtime_error("integrate: state diverged");
            t += h;
            curve.times.push_back(t);
            curve.nodes.push_back(state);
            curve.segment_of.push_back(seg);
        }
    }
    return curve;
}

double phi_length(const HorizontalCurve& curve) {
    double total = 0.0;
    for (const auto& [duration, a] : curve.schedule) {
        double n2 = 0.0;
        for (double x : a) n2 += x * x;
        total += std::sqrt(n2) * duration;
    }
    return total;
}

double phi_length_from_coords(const HorizontalCurve& curve, std::size_t m) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < curve.nodes.size(); ++i) {
        double n2 = 0.0;
        for (std::size_t j = 0; j + 1 < m; ++j) {
            const double d = curve.nodes[i + 1][j] - curve.nodes[i][j];
            n2 += d * d;
        }
        total += std::sqrt(n2);
    }
    return total;
}

double graph_lift_length(const Step2GraphSetup& setup, const HorizontalCurve& curve,
                         std::size_t partitions) {
    if (curve.nodes.size() < 2 || partitions == 0) return 0.0;
    const DoubleForm B = to_double_form(setup.form());
    const auto degrees = coordinate_degrees(setup.algebra());
    partitions = std::min(partitions, curve.nodes.size() - 1);

    std::vector<double> prev = setup.lift_d(curve.nodes.front());
    double total = 0.0;
    for (std::size_t i = 1; i <= partitions; ++i) {
        const std::size_t idx = (i * (curve.nodes.size() - 1)) / partitions;
        std::vector<double> cur = setup.lift_d(curve.nodes[idx]);
        // difference prev^-1 * cur in the step-2 closed form
        std::vector<double> inv(prev.size());
        for (std::size_t j = 0; j < prev.size(); ++j) inv[j] = -prev[j];
        std::vector<double> diff(prev.size(), 0.0);
        {
            const std::size_t m = B.m;
            for (std::size_t j = 0; j < prev.size(); ++j) diff[j] = inv[j] + cur[j];
            for (std::size_t k = 0; k < B.centers; ++k) {
                double s = 0.0;
                for (std::size_t j = 0; j < m; ++j)
                    for (std::size_t l = 0; l < m; ++l) s += B.B[k][j][l] * cur[j] * inv[l];
                diff[m + k] += 0.5 * s;
            }
        }
        total += quasi_norm_d(degrees, diff);
        prev = std::move(cur);
    }
    return total;
}

LipschitzCheckReport intrinsic_lipschitz_check(const Step2GraphSetup& setup,
                                               const std::vector<Vec>& samples) {
    LipschitzCheckReport rep;
    const QuasiNorm norm(setup.algebra_ptr());
    const Step2Form& f = setup.form();
    const std::size_t n = setup.algebra().dim();
    std::vector<Vec> lifts;
    lifts.reserve(samples.size());
    for (const auto& w : samples) lifts.push_back(setup.lift(w));

    for (std::size_t i = 0; i < lifts.size(); ++i)
        for (std::size_t j = i + 1; j < lifts.size(); ++j) {
            Vec u = step2_product(f, negate(lifts[i]), lifts[j]);
            if (is_zero(u)) continue;
            Vec h = zero_vec(n);
            h[0] = u[0];
            const Vec w = step2_product(f, u, negate(h));
            const double nw = norm.value(w), nh = norm.value(h);
            ++rep.pairs_checked;
            if (nw <= nh / setup.lipschitz_bound()) rep.violations.emplace_back(i, j);
            if (nw > 1e-15) rep.best_constant = std::max(rep.best_constant, nh / nw);
        }
    return rep;
}

namespace {

std::mt19937_64 item_rng(std::uint64_t seed, std::size_t index) {
    // distinct deterministic stream per item, independent of thread schedule
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return std::mt19937_64(z ^ (z >> 31));
}

Rational rationalize(double x, long den) { return rat(std::lround(x * double(den)), den); }

struct CurveResult {
    double ratio = -1.0;  // negative: excluded
    double proj_lip = 0.0;
};

CurveResult run_length_curve(const Step2GraphSetup& setup, const ExperimentConfig& cfg,
                             std::size_t index, double rk4_step, std::size_t partitions) {
    auto rng = item_rng(cfg.seed, index);
    std::uniform_real_distribution<double> box(-cfg.start_box, cfg.start_box);
    std::uniform_real_distribution<double> ctrl(-cfg.control_bound, cfg.control_bound);

    std::vector<double> start(setup.wdim());
    for (auto& x : start) x = box(rng);
    ControlSchedule schedule;
    const double dt = cfg.horizon / double(cfg.segments);
    for (std::size_t s = 0; s < cfg.segments; ++s) {
        std::vector<double> a(setup.m() - 1);
        for (auto& x : a) x = ctrl(rng);
        schedule.emplace_back(dt, std::move(a));
    }

    const HorizontalCurve curve = integrate_horizontal(setup, schedule, start, rk4_step);
    CurveResult res;
    const double lphi = phi_length(curve);
    if (lphi <= 1e-12) return res;
    res.ratio = graph_lift_length(setup, curve, partitions) / lphi;
    for (std::size_t i = 0; i + 1 < curve.nodes.size(); ++i) {
        const double dtau = curve.times[i + 1] - curve.times[i];
        if (dtau <= 0) continue;
        const double dphi = std::fabs(setup.phi().eval_d(curve.nodes[i + 1]) -
                                      setup.phi().eval_d(curve.nodes[i]));
        res.proj_lip = std::max(res.proj_lip, dphi / dtau);
    }
    return res;
}

}  // namespace

LengthComparisonReport length_comparison_experiment(const Step2GraphSetup& setup,
                                                    const ExperimentConfig& cfg) {
    LengthComparisonReport rep;

    // footprint samples for the cone condition, exact rational
    std::vector<Vec> samples;
    for (std::size_t i = 0; i < std::min<std::size_t>(cfg.ensemble, 24); ++i) {
        auto rng = item_rng(cfg.seed ^ 0x5eedf00dULL, i);
        std::uniform_real_distribution<double> box(-cfg.start_box, cfg.start_box);
        Vec w(setup.wdim(), Rational(0));
        for (auto& x : w) x = rationalize(box(rng), 16);
        samples.push_back(std::move(w));
    }
    rep.lipschitz_violations = intrinsic_lipschitz_check(setup, samples).violations.size();

    const unsigned threads = resolve_threads(cfg.threads);
    std::vector<CurveResult> base(cfg.ensemble), fine(cfg.ensemble);
    parallel_for(cfg.ensemble, threads, [&](std::size_t i) {
        base[i] = run_length_curve(setup, cfg, i, cfg.rk4_step, cfg.partitions);
        fine[i] = run_length_curve(setup, cfg, i, cfg.rk4_step / cfg.refine,
                                   cfg.partitions * cfg.refine);
    });

    double sum = 0.0;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < cfg.ensemble; ++i) {
        if (base[i].ratio < 0) continue;
        rep.ratios.push_back(base[i].ratio);
        rep.max_ratio = std::max(rep.max_ratio, base[i].ratio);
        rep.projection_lipschitz = std::max(rep.projection_lipschitz, base[i].proj_lip);
        sum += base[i].ratio;
        ++kept;
        if (fine[i].ratio >= 0) {
            rep.max_ratio_refined = std::max(rep.max_ratio_refined, fine[i].ratio);
            rep.projection_lipschitz_refined =
                std::max(rep.projection_lipschitz_refined, fine[i].proj_lip);
        }
    }
    rep.mean_ratio = kept ? sum / double(kept) : 0.0;

    rep.histogram.assign(10, 0);
    if (rep.max_ratio > 0)
        for (double r : rep.ratios) {
            auto bucket = std::min<std::size_t>(9, std::size_t(10.0 * r / rep.max_ratio));
            ++rep.histogram[bucket];
        }

    const bool finite = std::isfinite(rep.max_ratio) && rep.max_ratio > 0;
    const bool stable =
        finite && std::fabs(rep.max_ratio_refined - rep.max_ratio) <=
                      cfg.stability_tol * std::max(rep.max_ratio, 1e-12);
    rep.pass = finite && stable && rep.lipschitz_violations == 0 &&
               std::isfinite(rep.projection_lipschitz);
    return rep;
}

namespace {

struct PairResult {
    double ratio = -1.0;
    double endpoint_error = 0.0;
};

PairResult run_graph_pair(const Step2GraphSetup& setup, const ExperimentConfig& cfg,
                          std::size_t nbar, const CarnotGroup& slice_group,
                          std::size_t index, double rk4_step, std::size_t partitions) {
    auto rng = item_rng(cfg.seed ^ 0xd157a4ceULL, index);
    std::uniform_real_distribution<double> box(-cfg.start_box, cfg.start_box);
    const std::size_t wd = setup.wdim(), k = nbar - 1;

    Vec w(wd, Rational(0)), wp(wd, Rational(0));
    for (auto& x : w) x = rationalize(box(rng), 16);
    for (auto& x : wp) x = rationalize(box(rng), 16);
    if (w == wp) return {};

    const QuasiNorm norm(setup.algebra_ptr());
    const double lower =
        norm.value(step2_product(setup.form(), negate(setup.lift(w)), setup.lift(wp)));
    if (lower <= 1e-12) return {};

    std::vector<double> start(wd), target(wd);
    for (std::size_t i = 0; i < wd; ++i) {
        start[i] = to_double(w[i]);
        target[i] = to_double(wp[i]);
    }

    // leg 1: ride the twisted direction until its coordinate matches
    ControlSchedule schedule;
    const std::size_t twist = nbar - 1;  // control index of the coupled direction
    const double delta = target[twist] - start[twist];
    if (delta != 0.0) {
        std::vector<double> a(setup.m() - 1, 0.0);
        a[twist] = delta > 0 ? 1.0 : -1.0;
        schedule.emplace_back(std::fabs(delta), std::move(a));
    }
    HorizontalCurve leg1 = integrate_horizontal(setup, schedule, start, rk4_step);
    const std::vector<double>& mid = leg1.nodes.back();

    // leg 2: horizontal word in the complementary Heisenberg slice
    const auto slice_of = [&](const std::vector<double>& state) {
        std::vector<double> z(2 * k + 1, 0.0);
        for (std::size_t j = 0; j < k; ++j) z[j] = state[j];
        for (std::size_t j = k; j < 2 * k; ++j) z[j] = state[j + 1];
        z[2 * k] = state[wd - 1];
        return z;
    };
    const auto slice_form = *step2_form(slice_group.algebra());
    const std::vector<double> zh = slice_of(mid), th = slice_of(target);
    const std::vector<double> gh = step2_product_d(slice_form, step2_inverse_d(zh), th);
    Vec gh_rat(gh.size(), Rational(0));
    for (std::size_t i = 0; i < gh.size(); ++i) gh_rat[i] = rationalize(gh[i], 1L << 30);
    const HorizontalWord word = cc_upper_word(slice_group, gh_rat, 8);
    for (const auto& seg : word.segments) {
        std::vector<double> a(setup.m() - 1, 0.0);
        for (std::size_t j = 0; j < 2 * k; ++j) {
            const std::size_t ctrl = j < k ? j : j + 1;
            a[ctrl] = to_double(seg[j]);
        }
        schedule.emplace_back(1.0, std::move(a));
    }

    const HorizontalCurve curve = integrate_horizontal(setup, schedule, start, rk4_step);
    PairResult res;
    for (std::size_t i = 0; i < wd; ++i)
        res.endpoint_error =
            std::max(res.endpoint_error, std::fabs(curve.nodes.back()[i] - target[i]));
    res.ratio = graph_lift_length(setup, curve, partitions) / lower;
    return res;
}

}  // namespace

GraphDistanceReport graph_distance_experiment(const Step2GraphSetup& setup,
                                              const ExperimentConfig& cfg) {
    const auto nbar = heisenberg_rank(setup.algebra());
    if (!nbar) throw std::invalid_argument("graph distance: ambient must be Heisenberg");
    if (*nbar < 2)
        throw std::domain_error("graph distance: rank 1 is outside the construction's scope");

    GraphDistanceReport rep;
    const CarnotGroup slice_group(make_heisenberg(*nbar - 1));

    const unsigned threads = resolve_threads(cfg.threads);
    std::vector<PairResult> base(cfg.ensemble), fine(cfg.ensemble);
    parallel_for(cfg.ensemble, threads, [&](std::size_t i) {
        base[i] = run_graph_pair(setup, cfg, *nbar, slice_group, i, cfg.rk4_step,
                                 cfg.partitions);
        fine[i] = run_graph_pair(setup, cfg, *nbar, slice_group, i, cfg.rk4_step / cfg.refine,
                                 cfg.partitions * cfg.refine);
    });
    for (std::size_t i = 0; i < cfg.ensemble; ++i) {
        if (base[i].ratio < 0) continue;
        rep.ratios.push_back(base[i].ratio);
        rep.max_ratio = std::max(rep.max_ratio, base[i].ratio);
        rep.max_endpoint_error = std::max(rep.max_endpoint_error, base[i].endpoint_error);
        if (fine[i].ratio >= 0) rep.max_ratio_refined = std::max(rep.max_ratio_refined, fine[i].ratio);
    }

    // the ODE leg from the identity: tau'(s) = phi at the point with the
    // twisted coordinate s and center tau(s)
    {
        const std::size_t wd = setup.wdim(), twist = *nbar - 1;
        const double h = cfg.rk4_step;
        std::vector<double> state(wd, 0.0);
        double s = 0.0, tau = 0.0;
        const auto rhs = [&](double sv, double tv) {
            state.assign(wd, 0.0);
            state[twist] = sv;
            state[wd - 1] = tv;
            return setup.phi().eval_d(state);
        };
        while (s < cfg.tau_horizon) {
            const double k1 = rhs(s, tau);
            const double k2 = rhs(s + h / 2, tau + h / 2 * k1);
            const double k3 = rhs(s + h / 2, tau + h / 2 * k2);
            const double k4 = rhs(s + h, tau + h * k3);
            tau += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
            s += h;
            if (s > 1e-6) {
                rep.tau_lipschitz = std::max(rep.tau_lipschitz, std::fabs(rhs(s, tau)) / s);
                rep.tau_quadratic_max = std::max(rep.tau_quadratic_max, std::fabs(tau) / (s * s));
            }
        }
        rep.tau_bound_ok = rep.tau_quadratic_max <= rep.tau_lipschitz * (1 + 1e-6) + 1e-12;
    }

    const bool finite = std::isfinite(rep.max_ratio) && rep.max_ratio > 0;
    const bool stable =
        finite && std::fabs(rep.max_ratio_refined - rep.max_ratio) <=
                      cfg.stability_tol * std::max(rep.max_ratio, 1e-12);
    rep.pass = finite && stable && rep.tau_bound_ok;
    return rep;
}

}  // namespace carnot
