#pragma once

#include "carnot/metrics.hpp"

namespace carnot {

/// Intrinsic graph data over the vertical hyperplane W = {x_1 = 0} of a
/// step-2 group, with horizontal axis L = exp(R X_1). The graph function is
/// a polynomial phi on the W-coordinates (x_2..x_m, y_1..y_n).
class Step2GraphSetup {
  public:
    Step2GraphSetup(AlgebraPtr algebra, MultiPoly phi, double lipschitz_bound);

    const StratifiedAlgebra& algebra() const { return *alg_; }
    AlgebraPtr algebra_ptr() const { return alg_; }
    const Step2Form& form() const { return form_; }
    const MultiPoly& phi() const { return phi_; }
    double lipschitz_bound() const { return lip_; }

    std::size_t m() const { return form_.m; }
    std::size_t centers() const { return form_.centers; }
    std::size_t wdim() const { return form_.m - 1 + form_.centers; }

    /// Ambient point with x_1 = 0 and the given W-coordinates.
    Vec embed_w(const Vec& w) const;
    /// Graph point w * exp(phi(w) X_1), exact.
    Vec lift(const Vec& w) const;
    std::vector<double> lift_d(std::span<const double> w) const;

  private:
    AlgebraPtr alg_;
    Step2Form form_;
    MultiPoly phi_;
    double lip_;
};

/// The m-1 projected fields D_j on the W-coordinates: the restriction of
/// X_j plus phi times the B-column coupling to the missing x_1 direction.
std::vector<PolyVectorField> build_D_phi(const Step2GraphSetup& setup);

/// Piecewise-constant control schedule: (duration, control vector of
/// length m-1) per segment.
using ControlSchedule = std::vector<std::pair<double, std::vector<double>>>;

struct HorizontalCurve {
    ControlSchedule schedule;
    std::vector<double> times;              // node times, RK4 substep resolution
    std::vector<std::vector<double>> nodes; // W-points at those times
    std::vector<std::size_t> segment_of;    // control segment per node interval
};

/// Integrates the control ODE on W: x' = controls, y' per the step-2
/// coupling, with fixed-step RK4 of at most rk4_step per substep. The x
/// components integrate exactly (piecewise linear).
HorizontalCurve integrate_horizontal(const Step2GraphSetup& setup,
                                     const ControlSchedule& schedule,
                                     const std::vector<double>& start, double rk4_step);

/// Integral of the Euclidean control norm, evaluated segment by segment.
double phi_length(const HorizontalCurve& curve);
/// The same length from the stored x-coordinates (independent code path).
double phi_length_from_coords(const HorizontalCurve& curve, std::size_t m);

/// Sum of quasi-distances of the lifted curve over `partitions` uniform
/// partition nodes.
double graph_lift_length(const Step2GraphSetup& setup, const HorizontalCurve& curve,
                         std::size_t partitions);

struct LipschitzCheckReport {
    std::vector<std::pair<std::size_t, std::size_t>> violations;  // sample index pairs
    double best_constant = 0.0;  // empirical intrinsic Lipschitz constant
    std::size_t pairs_checked = 0;
};

/// Cone-disjointness check at opening 1/L over all pairs of the exact
/// rational W-samples.
LipschitzCheckReport intrinsic_lipschitz_check(const Step2GraphSetup& setup,
                                               const std::vector<Vec>& samples);

struct ExperimentConfig {
    std::size_t ensemble = 100;
    std::uint64_t seed = 1;
    std::size_t segments = 12;       // control segments per curve
    double horizon = 1.0;            // total time per curve
    double control_bound = 1.0;
    double start_box = 1.0;
    double rk4_step = 1e-3;
    std::size_t partitions = 200;
    unsigned refine = 4;
    double stability_tol = 0.05;
    double tau_horizon = 2.0;
    unsigned threads = 0;  // 0: CARNOT_KIT_THREADS, else hardware concurrency
};

struct LengthComparisonReport {
    std::vector<double> ratios;  // lift length / phi length per curve
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
    double max_ratio_refined = 0.0;
    double projection_lipschitz = 0.0;  // empirical L' of s -> phi(curve(s))
    double projection_lipschitz_refined = 0.0;
    std::vector<std::size_t> histogram;  // ratio counts over [0, max]
    std::size_t lipschitz_violations = 0;
    bool pass = false;
};

/// Ratio experiment comparing the lifted length with the control length
/// over a seeded random curve ensemble, re-run on a 4x finer grid.
LengthComparisonReport length_comparison_experiment(const Step2GraphSetup& setup,
                                                    const ExperimentConfig& cfg);

struct GraphDistanceReport {
    std::vector<double> ratios;  // upper proxy / lower proxy per pair
    double max_ratio = 0.0;
    double max_ratio_refined = 0.0;
    double tau_lipschitz = 0.0;     // empirical constant for the ODE leg
    double tau_quadratic_max = 0.0; // max |tau(s)| / s^2 along the solution
    bool tau_bound_ok = false;
    double max_endpoint_error = 0.0;
    bool pass = false;
};

/// Two-leg connection experiment on a Heisenberg graph (rank >= 2): an ODE
/// leg along the twisted direction followed by a horizontal-word leg in the
/// complementary Heisenberg slice; compares the lifted path length against
/// the quasi-distance of the endpoints.
GraphDistanceReport graph_distance_experiment(const Step2GraphSetup& setup,
                                              const ExperimentConfig& cfg);

unsigned resolve_threads(unsigned requested);
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace carnot
