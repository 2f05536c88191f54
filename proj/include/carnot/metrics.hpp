#pragma once

#include <cstdint>

#include "carnot/group.hpp"

namespace carnot {

/// Homogeneous quasi-norm max_i |x_i|^(1/deg(i)). Homogeneity is exact on
/// the integer-power representative max_i |x_i|^(L/deg(i)), L = lcm of the
/// degrees; the double value is its L-th root.
class QuasiNorm {
  public:
    explicit QuasiNorm(AlgebraPtr alg);
    double value(const Vec& x) const;
    Rational exact_power(const Vec& x) const;
    std::size_t power_lcm() const { return lcm_; }

  private:
    AlgebraPtr alg_;
    std::size_t lcm_;
};

double quasi_norm(const CarnotGroup& g, const Vec& x);
/// quasi_norm(inverse(p) * q); left-invariant by construction.
double quasi_distance(const CarnotGroup& g, const Vec& p, const Vec& q);
Rational quasi_distance_exact_power(const CarnotGroup& g, const Vec& p, const Vec& q);

/// Quasi-norm of a double coordinate vector under the given degree weights.
double quasi_norm_d(std::span<const std::size_t> degrees, std::span<const double> x);

/// Measured constant K with d(p,r) <= K (d(p,q) + d(q,r)) over seeded random
/// triples; the quasi-norm satisfies the triangle inequality only up to K.
struct TriangleCalibration {
    double constant = 1.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};
TriangleCalibration calibrate_triangle_constant(const CarnotGroup& g, std::size_t samples,
                                                std::uint64_t seed);

/// Piecewise-horizontal path: the group element is the ordered product of
/// exp of the segments (each a first-stratum vector), endpoint exact.
struct HorizontalWord {
    std::vector<Vec> segments;
    Vec endpoint;
    double cost = 0.0;  // sum of Euclidean segment norms
};

/// Exact-endpoint word from the identity to the target; `level` controls how
/// finely the commutator moves are balanced.
HorizontalWord cc_upper_word(const CarnotGroup& g, const Vec& target, int level);

struct CcUpperBound {
    double length = 0.0;
    std::size_t segments = 0;
    int budget = 0;
};

/// Upper bound for the Carnot-Caratheodory distance via explicit horizontal
/// words; never increases with the budget.
CcUpperBound cc_upper_bound(const CarnotGroup& g, const Vec& p, const Vec& q, int budget);

/// Complementary splitting: W = (ker covector in V_1) + higher strata,
/// H = exp(R e_axis) with covector[axis] != 0.
struct VerticalSplitting {
    Vec covector;
    std::size_t axis = 0;
};

/// Unique factorization u = w * h with w in W and h in H.
std::pair<Vec, Vec> split_point(const CarnotGroup& g, const Vec& u,
                                const VerticalSplitting& split);

/// Whether q lies in the cone of opening alpha with vertex p.
bool cone_membership(const CarnotGroup& g, const Vec& p, const Vec& q, double alpha,
                     const VerticalSplitting& split);

std::vector<std::size_t> coordinate_degrees(const StratifiedAlgebra& alg);

}  // namespace carnot
