#pragma once

#include "carnot/surface.hpp"

namespace carnot {

/// Step-3, dimension-7 algebra of the one-parameter family, strata (3,3,1).
AlgebraPtr make_g_mu(const Rational& mu);
/// Step-3, dimension-8 algebra extending the mu = 0 member, strata (4,3,1).
AlgebraPtr make_g8();
/// Heisenberg algebra of rank n: strata (2n, 1), [X_j, X_{j+n}] = Y_1.
AlgebraPtr make_heisenberg(std::size_t n);
/// Heisenberg of rank n with an extra central first-stratum direction.
AlgebraPtr make_heisenberg_x_r(std::size_t n);

/// Rank of a standard-form Heisenberg algebra, or nullopt.
std::optional<std::size_t> heisenberg_rank(const StratifiedAlgebra& alg);

struct ClassInvariantReport {
    Rational mu;
    bool defined = false;  // false exactly when mu is 0 or 1
    Rational value;        // I(mu) when defined
};

/// I(mu) = (1 - mu + mu^2)^3 / (mu^2 (mu - 1)^2), the isomorphism invariant
/// of the mu-family; undefined at mu in {0, 1}.
ClassInvariantReport invariant_I(const Rational& mu);

enum class FamilyRelation { Equal, Distinct, Indeterminate };
FamilyRelation classify_family(const Rational& mu1, const Rational& mu2);
const char* to_string(FamilyRelation r);

/// Generators {X1, X2 + lambda X0, X3} of the lambda-family subalgebra of g8.
Mat lambda_family_generators(const Rational& lambda);
/// The 8x7 matrix embedding make_g_mu(lambda) onto the closure of the
/// lambda-family generators (an isomorphism onto its image iff lambda != 1).
Mat lambda_family_embedding(const Rational& lambda);

/// The cubic vertical surface x2^3/3 + x0 = 0 in g8.
LevelSurface make_surface_s();
/// Adjusts coordinate x0 so the point lies on that surface.
Vec project_to_surface_s(Vec p);

/// Tangent analysis of the cubic surface at p, with the class parameter
/// mu = -x2^2, its invariant, and a verified embedding of make_g_mu(mu)
/// onto the tangent subalgebra. Throws if p is off the surface.
TangentGroupReport tangent_class_of_s(const Vec& p);

struct HyperplaneDecomposition {
    AlgebraPtr ambient;                     // the Heisenberg algebra
    AlgebraPtr target;                      // Heisenberg of rank n-1 times R
    Subalgebra kernel;                      // the vertical hyperplane subalgebra
    Vec central;                            // v with [v, w] = 0 for all w in the kernel's V1 part
    std::vector<std::pair<Vec, Vec>> pairs; // symplectic pairs of first-stratum vectors
    Mat hom_matrix;                         // columns = images of the target basis
};

/// Splits the vertical hyperplane ker(covector) in a rank-n Heisenberg group
/// (n >= 2) into a central direction, symplectic pairs and the center, and
/// returns the verifying homomorphism from the rank-(n-1) model.
HyperplaneDecomposition vertical_hyperplane_decomposition(AlgebraPtr hn, const Vec& covector);

/// The vertical unit sphere sum_i x_i^2 = 1 over the first stratum.
LevelSurface every_tangent_sphere(AlgebraPtr alg);
/// A rational sphere point whose tangent normal is the given covector;
/// exists exactly when the covector's squared norm is a rational square.
std::optional<Vec> sphere_point_for_covector(const StratifiedAlgebra& alg, const Vec& covector);

}  // namespace carnot
