#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "carnot/linalg.hpp"

namespace carnot {

/// One structure constant [e_i, e_j] = ... + c e_k + ..., stored with i < j;
/// the antisymmetric completion is implicit.
struct BracketTerm {
    std::size_t i, j, k;
    Rational c;
};

struct ValidationReport {
    struct JacobiFailure {
        std::array<std::size_t, 3> triple;  // i < j < k
        Vec residual;
    };
    struct GradingViolation {
        std::size_t i, j, k;
        Rational c;
    };
    struct StratumCheck {
        std::size_t stratum;  // checks V_stratum == [V_1, V_{stratum-1}]
        bool generated;
    };

    std::vector<JacobiFailure> jacobi_failures;
    std::vector<GradingViolation> grading_violations;
    std::vector<StratumCheck> stratum_generation;
    bool top_bracket_trivial = true;  // [V_1, V_s] == 0

    bool ok() const;
};

/// Stratified Lie algebra given by strata dimensions and structure constants
/// on an adapted basis. Immutable after construction.
class StratifiedAlgebra {
  public:
    StratifiedAlgebra(std::string name, std::vector<std::size_t> strata,
                      std::vector<std::string> labels, std::vector<BracketTerm> brackets);

    const std::string& name() const { return name_; }
    std::size_t dim() const { return n_; }
    std::size_t step() const { return strata_.size(); }
    std::size_t first_stratum_dim() const { return strata_[0]; }
    const std::vector<std::size_t>& strata() const { return strata_; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// 1-based stratum index of basis vector i.
    std::size_t degree(std::size_t i) const { return degree_.at(i); }
    /// Basis index range [begin, end) of stratum s (1-based).
    std::pair<std::size_t, std::size_t> stratum_span(std::size_t s) const;

    /// Q = sum_i i * dim V_i.
    std::size_t homogeneous_dimension() const;

    const std::vector<BracketTerm>& bracket_table() const { return table_; }
    /// Signed structure constant for arbitrary index order.
    Rational structure_constant(std::size_t i, std::size_t j, std::size_t k) const;

    /// [u, v] by bilinear extension of the structure constants.
    Vec bracket(const Vec& u, const Vec& v) const;

    ValidationReport validate() const;

  private:
    std::string name_;
    std::vector<std::size_t> strata_;
    std::vector<std::string> labels_;
    std::size_t n_;
    std::vector<std::size_t> degree_;
    std::vector<BracketTerm> table_;            // normalized, i < j, no zero c
    std::vector<std::vector<Vec>> bracket_of_;  // [i][j] -> coordinates of [e_i, e_j], i < j
};

using AlgebraPtr = std::shared_ptr<const StratifiedAlgebra>;

/// Subspace of an algebra closed under the bracket, kept as a reduced
/// echelon basis.
class Subalgebra {
  public:
    /// Smallest bracket-closed subspace containing the generators.
    static Subalgebra closure(AlgebraPtr alg, const Mat& generators);
    /// Wraps an already bracket-closed span; throws if it is not closed.
    static Subalgebra span(AlgebraPtr alg, const Mat& vectors);

    const StratifiedAlgebra& ambient() const { return *alg_; }
    AlgebraPtr ambient_ptr() const { return alg_; }
    const Mat& basis() const { return basis_.rows(); }
    std::size_t dim() const { return basis_.rank(); }
    bool graded() const { return graded_; }

    /// Per-basis-vector degrees of a graded basis (only when graded()).
    const std::vector<std::size_t>& graded_degrees() const;
    const Mat& graded_basis() const;

    /// Sum of degrees over a graded basis; throws for non-graded subspaces.
    std::size_t homogeneous_dimension() const;

    bool contains(const Vec& v) const { return basis_.contains(v); }
    std::optional<Vec> coordinates(const Vec& v) const { return basis_.coordinates(v); }

  private:
    Subalgebra(AlgebraPtr alg, EchelonBasis basis);

    AlgebraPtr alg_;
    EchelonBasis basis_;
    bool graded_ = false;
    Mat graded_basis_;
    std::vector<std::size_t> graded_degrees_;
};

struct HomomorphismReport {
    bool stratum_respected = true;
    bool brackets_preserved = true;
    /// Basis indices whose image leaks outside the matching stratum.
    std::vector<std::size_t> stratum_violations;
    /// Pairs (i, j) with map[e_i, e_j] != [map e_i, map e_j].
    std::vector<std::pair<std::size_t, std::size_t>> bracket_violations;

    bool ok() const { return stratum_respected && brackets_preserved; }
};

/// Checks that the matrix (dst.dim rows x src.dim columns, column j = image
/// of the j-th src basis vector) is a homomorphism of stratified algebras.
HomomorphismReport check_carnot_homomorphism(const StratifiedAlgebra& src,
                                             const StratifiedAlgebra& dst, const Mat& map);

/// Homogeneous dimensions (Q_src, Q_image) of a valid homomorphism; a
/// nontrivial kernel forces Q_image <= Q_src - 1.
std::pair<std::size_t, std::size_t> image_dimension_drop(const StratifiedAlgebra& src,
                                                         const StratifiedAlgebra& dst,
                                                         const Mat& map);

}  // namespace carnot
