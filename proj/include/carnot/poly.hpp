#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "carnot/linalg.hpp"
#include "carnot/rational.hpp"

namespace carnot {

/// Multivariate polynomial with exact rational coefficients, stored as a
/// map from exponent tuples to nonzero coefficients.
class MultiPoly {
  public:
    using Exponents = std::vector<unsigned>;

    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const Rational& c);
    static MultiPoly variable(std::size_t nvars, std::size_t i);
    static MultiPoly monomial(std::size_t nvars, Exponents e, const Rational& c);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    /// Total degree, or -1 for the zero polynomial.
    int total_degree() const;

    const std::map<Exponents, Rational>& terms() const { return terms_; }

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const Rational& c, const MultiPoly& p);

    bool operator==(const MultiPoly& o) const = default;

    MultiPoly derivative(std::size_t var) const;
    Rational eval(std::span<const Rational> x) const;
    double eval_d(std::span<const double> x) const;

    /// Adds c * x^e in place.
    void add_term(const Exponents& e, const Rational& c);

    std::string str(std::span<const std::string> names = {}) const;

  private:
    std::size_t nvars_;
    std::map<Exponents, Rational> terms_;
};

}  // namespace carnot
