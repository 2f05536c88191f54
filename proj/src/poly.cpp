#include "carnot/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace carnot {

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c) {
    MultiPoly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw std::invalid_argument("MultiPoly::variable: index out of range");
    Exponents e(nvars, 0);
    e[i] = 1;
    return monomial(nvars, std::move(e), Rational(1));
}

MultiPoly MultiPoly::monomial(std::size_t nvars, Exponents e, const Rational& c) {
    if (e.size() != nvars) throw std::invalid_argument("MultiPoly::monomial: exponent arity");
    MultiPoly p(nvars);
    p.add_term(e, c);
    return p;
}

int MultiPoly::total_degree() const {
    int deg = -1;
    for (const auto& [e, c] : terms_) {
        const int d = static_cast<int>(std::accumulate(e.begin(), e.end(), 0u));
        deg = std::max(deg, d);
    }
    return deg;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
    if (e.size() != nvars_) throw std::invalid_argument("MultiPoly::add_term: exponent arity");
    if (sgn(c) == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("MultiPoly: arity mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("MultiPoly: arity mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("MultiPoly: arity mismatch");
    MultiPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            MultiPoly::Exponents e(ea);
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MultiPoly operator*(const Rational& c, const MultiPoly& p) {
    MultiPoly r(p.nvars_);
    if (sgn(c) == 0) return r;
    for (const auto& [e, pc] : p.terms_) r.terms_.emplace(e, c * pc);
    return r;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
    if (var >= nvars_) throw std::invalid_argument("MultiPoly::derivative: index out of range");
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d(e);
        d[var] -= 1;
        r.add_term(d, c * Rational(e[var]));
    }
    return r;
}

Rational MultiPoly::eval(std::span<const Rational> x) const {
    if (x.size() != nvars_) throw std::invalid_argument("MultiPoly::eval: arity mismatch");
    Rational s(0);
    for (const auto& [e, c] : terms_) {
        Rational t(c);
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e[i] != 0) t *= pow_int(x[i], e[i]);
        s += t;
    }
    return s;
}

double MultiPoly::eval_d(std::span<const double> x) const {
    if (x.size() != nvars_) throw std::invalid_argument("MultiPoly::eval_d: arity mismatch");
    double s = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = to_double(c);
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
        s += t;
    }
    return s;
}

std::string MultiPoly::str(std::span<const std::string> names) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << to_string(c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            out << "*";
            if (i < names.size())
                out << names[i];
            else
                out << "x" << i;
            if (e[i] > 1) out << "^" << e[i];
        }
    }
    return out.str();
}

}  // namespace carnot
