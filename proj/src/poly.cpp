#include "polyterm/poly.hpp"

#include <algorithm>
#include <cmath>

#include "polyterm/errors.hpp"

namespace polyterm {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) {
    trim();
}

Polynomial Polynomial::constant(double value) {
    return Polynomial{std::vector<double>{value}};
}

Polynomial Polynomial::variable() {
    return Polynomial{std::vector<double>{0.0, 1.0}};
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double z) const {
    double acc = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
    return acc;
}

int Polynomial::degree() const {
    return static_cast<int>(coeffs_.size()) - 1;
}

double Polynomial::coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : 0.0;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return Polynomial{std::move(d)};
}

Polynomial Polynomial::compose_affine(double scale, double shift) const {
    if (scale == 0.0)
        throw Error("invalid_argument", "compose_affine: scale must be nonzero");
    if (coeffs_.empty()) return {};
    // Horner in polynomial space: q <- q*(scale*z + shift) + c_k.
    std::vector<double> q{coeffs_.back()};
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
        std::vector<double> next(q.size() + 1, 0.0);
        for (std::size_t j = 0; j < q.size(); ++j) {
            next[j] += shift * q[j];
            next[j + 1] += scale * q[j];
        }
        next[0] += coeffs_[i];
        q = std::move(next);
    }
    return Polynomial{std::move(q)};
}

double Polynomial::max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(double factor) {
    for (double& c : coeffs_) c *= factor;
    trim();
    return *this;
}

Polynomial operator+(Polynomial lhs, const Polynomial& rhs) {
    lhs += rhs;
    return lhs;
}

Polynomial operator-(Polynomial lhs, const Polynomial& rhs) {
    lhs -= rhs;
    return lhs;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
    if (lhs.coeffs_.empty() || rhs.coeffs_.empty()) return {};
    std::vector<double> prod(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
            prod[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
    return Polynomial{std::move(prod)};
}

Polynomial operator*(double factor, Polynomial p) {
    p *= factor;
    return p;
}

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi))
        throw Error("invalid_argument", "interval endpoints must satisfy lo < hi");
}

}  // namespace polyterm
