#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace polyterm {

/// Dense univariate real polynomial; coeffs()[k] multiplies z^k.
/// The zero polynomial has an empty coefficient list and degree -1.
/// Values are immutable after construction and safe to share across threads.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);
    Polynomial(std::initializer_list<double> coeffs);

    static Polynomial constant(double value);
    /// p(z) = z
    static Polynomial variable();

    /// Horner evaluation.
    double operator()(double z) const;

    /// Index of the last nonzero coefficient; -1 for the zero polynomial.
    int degree() const;

    /// Coefficient of z^k (zero beyond the stored range).
    double coeff(std::size_t k) const;
    const std::vector<double>& coeffs() const { return coeffs_; }

    Polynomial derivative() const;

    /// q with q(z) = p(scale*z + shift), exact binomial expansion.
    /// Rejects scale == 0.
    Polynomial compose_affine(double scale, double shift) const;

    double max_abs_coeff() const;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(double factor);

    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs);
    friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs);
    friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
    friend Polynomial operator*(double factor, Polynomial p);

    bool operator==(const Polynomial& rhs) const = default;

private:
    std::vector<double> coeffs_;

    void trim();
};

/// Open state-space interval (lo, hi); construction requires lo < hi.
struct Interval {
    double lo;
    double hi;

    Interval(double lo, double hi);

    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool contains(double z) const { return z > lo && z < hi; }
    bool contains_closed(double z) const { return z >= lo && z <= hi; }
};

}  // namespace polyterm
