#pragma once

#include "orbiclan/rational.hpp"

#include <string>
#include <tuple>
#include <vector>

namespace orbiclan {

/// Univariate polynomial over Q, coefficients in ascending degree.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);

    static Polynomial constant(const Rational& c);
    static Polynomial x();
    static Polynomial linear_root(const Rational& root); // x - root

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const Rational& coeff(int k) const;
    const Rational& leading() const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Rational operator()(const Rational& at) const;

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial scaled(const Rational& c) const;
    bool operator==(const Polynomial& rhs) const = default;

    Polynomial monic() const;
    Polynomial derivative() const;

    /// Euclidean division: *this = q * divisor + r with deg r < deg divisor.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Monic gcd (zero if both are zero).
Polynomial gcd(Polynomial a, Polynomial b);

/// (g, s, t) with s*a + t*b = g = gcd(a, b), g monic.
std::tuple<Polynomial, Polynomial, Polynomial> extended_gcd(const Polynomial& a, const Polynomial& b);

Polynomial squarefree_part(const Polynomial& p);

/// Distinct rational roots, ascending. Throws RefusalError if the integer
/// coefficients are too large for divisor enumeration.
std::vector<Rational> rational_roots(const Polynomial& p);

/// Number of distinct real roots, by a Sturm sequence on the squarefree part.
int count_real_roots(const Polynomial& p);

/// Multiplicity of root in p.
int root_multiplicity(const Polynomial& p, const Rational& root);

} // namespace orbiclan
