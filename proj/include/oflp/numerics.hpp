#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace oflp {

// Arbitrary-precision scalars. mpq_class keeps itself canonical under
// arithmetic; values built from raw numerator/denominator pairs go through
// make_rational().
using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

// "p/q", or "p" when q = 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

// Accepts "p", "-p" and "p/q"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

int sign(const Rational& r);
int sign(const Integer& z);

// Dense univariate polynomial in the parameter n with integer coefficients.
// coeffs_[i] multiplies n^i; no trailing zeros, so the zero polynomial is
// the empty sequence.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Integer> coeffs);

  static Polynomial constant(const Integer& c);
  static Polynomial monomial(const Integer& c, std::size_t degree);
  // The polynomial "n".
  static Polynomial parameter();

  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial is 0.
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  // Zero when i exceeds the degree.
  const Integer& coeff(std::size_t i) const;
  const Integer& leading() const;
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  std::size_t monomial_count() const;

  Integer evaluate(const Integer& n) const;
  Integer evaluate(unsigned long n) const { return evaluate(Integer(n)); }

  // Same polynomial with the n^d monomial removed.
  Polynomial without_monomial(std::size_t d) const;

  // "2n^2 - n + 3"; compact drops the spaces around binary signs.
  std::string to_string(bool compact = false) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Integer& scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Integer& s) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

// (n - shift)(n - shift - 1)...(n - shift - w + 1); the constant 1 for w = 0.
Polynomial falling_factorial(unsigned w, unsigned shift = 0);

// Smallest Cauchy-style bound N with sign(p(n)) = sign(leading(p)) for all
// integers n >= N: N = 1 + ceil(max_{i<deg} |c_i| / |c_deg|).
// Throws std::invalid_argument on the zero polynomial.
Integer sign_stability_bound(const Polynomial& p);

// Rational-coefficient variant, scaled to integers first. Same contract.
Integer sign_stability_bound(std::span<const Rational> coeffs);

Integer lcm_of_denominators(std::span<const Rational> values);

}  // namespace oflp
