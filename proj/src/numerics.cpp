#include "oflp/numerics.hpp"

#include <algorithm>
#include <stdexcept>

namespace oflp {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) throw std::invalid_argument("not an integer: " + std::string(s));
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    throw std::invalid_argument("signed denominator: " + std::string(text));
  return make_rational(num, parse_integer(den_text));
}

int sign(const Rational& r) { return sgn(r); }
int sign(const Integer& z) { return sgn(z); }

// ---------------------------------------------------------------------------

Polynomial::Polynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Integer& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Integer& c, std::size_t degree) {
  std::vector<Integer> coeffs(degree + 1);
  coeffs[degree] = c;
  return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::parameter() { return monomial(1, 1); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Integer& Polynomial::coeff(std::size_t i) const {
  static const Integer kZero(0);
  return i < coeffs_.size() ? coeffs_[i] : kZero;
}

const Integer& Polynomial::leading() const {
  if (coeffs_.empty()) throw std::invalid_argument("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

std::size_t Polynomial::monomial_count() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c != 0; }));
}

Integer Polynomial::evaluate(const Integer& n) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= n;
    acc += *it;
  }
  return acc;
}

Polynomial Polynomial::without_monomial(std::size_t d) const {
  Polynomial out = *this;
  if (d < out.coeffs_.size()) {
    out.coeffs_[d] = 0;
    out.trim();
  }
  return out;
}

std::string Polynomial::to_string(bool compact) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Integer& c = coeffs_[k];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) out += '-';
    } else {
      out += compact ? (c < 0 ? "-" : "+") : (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) out += mag.get_str();
    if (k >= 1) out += 'n';
    if (k >= 2) out += '^' + std::to_string(k);
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  if (coeffs_.empty() || rhs.coeffs_.empty()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Integer> prod(coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(prod);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Integer& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  trim();
  return *this;
}

Polynomial falling_factorial(unsigned w, unsigned shift) {
  Polynomial out = Polynomial::constant(1);
  for (unsigned i = 0; i < w; ++i) {
    Integer root = Integer(shift) + i;
    out *= Polynomial({-root, Integer(1)});
  }
  return out;
}

Integer sign_stability_bound(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("sign_stability_bound of the zero polynomial");
  const std::size_t deg = p.degree();
  Integer max_abs = 0;
  for (std::size_t i = 0; i < deg; ++i) max_abs = std::max(max_abs, Integer(abs(p.coeff(i))));
  Integer lead = abs(p.leading());
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), max_abs.get_mpz_t(), lead.get_mpz_t());
  return q + 1;
}

Integer lcm_of_denominators(std::span<const Rational> values) {
  Integer l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

Integer sign_stability_bound(std::span<const Rational> coeffs) {
  Integer scale = lcm_of_denominators(coeffs);
  std::vector<Integer> ints;
  ints.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    Rational scaled = c * scale;
    ints.push_back(scaled.get_num());
  }
  return sign_stability_bound(Polynomial(std::move(ints)));
}

}  // namespace oflp
