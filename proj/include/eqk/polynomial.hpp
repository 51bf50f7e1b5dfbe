#ifndef EQK_POLYNOMIAL_HPP
#define EQK_POLYNOMIAL_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "eqk/error.hpp"

namespace eqk {

using Complex = std::complex<double>;

/// Integer polynomial a_0 + a_1 X + ... + a_n X^n of exact degree n.
class IntPolynomial {
 public:
  explicit IntPolynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw InvalidInput("polynomial needs at least one coefficient");
    if (coeffs_.back() == 0) throw InvalidInput("leading coefficient must be nonzero");
  }

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const std::int64_t> coeffs() const noexcept { return coeffs_; }
  std::int64_t operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  std::int64_t leading() const noexcept { return coeffs_.back(); }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

/// Complex polynomial of exact degree (leading coefficient nonzero).
class ComplexPolynomial {
 public:
  explicit ComplexPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw InvalidInput("polynomial needs at least one coefficient");
    if (!(std::abs(coeffs_.back()) > 0.0)) throw InvalidInput("leading coefficient must be nonzero");
  }
  ComplexPolynomial(const IntPolynomial& p)  // NOLINT(google-explicit-constructor)
      : coeffs_(p.coeffs().begin(), p.coeffs().end()) {}

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  Complex leading() const noexcept { return coeffs_.back(); }

  /// Horner evaluation.
  Complex operator()(Complex z) const noexcept {
    Complex v = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * z + *it;
    return v;
  }

  friend bool operator==(const ComplexPolynomial&, const ComplexPolynomial&) = default;

 private:
  std::vector<Complex> coeffs_;
};

/// Coefficients of a section of O(n) on P^1 in the monomial basis
/// S_j^n = Z_0^j Z_1^(n-j), with the metric scaled by e^(-epsilon) per tensor factor.
struct SectionCoeffs {
  int n = 0;
  std::vector<Complex> coeffs;
  double epsilon = 0.0;

  SectionCoeffs() : coeffs(1, Complex{1.0}) {}
  SectionCoeffs(int degree, std::vector<Complex> c, double eps = 0.0)
      : n(degree), coeffs(std::move(c)), epsilon(eps) {
    if (n < 0) throw InvalidInput("section degree must be nonnegative");
    if (coeffs.size() != static_cast<std::size_t>(n) + 1) throw InvalidInput("section needs n+1 coefficients");
    if (!(epsilon >= 0.0)) throw InvalidInput("epsilon must be nonnegative");
  }

  /// The basis section S_j^n.
  static SectionCoeffs monomial(int n, int j, double eps = 0.0) {
    if (j < 0 || j > n) throw InvalidInput("monomial index out of range");
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1, Complex{0.0});
    c[static_cast<std::size_t>(j)] = 1.0;
    return SectionCoeffs(n, std::move(c), eps);
  }

  bool is_zero() const noexcept {
    for (const auto& a : coeffs)
      if (a != Complex{0.0}) return false;
    return true;
  }

  /// If exactly one coefficient is nonzero, its index.
  std::optional<int> monomial_index() const noexcept {
    std::optional<int> idx;
    for (int j = 0; j <= n; ++j) {
      if (coeffs[static_cast<std::size_t>(j)] != Complex{0.0}) {
        if (idx) return std::nullopt;
        idx = j;
      }
    }
    return idx;
  }
};

/// Polynomial of degree <= n as a section of O(n): X^k maps to S_k^n.
inline SectionCoeffs poly_to_section(const ComplexPolynomial& p, std::optional<int> n = std::nullopt,
                                     double epsilon = 0.0) {
  const int deg = n.value_or(p.degree());
  if (deg < p.degree()) throw InvalidInput("section degree below polynomial degree");
  std::vector<Complex> c(static_cast<std::size_t>(deg) + 1, Complex{0.0});
  for (int k = 0; k <= p.degree(); ++k) c[static_cast<std::size_t>(k)] = p[k];
  return SectionCoeffs(deg, std::move(c), epsilon);
}

/// Inverse of poly_to_section; the polynomial degree is that of the highest
/// nonzero coefficient.
inline ComplexPolynomial section_to_poly(const SectionCoeffs& s) {
  if (s.is_zero()) throw InvalidInput("zero section has no polynomial of exact degree");
  std::vector<Complex> c = s.coeffs;
  while (c.back() == Complex{0.0}) c.pop_back();
  return ComplexPolynomial(std::move(c));
}

// ---------------------------------------------------------------------------
// JSON: {"degree": n, "coeffs": [a_0, ..., a_n]} with integers or [re, im] pairs.

struct ParsedPolynomial {
  std::optional<IntPolynomial> integer;
  ComplexPolynomial complex;
};

namespace detail {

inline std::vector<Complex> parse_coeff_array(const nlohmann::json& arr, bool& all_integer,
                                              std::vector<std::int64_t>& ints) {
  if (!arr.is_array() || arr.empty()) throw InvalidInput("\"coeffs\" must be a non-empty array");
  std::vector<Complex> out;
  all_integer = true;
  for (const auto& c : arr) {
    if (c.is_number_integer()) {
      const auto v = c.get<std::int64_t>();
      ints.push_back(v);
      out.emplace_back(static_cast<double>(v), 0.0);
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      all_integer = false;
      out.emplace_back(c[0].get<double>(), c[1].get<double>());
    } else if (c.is_number()) {
      all_integer = false;
      out.emplace_back(c.get<double>(), 0.0);
    } else {
      throw InvalidInput("coefficient must be an integer or a [re, im] pair");
    }
  }
  return out;
}

inline int parse_degree(const nlohmann::json& j, std::size_t ncoeffs) {
  if (!j.is_object()) throw InvalidInput("polynomial JSON must be an object");
  if (!j.contains("coeffs")) throw InvalidInput("polynomial JSON needs \"coeffs\"");
  if (j.contains("degree")) {
    if (!j["degree"].is_number_integer()) throw InvalidInput("\"degree\" must be an integer");
    const auto d = j["degree"].get<long long>();
    if (d < 0 || static_cast<std::size_t>(d) + 1 != ncoeffs)
      throw InvalidInput("\"degree\" does not match the coefficient count");
  }
  return static_cast<int>(ncoeffs) - 1;
}

}  // namespace detail

inline ParsedPolynomial polynomial_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("coeffs")) throw InvalidInput("polynomial JSON needs \"coeffs\"");
  bool all_int = false;
  std::vector<std::int64_t> ints;
  auto c = detail::parse_coeff_array(j["coeffs"], all_int, ints);
  detail::parse_degree(j, c.size());
  if (all_int) {
    IntPolynomial ip(std::move(ints));
    return {ip, ComplexPolynomial(ip)};
  }
  return {std::nullopt, ComplexPolynomial(std::move(c))};
}

inline nlohmann::json to_json(const IntPolynomial& p) {
  return {{"degree", p.degree()}, {"coeffs", std::vector<std::int64_t>(p.coeffs().begin(), p.coeffs().end())}};
}

inline nlohmann::json to_json(const ComplexPolynomial& p) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& a : p.coeffs()) c.push_back({a.real(), a.imag()});
  return {{"degree", p.degree()}, {"coeffs", c}};
}

/// Section JSON: polynomial JSON plus "epsilon"; the top coefficient may be zero.
inline SectionCoeffs section_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("coeffs")) throw InvalidInput("section JSON needs \"coeffs\"");
  bool all_int = false;
  std::vector<std::int64_t> ints;
  auto c = detail::parse_coeff_array(j["coeffs"], all_int, ints);
  const int n = detail::parse_degree(j, c.size());
  double eps = 0.0;
  if (j.contains("epsilon")) {
    if (!j["epsilon"].is_number()) throw InvalidInput("\"epsilon\" must be a number");
    eps = j["epsilon"].get<double>();
  }
  return SectionCoeffs(n, std::move(c), eps);
}

inline nlohmann::json to_json(const SectionCoeffs& s) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& a : s.coeffs) c.push_back({a.real(), a.imag()});
  return {{"degree", s.n}, {"coeffs", c}, {"epsilon", s.epsilon}};
}

}  // namespace eqk

#endif  // EQK_POLYNOMIAL_HPP
