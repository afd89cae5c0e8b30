#pragma once

/**
 * @file poly.hpp
 * @brief Sparse Laurent polynomials sum_k c_k z^k over exact or floating coefficients.
 *
 * Only nonzero coefficients are stored, so parity-structured polynomials (only even or
 * only odd exponents) cost half. The coefficient type C is one of Dyadic, ComplexDyadic,
 * Real or Complex.
 */

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <initializer_list>
#include <map>
#include <ostream>
#include <set>
#include <utility>

#include "qsp/dyadic.hpp"
#include "qsp/errors.hpp"
#include "qsp/real.hpp"

namespace qsp {

inline Complex as_complex(const Complex& c) { return c; }
inline Complex as_complex(const Real& c) { return Complex(c); }
inline Complex as_complex(const ComplexDyadic& c) { return c.to_complex(); }
inline Complex as_complex(const Dyadic& c) { return Complex(c.to_real()); }

inline Dyadic halved(const Dyadic& c) { return c.half(); }
inline ComplexDyadic halved(const ComplexDyadic& c) { return c.half(); }
inline Real halved(const Real& c) { return ldexp(c, -1); }
inline Complex halved(const Complex& c) { return {ldexp(c.re, -1), ldexp(c.im, -1)}; }

template <class C>
class LaurentPoly {
 public:
  using Coeff = C;
  using Terms = std::map<int, C>;

  LaurentPoly() = default;
  LaurentPoly(std::initializer_list<std::pair<const int, C>> terms) {
    for (const auto& [k, c] : terms) set(k, c);
  }

  static LaurentPoly constant(C c) {
    LaurentPoly p;
    p.set(0, std::move(c));
    return p;
  }
  static LaurentPoly monomial(int k, C c) {
    LaurentPoly p;
    p.set(k, std::move(c));
    return p;
  }

  /// Stores c at exponent k; an exactly zero c erases the term.
  void set(int k, C c) {
    if (c.is_zero()) {
      terms_.erase(k);
    } else {
      terms_[k] = std::move(c);
    }
  }
  void add_to(int k, const C& c) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      set(k, c);
    } else {
      C sum = it->second + c;
      set(k, std::move(sum));
    }
  }

  C coeff(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? C() : it->second;
  }
  bool has(int k) const { return terms_.count(k) != 0; }

  /// Largest |k| with a nonzero coefficient; 0 for constants and for the zero polynomial.
  int degree() const {
    if (terms_.empty()) return 0;
    return std::max(std::abs(terms_.begin()->first), std::abs(terms_.rbegin()->first));
  }
  int max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
  int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }

  /// f(1/z)
  LaurentPoly reflected() const {
    LaurentPoly r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(-k, c);
    return r;
  }

  template <class F>
  auto map_coeffs(F&& f) const {
    using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
    LaurentPoly<D> r;
    for (const auto& [k, c] : terms_) r.set(k, f(c));
    return r;
  }

  LaurentPoly operator-() const {
    LaurentPoly r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
  }
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (const auto& [k, c] : b.terms_) r.add_to(k, c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [i, ci] : a.terms_) {
      for (const auto& [j, cj] : b.terms_) r.add_to(i + j, ci * cj);
    }
    return r;
  }
  friend LaurentPoly operator*(const C& s, const LaurentPoly& p) {
    LaurentPoly r;
    for (const auto& [k, c] : p.terms_) r.set(k, s * c);
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || ia->second != ib->second) return false;
    }
    return true;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
    bool first = true;
    for (const auto& [k, c] : p.terms_) {
      os << (first ? "" : " + ") << c << "*z^" << k;
      first = false;
    }
    return os << (first ? "0" : "");
  }

 private:
  Terms terms_;
};

using DyadicPoly = LaurentPoly<ComplexDyadic>;
using ComplexPoly = LaurentPoly<Complex>;

namespace detail {
// Horner over the nonnegative exponents, descending; gaps between stored exponents are
// bridged by repeated multiplication.
template <class It>
Complex horner(It first, It last, const Complex& x) {
  Complex acc;
  int prev = -1;
  for (It it = first; it != last; ++it) {
    int e = std::abs(it->first);
    if (prev >= 0) {
      for (int s = e; s < prev; ++s) acc *= x;
    }
    acc += as_complex(it->second);
    prev = e;
  }
  for (int s = 0; s < prev; ++s) acc *= x;
  return acc;
}
}  // namespace detail

/// sum_k c_k z^k at the working precision; z = 0 is outside the domain.
template <class C>
Complex evaluate(const LaurentPoly<C>& p, const Complex& z) {
  if (z.is_zero()) throw DomainError("Laurent polynomial evaluated at z = 0");
  const auto& terms = p.terms();
  auto split = terms.lower_bound(0);
  Complex result = detail::horner(terms.rbegin(), std::make_reverse_iterator(split), z);
  if (split != terms.begin()) {
    Complex w = reciprocal(z);
    // negative exponents ascend toward -1 when walked forward
    result += detail::horner(terms.begin(), split, w);
  }
  return result;
}

/// Reciprocal part f_+ = (f(z) + f(1/z))/2 and f_- = (f(z) - f(1/z))/(2i); f = f_+ + i f_-.
template <class C>
std::pair<LaurentPoly<C>, LaurentPoly<C>> split_parts(const LaurentPoly<C>& f) {
  LaurentPoly<C> plus;
  LaurentPoly<C> minus;
  std::set<int> exponents;
  for (const auto& term : f.terms()) {
    exponents.insert(term.first);
    exponents.insert(-term.first);
  }
  for (int k : exponents) {
    C c = f.coeff(k);
    C mirror = f.coeff(-k);
    plus.set(k, halved(c + mirror));
    // (c - mirror)/(2i) = -i (c - mirror)/2
    minus.set(k, -mul_i(halved(c - mirror)));
  }
  return {plus, minus};
}

enum class ExponentParity { even, odd, none };
enum class Reciprocity { reciprocal, anti_reciprocal, none };

struct ParityReport {
  ExponentParity exponents = ExponentParity::none;
  Reciprocity reciprocity = Reciprocity::none;
};

namespace detail {
inline bool coeff_equal(const ComplexDyadic& a, const ComplexDyadic& b, const Real*) { return a == b; }
inline bool coeff_equal(const Dyadic& a, const Dyadic& b, const Real*) { return a == b; }
inline bool coeff_equal(const Complex& a, const Complex& b, const Real* tol) {
  return tol ? abs(a - b) <= *tol : (a.re == b.re && a.im == b.im);
}
inline bool coeff_equal(const Real& a, const Real& b, const Real* tol) {
  return tol ? abs(a - b) <= *tol : a == b;
}

template <class C>
ParityReport parity_of(const LaurentPoly<C>& p, const Real* tol) {
  ParityReport report;
  bool any_even = false;
  bool any_odd = false;
  for (const auto& [k, c] : p.terms()) {
    if (tol && abs(as_complex(c)) <= *tol) continue;
    (k % 2 == 0 ? any_even : any_odd) = true;
  }
  if (!any_odd) {
    report.exponents = ExponentParity::even;
  } else if (!any_even) {
    report.exponents = ExponentParity::odd;
  }

  bool reciprocal = true;
  bool anti = true;
  for (const auto& [k, c] : p.terms()) {
    C mirror = p.coeff(-k);
    if (!coeff_equal(c, mirror, tol)) reciprocal = false;
    if (!coeff_equal(c, -mirror, tol)) anti = false;
  }
  if (reciprocal) {
    report.reciprocity = Reciprocity::reciprocal;
  } else if (anti) {
    report.reciprocity = Reciprocity::anti_reciprocal;
  }
  return report;
}
}  // namespace detail

/// Exponent parity and (anti-)reciprocity, checked exactly. The zero polynomial reports
/// even and reciprocal.
template <class C>
ParityReport check_parity(const LaurentPoly<C>& p) {
  return detail::parity_of(p, nullptr);
}

/// Same, treating coefficient differences up to `tolerance` as equal.
template <class C>
ParityReport check_parity(const LaurentPoly<C>& p, const Real& tolerance) {
  return detail::parity_of(p, &tolerance);
}

/// coeff(k) == conj(coeff(-k)) for every k, i.e. real values on |z| = 1.
inline bool is_real_on_circle(const DyadicPoly& p) {
  for (const auto& [k, c] : p.terms()) {
    if (c != conj(p.coeff(-k))) return false;
  }
  return true;
}

/// Exact conversion of every coefficient to a floating complex at the working precision.
inline ComplexPoly to_complex_poly(const DyadicPoly& p) {
  return p.map_coeffs([](const ComplexDyadic& c) { return c.to_complex(); });
}

}  // namespace qsp
