// Dense univariate polynomials and rational functions with exact rational
// coefficients. Used to derive the conjugated-operator coefficients without a
// symbolic-algebra dependency; evaluation happens in double via Horner after
// the exact algebra is done.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace radlab {

using Rat = boost::multiprecision::cpp_rational;

class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(const Rat& a) { return Poly({a}); }
  static Poly x() { return Poly({Rat(0), Rat(1)}); }

  // coefficients of a polynomial given as doubles (exactly representable
  // inputs like grid parameters keep exactness; config files go through here)
  static Poly from_doubles(const std::vector<double>& coeffs) {
    std::vector<Rat> c;
    c.reserve(coeffs.size());
    for (double v : coeffs) c.emplace_back(v);
    return Poly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }

  Rat at0() const { return coeff(0); }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(i);
    return Poly(std::move(d));
  }

  Rat eval_rat(const Rat& x) const {
    Rat acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  double eval(double x) const {
    double acc = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + double_coeff(i);
    return acc;
  }

  std::vector<double> coeffs_as_double() const {
    std::vector<double> d(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) d[i] = double_coeff(i);
    return d;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  friend Poly operator*(const Rat& s, const Poly& p) {
    std::vector<Rat> c(p.c_);
    for (auto& v : c) v *= s;
    return Poly(std::move(c));
  }
  Poly operator-() const { return Rat(-1) * *this; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  // lowest nonzero power of x (0 for the zero polynomial)
  std::size_t valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return i;
    return 0;
  }

  Poly shift_down(std::size_t k) const {  // divide by x^k, requires divisibility
    if (is_zero()) return Poly();
    std::vector<Rat> c(c_.begin() + static_cast<long>(k), c_.end());
    return Poly(std::move(c));
  }

  // remainder of this / d (monic-free Euclidean division over Q)
  Poly rem(const Poly& d) const {
    if (d.is_zero()) throw std::invalid_argument("Poly::rem: division by zero polynomial");
    Poly r = *this;
    Rat lead = d.c_.back();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      Rat f = r.c_.back() / lead;
      std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
      std::vector<Rat> sub(shift + d.c_.size(), Rat(0));
      for (std::size_t i = 0; i < d.c_.size(); ++i) sub[shift + i] = f * d.c_[i];
      r = r - Poly(std::move(sub));
    }
    return r;
  }

private:
  double double_coeff(std::size_t i) const { return static_cast<double>(c_[i]); }

  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rat> c_;  // c_[i] * x^i
};

inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.rem(b);
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  // normalize to a monic gcd so cancellation is canonical
  Rat lead = a.coeffs().back();
  return (Rat(1) / lead) * a;
}

// divide assuming exact divisibility
inline Poly poly_div_exact(const Poly& a, const Poly& d) {
  if (a.is_zero()) return Poly();
  std::vector<Rat> q(static_cast<std::size_t>(a.degree() - d.degree()) + 1, Rat(0));
  Poly r = a;
  Rat lead = d.coeffs().back();
  while (!r.is_zero() && r.degree() >= d.degree()) {
    Rat f = r.coeffs().back() / lead;
    std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
    q[shift] = f;
    std::vector<Rat> sub(shift + d.coeffs().size(), Rat(0));
    for (std::size_t i = 0; i < d.coeffs().size(); ++i) sub[shift + i] = f * d.coeff(i);
    r = r - Poly(std::move(sub));
  }
  if (!r.is_zero()) throw std::logic_error("poly_div_exact: not divisible");
  return Poly(std::move(q));
}

// Quotient of two polynomials, kept reduced (common gcd cancelled) so that
// a function regular at x=0 ends up with den(0) != 0.
class RatFunc {
public:
  RatFunc() : num_(), den_({Rat(1)}) {}
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("RatFunc: zero denominator");
    reduce();
  }
  static RatFunc from_poly(Poly p) { return RatFunc(std::move(p), Poly({Rat(1)})); }
  static RatFunc constant(const Rat& a) { return from_poly(Poly::constant(a)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  double eval(double x) const { return num_.eval(x) / den_.eval(x); }
  Rat eval_rat(const Rat& x) const { return num_.eval_rat(x) / den_.eval_rat(x); }
  Rat at0() const {
    if (den_.at0() == 0) throw std::domain_error("RatFunc: pole at x=0");
    return num_.at0() / den_.at0();
  }

  RatFunc derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator*(const Rat& s, const RatFunc& a) {
    return RatFunc(s * a.num_, a.den_);
  }

private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = Poly({Rat(1)});
      return;
    }
    std::size_t k = std::min(num_.valuation(), den_.valuation());
    if (k > 0) {
      num_ = num_.shift_down(k);
      den_ = den_.shift_down(k);
    }
    Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = poly_div_exact(num_, g);
      den_ = poly_div_exact(den_, g);
    }
    // fix the representation: positive leading denominator coefficient
    if (den_.coeffs().back() < 0) {
      num_ = Rat(-1) * num_;
      den_ = Rat(-1) * den_;
    }
  }

  Poly num_, den_;
};

}  // namespace radlab
