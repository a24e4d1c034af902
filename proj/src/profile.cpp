#include "radlab/profile.hpp"

#include <cmath>
#include <stdexcept>

namespace radlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Sig {
  double v = 0, d1 = 0, d2 = 0;
};

Sig sig(double t) {
  Sig s;
  if (t <= 0.0) return s;
  double e = std::exp(-1.0 / t);  // underflows to 0 harmlessly for tiny t
  s.v = e;
  s.d1 = e / (t * t);
  s.d2 = e * (1.0 / (t * t * t * t) - 2.0 / (t * t * t));
  return s;
}

Deriv2 mul(const Deriv2& a, const Deriv2& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

class ZeroProfile final : public ProfileImpl {
public:
  Deriv2 eval(double) const override { return {}; }
  double lo() const override { return 0.0; }
  double hi() const override { return 0.0; }
};

class PolyProfile final : public ProfileImpl {
public:
  explicit PolyProfile(std::vector<double> c) : c_(std::move(c)) {}
  Deriv2 eval(double x) const override {
    // Horner for value and the first two derivatives simultaneously
    double v = 0, d1 = 0, d2 = 0;
    for (std::size_t i = c_.size(); i-- > 0;) {
      d2 = d2 * x + 2.0 * d1;
      d1 = d1 * x + v;
      v = v * x + c_[i];
    }
    return {v, d1, d2};
  }
  double lo() const override { return -kInf; }
  double hi() const override { return kInf; }

private:
  std::vector<double> c_;
};

class BumpProfile final : public ProfileImpl {
public:
  BumpProfile(double a, double b, double w, std::vector<double> poly)
      : a_(a), b_(b), w_(w), poly_(std::move(poly)) {
    if (!(w > 0.0) || !(b - a > 0.0))
      throw std::invalid_argument("bump: need b > a and width > 0");
  }
  Deriv2 eval(double x) const override {
    if (x <= a_ || x >= b_) return {};
    Deriv2 rise = scaled_step((x - a_) / w_, 1.0 / w_);
    Deriv2 fall = scaled_step((b_ - x) / w_, -1.0 / w_);
    return mul(mul(rise, fall), poly_.eval(x));
  }
  double lo() const override { return a_; }
  double hi() const override { return b_; }

private:
  static Deriv2 scaled_step(double t, double dt) {
    Deriv2 s = smoothstep(t);
    return {s.v, s.d1 * dt, s.d2 * dt * dt};
  }
  double a_, b_, w_;
  PolyProfile poly_;
};

class SchwartzTailProfile final : public ProfileImpl {
public:
  SchwartzTailProfile(double alpha, double b, double w, std::vector<double> poly)
      : alpha_(alpha), b_(b), w_(w), poly_(std::move(poly)) {
    if (!(alpha > 0.0) || !(b > 0.0) || !(w > 0.0))
      throw std::invalid_argument("schwartz_tail: need alpha, b, w > 0");
  }
  Deriv2 eval(double x) const override {
    if (x <= 0.0 || x >= b_) return {};
    double e = std::exp(-alpha_ / x);
    Deriv2 tail{e, e * alpha_ / (x * x),
                e * (alpha_ * alpha_ / (x * x * x * x) - 2.0 * alpha_ / (x * x * x))};
    Deriv2 s = smoothstep((b_ - x) / w_);
    Deriv2 fall{s.v, -s.d1 / w_, s.d2 / (w_ * w_)};
    return mul(mul(tail, fall), poly_.eval(x));
  }
  double lo() const override { return 0.0; }
  double hi() const override { return b_; }

private:
  double alpha_, b_, w_;
  PolyProfile poly_;
};

class ScaledProfile final : public ProfileImpl {
public:
  ScaledProfile(double s, Profile f) : s_(s), f_(std::move(f)) {}
  Deriv2 eval(double x) const override {
    Deriv2 e = f_.eval(x);
    return {s_ * e.v, s_ * e.d1, s_ * e.d2};
  }
  double lo() const override { return f_.lo(); }
  double hi() const override { return f_.hi(); }

private:
  double s_;
  Profile f_;
};

class SumProfile final : public ProfileImpl {
public:
  SumProfile(Profile f, Profile g) : f_(std::move(f)), g_(std::move(g)) {}
  Deriv2 eval(double x) const override {
    Deriv2 a = f_.eval(x), b = g_.eval(x);
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
  }
  double lo() const override { return std::min(f_.lo(), g_.lo()); }
  double hi() const override { return std::max(f_.hi(), g_.hi()); }

private:
  Profile f_, g_;
};

}  // namespace

Deriv2 smoothstep(double t) {
  if (t <= 0.0) return {0.0, 0.0, 0.0};
  if (t >= 1.0) return {1.0, 0.0, 0.0};
  Sig s = sig(t), u = sig(1.0 - t);
  double D = s.v + u.v;
  double D1 = s.d1 - u.d1;
  double D2 = s.d2 + u.d2;
  Deriv2 r;
  r.v = s.v / D;
  r.d1 = (s.d1 * D - s.v * D1) / (D * D);
  r.d2 = ((s.d2 * D - s.v * D2) * D - 2.0 * D1 * (s.d1 * D - s.v * D1)) / (D * D * D);
  return r;
}

Profile::Profile() : impl_(std::make_shared<ZeroProfile>()) {}

bool Profile::is_zero() const {
  return dynamic_cast<const ZeroProfile*>(impl_.get()) != nullptr;
}

Profile Profile::zero() { return Profile(); }

Profile Profile::poly(std::vector<double> coeffs) {
  return Profile(std::make_shared<PolyProfile>(std::move(coeffs)));
}

Profile Profile::bump(double a, double b, double w, std::vector<double> poly) {
  return Profile(std::make_shared<BumpProfile>(a, b, w, std::move(poly)));
}

Profile Profile::schwartz_tail(double alpha, double b, double w, std::vector<double> poly) {
  return Profile(std::make_shared<SchwartzTailProfile>(alpha, b, w, std::move(poly)));
}

Profile Profile::scale(double s, const Profile& f) {
  return Profile(std::make_shared<ScaledProfile>(s, f));
}

Profile Profile::sum(const Profile& f, const Profile& g) {
  return Profile(std::make_shared<SumProfile>(f, g));
}

}  // namespace radlab
