// Closed-form radial profiles carrying analytic first and second derivatives.
// The basic building block is the C-infinity smoothstep
//   S(t) = sig(t) / (sig(t) + sig(1-t)),   sig(t) = exp(-1/t) for t>0,
// which is exactly 0 for t<=0 and exactly 1 for t>=1.  Bumps built from it are
// compactly supported with all derivatives vanishing at the support ends, and
// the exp(-alpha/x) tail profile vanishes to infinite order at x=0.
#pragma once

#include <limits>
#include <memory>
#include <vector>

namespace radlab {

struct Deriv2 {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
};

Deriv2 smoothstep(double t);

class ProfileImpl {
public:
  virtual ~ProfileImpl() = default;
  virtual Deriv2 eval(double x) const = 0;
  virtual double lo() const = 0;
  virtual double hi() const = 0;
};

// immutable value wrapper, cheap to copy
class Profile {
public:
  Profile();  // identically zero
  explicit Profile(std::shared_ptr<const ProfileImpl> impl) : impl_(std::move(impl)) {}

  Deriv2 eval(double x) const { return impl_->eval(x); }
  double v(double x) const { return impl_->eval(x).v; }
  double d1(double x) const { return impl_->eval(x).d1; }
  double d2(double x) const { return impl_->eval(x).d2; }
  double lo() const { return impl_->lo(); }
  double hi() const { return impl_->hi(); }
  bool is_zero() const;

  static Profile zero();
  static Profile poly(std::vector<double> coeffs);
  // poly(x) * rise at a * fall at b, smoothstep width w on each end
  static Profile bump(double a, double b, double w, std::vector<double> poly = {1.0});
  // exp(-alpha/x) * poly(x) * fall at b (width w); infinite-order vanishing at 0
  static Profile schwartz_tail(double alpha, double b, double w,
                               std::vector<double> poly = {1.0});
  static Profile scale(double s, const Profile& f);
  static Profile sum(const Profile& f, const Profile& g);

private:
  std::shared_ptr<const ProfileImpl> impl_;
};

}  // namespace radlab
