#include "radlab/func2d.hpp"

#include <cmath>
#include <stdexcept>

namespace radlab {

namespace {

// x^k with value and two derivatives, k >= 0, by running products
struct Pow3 {
  double p = 1, d1 = 0, d2 = 0;
};

inline Pow3 int_pow3(double x, int k) {
  Pow3 r;
  if (k == 0) return r;
  if (k == 1) {
    r.p = x;
    r.d1 = 1.0;
    return r;
  }
  double q = 1.0;
  for (int i = 0; i < k - 2; ++i) q *= x;  // x^{k-2}
  r.d2 = k * (k - 1.0) * q;
  r.d1 = k * q * x;
  r.p = q * x * x;
  return r;
}

class ZeroFunc final : public Func2DImpl {
public:
  Eval2 eval(double, double) const override { return {}; }
};

class Poly2Func final : public Func2DImpl {
public:
  explicit Poly2Func(std::vector<std::vector<double>> c) : c_(std::move(c)) {
    rows_ = c_.size();
    cols_ = 0;
    for (const auto& row : c_) cols_ = std::max(cols_, row.size());
  }
  Eval2 eval(double a, double b) const override {
    // power tables up to the needed degree
    double pa[16], pb[16];
    pa[0] = pb[0] = 1.0;
    for (std::size_t i = 1; i < rows_ + 1 && i < 16; ++i) pa[i] = pa[i - 1] * a;
    for (std::size_t j = 1; j < cols_ + 1 && j < 16; ++j) pb[j] = pb[j - 1] * b;
    Eval2 e;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < c_[i].size(); ++j) {
        double cij = c_[i][j];
        if (cij == 0.0) continue;
        double va = pa[i], vb = pb[j];
        double da = i >= 1 ? i * pa[i - 1] : 0.0;
        double db = j >= 1 ? j * pb[j - 1] : 0.0;
        double daa = i >= 2 ? i * (i - 1.0) * pa[i - 2] : 0.0;
        double dbb = j >= 2 ? j * (j - 1.0) * pb[j - 2] : 0.0;
        e.v += cij * va * vb;
        e.da += cij * da * vb;
        e.db += cij * va * db;
        e.daa += cij * daa * vb;
        e.dab += cij * da * db;
        e.dbb += cij * va * dbb;
      }
    return e;
  }

private:
  std::vector<std::vector<double>> c_;
  std::size_t rows_ = 0, cols_ = 0;
};

class SeparableFunc final : public Func2DImpl {
public:
  SeparableFunc(Profile fa, Profile fb) : fa_(std::move(fa)), fb_(std::move(fb)) {}
  Eval2 eval(double a, double b) const override {
    Deriv2 A = fa_.eval(a), B = fb_.eval(b);
    return {A.v * B.v, A.d1 * B.v, A.v * B.d1, A.d2 * B.v, A.d1 * B.d1, A.v * B.d2};
  }

private:
  Profile fa_, fb_;
};

class PowProductFunc final : public Func2DImpl {
public:
  explicit PowProductFunc(int p) : p_(p) {
    if (p < 1) throw std::invalid_argument("pow_product: p >= 1");
  }
  Eval2 eval(double a, double b) const override {
    Pow3 A = int_pow3(a, p_), B = int_pow3(b, p_);
    return {A.p * B.p, A.d1 * B.p, A.p * B.d1, A.d2 * B.p, A.d1 * B.d1, A.p * B.d2};
  }

private:
  int p_;
};

class ProductFunc final : public Func2DImpl {
public:
  ProductFunc(Func2D f, Func2D g) : f_(std::move(f)), g_(std::move(g)) {}
  Eval2 eval(double a, double b) const override {
    Eval2 F = f_.eval(a, b), G = g_.eval(a, b);
    Eval2 e;
    e.v = F.v * G.v;
    e.da = F.da * G.v + F.v * G.da;
    e.db = F.db * G.v + F.v * G.db;
    e.daa = F.daa * G.v + 2.0 * F.da * G.da + F.v * G.daa;
    e.dbb = F.dbb * G.v + 2.0 * F.db * G.db + F.v * G.dbb;
    e.dab = F.dab * G.v + F.da * G.db + F.db * G.da + F.v * G.dab;
    return e;
  }

private:
  Func2D f_, g_;
};

class ScaleFunc final : public Func2DImpl {
public:
  ScaleFunc(double s, Func2D f) : s_(s), f_(std::move(f)) {}
  Eval2 eval(double a, double b) const override {
    Eval2 e = f_.eval(a, b);
    return {s_ * e.v, s_ * e.da, s_ * e.db, s_ * e.daa, s_ * e.dab, s_ * e.dbb};
  }

private:
  double s_;
  Func2D f_;
};

// (tau, r) cone bump; all partials continuous for p,q >= 2
class ConeBumpFunc final : public Func2DImpl {
public:
  ConeBumpFunc(double ra, double rb, int p, int q) : ra_(ra), rb_(rb), p_(p), q_(q) {
    if (!(0.0 < ra && ra < rb)) throw std::invalid_argument("cone_bump: need 0 < ra < rb");
    if (p < 2 || q < 2) throw std::invalid_argument("cone_bump: need p,q >= 2");
  }
  Eval2 eval(double tau, double r) const override {
    if (r <= ra_ || r >= rb_) return {};
    double z = tau / r;
    double mz = 1.0 - z * z;
    if (mz <= 0.0) return {};

    // radial factor s(r) = ((r-ra)(rb-r))^p
    double g = (r - ra_) * (rb_ - r);
    double g1 = ra_ + rb_ - 2.0 * r;
    Pow3 G = int_pow3(g, p_);
    double s = G.p;
    double s1 = G.d1 * g1;
    double s2 = G.d2 * g1 * g1 - 2.0 * G.d1;

    // cone factor c = (1 - (tau/r)^2)^q
    Pow3 Mq = int_pow3(mz, q_);
    double mq = Mq.p, mq1 = Mq.d1, mq2 = Mq.d2;
    double m_t = -2.0 * z / r, m_r = 2.0 * z * z / r;
    double m_tt = -2.0 / (r * r), m_rr = -6.0 * z * z / (r * r), m_tr = 4.0 * z / (r * r);
    double c = mq;
    double c_t = mq1 * m_t, c_r = mq1 * m_r;
    double c_tt = mq2 * m_t * m_t + mq1 * m_tt;
    double c_rr = mq2 * m_r * m_r + mq1 * m_rr;
    double c_tr = mq2 * m_t * m_r + mq1 * m_tr;

    Eval2 e;
    e.v = s * c;
    e.da = s * c_t;
    e.db = s1 * c + s * c_r;
    e.daa = s * c_tt;
    e.dab = s1 * c_t + s * c_tr;
    e.dbb = s2 * c + 2.0 * s1 * c_r + s * c_rr;
    return e;
  }

private:
  double ra_, rb_;
  int p_, q_;
};

}  // namespace

Func2D::Func2D() : impl_(std::make_shared<ZeroFunc>()) {}

Func2D Func2D::zero() { return Func2D(); }

Func2D Func2D::poly2(std::vector<std::vector<double>> coeffs) {
  return Func2D(std::make_shared<Poly2Func>(std::move(coeffs)));
}

Func2D Func2D::separable(Profile fa, Profile fb) {
  return Func2D(std::make_shared<SeparableFunc>(std::move(fa), std::move(fb)));
}

Func2D Func2D::pow_product(int p) { return Func2D(std::make_shared<PowProductFunc>(p)); }

Func2D Func2D::product(Func2D f, Func2D g) {
  return Func2D(std::make_shared<ProductFunc>(std::move(f), std::move(g)));
}

Func2D Func2D::scale(double s, Func2D f) {
  return Func2D(std::make_shared<ScaleFunc>(s, std::move(f)));
}

Func2D Func2D::cone_bump(double ra, double rb, int p, int q) {
  return Func2D(std::make_shared<ConeBumpFunc>(ra, rb, p, q));
}

double Func2DCorpus::uniform(double a, double b) {
  std::uniform_real_distribution<double> d(a, b);
  return d(rng_);
}

int Func2DCorpus::uniform_int(int a, int b) {
  std::uniform_int_distribution<int> d(a, b);
  return d(rng_);
}

Func2D Func2DCorpus::smooth_member(double T, double width_factor) {
  int deg = uniform_int(0, 2);
  std::vector<std::vector<double>> c(deg + 1, std::vector<double>(deg + 1, 0.0));
  for (auto& row : c)
    for (auto& v : row) v = uniform(-1.0, 1.0);
  Func2D f = Func2D::poly2(std::move(c));
  if (uniform_int(0, 1) == 1) {
    // gentle windows keep the panel quadrature convergent at modest counts
    double a1 = uniform(0.05 * T, 0.15 * T), b1 = uniform(0.75 * T, T);
    double a2 = uniform(0.05 * T, 0.15 * T), b2 = uniform(0.75 * T, T);
    double w = width_factor * std::min(b1 - a1, b2 - a2);
    f = Func2D::product(f, Func2D::separable(Profile::bump(a1, b1, w),
                                             Profile::bump(a2, b2, w)));
  }
  return f;
}

Func2D Func2DCorpus::corner_flat_member(double T, int p_min) {
  int p = p_min + uniform_int(0, 2);
  Func2D f = Func2D::pow_product(p);
  int deg = uniform_int(0, 2);
  std::vector<std::vector<double>> c(deg + 1, std::vector<double>(deg + 1, 0.0));
  for (auto& row : c)
    for (auto& v : row) v = uniform(-1.0, 1.0);
  // keep a definite overall scale so the member is not the zero function
  c[0][0] = uniform(0.5, 1.5) * (uniform_int(0, 1) ? 1.0 : -1.0);
  (void)T;
  return Func2D::product(f, Func2D::poly2(std::move(c)));
}

Func2D Func2DCorpus::cone_member(double r_lo, double r_hi) {
  double ra = uniform(r_lo, r_lo + 0.25 * (r_hi - r_lo));
  double rb = uniform(r_hi - 0.25 * (r_hi - r_lo), r_hi);
  int p = uniform_int(4, 6), q = uniform_int(4, 6);
  Func2D f = Func2D::cone_bump(ra, rb, p, q);
  double amp = uniform(0.5, 2.0);
  return Func2D::scale(amp, f);
}

}  // namespace radlab
