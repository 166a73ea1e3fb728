#include "petty/starbody/interpolant.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "petty/core/error.hpp"
#include "petty/core/roots.hpp"

namespace petty {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Cyclic tridiagonal solve (Sherman-Morrison); sub[i] multiplies x[i-1],
// sup[i] multiplies x[i+1], indices taken mod n.
std::vector<double> solve_cyclic(const std::vector<double>& sub, const std::vector<double>& diag,
                                 const std::vector<double>& sup, const std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  auto tridiag = [&](const std::vector<double>& b, const std::vector<double>& d) {
    std::vector<double> c(n), x(n);
    double beta = b[0];
    x[0] = d[0] / beta;
    for (std::size_t i = 1; i < n; ++i) {
      c[i] = sup[i - 1] / beta;
      beta = b[i] - sub[i] * c[i];
      x[i] = (d[i] - sub[i] * x[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i + 1] * x[i + 1];
    return x;
  };
  const double alpha = sup[n - 1];
  const double beta = sub[0];
  const double gamma = -diag[0];
  std::vector<double> b = diag;
  b[0] -= gamma;
  b[n - 1] -= alpha * beta / gamma;
  std::vector<double> x = tridiag(b, rhs);
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;
  const std::vector<double> z = tridiag(b, u);
  const double fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
  for (std::size_t i = 0; i < n; ++i) x[i] -= fact * z[i];
  return x;
}

}  // namespace

PeriodicSpline::PeriodicSpline(std::vector<double> knots, double period,
                               std::span<const double> values)
    : x_(std::move(knots)), y_(values.begin(), values.end()), period_(period) {
  const std::size_t n = x_.size();
  if (n < 3 || y_.size() != n) throw Error(Errc::out_of_range, "PeriodicSpline: need >= 3 knots");
  std::vector<double> h(n);
  for (std::size_t k = 0; k < n; ++k) h[k] = (k + 1 < n ? x_[k + 1] : x_[0] + period_) - x_[k];
  const double h0 = h[0];
  uniform_ = std::all_of(h.begin(), h.end(), [&](double v) { return std::abs(v - h0) < 1e-12 * h0; });

  std::vector<double> sub(n), diag(n), sup(n), rhs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t km = (k + n - 1) % n;
    const std::size_t kp = (k + 1) % n;
    sub[k] = h[km];
    diag[k] = 2.0 * (h[km] + h[k]);
    sup[k] = h[k];
    rhs[k] = 6.0 * ((y_[kp] - y_[k]) / h[k] - (y_[k] - y_[km]) / h[km]);
  }
  m_ = solve_cyclic(sub, diag, sup, rhs);
}

double PeriodicSpline::cell_width(std::size_t k) const {
  return (k + 1 < x_.size() ? x_[k + 1] : x_[0] + period_) - x_[k];
}

PeriodicSpline::Cell PeriodicSpline::cell_of(double x) const {
  double r = std::fmod(x - x_[0], period_);
  if (r < 0.0) r += period_;
  const std::size_t n = x_.size();
  std::size_t k;
  if (uniform_) {
    k = std::min(n - 1, static_cast<std::size_t>(r / (period_ / static_cast<double>(n))));
  } else {
    const double xr = x_[0] + r;
    auto it = std::upper_bound(x_.begin(), x_.end(), xr);
    k = static_cast<std::size_t>(it - x_.begin()) - 1;
  }
  return {k, std::max(0.0, x_[0] + r - x_[k])};
}

double PeriodicSpline::value_at(const Cell& c) const {
  const std::size_t k1 = (c.k + 1) % x_.size();
  const double h = cell_width(c.k);
  const double b = c.t / h;
  const double a = 1.0 - b;
  return a * y_[c.k] + b * y_[k1] + ((a * a * a - a) * m_[c.k] + (b * b * b - b) * m_[k1]) * h * h / 6.0;
}

double PeriodicSpline::derivative_at(const Cell& c) const {
  const std::size_t k1 = (c.k + 1) % x_.size();
  const double h = cell_width(c.k);
  const double b = c.t / h;
  const double a = 1.0 - b;
  return (y_[k1] - y_[c.k]) / h - (3.0 * a * a - 1.0) / 6.0 * h * m_[c.k] +
         (3.0 * b * b - 1.0) / 6.0 * h * m_[k1];
}

double PeriodicSpline::knot_derivative(std::size_t k) const { return derivative_at({k, 0.0}); }

double integrate_abs_cubic_cell(double y0, double y1, double m0, double m1, double h) {
  const double c0 = y0;
  const double c1 = (y1 - y0) / h - h * (2.0 * m0 + m1) / 6.0;
  const double c2 = 0.5 * m0;
  const double c3 = (m1 - m0) / (6.0 * h);
  auto poly = [&](double t) { return c0 + t * (c1 + t * (c2 + t * c3)); };
  auto anti = [&](double t) { return t * (c0 + t * (c1 / 2.0 + t * (c2 / 3.0 + t * c3 / 4.0))); };

  // Monotone pieces: split at critical points of the cubic.
  std::array<double, 6> pts{};
  int np = 0;
  pts[np++] = 0.0;
  const double qa = 3.0 * c3, qb = 2.0 * c2, qc = c1;
  std::array<double, 2> crit{};
  int nc = 0;
  if (std::abs(qa) < 1e-300) {
    if (qb != 0.0) crit[nc++] = -qc / qb;
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc > 0.0) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (qb + std::copysign(sq, qb));
      crit[nc++] = q / qa;
      if (q != 0.0) crit[nc++] = qc / q;
    }
  }
  if (nc == 2 && crit[0] > crit[1]) std::swap(crit[0], crit[1]);
  for (int i = 0; i < nc; ++i)
    if (crit[i] > 0.0 && crit[i] < h) pts[np++] = crit[i];
  pts[np++] = h;

  double total = 0.0;
  double prev = 0.0;
  double fprev = poly(0.0);
  for (int i = 1; i < np; ++i) {
    const double b = pts[i];
    const double fb = poly(b);
    double a = prev;
    if ((fprev < 0.0 && fb > 0.0) || (fprev > 0.0 && fb < 0.0)) {
      const double r = solve_bracketed(poly, a, b, fprev, fb, 1e-15 * h, 80);
      total += std::abs(anti(r) - anti(a));
      a = r;
    }
    total += std::abs(anti(b) - anti(a));
    prev = b;
    fprev = fb;
  }
  return total;
}

SphereInterpolant::SphereInterpolant(const SphereGrid& grid, std::vector<std::vector<double>> channels)
    : dim_(grid.dim()),
      n_lat_(grid.n_lat()),
      n_lon_(grid.n_lon()),
      dphi_(grid.dphi()),
      channel_count_(channels.size()),
      nodes_(grid.nodes().begin(), grid.nodes().end()),
      ring_theta_(grid.ring_theta().begin(), grid.ring_theta().end()),
      raw_(std::move(channels)) {
  if (channel_count_ == 0 || channel_count_ > 4)
    throw Error(Errc::out_of_range, "SphereInterpolant: 1 to 4 channels");
  for (const auto& c : raw_)
    if (c.size() != grid.size()) throw Error(Errc::grid_mismatch, "SphereInterpolant: channel size");

  if (dim_ == 2) {
    std::vector<double> knots(grid.size());
    for (std::size_t i = 0; i < knots.size(); ++i) knots[i] = dphi_ * static_cast<double>(i);
    for (const auto& c : raw_) splines_.emplace_back(knots, two_pi, c);
    return;
  }

  circle_theta_.resize(2 * n_lat_);
  for (int i = 0; i < n_lat_; ++i) {
    circle_theta_[i] = ring_theta_[i];
    circle_theta_[2 * n_lat_ - 1 - i] = two_pi - ring_theta_[i];
  }
  circle_.resize(static_cast<std::size_t>(n_lon_) * 2 * n_lat_ * channel_count_);
  for (int j = 0; j < n_lon_; ++j)
    for (int k = 0; k < 2 * n_lat_; ++k)
      for (std::size_t c = 0; c < channel_count_; ++c)
        circle_[(static_cast<std::size_t>(j) * 2 * n_lat_ + k) * channel_count_ + c] =
            circle_value(static_cast<int>(c), j, k);

  // Barycentric weights of every theta stencil, indexed by k0 + 1 (k0 >= -1).
  const int m = 2 * n_lat_;
  theta_bary_.resize(static_cast<std::size_t>(m + 1) * 6);
  for (int k0 = -1; k0 < m; ++k0) {
    double x[6];
    for (int a = 0; a < 6; ++a) x[a] = unwrapped_theta(k0 - 2 + a);
    for (int a = 0; a < 6; ++a) {
      double den = 1.0;
      for (int b = 0; b < 6; ++b)
        if (b != a) den *= x[a] - x[b];
      theta_bary_[static_cast<std::size_t>(k0 + 1) * 6 + a] = 1.0 / den;
    }
  }
}

double SphereInterpolant::unwrapped_theta(int k) const {
  const int m = 2 * n_lat_;
  const int kw = ((k % m) + m) % m;
  return circle_theta_[kw] + two_pi * static_cast<double>((k - kw) / m);
}

namespace {

constexpr int taps = 6;

// Lagrange weights and derivative weights for nodes x[0..taps) at s.
void lagrange(const double* x, double s, double* w, double* dw) {
  double d[taps];
  for (int k = 0; k < taps; ++k) d[k] = s - x[k];
  for (int a = 0; a < taps; ++a) {
    double num = 1.0, den = 1.0, dsum = 0.0;
    for (int b = 0; b < taps; ++b) {
      if (b == a) continue;
      den *= x[a] - x[b];
      if (dw) {
        // d/ds of prod_{c != a} d_c, accumulated alongside the product
        dsum = dsum * d[b] + num;
      }
      num *= d[b];
    }
    w[a] = num / den;
    if (dw) dw[a] = dsum / den;
  }
}

// Value-only weights from precomputed barycentric factors: w_a = lambda_a
// prod_{b != a} (s - x_b), with the products built from both ends.
void lagrange_bary(const double* x, const double* lambda, double s, double* w) {
  double d[taps], left[taps], right[taps];
  for (int k = 0; k < taps; ++k) d[k] = s - x[k];
  left[0] = 1.0;
  for (int k = 1; k < taps; ++k) left[k] = left[k - 1] * d[k - 1];
  right[taps - 1] = 1.0;
  for (int k = taps - 2; k >= 0; --k) right[k] = right[k + 1] * d[k + 1];
  for (int a = 0; a < taps; ++a) w[a] = lambda[a] * left[a] * right[a];
}

constexpr double phi_x[taps] = {-2, -1, 0, 1, 2, 3};
// 1 / prod_{b != a} (phi_x[a] - phi_x[b])
constexpr double phi_bary[taps] = {-1.0 / 120, 1.0 / 24, -1.0 / 12, 1.0 / 12, -1.0 / 24, 1.0 / 120};

}  // namespace

void SphereInterpolant::eval3(const Vec& u, int channel_lo, int channel_hi, double* val,
                              double* dth, double* dph, double& theta, double& phi) const {
  const int m = 2 * n_lat_;
  theta = std::atan2(std::hypot(u.x, u.y), u.z);
  phi = std::atan2(u.y, u.x);
  if (phi < 0.0) phi += two_pi;

  // theta stencil: positions k0-2 .. k0+3 of the periodic sequence
  auto it = std::upper_bound(circle_theta_.begin(), circle_theta_.end(), theta);
  const int k0 = static_cast<int>(it - circle_theta_.begin()) - 1;  // may be -1 near the north pole
  double tx[taps];
  int tk[taps];
  for (int a = 0; a < taps; ++a) {
    const int k = k0 - 2 + a;
    const int kw = ((k % m) + m) % m;
    tk[a] = kw;
    tx[a] = circle_theta_[kw] + two_pi * static_cast<double>((k - kw) / m);
  }
  double wt[taps], dwt[taps];
  if (dth)
    lagrange(tx, theta, wt, dwt);
  else
    lagrange_bary(tx, &theta_bary_[static_cast<std::size_t>(k0 + 1) * taps], theta, wt);

  // phi stencil: columns j0-2 .. j0+3
  const double pos = phi / dphi_;
  const int j0 = static_cast<int>(std::floor(pos));
  double wp[taps], dwp[taps];
  if (dph)
    lagrange(phi_x, pos - j0, wp, dwp);
  else
    lagrange_bary(phi_x, phi_bary, pos - j0, wp);

  const int nc = channel_hi - channel_lo;
  double v[4] = {0, 0, 0, 0}, vt[4] = {0, 0, 0, 0}, vp[4] = {0, 0, 0, 0};
  for (int b = 0; b < taps; ++b) {
    const int col = ((j0 - 2 + b) % n_lon_ + n_lon_) % n_lon_;
    double f[4] = {0, 0, 0, 0}, ft[4] = {0, 0, 0, 0};
    for (int a = 0; a < taps; ++a) {
      const double* row = circle_row(col, tk[a]) + channel_lo;
      for (int c = 0; c < nc; ++c) {
        f[c] += wt[a] * row[c];
        if (dth) ft[c] += dwt[a] * row[c];
      }
    }
    for (int c = 0; c < nc; ++c) {
      v[c] += wp[b] * f[c];
      vt[c] += wp[b] * ft[c];
      if (dph) vp[c] += dwp[b] * f[c];
    }
  }
  for (int c = 0; c < nc; ++c) {
    val[c] = v[c];
    if (dth) dth[c] = vt[c];
    if (dph) dph[c] = vp[c] / dphi_;
  }
}

double SphereInterpolant::value(const Vec& u, int channel) const {
  if (dim_ == 2) return splines_[channel].value(std::atan2(u.y, u.x));
  double v, th, ph;
  eval3(u, channel, channel + 1, &v, nullptr, nullptr, th, ph);
  return v;
}

void SphereInterpolant::values(const Vec& u, double* out) const {
  if (dim_ == 2) {
    const PeriodicSpline::Cell cell = splines_[0].cell_of(std::atan2(u.y, u.x));
    for (std::size_t c = 0; c < channel_count_; ++c) out[c] = splines_[c].value_at(cell);
    return;
  }
  double th, ph;
  eval3(u, 0, static_cast<int>(channel_count_), out, nullptr, nullptr, th, ph);
}

ValueGrad SphereInterpolant::value_grad(const Vec& u, int channel) const {
  ValueGrad r;
  if (dim_ == 2) {
    const double theta = std::atan2(u.y, u.x);
    const PeriodicSpline::Cell cell = splines_[channel].cell_of(theta);
    r.value = splines_[channel].value_at(cell);
    const double d = splines_[channel].derivative_at(cell);
    r.grad = {-std::sin(theta) * d, std::cos(theta) * d, 0.0};
    return r;
  }
  double v, dt, dp, theta, phi;
  eval3(u, channel, channel + 1, &v, &dt, &dp, theta, phi);
  r.value = v;
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  r.grad = Vec{ct * cp, ct * sp, -st} * dt;
  if (st > 1e-9) r.grad += Vec{-sp, cp, 0.0} * (dp / st);
  return r;
}

double SphereInterpolant::node_dtheta(std::size_t i, int channel) const {
  if (dim_ == 2) return splines_[channel].knot_derivative(i);
  const int m = 2 * n_lat_;
  const int ri = static_cast<int>(i) / n_lon_;
  const int col = static_cast<int>(i) % n_lon_;
  // derivative of the quartic through positions ri-2 .. ri+2
  double x[5], f[5];
  for (int a = 0; a < 5; ++a) {
    const int k = ri - 2 + a;
    const int kw = ((k % m) + m) % m;
    x[a] = circle_theta_[kw] + two_pi * static_cast<double>((k - kw) / m);
    f[a] = circle_value(channel, col, kw);
  }
  double d = 0.0;
  for (int a = 0; a < 5; ++a) {
    if (a == 2) continue;
    double w = 1.0 / (x[a] - x[2]);
    for (int b = 0; b < 5; ++b)
      if (b != a && b != 2) w *= (x[2] - x[b]) / (x[a] - x[b]);
    d += w * f[a];
  }
  double self = 0.0;
  for (int b = 0; b < 5; ++b)
    if (b != 2) self += 1.0 / (x[2] - x[b]);
  return d + self * f[2];
}

double SphereInterpolant::node_dphi(std::size_t i, int channel) const {
  if (dim_ == 2) return 0.0;
  const int ri = static_cast<int>(i) / n_lon_;
  const int col = static_cast<int>(i) % n_lon_;
  auto at = [&](int d) { return raw(channel, ri, ((col + d) % n_lon_ + n_lon_) % n_lon_); };
  return (at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2)) / (12.0 * dphi_);
}

std::pair<double, double> SphereInterpolant::node_one_sided_theta(std::size_t i, int channel) const {
  const auto& r = raw_[channel];
  if (dim_ == 2) {
    const std::size_t n = r.size();
    return {(r[i] - r[(i + n - 1) % n]) / dphi_, (r[(i + 1) % n] - r[i]) / dphi_};
  }
  const int ri = static_cast<int>(i) / n_lon_;
  const int col = static_cast<int>(i) % n_lon_;
  const int opp = (col + n_lon_ / 2) % n_lon_;
  const double here = r[i];
  double back, fwd;
  if (ri > 0) {
    back = (here - raw(channel, ri - 1, col)) / (ring_theta_[ri] - ring_theta_[ri - 1]);
  } else {
    back = (here - raw(channel, 0, opp)) / (2.0 * ring_theta_[0]);
  }
  if (ri + 1 < n_lat_) {
    fwd = (raw(channel, ri + 1, col) - here) / (ring_theta_[ri + 1] - ring_theta_[ri]);
  } else {
    fwd = (raw(channel, ri, opp) - here) / (2.0 * (std::numbers::pi - ring_theta_[ri]));
  }
  return {back, fwd};
}

std::pair<double, double> SphereInterpolant::node_one_sided_phi(std::size_t i, int channel) const {
  if (dim_ == 2) return {0.0, 0.0};
  const int ri = static_cast<int>(i) / n_lon_;
  const int col = static_cast<int>(i) % n_lon_;
  const double here = raw_[channel][i];
  return {(here - raw(channel, ri, (col + n_lon_ - 1) % n_lon_)) / dphi_,
          (raw(channel, ri, (col + 1) % n_lon_) - here) / dphi_};
}

Vec SphereInterpolant::e_theta(std::size_t i) const {
  const Vec& u = nodes_[i];
  if (dim_ == 2) return {-u.y, u.x, 0.0};
  const double theta = std::atan2(std::hypot(u.x, u.y), u.z);
  const double phi = dphi_ * static_cast<double>(static_cast<int>(i) % n_lon_);
  return {std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), -std::sin(theta)};
}

Vec SphereInterpolant::e_phi(std::size_t i) const {
  if (dim_ == 2) return {};
  const double phi = dphi_ * static_cast<double>(static_cast<int>(i) % n_lon_);
  return {-std::sin(phi), std::cos(phi), 0.0};
}

}  // namespace petty
