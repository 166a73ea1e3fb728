#include "petty/starbody/steiner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "petty/core/error.hpp"
#include "petty/core/roots.hpp"

namespace petty {

double IntervalSlice::total_length() const {
  double acc = 0.0;
  for (const auto& [a, b] : intervals) acc += b - a;
  return acc;
}

IntervalSlice slice(const StarBody& body, const Vec& u_in, const Vec& base_in) {
  const Vec u = normalized(u_in);
  const Vec base = base_in - u * dot(base_in, u);
  const double reach = 1.1 * body.max_radius() + 1e-9;
  const int samples = 4 * body.grid().resolution();
  const double step = 2.0 * reach / (samples - 1);
  auto inside = [&](double s) { return body.contains(base + u * s); };

  IntervalSlice out;
  bool prev_in = inside(-reach);
  double enter = -reach;
  for (int k = 1; k < samples; ++k) {
    const double s0 = -reach + step * (k - 1);
    const double s1 = k + 1 == samples ? reach : -reach + step * k;
    const bool cur = inside(s1);
    if (cur == prev_in) continue;
    if (cur) {
      enter = bisect_predicate([&](double s) { return !inside(s); }, s0, s1, 1e-10);
    } else {
      const double exit = bisect_predicate(inside, s0, s1, 1e-10);
      out.intervals.emplace_back(enter, exit);
    }
    prev_in = cur;
  }
  if (prev_in) out.intervals.emplace_back(enter, reach);
  return out;
}

// ---------------------------------------------------------------------------

struct ChordIndex::Impl {
  StarBody body;
  int dim = 0;
  Vec u, e1, e2;  // e1 (and e2 in space) span u^perp; (e1, e2, u) right-handed
  double reach = 0.0;

  // Plane: closed CCW polyline at angles theta_k.
  std::vector<double> theta, q, s;
  const PeriodicSpline* spline = nullptr;

  // Space: triangulated boundary.
  std::vector<Vec> pts;
  std::vector<double> p1, p2, ps;
  std::vector<std::array<int, 3>> tris;
  double inflate = 1.0;
  double pad = 0.0;

  // Buckets (CSR). Plane: 1-D over q; space: 2-D over (p1, p2).
  int nb = 0;
  double lo = 0.0, inv_width = 0.0;
  std::vector<int> offsets, items;

  explicit Impl(const StarBody& k) : body(k) {}

  int bucket_of(double x) const {
    const int b = static_cast<int>(std::floor((x - lo) * inv_width));
    return std::clamp(b, 0, nb - 1);
  }

  template <class Range>
  void build_buckets(std::size_t count, int cells, Range&& range) {
    std::vector<int> counts(static_cast<std::size_t>(cells) + 1, 0);
    std::vector<int> scratch;
    for (std::size_t e = 0; e < count; ++e) {
      scratch.clear();
      range(e, scratch);
      for (int c : scratch) ++counts[c + 1];
    }
    for (int c = 0; c < cells; ++c) counts[c + 1] += counts[c];
    offsets = counts;
    items.assign(offsets.back(), 0);
    std::vector<int> fill(offsets.begin(), offsets.end() - 1);
    for (std::size_t e = 0; e < count; ++e) {
      scratch.clear();
      range(e, scratch);
      for (int c : scratch) items[fill[c]++] = static_cast<int>(e);
    }
  }

  void build_2d() {
    spline = &body.interpolant().circle_spline(0);
    e1 = {u.y, -u.x, 0.0};
    const int m = static_cast<int>(body.grid().size());
    const int p = 8 * m;
    auto q_at = [&](double t) { return spline->value(t) * dot(direction_2d(t), e1); };
    std::vector<double> base(p + 1), qb(p + 1);
    for (int k = 0; k <= p; ++k) {
      base[k] = 2.0 * std::numbers::pi * k / p;
      qb[k] = q_at(base[k]);
    }
    // Insert the extrema of q between samples, so that every monotone piece
    // of q is bracketed by vertices and grazing lines are not missed.
    theta.assign(base.begin(), base.end());
    for (int k = 0; k < p; ++k) {
      const double d0 = qb[k] - qb[(k + p - 1) % p];
      const double d1 = qb[k + 1] - qb[k];
      if (!((d0 > 0.0 && d1 < 0.0) || (d0 < 0.0 && d1 > 0.0))) continue;
      const double sign = d0 > 0.0 ? 1.0 : -1.0;
      const double h = base[1] - base[0];
      double t = golden_max([&](double x) { return sign * q_at(x); }, base[k] - h, base[k] + h, 1e-14);
      if (t < 0.0) t += 2.0 * std::numbers::pi;
      if (t > 0.0 && t < 2.0 * std::numbers::pi) theta.push_back(t);
    }
    std::sort(theta.begin(), theta.end());
    theta.erase(std::unique(theta.begin(), theta.end()), theta.end());
    const std::size_t count = theta.size();
    q.resize(count);
    s.resize(count);
    double qmin = 1e300, qmax = -1e300;
    for (std::size_t k = 0; k < count; ++k) {
      const Vec b = direction_2d(theta[k]) * spline->value(theta[k]);
      q[k] = dot(b, e1);
      s[k] = dot(b, u);
      qmin = std::min(qmin, q[k]);
      qmax = std::max(qmax, q[k]);
    }
    nb = static_cast<int>(count / 2);
    lo = qmin;
    inv_width = nb / std::max(qmax - qmin, 1e-300);
    build_buckets(count - 1, nb, [&](std::size_t e, std::vector<int>& out) {
      const int a = bucket_of(std::min(q[e], q[e + 1]));
      const int b = bucket_of(std::max(q[e], q[e + 1]));
      for (int c = a; c <= b; ++c) out.push_back(c);
    });
  }

  double length_2d(double c) const {
    double total = 0.0;
    if (c < lo || c > lo + nb / inv_width) return 0.0;
    const int b = bucket_of(c);
    for (int idx = offsets[b]; idx < offsets[b + 1]; ++idx) {
      const int e = items[idx];
      const bool below0 = q[e] < c;
      const bool below1 = q[e + 1] < c;
      if (below0 == below1) continue;
      auto f = [&](double t) { return spline->value(t) * dot(direction_2d(t), e1) - c; };
      const double t = solve_bracketed(f, theta[e], theta[e + 1], q[e] - c, q[e + 1] - c, 1e-13, 60);
      const double sv = spline->value(t) * dot(direction_2d(t), u);
      total += q[e] > q[e + 1] ? sv : -sv;
    }
    return total;
  }

  void build_3d() {
    complete_frame(u, e1, e2);
    const SphereGrid& grid = body.grid();
    const int nt = 2 * grid.n_lat();
    const int np = 2 * grid.n_lon();
    // The mesh is inflated by a bound on its sag so that its silhouette
    // encloses the body's; crossings are then resolved on the body itself.
    const double edge = std::numbers::pi / nt;
    inflate = 1.0 + edge * edge * body.max_radius() / body.inner_radius();
    auto add = [&](const Vec& d) {
      const Vec x = d * (body.interpolant().value(d) * inflate);
      pts.push_back(x);
      p1.push_back(dot(x, e1));
      p2.push_back(dot(x, e2));
      ps.push_back(dot(x, u));
    };
    add({0.0, 0.0, 1.0});
    for (int a = 1; a < nt; ++a)
      for (int b = 0; b < np; ++b)
        add(direction_3d(std::numbers::pi * a / nt, 2.0 * std::numbers::pi * (b + 0.5) / np));
    add({0.0, 0.0, -1.0});
    const int south = static_cast<int>(pts.size()) - 1;
    auto vid = [&](int a, int b) { return 1 + (a - 1) * np + (b % np); };
    for (int b = 0; b < np; ++b) tris.push_back({0, vid(1, b), vid(1, b + 1)});
    for (int a = 1; a + 1 < nt; ++a) {
      for (int b = 0; b < np; ++b) {
        const int A = vid(a, b), B = vid(a, b + 1), C = vid(a + 1, b + 1), D = vid(a + 1, b);
        tris.push_back({A, D, B});
        tris.push_back({B, D, C});
      }
    }
    for (int b = 0; b < np; ++b) tris.push_back({vid(nt - 1, b), south, vid(nt - 1, b + 1)});

    double ext = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) ext = std::max({ext, std::abs(p1[k]), std::abs(p2[k])});
    pad = (inflate - 1.0) * body.max_radius() + 1e-12 * body.max_radius();
    nb = nt;
    lo = -ext * (1.0 + 1e-9) - 1e-12;
    inv_width = nb / (-2.0 * lo);
    build_buckets(tris.size(), nb * nb, [&](std::size_t t, std::vector<int>& out) {
      const auto& tr = tris[t];
      const double x0 = std::min({p1[tr[0]], p1[tr[1]], p1[tr[2]]});
      const double x1 = std::max({p1[tr[0]], p1[tr[1]], p1[tr[2]]});
      const double y0 = std::min({p2[tr[0]], p2[tr[1]], p2[tr[2]]});
      const double y1 = std::max({p2[tr[0]], p2[tr[1]], p2[tr[2]]});
      for (int i = bucket_of(x0); i <= bucket_of(x1); ++i)
        for (int j = bucket_of(y0); j <= bucket_of(y1); ++j) out.push_back(i * nb + j);
    });
  }

  // Point-in-triangle with a top-left fill rule so that points on shared
  // edges are counted exactly once.
  static bool top_left(double ax, double ay, double bx, double by) {
    return (ay == by && bx < ax) || by < ay;
  }

  double outside(const Vec& foot, double s) const {
    const Vec x = foot + u * s;
    const double len = norm(x);
    if (len < 1e-300) return -body.max_radius();
    return len - body.interpolant().value(x / len);
  }

  // Boundary crossing of the body on the far side of `inner` (f(inner) < 0),
  // searching outward from the mesh estimate `guess` in direction `dir`.
  double crossing_from(const Vec& foot, double inner, double f_inner, double guess, double dir) const {
    double step = std::max(pad, std::abs(guess - inner) * 1e-3);
    double far = guess;
    double f_far = outside(foot, far);
    for (int k = 0; k < 60 && f_far < 0.0; ++k, step *= 2.0) {
      far = guess + dir * step;
      f_far = outside(foot, far);
    }
    auto f = [&](double s) { return outside(foot, s); };
    const double a = std::min(inner, far), b = std::max(inner, far);
    const double fa = dir > 0 ? f_inner : f_far, fb = dir > 0 ? f_far : f_inner;
    return solve_bracketed(f, a, b, fa, fb, 1e-13 * body.max_radius(), 100);
  }

  double length_3d(const Vec& base) const {
    const double qx = dot(base, e1), qy = dot(base, e2);
    if (qx < lo || qy < lo || qx > -lo || qy > -lo) return 0.0;
    const int cell = bucket_of(qx) * nb + bucket_of(qy);
    std::array<std::pair<double, int>, 16> hits{};
    std::size_t nh = 0;
    for (int idx = offsets[cell]; idx < offsets[cell + 1]; ++idx) {
      auto tr = tris[items[idx]];
      double ax = p1[tr[0]], ay = p2[tr[0]];
      double bx = p1[tr[1]], by = p2[tr[1]];
      double cx = p1[tr[2]], cy = p2[tr[2]];
      const double area = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
      if (area == 0.0) continue;
      const int sign = area > 0.0 ? 1 : -1;
      if (sign < 0) {
        std::swap(bx, cx);
        std::swap(by, cy);
        std::swap(tr[1], tr[2]);
      }
      const double w0 = (cx - bx) * (qy - by) - (cy - by) * (qx - bx);
      const double w1 = (ax - cx) * (qy - cy) - (ay - cy) * (qx - cx);
      const double w2 = (bx - ax) * (qy - ay) - (by - ay) * (qx - ax);
      const bool in0 = w0 > 0.0 || (w0 == 0.0 && top_left(bx, by, cx, cy));
      const bool in1 = w1 > 0.0 || (w1 == 0.0 && top_left(cx, cy, ax, ay));
      const bool in2 = w2 > 0.0 || (w2 == 0.0 && top_left(ax, ay, bx, by));
      if (!(in0 && in1 && in2)) continue;
      const double a2 = std::abs(area);
      if (nh < hits.size())
        hits[nh++] = {(w0 * ps[tr[0]] + w1 * ps[tr[1]] + w2 * ps[tr[2]]) / a2, sign};
    }
    if (nh == 0) return 0.0;
    std::sort(hits.begin(), hits.begin() + nh);
    const Vec foot = e1 * qx + e2 * qy;
    double total = 0.0;
    // Mesh chords [entry, exit]; each is resolved on the body.
    for (std::size_t k = 0; k + 1 < nh; k += 2) {
      const double a = hits[k].first, b = hits[k + 1].first;
      if (hits[k].second > 0 || hits[k + 1].second < 0) {
        // inconsistent ordering: fall back to the direct scan
        return slice(body, u, foot).total_length();
      }
      double mid = 0.5 * (a + b);
      double fm = outside(foot, mid);
      if (fm >= 0.0) {
        // grazing: the mesh chord may cover a shorter chord or none
        mid = golden_max([&](double s) { return -outside(foot, s); }, a, b, 1e-12 * body.max_radius());
        fm = outside(foot, mid);
        if (fm >= 0.0) continue;
      }
      total += crossing_from(foot, mid, fm, b, 1.0) - crossing_from(foot, mid, fm, a, -1.0);
    }
    return total;
  }
};

ChordIndex::ChordIndex(const StarBody& body, const Vec& u) : impl_(std::make_unique<Impl>(body)) {
  impl_->dim = body.dim();
  impl_->u = normalized(u);
  if (impl_->dim == 2) impl_->build_2d(); else impl_->build_3d();
}
ChordIndex::~ChordIndex() = default;
ChordIndex::ChordIndex(ChordIndex&&) noexcept = default;
ChordIndex& ChordIndex::operator=(ChordIndex&&) noexcept = default;

const Vec& ChordIndex::direction() const { return impl_->u; }

double ChordIndex::length(const Vec& base) const {
  const Vec b = base - impl_->u * dot(base, impl_->u);
  const double len = impl_->dim == 2 ? impl_->length_2d(dot(b, impl_->e1)) : impl_->length_3d(b);
  return std::max(0.0, len);
}

// ---------------------------------------------------------------------------

SteinerSolver::SteinerSolver(const StarBody& body, const Vec& u, Exec exec)
    : body_(body), u_(normalized(u)), exec_(exec), chords_(body, u),
      reach_(1.2 * body.max_radius()) {}

double SteinerSolver::node_radius(std::size_t i, double r, double lo, double hi) const {
  const Vec w = body_.grid().node(i);
  const double wu = dot(w, u_);
  const Vec wp = w - u_ * wu;
  const double a = std::abs(wu);
  const double reach = reach_ * std::max(1.0, r);
  const double tol = 1e-13 * reach;
  if (a < 1e-12) {
    // Ray orthogonal to u: boundary is where the chord length vanishes.
    auto inside = [&](double t) { return chords_.length(wp * t) > 0.0; };
    if (!inside(lo)) lo = 0.0;
    if (inside(hi)) hi = reach;
    return bisect_predicate(inside, lo, hi, tol);
  }
  auto g = [&](double t) { return 0.5 * r * chords_.length(wp * t) - t * a; };
  double glo = g(lo), ghi = g(hi);
  if (!(glo >= 0.0 && ghi <= 0.0)) {
    lo = 0.0;
    hi = reach;
    glo = g(lo);
    ghi = g(hi);
    if (ghi > 0.0) return hi;
  }
  return solve_bracketed(g, lo, hi, glo, ghi, tol, 200);
}

std::vector<double> SteinerSolver::radii(double r) const {
  std::vector<double> out(body_.grid().size());
  for_each_index(exec_, out.size(), [&](std::size_t i) { out[i] = node_radius(i, r, 0.0, reach_ * std::max(1.0, r)); });
  return out;
}

std::vector<double> SteinerSolver::radii_between(double r, std::span<const double> lower,
                                                 std::span<const double> upper) const {
  std::vector<double> out(body_.grid().size());
  for_each_index(exec_, out.size(), [&](std::size_t i) {
    out[i] = node_radius(i, r, lower[i] * (1.0 - 1e-12), upper[i] * (1.0 + 1e-12));
  });
  return out;
}

StarBody steiner(const StarBody& body, const Vec& u, Exec exec) {
  SteinerSolver solver(body, u, exec);
  return StarBody(body.grid_ptr(), solver.radii(1.0));
}

StarBody steiner_reference(const StarBody& body, const Vec& u_in) {
  const Vec u = normalized(u_in);
  const SphereGrid& grid = body.grid();
  const double reach = 1.2 * body.max_radius();
  std::vector<double> rho(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec w = grid.node(i);
    const double wu = dot(w, u);
    const Vec wp = w - u * wu;
    auto inside = [&](double t) {
      const double len = slice(body, u, wp * t).total_length();
      return len > 0.0 && t * std::abs(wu) <= 0.5 * len;
    };
    rho[i] = bisect_predicate(inside, 0.0, reach, 1e-10);
  }
  return StarBody(body.grid_ptr(), std::move(rho));
}

}  // namespace petty
