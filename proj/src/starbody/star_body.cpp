#include "petty/starbody/star_body.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "petty/core/error.hpp"

namespace petty {

namespace {

// Slack on the slope budget: discrete differences of a smooth body stay well
// inside it, but ties on polytopes sit exactly on it.
constexpr double budget_slack = 1.05;

void check_pair(double a, double b, double step, double budget, double abs_slack) {
  if (std::abs(a - b) > step * budget * budget_slack + abs_slack)
    throw Error(Errc::invalid_body, "radial samples jump beyond the star-body slope budget");
}

}  // namespace

void validate_radii(const SphereGrid& grid, std::span<const double> rho, double r_in) {
  if (rho.size() != grid.size()) throw Error(Errc::grid_mismatch, "radial sample count != grid size");
  if (!(r_in > 0.0) || !std::isfinite(r_in))
    throw Error(Errc::invalid_body, "inner radius must be positive");
  double big = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!std::isfinite(rho[i])) throw Error(Errc::invalid_body, "non-finite radial sample at node " + std::to_string(i));
    if (rho[i] < r_in * (1.0 - 1e-12))
      throw Error(Errc::invalid_body, "radial sample below inner radius at node " + std::to_string(i));
    big = std::max(big, rho[i]);
  }
  const double r = std::min(r_in, big);
  const double budget = big * std::sqrt(std::max(0.0, big * big - r * r)) / r;
  const double abs_slack = 1e-9 * big;
  if (grid.dim() == 2) {
    const std::size_t m = grid.size();
    for (std::size_t i = 0; i < m; ++i) check_pair(rho[i], rho[(i + 1) % m], grid.dphi(), budget, abs_slack);
    return;
  }
  const int n_lat = grid.n_lat(), n_lon = grid.n_lon();
  const auto theta = grid.ring_theta();
  for (int i = 0; i < n_lat; ++i) {
    const double ring_step = grid.dphi() * std::sin(theta[i]);
    for (int j = 0; j < n_lon; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n_lon + j;
      check_pair(rho[k], rho[static_cast<std::size_t>(i) * n_lon + (j + 1) % n_lon], ring_step, budget, abs_slack);
      if (i + 1 < n_lat)
        check_pair(rho[k], rho[k + n_lon], theta[i + 1] - theta[i], budget, abs_slack);
    }
  }
}

StarBody::StarBody(GridPtr grid, std::vector<double> rho, std::optional<double> inner_radius)
    : grid_(std::move(grid)) {
  if (!grid_) throw Error(Errc::invalid_body, "StarBody: null grid");
  auto d = std::make_shared<Data>();
  if (rho.size() != grid_->size()) throw Error(Errc::grid_mismatch, "StarBody: sample count != grid size");
  const auto [lo, hi] = std::minmax_element(rho.begin(), rho.end());
  d->min_rho = *lo;
  d->max_rho = *hi;
  d->r_in = inner_radius.value_or(d->min_rho);
  validate_radii(*grid_, rho, d->r_in);
  d->rho = std::move(rho);
  d->interp = SphereInterpolant(*grid_, {d->rho});
  data_ = std::move(d);
}

StarBody StarBody::from_function(GridPtr grid, const std::function<double(const Vec&)>& rho,
                                 std::optional<double> inner_radius) {
  std::vector<double> r(grid->size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = rho(grid->node(i));
  return StarBody(std::move(grid), std::move(r), inner_radius);
}

int StarBody::dim() const { return grid_->dim(); }

double StarBody::radial(const Vec& x) const {
  const double len = norm(x);
  return data_->interp.value(x / len) / len;
}

ValueGrad StarBody::radial_grad(const Vec& u) const { return data_->interp.value_grad(u); }

bool StarBody::contains(const Vec& x) const {
  const double len = norm(x);
  if (len == 0.0) return true;
  return len <= data_->interp.value(x / len);
}

double StarBody::volume() const {
  const int n = dim();
  double acc = 0.0;
  for (std::size_t i = 0; i < data_->rho.size(); ++i)
    acc += grid_->weight(i) * std::pow(data_->rho[i], n);
  return acc / n;
}

StarBody StarBody::dilated(double s) const {
  std::vector<double> r(data_->rho);
  for (double& v : r) v *= s;
  return StarBody(grid_, std::move(r), data_->r_in * s);
}

StarBody StarBody::reflected() const {
  std::vector<double> r(data_->rho.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = data_->rho[grid_->antipode(i)];
  return StarBody(grid_, std::move(r), data_->r_in);
}

StarBody StarBody::rotated(const Rotation& rot) const {
  const Rotation inv = rot.inverse();
  std::vector<double> r(data_->rho.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = data_->interp.value(inv.apply(grid_->node(i)));
  const double lo = *std::min_element(r.begin(), r.end());
  return StarBody(grid_, std::move(r), std::min(lo, data_->r_in));
}

}  // namespace petty
