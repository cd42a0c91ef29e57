#include "ucin/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ucin {

PointGrid::PointGrid(const std::vector<Vec2>& points, const Window& window)
    : points_(&points), window_(window), half_(window.side / 2.0) {
  // aim for ~0.5 points per cell; denser grids cost more to scan, sparser
  // ones make each nearest-neighbor query touch more points
  double target = std::sqrt(0.5 * window.side * window.side /
                            std::max<size_t>(points.size(), 1));
  n_ = std::max(1, std::min(int(window.side / std::max(target, 1e-12)), 4096));
  cell_ = window.side / n_;
  cells_.resize(size_t(n_) * n_);
  for (int i = 0; i < int(points.size()); ++i) {
    int cx = mod(int(std::floor((points[i].x + half_) / cell_)));
    int cy = mod(int(std::floor((points[i].y + half_) / cell_)));
    cells_[size_t(cy) * n_ + cx].push_back(i);
  }
}

int PointGrid::nearest(const Vec2& p, int exclude) const {
  if (points_->empty()) return -1;
  int best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  double radius = cell_;
  const double max_radius = window_.side;  // covers the whole torus
  while (true) {
    for_each_within(p, radius, [&](int idx, double d2) {
      if (idx == exclude) return;
      if (d2 < best_d2 || (d2 == best_d2 && idx < best)) {
        best_d2 = d2;
        best = idx;
      }
    });
    if (best >= 0 && best_d2 <= radius * radius) return best;
    if (radius >= max_radius) return best;
    radius *= 2.0;
  }
}

std::vector<Vec2> sample_ppp(double intensity, const Window& window,
                             std::mt19937_64& rng) {
  if (intensity < 0.0) throw std::domain_error("sample_ppp: intensity >= 0");
  std::vector<Vec2> points;
  if (intensity == 0.0) return points;
  std::poisson_distribution<int> count(intensity * window.side * window.side);
  std::uniform_real_distribution<double> pos(-window.side / 2.0,
                                             window.side / 2.0);
  int n = count(rng);
  points.reserve(n);
  for (int i = 0; i < n; ++i) {
    double x = pos(rng);
    double y = pos(rng);
    points.push_back({x, y});
  }
  return points;
}

NetworkRealization associate_and_schedule(std::vector<Vec2> bs,
                                          std::vector<Vec2> users,
                                          const Window& window,
                                          std::mt19937_64& rng) {
  if (bs.empty())
    throw std::runtime_error("associate_and_schedule: no BS in window");
  NetworkRealization r;
  r.bs_points = std::move(bs);
  r.user_points = std::move(users);
  r.home_bs.resize(r.user_points.size());
  PointGrid grid(r.bs_points, window);
  std::vector<std::vector<int>> cell_users(r.bs_points.size());
  for (int u = 0; u < int(r.user_points.size()); ++u) {
    int b = grid.nearest(r.user_points[u]);
    r.home_bs[u] = b;
    cell_users[b].push_back(u);
  }
  r.scheduled_user.assign(r.bs_points.size(), -1);
  for (int b = 0; b < int(r.bs_points.size()); ++b) {
    if (cell_users[b].empty()) continue;
    if (!r.user_points.empty() && r.home_bs[0] == b) {
      r.scheduled_user[b] = 0;  // the measured slot serves the typical user
    } else {
      std::uniform_int_distribution<size_t> pick(0, cell_users[b].size() - 1);
      r.scheduled_user[b] = cell_users[b][pick(rng)];
    }
  }
  r.requests.assign(r.bs_points.size(), {});
  r.nulling_targets.assign(r.bs_points.size(), {});
  return r;
}

void build_request_graph(NetworkRealization& realization, double mu,
                         const Window& window) {
  if (!(mu >= 1.0)) throw std::domain_error("build_request_graph: mu >= 1");
  for (auto& v : realization.requests) v.clear();
  if (mu == 1.0) return;
  PointGrid grid(realization.bs_points, window);
  for (int b = 0; b < int(realization.bs_points.size()); ++b) {
    int u = realization.scheduled_user[b];
    if (u < 0) continue;
    double r_u = window.dist(realization.user_points[u],
                             realization.bs_points[realization.home_bs[u]]);
    double r2_min = r_u * r_u;
    grid.for_each_within(
        realization.user_points[u], mu * r_u, [&](int target, double d2) {
          if (target == realization.home_bs[u]) return;
          if (!realization.active(target)) return;  // silent BSs cause no
                                                    // interference
          if (d2 > r2_min) realization.requests[target].push_back(u);
        });
  }
}

void resolve_requests(NetworkRealization& realization, int m_antennas,
                      std::mt19937_64& rng) {
  if (m_antennas < 1) throw std::domain_error("resolve_requests: M >= 1");
  const int capacity = m_antennas - 1;
  for (int b = 0; b < int(realization.bs_points.size()); ++b) {
    auto& req = realization.requests[b];
    auto& granted = realization.nulling_targets[b];
    granted.clear();
    if (int(req.size()) <= capacity) {
      granted = req;
      continue;
    }
    // partial Fisher-Yates: uniform (M-1)-subset
    std::vector<int> pool = req;
    for (int i = 0; i < capacity; ++i) {
      std::uniform_int_distribution<int> pick(i, int(pool.size()) - 1);
      std::swap(pool[i], pool[pick(rng)]);
      granted.push_back(pool[i]);
    }
  }
}

}  // namespace ucin
