#pragma once

#include <cmath>
#include <random>
#include <vector>

namespace ucin {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Square simulation window [-side/2, side/2]^2. Distances wrap around by
/// default, which removes edge effects for stationary point processes.
struct Window {
  double side = 1.0;
  bool toroidal = true;

  double wrap(double d) const {
    if (!toroidal) return d;
    return d - side * std::round(d / side);
  }
  double dist2(const Vec2& a, const Vec2& b) const {
    double dx = wrap(a.x - b.x);
    double dy = wrap(a.y - b.y);
    return dx * dx + dy * dy;
  }
  double dist(const Vec2& a, const Vec2& b) const {
    return std::sqrt(dist2(a, b));
  }
};

/// One sampled network. Users index into user_points; the typical user is
/// index 0. scheduled_user[b] == -1 marks an inactive BS.
struct NetworkRealization {
  std::vector<Vec2> bs_points;
  std::vector<Vec2> user_points;
  std::vector<int> home_bs;                    // per user
  std::vector<int> scheduled_user;             // per BS, -1 if inactive
  std::vector<std::vector<int>> requests;      // per BS: requesting users
  std::vector<std::vector<int>> nulling_targets;  // per BS: granted users

  bool active(int b) const { return scheduled_user[b] >= 0; }
};

/// Uniform cell grid over the window for nearest-neighbor and range queries.
class PointGrid {
 public:
  PointGrid(const std::vector<Vec2>& points, const Window& window);

  /// Index of the nearest point to p (ties broken toward the lower index),
  /// skipping `exclude`. Returns -1 if the point set is empty.
  int nearest(const Vec2& p, int exclude = -1) const;

  /// Calls fn(index, dist2) for every point within `radius` of p. Each point
  /// is visited exactly once.
  template <typename F>
  void for_each_within(const Vec2& p, double radius, F&& fn) const {
    if (points_->empty()) return;
    const double r2 = radius * radius;
    int lo_x = int(std::floor((p.x + half_ - radius) / cell_));
    int hi_x = int(std::floor((p.x + half_ + radius) / cell_));
    int lo_y = int(std::floor((p.y + half_ - radius) / cell_));
    int hi_y = int(std::floor((p.y + half_ + radius) / cell_));
    clamp_span(lo_x, hi_x);
    clamp_span(lo_y, hi_y);
    for (int cy = lo_y; cy <= hi_y; ++cy) {
      int wy = mod(cy);
      for (int cx = lo_x; cx <= hi_x; ++cx) {
        for (int idx : cells_[wy * n_ + mod(cx)]) {
          double d2 = window_.dist2(p, (*points_)[idx]);
          if (d2 <= r2) fn(idx, d2);
        }
      }
    }
  }

 private:
  void clamp_span(int& lo, int& hi) const {
    if (!window_.toroidal) {
      lo = std::max(lo, 0);
      hi = std::min(hi, n_ - 1);
    } else if (hi - lo + 1 >= n_) {
      lo = 0;
      hi = n_ - 1;
    }
  }
  int mod(int c) const {
    int r = c % n_;
    return r < 0 ? r + n_ : r;
  }

  const std::vector<Vec2>* points_;
  Window window_;
  int n_ = 1;
  double cell_ = 1.0;
  double half_ = 0.0;
  std::vector<std::vector<int>> cells_;
};

/// Homogeneous PPP sample: Poisson(intensity * side^2) points, i.i.d. uniform.
std::vector<Vec2> sample_ppp(double intensity, const Window& window,
                             std::mt19937_64& rng);

/// Nearest-BS association and per-cell TDMA scheduling. users[0] is the
/// typical user; its home BS schedules it, every other populated cell
/// schedules one of its users uniformly at random.
NetworkRealization associate_and_schedule(std::vector<Vec2> bs,
                                          std::vector<Vec2> users,
                                          const Window& window,
                                          std::mt19937_64& rng);

/// Adds nulling requests: each scheduled user with home distance r asks every
/// other active BS at distance in (r, mu*r].
void build_request_graph(NetworkRealization& realization, double mu,
                         const Window& window);

/// DoF-capped grant resolution: each BS grants all requests if they fit in
/// M-1 spatial degrees of freedom, otherwise a uniform random (M-1)-subset.
void resolve_requests(NetworkRealization& realization, int m_antennas,
                      std::mt19937_64& rng);

}  // namespace ucin
