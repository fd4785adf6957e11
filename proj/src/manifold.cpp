#include "gilet/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace gilet {

namespace {

constexpr double kEscapeBound = 1e6;

bool escaped_state(const StateVec& s) {
  for (double c : s.coords()) {
    if (!(std::abs(c) <= kEscapeBound)) return true;
  }
  return false;
}

// k-fold iterate; returns false if the orbit leaves the escape bound.
bool iterate(const MapModel& model, StateVec& s, int k) {
  for (int i = 0; i < k; ++i) {
    s = model(s);
    if (escaped_state(s)) return false;
  }
  return true;
}

}  // namespace

double ManifoldPolyline::max_spacing() const {
  double m = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) m = std::max(m, distance(points[i - 1], points[i]));
  return m;
}

UnstableDirection unstable_direction(const FixedPointRecord& saddle) {
  if (saddle.classification != Classification::Saddle) {
    throw NotASaddle("unstable manifold requested for a " + std::string(to_string(saddle.classification)));
  }
  const EigenPair* best = nullptr;
  for (const auto& e : saddle.eigen) {
    if (std::abs(e.value) > 1.0 && (best == nullptr || std::abs(e.value) > std::abs(best->value))) best = &e;
  }
  if (best == nullptr || best->value.imag() != 0.0) throw NotASaddle("saddle has no real unstable eigenvalue");
  const int n = saddle.location.dim();
  // Rotate the complex eigenvector onto the reals before taking the real part.
  Complex phase(1.0);
  for (int i = 0; i < n; ++i) {
    const Complex c = best->vector[static_cast<std::size_t>(i)];
    if (std::abs(c) > 1e-12) {
      phase = std::conj(c) / std::abs(c);
      break;
    }
  }
  std::vector<double> v(static_cast<std::size_t>(n));
  double norm = 0.0;
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] = (best->vector[static_cast<std::size_t>(i)] * phase).real();
    norm += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
  }
  norm = std::sqrt(norm);
  for (double& c : v) c /= norm;
  return {best->value.real(), v};
}

ManifoldPolyline seed_fundamental_domain(const MapModel& model, const FixedPointRecord& saddle, Branch branch,
                                         double nu, int n0) {
  if (!(nu > 0.0)) throw ContractError("seed_fundamental_domain: nu must be positive");
  if (n0 < 8) throw ContractError("seed_fundamental_domain: n0 must be at least 8");
  const UnstableDirection dir = unstable_direction(saddle);
  const int n = saddle.location.dim();

  // Orient the eigenvector so the branch leaves on the requested side of the
  // (vertical) stable manifold.
  std::vector<double> v = dir.vector;
  const double orient = (v[0] * sign_of(branch) >= 0.0) ? 1.0 : -1.0;
  const double eps = nu / dir.lambda;

  std::array<double, 3> a{};
  for (int i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i)] = saddle.location[i] + orient * eps * v[static_cast<std::size_t>(i)];
  }
  const StateVec start(std::span<const double>(a.data(), static_cast<std::size_t>(n)));
  const StateVec end = model(start);

  ManifoldPolyline poly;
  poly.branch = branch;
  poly.saddle = saddle;
  poly.seed_start = start;
  poly.seed_end = end;
  double s = 0.0;
  for (int i = 0; i < n0; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n0 - 1);
    const StateVec p = lerp(start, end, t);
    if (i > 0) s += distance(poly.points.back(), p);
    poly.points.push_back(p);
    poly.arclengths.push_back(s);
    poly.generation.push_back(0);
    poly.index_in_generation.push_back(i);
    poly.frontier_params.push_back(t);
  }
  poly.endpoint_arclength.push_back(s);
  return poly;
}

ManifoldPolyline grow_unstable(const MapModel& model, ManifoldPolyline poly, int target_generations,
                               double spacing_max, std::size_t cap_points) {
  if (!(spacing_max > 0.0)) throw ContractError("grow_unstable: spacing_max must be positive");
  if (poly.points.empty() || poly.frontier_params.empty()) throw ContractError("grow_unstable: empty polyline");

  const std::size_t frontier_size = poly.frontier_params.size();
  std::vector<StateVec> frontier(poly.points.end() - static_cast<std::ptrdiff_t>(frontier_size), poly.points.end());
  std::vector<double> params = poly.frontier_params;

  auto seed_point = [&](double t) { return lerp(poly.seed_start, poly.seed_end, t); };

  while (poly.generations < target_generations && !poly.truncated && !poly.escaped) {
    const int gen = poly.generations + 1;
    std::vector<StateVec> next;
    std::vector<double> next_params;
    next.reserve(frontier.size() * 2);
    next_params.reserve(frontier.size() * 2);

    bool escaped = false;
    bool over_cap = false;
    // Images of the previous generation; refine each gap depth-first.
    std::vector<StateVec> images;
    images.reserve(frontier.size());
    for (const StateVec& p : frontier) {
      StateVec q = model(p);
      if (escaped_state(q)) {
        escaped = true;
        break;
      }
      images.push_back(q);
    }

    if (!escaped) {
      next.push_back(images[0]);
      next_params.push_back(params[0]);
      struct Gap {
        double t0, t1;
        StateVec p1;
      };
      std::vector<Gap> stack;
      for (std::size_t i = 1; i < images.size() && !escaped && !over_cap; ++i) {
        stack.push_back({params[i - 1], params[i], images[i]});
        while (!stack.empty()) {
          Gap g = stack.back();
          const StateVec& p0 = next.back();
          if (distance(p0, g.p1) <= spacing_max) {
            next.push_back(g.p1);
            next_params.push_back(g.t1);
            stack.pop_back();
            continue;
          }
          const double tm = 0.5 * (g.t0 + g.t1);
          if (tm <= g.t0 || tm >= g.t1) {
            poly.unresolved = true;
            next.push_back(g.p1);
            next_params.push_back(g.t1);
            stack.pop_back();
            continue;
          }
          StateVec pm = seed_point(tm);
          if (!iterate(model, pm, gen)) {
            escaped = true;
            break;
          }
          stack.back().t0 = tm;  // right half waits below the left half
          stack.back().p1 = g.p1;
          stack.push_back({g.t0, tm, pm});
          if (poly.points.size() + next.size() + stack.size() > cap_points) {
            over_cap = true;
            break;
          }
        }
      }
    }

    if (escaped) {
      poly.escaped = true;
      break;
    }
    if (over_cap) {
      poly.truncated = true;
      break;
    }

    // The first point of the new generation duplicates the last stored point.
    double s = poly.arclengths.back();
    for (std::size_t i = 1; i < next.size(); ++i) {
      s += distance(next[i - 1], next[i]);
      poly.points.push_back(next[i]);
      poly.arclengths.push_back(s);
      poly.generation.push_back(gen);
      poly.index_in_generation.push_back(static_cast<int>(i));
    }
    poly.endpoint_arclength.push_back(s);
    poly.generations = gen;
    frontier = std::move(next);
    params = std::move(next_params);
  }

  poly.frontier_params = params;
  return poly;
}

ManifoldPolyline trace_unstable(const MapModel& model, const FixedPointRecord& saddle, Branch branch,
                                const ManifoldBudget& budget) {
  return grow_unstable(model, seed_fundamental_domain(model, saddle, branch, budget.nu), budget.generations,
                       budget.spacing_max, budget.cap_points);
}

StableLine stable_line(const MapModel& model, const FixedPointRecord& saddle) {
  if (model.dimension() != 2) throw ContractError("stable_line: planar map required");
  if (saddle.classification != Classification::Saddle) throw NotASaddle("stable_line: input is not a saddle");
  const double x_hat = saddle.location.x();
  if (std::abs(model.potential().d1(x_hat)) > 1e-10 ||
      (model.variant() == MapVariant::ModifiedGilet && std::abs(x_hat) > 0.4)) {
    throw NoClosedForm("stable_line: only critical-point saddles have a vertical stable manifold");
  }
  // One step along the line: x stays put and y contracts toward ŷ at rate μ.
  const double y_hat = saddle.location.y();
  for (double dy : {-1.0, -0.1, 0.1, 1.0}) {
    const StateVec img = model(StateVec(x_hat, y_hat + dy));
    const bool stays = std::abs(img.x() - x_hat) <= 1e-13 * std::max(1.0, std::abs(y_hat + dy));
    const bool contracts = std::abs(std::abs(img.y() - y_hat) - model.mu() * std::abs(dy)) <= 1e-12;
    if (!stays || !contracts) throw NoClosedForm("stable_line: the vertical line is not contracted onto the saddle");
  }
  return {x_hat, saddle};
}

std::vector<LineCrossing> crossings_with_line(const std::vector<StateVec>& points, double x_hat) {
  std::vector<LineCrossing> out;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double d0 = points[i - 1].x() - x_hat;
    const double d1 = points[i].x() - x_hat;
    if (d0 * d1 < 0.0) {
      const double t = d0 / (d0 - d1);
      out.push_back({i - 1, lerp(points[i - 1], points[i], t), d1 > d0 ? 1 : -1});
    } else if (d1 == 0.0 && i + 1 < points.size()) {
      const double d2 = points[i + 1].x() - x_hat;
      if (d0 * d2 < 0.0) out.push_back({i - 1, points[i], d2 > d0 ? 1 : -1});
    }
  }
  return out;
}

std::vector<LineCrossing> crossings_with_line(const ManifoldPolyline& poly, const StableLine& line) {
  return crossings_with_line(poly.points, line.x_hat);
}

void write_manifold_csv(std::ostream& os, const ManifoldPolyline& poly) {
  const bool three = !poly.points.empty() && poly.points.front().dim() == 3;
  os << (three ? "generation,index,x,y,z,arclength\n" : "generation,index,x,y,arclength\n");
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < poly.points.size(); ++i) {
    const StateVec& p = poly.points[i];
    os << poly.generation[i] << ',' << poly.index_in_generation[i] << ',' << p.x() << ',' << p.y();
    if (three) os << ',' << p.z();
    os << ',' << poly.arclengths[i] << '\n';
  }
  os.precision(old);
}

double directed_hausdorff(const std::vector<StateVec>& a, const std::vector<StateVec>& b) {
  if (a.empty()) return 0.0;
  if (b.empty()) return std::numeric_limits<double>::infinity();
  double xmin = b[0].x(), xmax = xmin, ymin = b[0].y(), ymax = ymin;
  for (const auto& p : b) {
    xmin = std::min(xmin, p.x());
    xmax = std::max(xmax, p.x());
    ymin = std::min(ymin, p.y());
    ymax = std::max(ymax, p.y());
  }
  const double extent = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double cell = extent / std::max(1.0, std::sqrt(static_cast<double>(b.size())));
  auto key = [](long i, long j) { return (static_cast<long long>(i) << 32) ^ static_cast<long long>(j & 0xffffffff); };
  std::unordered_map<long long, std::vector<std::size_t>> grid;
  for (std::size_t k = 0; k < b.size(); ++k) {
    grid[key(static_cast<long>(std::floor(b[k].x() / cell)), static_cast<long>(std::floor(b[k].y() / cell)))]
        .push_back(k);
  }
  const long max_ring = static_cast<long>(extent / cell) + 2;

  double worst = 0.0;
  for (const auto& p : a) {
    const long ci = static_cast<long>(std::floor(p.x() / cell));
    const long cj = static_cast<long>(std::floor(p.y() / cell));
    double best = std::numeric_limits<double>::infinity();
    for (long ring = 0;; ++ring) {
      for (long i = ci - ring; i <= ci + ring; ++i) {
        for (long j = cj - ring; j <= cj + ring; ++j) {
          if (std::max(std::abs(i - ci), std::abs(j - cj)) != ring) continue;
          auto it = grid.find(key(i, j));
          if (it == grid.end()) continue;
          for (std::size_t k : it->second) best = std::min(best, distance(p, b[k]));
        }
      }
      // Everything outside ring r is at least r·cell away.
      if (best <= static_cast<double>(ring) * cell) break;
      if (ring > max_ring + static_cast<long>(std::abs(p.x() - xmin) / cell + std::abs(p.y() - ymin) / cell)) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

double hausdorff_distance(const std::vector<StateVec>& a, const std::vector<StateVec>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace gilet
