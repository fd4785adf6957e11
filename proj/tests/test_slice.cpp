#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gilet/slice.hpp"

using namespace gilet;
using std::numbers::pi;

namespace {
constexpr double kPsi2MinusHalfPi = 9.6762096716080947484;
const double kHat = -pi / 2;
}  // namespace

TEST_CASE("cusp height") {
  const MapModel m(MapVariant::GiletPlanar, 0.5, 0.5);
  CHECK(cusp_height(m, kHat) == doctest::Approx(1 / (0.5 * kPsi2MinusHalfPi)).epsilon(1e-14));
  CHECK(cusp_height(m, kHat) == doctest::Approx(0.2067).epsilon(1e-3));
  CHECK(cusp_height(m.with_sigma(0.25), kHat) == doctest::Approx(2 * cusp_height(m, kHat)));
  CHECK(cusp_height(m.with_sigma(0.528), kHat) == doctest::Approx(0.19573153726676522939).epsilon(1e-13));
  for (double sigma : {0.45, 0.5, 0.528}) {
    const MapModel ms = m.with_sigma(sigma);
    const double closed = cusp_height(ms, kHat);
    double prev_err = 1.0;
    for (int k = 2; k <= 6; ++k) {
      const double err = std::abs(slice_boundary(ms, kHat, kHat + std::pow(10.0, -k)) / closed - 1);
      CHECK(err <= prev_err);
      prev_err = err;
    }
    CHECK(prev_err < 1e-8);
    for (int k = 7; k <= 9; ++k)
      CHECK(std::abs(slice_boundary(ms, kHat, kHat + std::pow(10.0, -k)) / closed - 1) < 1e-7);
  }
  // Ψ″ vanishes at the origin.
  CHECK_THROWS_AS(cusp_height(m, 0.0), DegenerateCusp);
}

TEST_CASE("boundary curve") {
  const MapModel m(MapVariant::GiletPlanar, 0.5, 0.5);
  CHECK(slice_boundary(m, kHat, kHat + 1e-6) == doctest::Approx(cusp_height(m, kHat)).epsilon(1e-4));
  for (double d : {0.01, 0.1, 0.3, 0.5}) {
    CHECK(std::abs(slice_boundary(m, kHat, kHat - d) - slice_boundary(m, kHat, kHat + d)) < 1e-10);
  }
  CHECK_THROWS_AS(slice_boundary(m, kHat, kHat), ContractError);
  const SliceRegion r = make_slice(m, kHat, Side::Right);
  CHECK(r.width == doctest::Approx(0.99 * (-1.0128341566584735698 - kHat)));
  // Boundary points map onto the line.
  for (const auto& p : sample_boundary(m, r, 1e-3)) CHECK(std::abs(m(p).x() - kHat) <= 1e-10 * std::max(1.0, std::abs(p.y())));
  CHECK_THROWS_AS(make_slice(m, -1.5, Side::Left), ContractError);
}

TEST_CASE("membership") {
  const MapModel m(MapVariant::GiletPlanar, 0.5, 0.5);
  const SliceRegion right = make_slice(m, kHat, Side::Right);
  const SliceRegion left = make_slice(m, kHat, Side::Left);
  CHECK_FALSE(in_slice(m, right, StateVec(kHat, 5.0)));
  CHECK(in_slice(m, right, StateVec(kHat + 0.05, 3.0)));
  CHECK_FALSE(in_slice(m, right, StateVec(kHat + 0.05, 0.0)));
  CHECK_FALSE(in_slice(m, left, StateVec(kHat + 0.05, 3.0)));
  CHECK(in_slice(m, left, StateVec(kHat - 0.05, 3.0)));
  CHECK_FALSE(in_slice(m, right, StateVec(kHat + 0.6, 3.0)));
}

TEST_CASE("flip property on random samples") {
  std::mt19937_64 rng(17);
  for (double sigma : {0.45, 0.6}) {
    const MapModel m(MapVariant::GiletPlanar, 0.5, sigma);
    for (Side side : {Side::Left, Side::Right}) {
      const SliceRegion r = make_slice(m, kHat, side);
      std::uniform_real_distribution<double> ux(-r.width, r.width), uy(-3.0, 3.0);
      int inside = 0;
      for (int i = 0; i < 50000; ++i) {
        const double dx = ux(rng);
        if (dx == 0.0) continue;
        const StateVec q(kHat + dx, uy(rng));
        const double before = q.x() - kHat, after = m(q).x() - kHat;
        const bool on_side = (before < 0) == (side == Side::Left);
        if (in_slice(m, r, q)) {
          ++inside;
          REQUIRE(before * after < 0);
        } else if (on_side) {
          REQUIRE(before * after >= 0);
        }
      }
      CHECK(inside > 0);
    }
  }
}

TEST_CASE("determinant sign") {
  const MapModel m(MapVariant::GiletPlanar, 0.5, 0.5);
  const double cusp = cusp_height(m, kHat);
  CHECK(det_sign(m, StateVec(kHat, cusp - 0.01)) == 1);
  CHECK(det_sign(m, StateVec(kHat, cusp + 0.01)) == -1);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ux(-4.0, 4.0), uy(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) CHECK(det_sign(m, StateVec(ux(rng), 0.0)) == 1);
  for (int i = 0; i < 1000; ++i) {
    const double x = ux(rng), y = uy(rng), h = 1e-6;
    const StateVec a = m(StateVec(x + h, y)), b = m(StateVec(x - h, y)), c = m(StateVec(x, y + h)),
                   d = m(StateVec(x, y - h));
    const double det = ((a.x() - b.x()) * (c.y() - d.y()) - (c.x() - d.x()) * (a.y() - b.y())) / (4 * h * h);
    if (std::abs(det) > 1e-4) CHECK(det_sign(m, StateVec(x, y)) == (det > 0 ? 1 : -1));
  }
  // Orientation reverses somewhere inside each slice near the cusp.
  for (Side side : {Side::Left, Side::Right}) {
    const SliceRegion r = make_slice(m, kHat, side);
    bool reversed = false;
    for (double dx = 1e-3; dx < 0.05 && !reversed; dx += 1e-3) {
      for (double y = cusp; y < cusp + 1.0; y += 0.01) {
        const StateVec q(kHat + sign_of(side) * dx, y);
        if (in_slice(m, r, q) && det_sign(m, q) == -1) reversed = true;
      }
    }
    CHECK(reversed);
  }
}

TEST_CASE("distance to the slice") {
  const MapModel m(MapVariant::GiletPlanar, 0.5, 0.5);
  const SliceRegion r = make_slice(m, kHat, Side::Right);
  CHECK(distance_to_slice(m, {StateVec(kHat + 0.05, 3.0)}, r) == 0.0);
  CHECK(distance_to_slice(m, {StateVec(kHat - 0.01, r.cusp_y)}, r) == doctest::Approx(0.01).epsilon(1e-3));
  const double far = distance_to_slice(m, {StateVec(kHat + 0.1, -1.0)}, r);
  CHECK(far > 0.5);
  CHECK(distance_to_slice(m, {StateVec(kHat + 0.1, -1.0), StateVec(kHat - 0.01, r.cusp_y)}, r) ==
        doctest::Approx(0.01).epsilon(1e-3));
  CHECK_THROWS_AS(distance_to_slice(m, {}, r), ContractError);
}

TEST_CASE("mirror slices") {
  const MapModel m(MapVariant::GiletPlanar, 0.5, 0.55);
  const SliceRegion left = make_slice(m, kHat, Side::Left);
  const SliceRegion right = make_slice(m, kHat, Side::Right);
  CHECK(left.width == doctest::Approx(right.width));
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ux(-0.6, 0.6), uy(-2.0, 2.0);
  for (int i = 0; i < 10000; ++i) {
    const StateVec q(kHat + ux(rng), uy(rng));
    CHECK(in_slice(m, right, q) == in_slice(m, left, symmetry_conjugate(q)));
  }
}

TEST_CASE("run counting and CSV") {
  const MapModel m(MapVariant::GiletPlanar, 0.5, 0.5);
  const SliceRegion r = make_slice(m, kHat, Side::Right);
  const std::vector<StateVec> path{StateVec(kHat + 0.05, 0.0), StateVec(kHat + 0.05, 3.0), StateVec(kHat + 0.06, 3.0),
                                   StateVec(kHat + 0.05, 0.0), StateVec(kHat + 0.05, 3.0)};
  CHECK(slice_runs(m, r, path) == 2);
  std::ostringstream os;
  write_boundary_csv(os, m, r, 1e-2);
  CHECK(os.str().rfind("x,y\n", 0) == 0);
}
