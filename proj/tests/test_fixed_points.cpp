#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gilet/fixed_points.hpp"

using namespace gilet;
using std::numbers::pi;

namespace {
constexpr double kPsiMinusHalfPi = -0.20650772012904177811;
constexpr double kZeroLeft = -1.7900573686880522585;
constexpr double kZeroRight = -1.3515352849017409800;
constexpr double kCritRight = -1.0128341566584735698;
constexpr double kCritInner = 0.34898977108598465218;
}  // namespace

TEST_CASE("roots of the potential and its slope") {
  const WavePotential p;
  const auto crit = find_critical_points(p, {-2.0, -1.0});
  // Ψ′ has two roots on [−2, −1].
  REQUIRE(crit.size() == 2);
  CHECK(crit[0] == doctest::Approx(-pi / 2).epsilon(1e-13));
  CHECK(crit[1] == doctest::Approx(kCritRight).epsilon(1e-13));
  const auto zeros = find_zeros(p, {-2.0, -1.0});
  REQUIRE(zeros.size() == 2);
  CHECK(zeros[0] == doctest::Approx(kZeroLeft).epsilon(1e-13));
  CHECK(zeros[1] == doctest::Approx(kZeroRight).epsilon(1e-13));
  CHECK(find_critical_points(p, {0.0, 0.0}).empty());
  const auto inner = find_critical_points(p, {0.0, 0.4});
  REQUIRE(inner.size() == 1);
  CHECK(inner[0] == doctest::Approx(kCritInner).epsilon(1e-13));
  // Grid nodes that are exact roots are kept once.
  const auto z = find_zeros(p, {-1e-3, 1e-3});
  REQUIRE(z.size() == 1);
  CHECK(z[0] == 0.0);
}

TEST_CASE("saddle of the symmetric cell") {
  for (double mu : {0.5, 0.8, 0.9}) {
    const MapModel m(MapVariant::GiletPlanar, mu, 0.5);
    const FixedPointRecord r = critical_fixed_point(m, -pi / 2);
    CHECK(std::abs(r.location.x() + pi / 2) < 1e-9);
    CHECK(std::abs(r.location.y() - mu / (1 - mu) * kPsiMinusHalfPi) < 1e-9);
    CHECK(r.classification == Classification::Saddle);
    CHECK(r.family == Family::CriticalPoint);
    CHECK(r.residual <= kFixedPointResidualTol);
    // Eigenvalues read off the diagonal.
    CHECK(std::abs(r.eigen[0].value) ==
          doctest::Approx(1 - 0.5 * 9.6762096716080947484 * mu / (1 - mu) * kPsiMinusHalfPi));
    CHECK(std::abs(r.eigen[1].value) == doctest::Approx(mu));
  }
}

TEST_CASE("enumeration over a window") {
  const MapModel m(MapVariant::GiletPlanar, 0.8, 0.5);
  const FixedPointSet set = enumerate_fixed_points(m, {-2.0, -1.0});
  REQUIRE(set.points.size() == 4);
  for (std::size_t i = 1; i < set.points.size(); ++i) CHECK(set.points[i - 1].location.x() < set.points[i].location.x());
  CHECK(set.points[1].location.y() == doctest::Approx(-0.826030880516).epsilon(1e-10));
  CHECK(set.points[1].classification == Classification::Saddle);
  CHECK(set.points[0].family == Family::Zero);
  CHECK(enumerate_fixed_points(m, {0.0, 0.0}).points.empty());
}

TEST_CASE("classification") {
  auto pair = [](Complex a, Complex b) { return std::vector<EigenPair>{{a, {}}, {b, {}}}; };
  CHECK(classify(pair(0.5, 0.2)) == Classification::Sink);
  CHECK(classify(pair(2.0, 0.2)) == Classification::Saddle);
  CHECK(classify(pair(2.0, 1.5)) == Classification::Source);
  CHECK(classify(pair({0.3, 0.4}, {0.3, -0.4})) == Classification::SpiralSink);
  CHECK(classify(pair({0.9, 0.9}, {0.9, -0.9})) == Classification::SpiralSource);
  CHECK(classify(pair(1.0 + 1e-10, 0.2)) == Classification::Nonhyperbolic);
  CHECK(classify(pair({0.6, 0.8}, {0.6, -0.8})) == Classification::Nonhyperbolic);
}

TEST_CASE("eigen decomposition") {
  const Matrix a(2, {2.0, 1.0, 1.0, 3.0});
  const auto e = eigen_decompose(a);
  CHECK(e[0].value.real() == doctest::Approx((5 + std::sqrt(5.0)) / 2));
  CHECK(e[1].value.real() == doctest::Approx((5 - std::sqrt(5.0)) / 2));
  for (const auto& ep : e) {
    // A v = λ v
    for (int r = 0; r < 2; ++r) {
      const Complex lhs = a(r, 0) * ep.vector[0] + a(r, 1) * ep.vector[1];
      CHECK(std::abs(lhs - ep.value * ep.vector[static_cast<std::size_t>(r)]) < 1e-12);
    }
  }
  const Matrix b(3, {0.0, -2.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.5});
  const auto f = eigen_decompose(b);
  CHECK(std::abs(f[0].value) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(f[0].value.imag()) == doctest::Approx(std::sqrt(2.0)));
  CHECK(f[2].value == Complex(0.5));
  const Matrix c(3, {4.0, 1.0, 0.5, 1.0, 3.0, 0.2, 0.5, 0.2, 1.0});
  const auto g = eigen_decompose(c);
  CHECK((g[0].value * g[1].value * g[2].value).real() == doctest::Approx(c.det()));
  CHECK((g[0].value + g[1].value + g[2].value).real() == doctest::Approx(c.trace()));
  const auto roots = real_cubic_roots(-6.0, 11.0, -6.0);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == doctest::Approx(3.0));
  CHECK(roots[2] == doctest::Approx(1.0));
}

TEST_CASE("Neimark-Sacker threshold") {
  for (double mu : {0.5, 0.8, 0.9}) {
    const MapModel m(MapVariant::GiletPlanar, mu, 0.5);
    const double closed = ns_threshold(m, kZeroLeft);
    double lo = 1e-4, hi = 0.9999;
    auto radius = [&](double s) { return zero_fixed_point(m.with_sigma(s), kZeroLeft).spectral_radius(); };
    REQUIRE(radius(lo) < 1.0);
    if (radius(hi) < 1.0) continue;
    while (hi - lo > 1e-9) {
      const double mid = 0.5 * (lo + hi);
      (radius(mid) < 1.0 ? lo : hi) = mid;
    }
    CHECK(std::abs(0.5 * (lo + hi) - closed) < 1e-6);
  }
  const MapModel m(MapVariant::GiletPlanar, 0.5, 0.5);
  CHECK(ns_threshold(m, kZeroLeft) == doctest::Approx(0.36476990526243047759).epsilon(1e-12));
  CHECK(ns_threshold(m, 0.0) == doctest::Approx(0.092425932158368251127).epsilon(1e-12));
  CHECK_THROWS_AS(ns_threshold(m, 0.3), ContractError);
  CHECK_THROWS_AS(ns_threshold(MapModel(MapVariant::Extension3DCoupled, 0.5, 0.5), 0.0), ContractError);
}

TEST_CASE("three-dimensional fixed points") {
  const WavePotential p;
  CHECK(solve_z_fixed(p, kZeroLeft) == doctest::Approx(0.43967573095873506257).epsilon(1e-12));
  CHECK(solve_z_fixed(p, 0.0) == doctest::Approx(0.012765071336878029806).epsilon(1e-12));

  const MapModel c(MapVariant::Extension3DCoupled, 0.5, 0.3);
  for (const auto& r : enumerate_fixed_points(c, {-2 * pi, 2 * pi}).points) {
    if (r.family != Family::Lifted3D) continue;
    const double z = r.location.z();
    const double s = std::sin(z + p.d1(r.location.x()));
    CHECK(std::abs(2 * z - s * s) < 1e-12);
    CHECK(z >= 0.0);
    CHECK(z <= 0.5);
  }
  const MapModel d(MapVariant::Extension3DDiagonal, 0.5, 0.3);
  const auto set = enumerate_fixed_points(d, {-2 * pi, 2 * pi});
  CHECK(!set.points.empty());
  for (const auto& r : set.points) {
    bool has = false;
    for (const auto& e : r.eigen) has = has || e.value == Complex(0.8);
    CHECK(has);
    CHECK(r.location.z() == 0.0);
  }
}

TEST_CASE("modified map fixed points") {
  const MapModel m(MapVariant::ModifiedGilet, 0.5, 0.15);
  const auto set = enumerate_fixed_points(m, {-0.59, 0.59});
  int saddles = 0;
  bool center = false;
  for (const auto& r : set.points) {
    CHECK(r.residual <= kFixedPointResidualTol);
    if (r.classification == Classification::Saddle && std::abs(std::abs(r.location.x()) - kCritInner) < 1e-9) {
      ++saddles;
      CHECK(std::abs(r.location.y()) == doctest::Approx(0.72548083899254193155).epsilon(1e-10));
    }
    if (r.location.x() == 0.0) center = true;
  }
  CHECK(saddles == 2);
  CHECK(center);
}

TEST_CASE("Newton from a perturbed seed") {
  const MapModel m(MapVariant::GiletPlanar, 0.7, 0.4);
  const NewtonResult r = newton_fixed_point(m, StateVec(-1.5, -0.4));
  CHECK(r.converged);
  CHECK(r.location.x() == doctest::Approx(-pi / 2).epsilon(1e-10));
}
