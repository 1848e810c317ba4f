#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "melsolid/projective.hpp"
#include "test_helpers.hpp"

using namespace melsolid;
using melsolid::testing::make_rng;
using melsolid::testing::random_collinear_quadruple;
using melsolid::testing::random_homography;
using melsolid::testing::uniform;

TEST_CASE("join of two finite points") {
  CHECK(approx_equal(join({0, 0, 1}, {1, 0, 1}), HLine2{0, 1, 0}));
  CHECK(approx_equal(join({0, 1, 1}, {1, 0, 1}), HLine2{1, 1, -1}));
}

TEST_CASE("join of coincident points throws") {
  const HPoint2 p{0.3, -1.2, 1.0};
  CHECK_THROWS_AS(join(p, p), Error);
  try {
    join(p, HPoint2{0.6, -2.4, 2.0});  // scale-equivalent
    FAIL("expected CoincidentPoints");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoincidentPoints);
  }
}

TEST_CASE("meet of two lines") {
  CHECK(approx_equal(meet({0, 1, 0}, {1, 0, 0}), HPoint2{0, 0, 1}));
  SUBCASE("parallel horizontals meet at the ideal point") {
    const HPoint2 p = meet({0, 1, -1}, {0, 1, -2});
    CHECK(p.is_ideal());
    CHECK(approx_equal(p, HPoint2{1, 0, 0}));
  }
  SUBCASE("coincident lines throw") {
    try {
      meet({0, 1, -1}, {0, 2, -2});
      FAIL("expected CoincidentLines");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CoincidentLines);
    }
  }
}

namespace {
HPoint2 on_x_axis(double t) { return {t, 0.0, 1.0}; }
}  // namespace

TEST_CASE("cross ratio of the grid quadruple 0,1,2,4 is 3/2") {
  const CrossRatio cr =
      cross_ratio(on_x_axis(0), on_x_axis(1), on_x_axis(2), on_x_axis(4));
  REQUIRE(!cr.infinite);
  CHECK(cr.value == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("cross ratio limit values for a single coincident pair") {
  SUBCASE("a = b gives 1") {
    const CrossRatio cr =
        cross_ratio(on_x_axis(0), on_x_axis(0), on_x_axis(1), on_x_axis(2));
    CHECK(!cr.infinite);
    CHECK(cr.value == doctest::Approx(1.0));
  }
  SUBCASE("a = c gives 0") {
    const CrossRatio cr =
        cross_ratio(on_x_axis(0), on_x_axis(1), on_x_axis(0), on_x_axis(2));
    CHECK(!cr.infinite);
    CHECK(cr.value == doctest::Approx(0.0));
  }
  SUBCASE("b = c gives the infinite variant") {
    const CrossRatio cr =
        cross_ratio(on_x_axis(0), on_x_axis(1), on_x_axis(1), on_x_axis(2));
    CHECK(cr.infinite);
  }
  SUBCASE("a = d gives the infinite variant") {
    const CrossRatio cr =
        cross_ratio(on_x_axis(0), on_x_axis(1), on_x_axis(2), on_x_axis(0));
    CHECK(cr.infinite);
  }
}

TEST_CASE("cross ratio of parameters 0, 2/3, 1, 2 is 2") {
  const CrossRatio cr = cross_ratio(on_x_axis(0), on_x_axis(2.0 / 3.0),
                                    on_x_axis(1), on_x_axis(2));
  REQUIRE(!cr.infinite);
  CHECK(cr.value == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("cross ratio rejects degenerate quadruples") {
  try {
    cross_ratio(on_x_axis(1), on_x_axis(1), on_x_axis(1), on_x_axis(2));
    FAIL("expected DegenerateQuadruple");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateQuadruple);
  }
}

TEST_CASE("cross ratio rejects non-collinear points") {
  try {
    cross_ratio({0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {2, 0, 1});
    FAIL("expected NotCollinear");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCollinear);
  }
}

TEST_CASE("cross ratio matches the unsigned distance formula for ordered points") {
  // A, B, C, D in order on the line with B between A and C: the signed
  // value equals (AC/BC) * (BD/AD) computed from plain distances.
  auto rng = make_rng(7001);
  for (int trial = 0; trial < 200; ++trial) {
    double ta = uniform(rng, -3, -2);
    double tb = uniform(rng, -1, 0);
    double tc = uniform(rng, 1, 2);
    double td = uniform(rng, 3, 4);
    const double ac = tc - ta, bc = tc - tb, bd = td - tb, ad = td - ta;
    const double expected = (ac / bc) * (bd / ad);
    const CrossRatio cr =
        cross_ratio(on_x_axis(ta), on_x_axis(tb), on_x_axis(tc), on_x_axis(td));
    REQUIRE(!cr.infinite);
    CHECK(cr.value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(cr.value > 0.0);
  }
}

TEST_CASE("apply_homography basics") {
  const HPoint2 p{1, 1, 1};
  CHECK(approx_equal(apply_homography(Homography2::identity(), p), p));
  const Homography2 scaling{Mat3::diag(2, 2, 1)};
  CHECK(approx_equal(apply_homography(scaling, p), HPoint2{2, 2, 1}));
  const Homography2 singular{Mat3::diag(1, 1, 0)};
  try {
    apply_homography(singular, p);
    FAIL("expected SingularHomography");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularHomography);
  }
}

TEST_CASE("cross ratio is invariant under random homographies") {
  auto rng = make_rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    const auto quad = random_collinear_quadruple(rng);
    const CrossRatio before = cross_ratio(quad[0], quad[1], quad[2], quad[3]);
    REQUIRE(!before.infinite);
    const Homography2 h = random_homography(rng, quad);
    const CrossRatio after =
        cross_ratio(apply_homography(h, quad[0]), apply_homography(h, quad[1]),
                    apply_homography(h, quad[2]), apply_homography(h, quad[3]));
    REQUIRE(!after.infinite);
    CHECK(std::abs(after.value - before.value) <=
          1e-9 * std::max(1.0, std::abs(before.value)));
  }
}

TEST_CASE("duality: meet of joins recovers the common point") {
  auto rng = make_rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const HPoint2 p{uniform(rng, -2, 2), uniform(rng, -2, 2), 1.0};
    const HPoint2 q{uniform(rng, -2, 2), uniform(rng, -2, 2), 1.0};
    const HPoint2 r{uniform(rng, -2, 2), uniform(rng, -2, 2), 1.0};
    if (separation(p, q) < 1e-3 || separation(p, r) < 1e-3 ||
        separation(q, r) < 1e-3)
      continue;
    HLine2 pq, pr;
    try {
      pq = join(p, q);
      pr = join(p, r);
    } catch (const Error&) {
      continue;
    }
    if (separation(pq, pr) < 1e-6) continue;  // p, q, r nearly collinear
    CHECK(approx_equal(meet(pq, pr), p, 1e-7));
  }
}

TEST_CASE("operations are scale-equivalent") {
  auto rng = make_rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    const HPoint2 p{uniform(rng, -2, 2), uniform(rng, -2, 2), 1.0};
    const HPoint2 q{uniform(rng, -2, 2), uniform(rng, -2, 2), 1.0};
    const double k = uniform(rng, 0.1, 10) * (trial % 2 ? -1.0 : 1.0);
    if (separation(p, q) < 1e-3) continue;
    const HLine2 l1 = join(p, q);
    const HLine2 l2 = join(HPoint2{k * p.x, k * p.y, k * p.w}, q);
    CHECK(separation(l1, l2) <= 1e-12);
  }
}

TEST_CASE("collinearity defect") {
  CHECK(collinearity_defect({{0, 0, 1}, {1, 0, 1}, {2, 0, 1}}) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(collinearity_defect({{0, 0, 1}, {1, 0, 1}, {1, 1, 1}}) > 0.1);
  try {
    collinearity_defect({{0, 0, 1}, {1, 0, 1}});
    FAIL("expected TooFewPoints");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooFewPoints);
  }
}

TEST_CASE("collinearity survives homographies that keep points finite") {
  auto rng = make_rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto quad = random_collinear_quadruple(rng);
    const Homography2 h = random_homography(rng, quad);
    std::vector<HPoint2> mapped;
    for (const auto& p : quad) mapped.push_back(apply_homography(h, p));
    CHECK(collinearity_defect(mapped) <= 1e-9);
  }
}

TEST_CASE("normalization: unit norm, leading coordinate positive") {
  const HPoint2 n = HPoint2{-2, 4, -4}.normalized();
  CHECK(std::sqrt(n.x * n.x + n.y * n.y + n.w * n.w) == doctest::Approx(1.0));
  CHECK(n.x > 0.0);
  CHECK(HPoint2{0, 0, -3}.normalized().w == doctest::Approx(1.0));
}

TEST_CASE("ideal points and lines") {
  CHECK(HPoint2{1, 2, 0}.is_ideal());
  CHECK(!HPoint2{1, 2, 1e-3}.is_ideal());
  CHECK(HLine2{0, 0, 1}.is_ideal());  // the ideal line
  CHECK(!HLine2{1, 0, 5}.is_ideal());
}
