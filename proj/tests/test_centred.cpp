#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gasket/centred.hpp"
#include "gasket/golden.hpp"
#include "gasket/report.hpp"

#include <cmath>

using namespace gasket;

TEST_CASE("k = 5 optimum in exact terms") {
  // At k = 5 the optimal ball is B(f_010(z_2), 1/8): (2d)^s = 3^-2 exactly,
  // the ball holds 16 interior points, so C_5 = (1/9) / (32/243) = 27/32.
  const ApproxSet set = ApproxSet::generate(5);
  const CentredResult r = compute_centred(set);
  CHECK(r.sq_scaled == 16);  // (1/8)^2 * 4^5
  CHECK(r.center == apply_word(make_word({0, 1, 0}), corner_points(1)[2]).at_level(5));
  CHECK(r.mass.total == 16);
  CHECK(r.mass.corner == 0);
  CHECK(r.estimate == doctest::Approx(27.0 / 32).epsilon(1e-12));
  CHECK(r.upper == doctest::Approx(2.7).epsilon(1e-12));
}

TEST_CASE("reference rows k = 5..9 reproduce after publication rounding") {
  std::vector<CentredResult> results;
  for (int k = 5; k <= 9; ++k) results.push_back(compute_centred(ApproxSet::generate(k)));
  const TableReport report = diff_against_golden(results);
  CHECK(report.compared == 5);
  for (const TableRow& row : report.rows) {
    INFO("k = ", row.result.k);
    CHECK(row.mismatches.empty());
  }
}

TEST_CASE("the optimal center is f_010(z_2) at every computed level") {
  for (int k = 5; k <= 9; ++k) {
    const CentredResult r = compute_centred(ApproxSet::generate(k));
    CHECK(r.center == apply_word(make_word({0, 1, 0}), corner_points(1)[2]).at_level(k));
  }
}

TEST_CASE("bracket ordering and convergence factor") {
  double prev_factor = 0;
  for (int k = 4; k <= 9; ++k) {
    const CentredResult r = compute_centred(ApproxSet::generate(k));
    CHECK(r.lower <= r.estimate);
    CHECK(r.estimate <= r.upper);
    CHECK(r.convergence < 1.0);
    CHECK(r.convergence > prev_factor);  // K_k increases towards 1
    CHECK(r.lower == doctest::Approx(r.convergence * r.estimate));
    prev_factor = r.convergence;
  }
}

TEST_CASE("optimal radius stays inside the window") {
  for (int k = 4; k <= 9; ++k) {
    const CentredResult r = compute_centred(ApproxSet::generate(k));
    CHECK(centred_window(k).contains_scaled(r.sq_scaled, pow4(k)));
  }
}

TEST_CASE("symmetry reduction: full sweep equals the S_01 restriction") {
  for (int k = 4; k <= 9; ++k) {
    const ApproxSet set = ApproxSet::generate(k);
    const CentredResult restricted = compute_centred(set);
    const CentredResult full = compute_centred(set, {true, 1});
    CHECK(std::abs(full.estimate - restricted.estimate) <=
          1e-12 * std::max(1.0, std::abs(restricted.estimate)));
  }
}

TEST_CASE("determinism: repeated runs and worker counts agree exactly") {
  const ApproxSet set = ApproxSet::generate(8);
  const CentredResult a = compute_centred(set, {false, 1});
  const CentredResult b = compute_centred(set, {false, 1});
  const CentredResult c = compute_centred(set, {false, 3});
  const CentredResult d = compute_centred(set, {false, 7});
  for (const CentredResult* r : {&b, &c, &d}) {
    CHECK(r->estimate == a.estimate);
    CHECK(r->sq_scaled == a.sq_scaled);
    CHECK(r->center == a.center);
    CHECK(r->upper == a.upper);
  }
}

TEST_CASE("precondition: k < 4 is rejected") {
  CHECK_THROWS_AS(compute_centred(ApproxSet::generate(3)), domain_error);
}

TEST_CASE("bracket widths decrease along the reference rows") {
  std::vector<CentredResult> results;
  for (int k = 5; k <= 9; ++k) results.push_back(compute_centred(ApproxSet::generate(k)));
  const BracketWidthTable widths = centred_bracket_widths(results);
  REQUIRE(widths.rows.size() == 5);
  CHECK(widths.strictly_decreasing);
  CHECK_THROWS_AS(centred_bracket_widths({}), domain_error);
  const BracketWidthTable single = centred_bracket_widths({results.front()});
  CHECK(single.rows.size() == 1);
  CHECK(single.strictly_decreasing);
}

TEST_CASE("publication rounding helper") {
  CHECK(round6(2.7, Rounding::Up) == "2.700000");
  CHECK(round6(2.7000004, Rounding::Up) == "2.700001");
  CHECK(round6(0.4097368, Rounding::Down) == "0.409736");
  CHECK(round6(0.4097368, Rounding::Nearest) == "0.409737");
  CHECK(round6(0.84375, Rounding::Nearest) == "0.843750");
  CHECK(round6(1.0351485, Rounding::Up) == "1.035149");
}
