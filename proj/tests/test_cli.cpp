#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gasket/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gasket;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "gasket_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

#ifdef GASKET_CLI_PATH
int run_cli(const std::string& args) {
  const std::string cmd = std::string(GASKET_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}
#endif

}  // namespace

TEST_CASE("rational parser") {
  CHECK(cli::parse_rational("3/256") == Rational(3) / 256);
  CHECK(cli::parse_rational("-1/8") == Rational(-1) / 8);
  CHECK(cli::parse_rational("0.3108") == Rational(3108) / 10000);
  CHECK(cli::parse_rational("7") == 7);
  CHECK_THROWS_AS(cli::parse_rational("x"), domain_error);
  CHECK_THROWS_AS(cli::parse_rational("1/0"), domain_error);
  CHECK_THROWS_AS(cli::parse_rational(""), domain_error);
}

TEST_CASE("exact radius parser") {
  CHECK(cli::parse_exact_radius("sqrt3/16").compare(ExactRadius::sqrt_of(Rational(3) / 256)) == 0);
  CHECK(cli::parse_exact_radius("sqrt3*1/8").compare(ExactRadius::sqrt_of(Rational(3) / 64)) == 0);
  CHECK(cli::parse_exact_radius("1/4").compare(ExactRadius::from_rational(Rational(1) / 4)) == 0);
  CHECK(cli::parse_exact_radius("sqrt(3/64)+1/8192")
            .compare(ExactRadius::sqrt_of(Rational(3) / 64).shifted(Rational(1) / 8192)) == 0);
  CHECK(cli::parse_exact_radius("sqrt3/16-1/64")
            .compare(ExactRadius::sqrt_of(Rational(3) / 256).shifted(-Rational(1) / 64)) == 0);
  CHECK(cli::parse_exact_radius("sqrt(7/72)").compare(ExactRadius::sqrt_of(Rational(7) / 72)) == 0);
  CHECK_THROWS_AS(cli::parse_exact_radius(""), domain_error);
  CHECK_THROWS_AS(cli::parse_exact_radius("sqrt(-1)"), domain_error);
}

TEST_CASE("center parser") {
  const ScaledPoint xb = cli::parse_center("barycentre", 6);
  CHECK(xb.den == 3);
  CHECK(xb.x == 3 * pow2(5));
  const ScaledPoint z1 = cli::parse_center("z1", 6);
  CHECK(z1.x == pow2(6));
  CHECK(z1.den == 1);
  const ScaledPoint fw = cli::parse_center("f010(z2)", 6);
  CHECK(fw.as_lattice() == apply_word(make_word({0, 1, 0}), corner_points(1)[2]).at_level(6));
  const ScaledPoint raw = cli::parse_center("5/16,1/16", 6);
  CHECK(raw.as_lattice() == LatticePoint{20, 4, 6});
  CHECK_THROWS_AS(cli::parse_center("nope", 6), domain_error);
  CHECK_THROWS_AS(cli::parse_center("f0102220(z1)", 4), domain_error);
}

TEST_CASE("cache round-trip preserves results bit for bit") {
  const fs::path dir = temp_dir() / "cache";
  fs::remove_all(dir);
  const ApproxSet direct = ApproxSet::generate(7);
  const ApproxSet first = obtain_approx_set(7, dir);   // generates + saves
  const ApproxSet second = obtain_approx_set(7, dir);  // loads
  CHECK(fs::exists(cache_file(dir, 7)));
  CHECK(first.points() == direct.points());
  CHECK(second.points() == direct.points());
  const CentredResult a = compute_centred(direct);
  const CentredResult b = compute_centred(second);
  CHECK(a.estimate == b.estimate);
  CHECK(a.sq_scaled == b.sq_scaled);
  CHECK(a.center == b.center);
}

TEST_CASE("corrupt or mismatched cache files are regenerated") {
  const fs::path dir = temp_dir() / "cache_bad";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream os(cache_file(dir, 5), std::ios::binary);
    os << "garbage";
  }
  CHECK_FALSE(load_approx_set(cache_file(dir, 5), 5).has_value());
  const ApproxSet set = obtain_approx_set(5, dir);  // regenerates over the junk
  CHECK(set.size() == ApproxSet::generate(5).size());
  // Level mismatch: a valid k=5 file must not load as k=6.
  CHECK_FALSE(load_approx_set(cache_file(dir, 5), 6).has_value());
}

TEST_CASE("table command reports mismatches through the exit code") {
  RunConfig cfg;
  cfg.k_min = 5;
  cfg.k_max = 6;
  cfg.format = "csv";
  cfg.out = (temp_dir() / "table.csv").string();
  CHECK(run_table(cfg) == kExitOk);
  const std::string csv = slurp(cfg.out);
  CHECK(csv.find("5,0.125000,0.409736,0.843750,2.700000,ok") != std::string::npos);
  CHECK(csv.find("6,0.143205,0.622414,0.930364,1.255991,ok") != std::string::npos);
}

TEST_CASE("table diff flags perturbed cells and rows without a reference") {
  std::vector<CentredResult> results;
  for (int k = 5; k <= 6; ++k) results.push_back(compute_centred(ApproxSet::generate(k)));
  // Clean rows diff clean.
  CHECK(diff_against_golden(results).clean());
  // A perturbed estimate must be reported.
  results[0].estimate += 2e-5;
  const TableReport bad = diff_against_golden(results);
  CHECK(bad.mismatched == 1);
  REQUIRE_FALSE(bad.rows[0].mismatches.empty());
  CHECK(bad.rows[0].mismatches[0].column == "C_k");
  CHECK(render_table(bad).find("MISMATCH") != std::string::npos);
  // Levels outside the published table render as "no reference".
  CentredResult future = results[1];
  future.k = 15;
  const TableReport none = diff_against_golden({future});
  CHECK(none.compared == 0);
  CHECK(none.clean());
  CHECK(render_table(none).find("no reference") != std::string::npos);
}

TEST_CASE("json output is deterministic byte for byte") {
  RunConfig cfg;
  cfg.k = 6;
  cfg.format = "json";
  cfg.out = (temp_dir() / "a.json").string();
  REQUIRE(run_centred(cfg) == kExitOk);
  const std::string first = slurp(cfg.out);
  cfg.out = (temp_dir() / "b.json").string();
  cfg.workers = 3;  // worker count must not leak into the output
  REQUIRE(run_centred(cfg) == kExitOk);
  CHECK(first == slurp(cfg.out));
  CHECK(first.find("\"c_k\"") != std::string::npos);
}

TEST_CASE("cache does not change results") {
  const fs::path dir = temp_dir() / "cache_eq";
  fs::remove_all(dir);
  RunConfig cfg;
  cfg.k = 6;
  cfg.format = "json";
  cfg.out = (temp_dir() / "no_cache.json").string();
  REQUIRE(run_centred(cfg) == kExitOk);
  RunConfig cached = cfg;
  cached.cache_dir = dir.string();
  cached.out = (temp_dir() / "cache_cold.json").string();
  REQUIRE(run_centred(cached) == kExitOk);
  cached.out = (temp_dir() / "cache_warm.json").string();
  REQUIRE(run_centred(cached) == kExitOk);
  CHECK(slurp(cfg.out) == slurp((temp_dir() / "cache_cold.json")));
  CHECK(slurp(cfg.out) == slurp((temp_dir() / "cache_warm.json")));
}

TEST_CASE("profile command writes the pinned column order") {
  RunConfig cfg;
  cfg.k = 5;
  cfg.center_spec = "f010(z2)";
  cfg.window = "centred";
  cfg.out = (temp_dir() / "profile.csv").string();
  REQUIRE(run_profile(cfg) == kExitOk);
  const std::string csv = slurp(cfg.out);
  CHECK(csv.rfind("d,mass_open,mass_closed,density,inverse_density\n", 0) == 0);
  // The k=5 optimum shows up as an inverse density of exactly 27/32.
  CHECK(csv.find("0.84375") != std::string::npos);
}

TEST_CASE("profile with an empty window emits only the header") {
  RunConfig cfg;
  cfg.k = 5;
  cfg.center_spec = "z0";
  cfg.window_lo = "40";
  cfg.window_hi = "41";
  cfg.out = (temp_dir() / "empty.csv").string();
  REQUIRE(run_profile(cfg) == kExitOk);
  CHECK(slurp(cfg.out) == "d,mass_open,mass_closed,density,inverse_density\n");
}

TEST_CASE("restricted-ball command uses reference bounds and surfaces errors") {
  RunConfig cfg;
  cfg.k = 8;
  cfg.center_spec = "barycentre";
  cfg.radius_spec = "spherical-optimal";
  cfg.bounds = "golden";
  cfg.format = "json";
  cfg.out = (temp_dir() / "ball.json").string();
  REQUIRE(run_restricted_ball(cfg) == kExitOk);
  const std::string json = slurp(cfg.out);
  CHECK(json.find("\"bounds_provenance\": \"reference-table\"") != std::string::npos);
  // d <= 2^-k must be rejected.
  cfg.radius_spec = "1/1024";
  CHECK_THROWS_AS(run_restricted_ball(cfg), domain_error);
}

TEST_CASE("guardrail blocks unconfirmed long sweeps") {
  RunConfig cfg;
  cfg.k = 13;
  CHECK_THROWS_AS(run_centred(cfg), domain_error);
  cfg.k = kMaxLevel + 1;
  CHECK_THROWS_AS(run_centred(cfg), capacity_error);
}

#ifdef GASKET_CLI_PATH
TEST_CASE("binary exit codes: 0 ok, 2 usage, 3 capacity") {
  CHECK(run_cli("table --k-min 5 --k-max 5") == kExitOk);
  CHECK(run_cli("centred --k 3") == kExitUsage);
  CHECK(run_cli("centred") == kExitUsage);          // missing required --k
  CHECK(run_cli("centred --k 13") == kExitUsage);   // guardrail
  CHECK(run_cli("centred --k 25") == kExitCapacity);
  CHECK(run_cli("nonsense") == kExitUsage);
}
#endif
