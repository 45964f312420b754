#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "trigpert/sweep.hpp"

using namespace trigpert;

namespace {

bool has_line_starting(const SweepOutcome& o, const std::string& prefix) {
  for (const auto& line : o.summary)
    if (line.rfind(prefix, 0) == 0) return true;
  return false;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("rate_fit: exact power laws") {
  const std::vector<FitPoint> square{{10, 100}, {20, 400}, {40, 1600}};
  const auto f = rate_fit(square);
  CHECK(std::abs(f.slope - 2.0) <= 1e-12);
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(f.points_used == 3);

  std::vector<FitPoint> inverse;
  for (int n = 8; n <= 128; n *= 2) inverse.emplace_back(n, std::pow(n, -2.0));
  CHECK(rate_fit(inverse).slope == doctest::Approx(-2.0).epsilon(1e-12));

  const std::vector<FitPoint> flat{{8, 3.0}, {16, 3.0}, {32, 3.0}};
  const auto d = rate_fit(flat);
  CHECK(d.slope == 0.0);
  CHECK(d.r_squared == 0.0);
  CHECK(d.degenerate);
}

TEST_CASE("rate_fit: errors and geometric fit") {
  CHECK_THROWS_AS((void)rate_fit(std::vector<FitPoint>{{1, 1}, {2, 2}}), InputError);
  CHECK_THROWS_AS((void)rate_fit(std::vector<FitPoint>{{1, 1}, {2, 0}, {3, 3}}), InputError);
  CHECK_THROWS_AS((void)rate_fit(std::vector<FitPoint>{{1, 1}, {2, -1}, {3, 3}}), InputError);

  std::vector<FitPoint> geo;
  for (int n = 8; n <= 32; n += 4) geo.emplace_back(n, 3.0 * std::exp(-0.7 * n));
  const auto g = geometric_fit(geo);
  CHECK(g.slope == doctest::Approx(-0.7).epsilon(1e-12));
  CHECK(g.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("property: r_squared lies in [0, 1]") {
  std::vector<FitPoint> noisy{{8, 1.0}, {16, 5.0}, {32, 2.0}, {64, 9.0}, {128, 3.0}};
  const auto f = rate_fit(noisy);
  CHECK(f.r_squared >= 0.0);
  CHECK(f.r_squared <= 1.0);
}

TEST_CASE("validate rejects malformed configurations") {
  SweepConfig ok;
  CHECK_NOTHROW(validate(ok));

  auto bad = ok;
  bad.alphas = {0.5};
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = ok;
  bad.alphas = {-0.1};
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = ok;
  bad.n_list = {16, 8, 32};
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = ok;
  bad.trials = 0;
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = ok;
  bad.strategy = PerturbKind::explicit_shifts;
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = ok;
  bad.command = SweepCommand::two_norm_sweep;
  bad.n_list = {64, 512};
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = ok;
  bad.command = SweepCommand::verify_bounds;
  bad.alphas = {0.0, 0.2};
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = ok;
  bad.command = SweepCommand::converge;
  bad.function = "wiggly:2";
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = ok;
  bad.command = SweepCommand::grids;
  CHECK_THROWS_AS(validate(bad), InputError);
}

TEST_CASE("command names round-trip") {
  for (auto c : {SweepCommand::lebesgue_sweep, SweepCommand::two_norm_sweep, SweepCommand::quad_sweep,
                 SweepCommand::converge, SweepCommand::verify_bounds, SweepCommand::grids})
    CHECK(parse_command(to_string(c)) == c);
  CHECK_THROWS_AS((void)parse_command("plot"), InputError);
}

TEST_CASE("format_double prints 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(NAN) == "nan");
}

TEST_CASE("lebesgue-sweep: schema and verdicts") {
  SweepConfig cfg;
  cfg.alphas = {0.0, 0.3};
  cfg.n_list = {4, 8, 16};
  cfg.trials = 3;
  cfg.strategy = PerturbKind::uniform_random;
  const auto o = run_sweep(cfg);
  CHECK(o.header == "alpha,N,trial,seed,strategy,lambda_inf,argmax_x,bound_shape,nine_sum");
  CHECK(o.rows.size() == 18);
  CHECK(o.passed);
  CHECK(has_line_starting(o, "# fit,lambda_inf,alpha=0.29999999999999999,stat=max"));
  CHECK(has_line_starting(o, "# info,conjectured_2alpha_gap"));
  const auto first = split(o.rows.front());
  REQUIRE(first.size() == 9);
  CHECK(first[0] == "0");
  CHECK(first[4] == "uniform_random");
  CHECK(first[8].empty());
  CHECK_FALSE(split(o.rows.back())[8].empty());
  const auto csv = o.csv();
  CHECK(csv.find("# verdict,PASS") != std::string::npos);
}

TEST_CASE("every command runs on a small configuration") {
  for (auto command : {SweepCommand::two_norm_sweep, SweepCommand::quad_sweep, SweepCommand::converge,
                       SweepCommand::verify_bounds}) {
    SweepConfig cfg;
    cfg.command = command;
    cfg.alphas = {0.2};
    cfg.n_list = command == SweepCommand::converge ? std::vector<int>{8, 12, 16, 20}
                                                   : std::vector<int>{4, 8, 16};
    cfg.trials = 2;
    cfg.strategy = PerturbKind::uniform_random;
    const auto o = run_sweep(cfg);
    INFO(to_string(command));
    CHECK(o.rows.size() == cfg.n_list.size() * 2);
    CHECK(o.passed);
    for (const auto& row : o.rows) CHECK(split(row).size() == split(o.header).size());
  }

  SweepConfig g;
  g.command = SweepCommand::grids;
  g.alphas = {0.3};
  g.n_list = {4};
  const auto o = run_sweep(g);
  CHECK(o.header == "k,x_k,s_k,x_tilde_k");
  CHECK(o.rows.size() == 9);
  CHECK(o.passed);
}

TEST_CASE("converge: runge demo is informational only") {
  SweepConfig cfg;
  cfg.command = SweepCommand::converge;
  cfg.alphas = {0.0};
  cfg.n_list = {8, 16, 32};
  cfg.runge_demo = true;
  const auto o = run_sweep(cfg);
  CHECK(o.passed);
  CHECK(o.rows.front().find("[runge-demo]") != std::string::npos);
  CHECK(has_line_starting(o, "# info,runge_demo"));
}

TEST_CASE("property: data rows do not depend on the thread count") {
  for (auto command : {SweepCommand::lebesgue_sweep, SweepCommand::converge, SweepCommand::quad_sweep}) {
    SweepConfig cfg;
    cfg.command = command;
    cfg.alphas = {0.1, 0.4};
    cfg.n_list = {8, 12, 16};
    cfg.trials = 5;
    cfg.strategy = PerturbKind::uniform_random;
    cfg.seed = 99;
    cfg.threads = 1;
    const auto one = run_sweep(cfg);
    cfg.threads = 8;
    const auto eight = run_sweep(cfg);
    CHECK(one.rows == eight.rows);
    CHECK(one.summary == eight.summary);
  }
}

TEST_CASE("property: a single row regenerates in isolation") {
  SweepConfig cfg;
  cfg.alphas = {0.25, 0.4};
  cfg.n_list = {8, 16, 32};
  cfg.trials = 4;
  cfg.strategy = PerturbKind::uniform_random;
  cfg.seed = 5;
  const auto full = run_sweep(cfg);
  for (const auto& row : full.rows) {
    const auto fields = split(row);
    SweepConfig one = cfg;
    one.alphas = {std::stod(fields[0])};
    one.n_list = {std::stoi(fields[1])};
    one.first_trial = std::stoull(fields[2]);
    one.trials = 1;
    one.seed = std::stoull(fields[3]);
    one.strategy = parse_perturb_kind(fields[4]);
    const auto again = run_sweep(one);
    REQUIRE(again.rows.size() == 1);
    CHECK(again.rows.front() == row);
  }
}

TEST_CASE("write_outcome writes the CSV and reports I/O errors") {
  SweepConfig cfg;
  cfg.command = SweepCommand::grids;
  cfg.alphas = {0.1};
  cfg.n_list = {2};
  const auto o = run_sweep(cfg);
  const auto path = std::filesystem::temp_directory_path() / "trigpert_test_grids.csv";
  write_outcome(o, path.string());
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == o.csv());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(write_outcome(o, "/nonexistent-dir/x/y.csv"), Error);
}
