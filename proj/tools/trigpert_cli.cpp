// trigpert: experiment runner for trigonometric interpolation and quadrature
// on perturbed equispaced grids.
//
//   trigpert lebesgue-sweep --alpha 0.1,0.4 --n 16..256 --trials 200 --strategy uniform_random
//   trigpert converge --function analytic:1.25 --alpha 0.3 --strategy uniform_random --trials 20
//   trigpert verify-bounds --alpha 0.3 --n 32 --trials 200 --strategy uniform_random
//
// Exit status: 0 all asserted checks pass, 1 an assertion failed, 2 usage or I/O error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "trigpert/sweep.hpp"

namespace {

using trigpert::InputError;

int parse_int(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw InputError("bad integer in N list: " + s);
  return v;
}

/// "8..256" powers of two, "8:32:4" arithmetic range, "8,16,32" explicit list.
std::vector<int> parse_n_list(const std::string& spec) {
  std::vector<int> out;
  try {
    if (const auto dots = spec.find(".."); dots != std::string::npos) {
      const int lo = parse_int(spec.substr(0, dots));
      const int hi = parse_int(spec.substr(dots + 2));
      if (lo < 1 || hi < lo) throw InputError("bad N range: " + spec);
      for (long n = lo; n <= hi; n *= 2) out.push_back(static_cast<int>(n));
    } else if (spec.find(':') != std::string::npos) {
      std::vector<int> parts;
      std::stringstream ss(spec);
      std::string item;
      while (std::getline(ss, item, ':')) parts.push_back(parse_int(item));
      if (parts.size() != 3 || parts[2] < 1 || parts[1] < parts[0])
        throw InputError("bad N range: " + spec);
      for (int n = parts[0]; n <= parts[1]; n += parts[2]) out.push_back(n);
    } else {
      std::stringstream ss(spec);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(parse_int(item));
    }
  } catch (const std::logic_error&) {
    throw InputError("bad N list: " + spec);
  }
  return out;
}

std::vector<int> default_n_list(const trigpert::SweepConfig& cfg) {
  if (cfg.command == trigpert::SweepCommand::converge && cfg.function.rfind("analytic", 0) == 0)
    return parse_n_list("8:32:4");
  if (cfg.command == trigpert::SweepCommand::grids) return {8};
  return parse_n_list("8..256");
}

std::string default_out_path(const trigpert::SweepConfig& cfg) {
  std::filesystem::path dir = ".";
  if (const char* env = std::getenv("TRIGPERT_OUT_DIR"); env != nullptr && *env != '\0') dir = env;
  return (dir / (std::string(trigpert::to_string(cfg.command)) + ".csv")).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trigonometric interpolation and quadrature on perturbed equispaced grids"};
  app.require_subcommand(1);

  trigpert::SweepConfig cfg;
  cfg.threads = std::max(1U, std::thread::hardware_concurrency());
  std::string n_spec;
  std::string strategy = "alternating_max";
  std::string alpha_spec;

  for (auto command :
       {trigpert::SweepCommand::lebesgue_sweep, trigpert::SweepCommand::two_norm_sweep,
        trigpert::SweepCommand::quad_sweep, trigpert::SweepCommand::converge,
        trigpert::SweepCommand::verify_bounds, trigpert::SweepCommand::grids}) {
    auto* sub = app.add_subcommand(std::string(trigpert::to_string(command)));
    sub->add_option("--alpha", alpha_spec, "Comma-separated perturbation fractions in [0, 1/2)")
        ->required();
    sub->add_option("--n", n_spec, "Degrees: 8..256 (powers of two), 8:32:4, or 8,16,32");
    sub->add_option("--trials", cfg.trials, "Random grids per (alpha, N)");
    sub->add_option("--first-trial", cfg.first_trial, "Index of the first trial");
    sub->add_option("--strategy", strategy,
                    "none, uniform_random, alternating_max, all_plus_max, random_signs_max");
    sub->add_option("--seed", cfg.seed, "Base seed");
    sub->add_option("--out", cfg.out_path, "Output CSV (default $TRIGPERT_OUT_DIR/<command>.csv)");
    sub->add_option("--threads", cfg.threads, "Worker threads");
    sub->add_option("--samples-per-interval", cfg.samples_per_interval,
                    "Lebesgue search density per internode interval");
    if (command == trigpert::SweepCommand::converge) {
      sub->add_option("--function", cfg.function, "smooth:<sigma> or analytic:<b>");
      sub->add_flag("--shift-half-spacing", cfg.shift_half_spacing,
                    "Shift the test function by half a grid spacing");
      sub->add_flag("--runge-demo", cfg.runge_demo,
                    "Out-of-model: nodes uniform over the whole period");
    }
    sub->callback([&cfg, command] { cfg.command = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    cfg.alphas.clear();
    std::stringstream ss(alpha_spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        cfg.alphas.push_back(std::stod(item));
      } catch (const std::logic_error&) {
        throw InputError("bad alpha: " + item);
      }
    }
    cfg.strategy = trigpert::parse_perturb_kind(strategy);
    cfg.n_list = n_spec.empty() ? default_n_list(cfg) : parse_n_list(n_spec);
    if (cfg.out_path.empty()) cfg.out_path = default_out_path(cfg);

    trigpert::SweepOutcome outcome = trigpert::run_sweep(cfg);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    outcome.summary.push_back("# elapsed_seconds," + trigpert::format_double(elapsed));
    trigpert::write_outcome(outcome, cfg.out_path);

    for (const auto& line : outcome.summary) std::cout << line << '\n';
    std::cout << "# wrote " << cfg.out_path << '\n';
    std::cout << (outcome.passed ? "PASS" : "FAIL") << '\n';
    return outcome.passed ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
