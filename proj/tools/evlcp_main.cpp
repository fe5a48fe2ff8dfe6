#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "evlcp/experiment.hpp"
#include "evlcp/json_io.hpp"
#include "evlcp/probgen.hpp"
#include "evlcp/solver.hpp"
#include "evlcp/wcheck.hpp"

namespace {

// Exit codes: 0 ok, 1 input error, 2 solver failure, 3 no check holds,
// 4 enumeration too large, 5 perturbed certificate lost, 6 bound violation.
enum ExitCode {
  kOk = 0,
  kInputError = 1,
  kSolverFailure = 2,
  kNoCheckHolds = 3,
  kTooLarge = 4,
  kCertificateLost = 5,
  kBoundViolation = 6,
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw evlcp::Error("cannot write file: " + path);
  }
  out << content;
}

std::vector<double> parse_eps_list(const std::string& text) {
  std::vector<double> eps;
  std::string item;
  for (char c : text + ",") {
    if (c == ',') {
      if (!item.empty()) eps.push_back(evlcp::parse_double(item));
      item.clear();
    } else {
      item += c;
    }
  }
  if (eps.empty()) {
    throw evlcp::Error("empty eps list");
  }
  return eps;
}

int cmd_solve(const std::string& input, const std::string& method, double tol,
              const std::string& out_path) {
  evlcp::EvlcpProblem problem = evlcp::load_problem(input);
  evlcp::SolveResult result;
  try {
    if (method == "enumerate") {
      result = evlcp::solve_enumerate(problem);
    } else {
      evlcp::NewtonOptions opts;
      opts.tol = tol;
      result = evlcp::solve_newton(problem, opts);
    }
  } catch (const evlcp::Error& e) {
    nlohmann::json diag{{"error", e.what()}};
    std::cout << diag.dump(2) << '\n';
    return kSolverFailure;
  }
  const std::string text = evlcp::to_json(result).dump(2);
  if (!out_path.empty()) write_file(out_path, text + "\n");
  std::cout << text << '\n';
  return kOk;
}

int cmd_check(const std::string& input, const std::string& method) {
  evlcp::EvlcpProblem problem = evlcp::load_problem(input);
  nlohmann::json reports = nlohmann::json::array();
  bool any_holds = false;
  bool vertex_too_large = false;

  auto run = [&](const std::string& which) {
    if (which == "spectral") {
      const auto rep = evlcp::check_spectral(problem.M);
      any_holds |= rep.verdict == evlcp::WVerdict::holds;
      reports.push_back(evlcp::to_json(rep));
    } else if (which == "sdd") {
      const auto rep = evlcp::check_sdd(problem.M);
      any_holds |= rep.verdict == evlcp::WVerdict::holds;
      reports.push_back(evlcp::to_json(rep));
    } else {
      try {
        const auto rep = evlcp::check_exact_vertex(problem.M);
        any_holds |= rep.verdict == evlcp::WVerdict::holds;
        reports.push_back(evlcp::to_json(rep));
      } catch (const evlcp::TooLarge& e) {
        vertex_too_large = true;
        reports.push_back({{"method", "exact-vertex"}, {"error", e.what()}});
      }
    }
  };

  if (method == "all") {
    run("spectral");
    run("sdd");
    run("vertex");
  } else {
    run(method);
  }
  std::cout << reports.dump(2) << '\n';
  if (method == "vertex" && vertex_too_large) return kTooLarge;
  return any_holds ? kOk : kNoCheckHolds;
}

int cmd_bounds(const std::string& input, const std::string& which,
               std::size_t trials, std::uint64_t seed) {
  evlcp::EvlcpProblem problem = evlcp::load_problem(input);
  try {
    if (which == "gamma") {
      std::cout << evlcp::to_json(evlcp::gamma_upper(problem.M, problem.vlcp))
                       .dump(2)
                << '\n';
    } else if (which == "delta") {
      std::cout << evlcp::to_json(evlcp::delta_upper(problem.M, problem.vlcp))
                       .dump(2)
                << '\n';
    } else {
      evlcp::BoundSet set;
      set.kind = evlcp::BoundKind::alpha_sample;
      const std::size_t from = problem.vlcp ? 1 : 0;
      for (std::size_t i = from; i <= problem.k(); ++i) {
        set.values.push_back(evlcp::alpha_sample(problem.M, i, trials, seed));
      }
      if (problem.vlcp) {
        // Covered blocks are 1..k; mirror the vlcp layout in the output.
        nlohmann::json j = evlcp::to_json(set);
        j["first_block"] = 1;
        std::cout << j.dump(2) << '\n';
        return kOk;
      }
      std::cout << evlcp::to_json(set).dump(2) << '\n';
    }
  } catch (const evlcp::NotApplicable& e) {
    nlohmann::json diag{{"not_applicable", true}, {"reason", e.what()}};
    if (e.rho) diag["rho"] = *e.rho;
    if (e.violation) diag["violation"] = {e.violation->first,
                                          e.violation->second};
    std::cout << diag.dump(2) << '\n';
  }
  return kOk;
}

int cmd_experiment(const evlcp::ExperimentConfig& cfg,
                   const std::string& out_csv, const std::string& out_svg) {
  const evlcp::ExperimentResult result = evlcp::run_experiment(cfg);
  if (!out_csv.empty()) {
    write_file(out_csv, evlcp::records_to_csv(result.records));
  }
  if (!out_svg.empty()) {
    write_file(out_svg, evlcp::render_plot_svg(result.records));
  }
  std::cout << evlcp::summary_table(result);
  return kOk;
}

int cmd_gen(const std::string& problem, std::size_t n, std::size_t k,
            std::uint64_t seed, const std::string& out_path) {
  evlcp::EvlcpProblem p = [&] {
    if (problem == "random") return evlcp::gen_random_certified(n, k, seed);
    return evlcp::make_named_problem(problem, n);
  }();
  const std::string text = evlcp::problem_to_json(p).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EVLCP solver, row W-property checks, and perturbation bounds"};
  app.require_subcommand(1);

  std::string input, method = "newton", check_method = "all";
  std::string which = "gamma", out_path, plot_path;
  std::string problem = "ex51", eps_text = "0.01";
  double tol = 1e-12;
  std::size_t trials = 10000, exp_trials = 10, n = 16, k = 1;
  std::uint64_t seed = 1;

  auto* solve = app.add_subcommand("solve", "solve a problem from JSON");
  solve->add_option("--input", input, "problem JSON path")->required();
  solve->add_option("--method", method, "newton|enumerate");
  solve->add_option("--tol", tol, "newton stopping tolerance");
  solve->add_option("--out", out_path, "also write the result JSON here");

  auto* check = app.add_subcommand("check", "row W-property checks");
  check->add_option("--input", input, "problem JSON path")->required();
  check->add_option("--method", check_method, "spectral|sdd|vertex|all");

  auto* bounds = app.add_subcommand("bounds", "condition-constant estimates");
  bounds->add_option("--input", input, "problem JSON path")->required();
  bounds->add_option("--which", which, "gamma|delta|alpha-sample");
  bounds->add_option("--trials", trials, "alpha-sample trial count");
  bounds->add_option("--seed", seed, "alpha-sample seed");

  auto* experiment =
      app.add_subcommand("experiment", "perturbation experiment with CSV/SVG");
  experiment->add_option("--problem", problem, "ex51|ex52|hjb");
  experiment->add_option("--n", n, "hjb problem order (perfect square)");
  experiment->add_option("--eps", eps_text, "comma-separated eps list");
  experiment->add_option("--trials", exp_trials, "trials per eps");
  experiment->add_option("--seed", seed, "base seed");
  experiment->add_option("--out", out_path, "CSV output path");
  experiment->add_option("--plot", plot_path, "SVG output path");

  auto* gen = app.add_subcommand("gen", "emit a problem as JSON");
  gen->add_option("--problem", problem, "ex51|ex52|hjb|random");
  gen->add_option("--n", n, "order (hjb/random)");
  gen->add_option("--k", k, "block count minus one (random)");
  gen->add_option("--seed", seed, "seed (random)");
  gen->add_option("--out", out_path, "output path (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve) return cmd_solve(input, method, tol, out_path);
    if (*check) return cmd_check(input, check_method);
    if (*bounds) return cmd_bounds(input, which, trials, seed);
    if (*experiment) {
      evlcp::ExperimentConfig cfg;
      cfg.problem = problem;
      cfg.hjb_n = n;
      cfg.eps_list = parse_eps_list(eps_text);
      cfg.trials = exp_trials;
      cfg.seed = seed;
      return cmd_experiment(cfg, out_path, plot_path);
    }
    if (*gen) return cmd_gen(problem, n, k, seed, out_path);
  } catch (const evlcp::TooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kTooLarge;
  } catch (const evlcp::CertificateLost& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCertificateLost;
  } catch (const evlcp::BoundViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBoundViolation;
  } catch (const evlcp::NotApplicable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const evlcp::SingularJacobian& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const evlcp::NoConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const evlcp::MultipleSolutions& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const evlcp::NoSolution& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
