#include <CLI11.hpp>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "qsd/channel.hpp"
#include "qsd/json_io.hpp"
#include "qsd/optimality.hpp"
#include "qsd/solvers.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;          // IO or parse failure
constexpr int kExitInvalid = 2;     // validation failure
constexpr int kExitUnsatisfied = 3; // verdict: measurement helps
constexpr int kExitUsage = 64;

std::string num(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

void print_json(const qsd::Json& j) { std::cout << j.dump(2) << "\n"; }

void print_validation(const qsd::ValidationReport& report) {
  if (report.valid) {
    std::cout << "valid\n";
    return;
  }
  std::cout << "invalid (" << report.violations.size() << " violation"
            << (report.violations.size() == 1 ? "" : "s") << ")\n";
  for (const auto& v : report.violations) {
    std::cout << "  " << v.kind << " residual " << num(v.residual) << ": "
              << v.message << "\n";
  }
}

void print_no_measurement(const qsd::NoMeasurementReport& r) {
  std::cout << "no-measurement optimal: " << (r.satisfied ? "yes" : "no") << "\n";
  std::cout << "candidate hypothesis: " << r.candidate_j << "\n";
  std::cout << "margin: " << num(r.margin) << "\n";
  std::cout << "prior condition: " << (r.prior_condition ? "yes" : "no") << "\n";
  std::cout << "span condition: " << (r.span_condition ? "yes" : "no") << "\n";
  for (const auto& m : r.per_k_min_eigenvalue) {
    std::cout << "  min eigenvalue vs hypothesis " << m.k << ": "
              << num(m.min_eigenvalue) << "\n";
  }
}

void print_optimality(const qsd::OptimalityReport& r) {
  std::cout << "sufficient condition: " << (r.satisfied_sufficient ? "yes" : "no") << "\n";
  std::cout << "necessary condition: " << (r.satisfied_necessary ? "yes" : "no") << "\n";
  std::cout << "hermiticity residual: " << num(r.hermiticity_residual) << "\n";
  for (std::size_t k = 0; k < r.per_k_min_eigenvalue.size(); ++k) {
    std::cout << "  hypothesis " << k << ": min eigenvalue "
              << num(r.per_k_min_eigenvalue[k]) << ", stationarity residual "
              << num(r.per_k_stationarity_residual[k]) << "\n";
  }
}

void print_solver_result(const qsd::SolverResult& r) {
  std::cout << "error probability: " << num(r.error_probability) << "\n";
  std::cout << "iterations: " << r.iterations << "\n";
  std::cout << "converged: " << (r.converged ? "yes" : "no") << "\n";
  print_optimality(r.optimality);
}

void print_sim_result(const qsd::SimResult& r) {
  std::cout << "trials: " << r.trials << "\n";
  std::cout << "errors: " << r.strategy_errors << "\n";
  std::cout << "empirical error: " << num(r.empirical_error) << "\n";
  std::cout << "guess baseline: " << num(r.guess_baseline) << "\n";
  std::cout << "seed: " << r.seed << "\n";
}

void print_info(const qsd::OutcomeTable& table, double bits) {
  std::cout << "mutual information: " << num(bits) << " bits\n";
  std::cout << "posterior P(hypothesis | outcome):\n";
  for (Eigen::Index j = 0; j < table.posterior.rows(); ++j) {
    std::cout << "  hypothesis " << j << ":";
    for (Eigen::Index k = 0; k < table.posterior.cols(); ++k) {
      if (table.posterior_defined[static_cast<std::size_t>(k)]) {
        std::cout << " " << num(table.posterior(j, k));
      } else {
        std::cout << " undefined";
      }
    }
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum state-ensemble discrimination toolkit"};
  app.require_subcommand(1);

  std::function<int()> action;

  // validate
  {
    auto* cmd = app.add_subcommand("validate", "validate an ensemble file");
    auto path = std::make_shared<std::string>();
    cmd->add_option("ensemble", *path, "ensemble file")->required();
    auto json = std::make_shared<bool>(false);
    cmd->add_flag("--json", *json, "machine-readable report");
    cmd->callback([path, json, &action] {
      action = [path, json] {
        const qsd::Ensemble e = qsd::parse_ensemble_file(*path);
        const qsd::ValidationReport report = qsd::validate_ensemble(e);
        if (*json) {
          print_json(qsd::report_to_json(report));
        } else {
          print_validation(report);
        }
        return report.valid ? kExitOk : kExitInvalid;
      };
    });
  }

  // check-no-measurement
  {
    auto* cmd = app.add_subcommand("check-no-measurement",
                                   "decide whether guessing is a minimum-error strategy");
    auto path = std::make_shared<std::string>();
    cmd->add_option("ensemble", *path, "ensemble file")->required();
    auto json = std::make_shared<bool>(false);
    cmd->add_flag("--json", *json, "machine-readable report");
    cmd->callback([path, json, &action] {
      action = [path, json] {
        const qsd::Ensemble e = qsd::load_ensemble(*path);
        const qsd::NoMeasurementReport report = qsd::check_no_measurement(e);
        if (*json) {
          print_json(qsd::report_to_json(report));
        } else {
          print_no_measurement(report);
        }
        return report.satisfied ? kExitOk : kExitUnsatisfied;
      };
    });
  }

  // check-optimal
  {
    auto* cmd = app.add_subcommand("check-optimal",
                                   "evaluate the minimum-error conditions for a POM");
    auto epath = std::make_shared<std::string>();
    auto ppath = std::make_shared<std::string>();
    cmd->add_option("ensemble", *epath, "ensemble file")->required();
    cmd->add_option("pom", *ppath, "POM file")->required();
    auto json = std::make_shared<bool>(false);
    cmd->add_flag("--json", *json, "machine-readable report");
    cmd->callback([epath, ppath, json, &action] {
      action = [epath, ppath, json] {
        const qsd::Ensemble e = qsd::load_ensemble(*epath);
        const qsd::Pom pom = qsd::load_pom(*ppath);
        const qsd::OptimalityReport report = qsd::check_min_error(pom, e);
        if (*json) {
          print_json(qsd::report_to_json(report));
        } else {
          print_optimality(report);
        }
        return kExitOk;
      };
    });
  }

  // threshold
  {
    auto* cmd = app.add_subcommand("threshold",
                                   "failure probability above which guessing wins");
    auto dim = std::make_shared<long>(0);
    auto signals = std::make_shared<long>(0);
    cmd->add_option("--dim", *dim, "state-space dimension")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--num-signals", *signals, "number of signal states")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd->callback([dim, signals, &action] {
      action = [dim, signals] {
        const double value = qsd::no_measurement_threshold(
            static_cast<Eigen::Index>(*dim), static_cast<std::size_t>(*signals));
        std::cout << *dim << "/" << (*dim + *signals) << " = " << num(value) << "\n";
        return kExitOk;
      };
    });
  }

  // optimize
  {
    auto* cmd = app.add_subcommand("optimize", "search for a minimum-error POM");
    auto path = std::make_shared<std::string>();
    cmd->add_option("ensemble", *path, "ensemble file")->required();
    auto cfg = std::make_shared<qsd::SolverConfig>();
    cmd->add_option("--seed", cfg->seed, "random seed");
    cmd->add_option("--restarts", cfg->restarts, "number of starts");
    cmd->add_option("--max-iterations", cfg->max_iterations, "iteration cap per start");
    cmd->add_option("--convergence-tol", cfg->convergence_tol, "element-change stop tolerance");
    auto json = std::make_shared<bool>(false);
    cmd->add_flag("--json", *json, "machine-readable report");
    auto pom_out = std::make_shared<std::string>();
    cmd->add_option("--pom-out", *pom_out, "write the best POM to this file");
    cmd->callback([path, cfg, json, pom_out, &action] {
      action = [path, cfg, json, pom_out] {
        const qsd::Ensemble e = qsd::load_ensemble(*path);
        const qsd::SolverResult result = qsd::optimize_min_error(e, *cfg);
        if (!pom_out->empty()) qsd::save_pom(result.pom, *pom_out);
        if (*json) {
          print_json(qsd::report_to_json(result));
        } else {
          print_solver_result(result);
        }
        return kExitOk;
      };
    });
  }

  // simulate
  {
    auto* cmd = app.add_subcommand("simulate", "Monte Carlo a decision strategy");
    auto epath = std::make_shared<std::string>();
    cmd->add_option("ensemble", *epath, "ensemble file")->required();
    auto ppath = std::make_shared<std::string>();
    auto* pom_opt = cmd->add_option("pom", *ppath, "POM file");
    auto guess = std::make_shared<long>(-1);
    auto* guess_opt = cmd->add_option("--guess", *guess, "guess this hypothesis instead of measuring")
                          ->check(CLI::NonNegativeNumber);
    pom_opt->excludes(guess_opt);
    auto trials = std::make_shared<unsigned long long>(100000);
    cmd->add_option("--trials", *trials, "number of trials")->check(CLI::PositiveNumber);
    auto seed = std::make_shared<unsigned long long>(0);
    cmd->add_option("--seed", *seed, "random seed");
    auto threads = std::make_shared<unsigned>(1);
    cmd->add_option("--threads", *threads, "worker cap");
    auto json = std::make_shared<bool>(false);
    cmd->add_flag("--json", *json, "machine-readable report");
    cmd->callback([epath, ppath, guess, trials, seed, threads, json, &action] {
      action = [epath, ppath, guess, trials, seed, threads, json] {
        const qsd::Ensemble e = qsd::load_ensemble(*epath);
        qsd::Pom pom;
        if (!ppath->empty()) {
          pom = qsd::load_pom(*ppath);
        } else if (*guess >= 0) {
          pom = qsd::guess_pom(static_cast<std::size_t>(*guess), e.size(), e.dim);
        } else {
          throw qsd::ContractError("simulate: provide a POM file or --guess");
        }
        const qsd::SimResult result =
            qsd::simulate(e, pom, static_cast<std::size_t>(*trials), *seed, *threads);
        if (*json) {
          print_json(qsd::report_to_json(result));
        } else {
          print_sim_result(result);
        }
        return kExitOk;
      };
    });
  }

  // info
  {
    auto* cmd = app.add_subcommand("info", "mutual information and posterior table");
    auto epath = std::make_shared<std::string>();
    auto ppath = std::make_shared<std::string>();
    cmd->add_option("ensemble", *epath, "ensemble file")->required();
    cmd->add_option("pom", *ppath, "POM file")->required();
    auto json = std::make_shared<bool>(false);
    cmd->add_flag("--json", *json, "machine-readable report");
    cmd->callback([epath, ppath, json, &action] {
      action = [epath, ppath, json] {
        const qsd::Ensemble e = qsd::load_ensemble(*epath);
        const qsd::Pom pom = qsd::load_pom(*ppath);
        const qsd::OutcomeTable table = qsd::outcome_table(pom, e);
        const double bits = qsd::mutual_information(pom, e);
        if (*json) {
          qsd::Json j = qsd::report_to_json(table);
          j["mutual_information_bits"] = bits;
          print_json(j);
        } else {
          print_info(table, bits);
        }
        return kExitOk;
      };
    });
  }

  // trine
  {
    auto* cmd = app.add_subcommand("trine", "write the three-signal example channel");
    auto p0 = std::make_shared<double>(0.0);
    cmd->add_option("--p0", *p0, "failure probability")->required()
        ->check(CLI::Range(0.0, 1.0));
    auto out = std::make_shared<std::string>();
    cmd->add_option("--out", *out, "channel spec output file")->required();
    auto ensemble_out = std::make_shared<std::string>();
    cmd->add_option("--ensemble-out", *ensemble_out, "also write the built ensemble");
    cmd->callback([p0, out, ensemble_out, &action] {
      action = [p0, out, ensemble_out] {
        const qsd::ChannelSpec spec = qsd::trine_example(*p0);
        qsd::save_channel_spec(spec, *out);
        if (!ensemble_out->empty()) {
          qsd::save_ensemble(qsd::build_ensemble(spec), *ensemble_out);
        }
        return kExitOk;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    std::cerr << err.what() << "\n";
    return kExitUsage;
  }

  try {
    return action();
  } catch (const qsd::ParseError& err) {
    std::cerr << "parse error: " << err.what() << "\n";
    return kExitIo;
  } catch (const qsd::IoError& err) {
    std::cerr << "io error: " << err.what() << "\n";
    return kExitIo;
  } catch (const qsd::ValidationError& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return kExitInvalid;
  } catch (const qsd::DimensionError& err) {
    std::cerr << "dimension error: " << err.what() << "\n";
    return kExitInvalid;
  } catch (const qsd::ContractError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return kExitInvalid;
  } catch (const qsd::SimulationError& err) {
    std::cerr << "simulation error: " << err.what() << "\n";
    return kExitInvalid;
  } catch (const qsd::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitIo;
  }
}
