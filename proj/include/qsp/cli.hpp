#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end: argument parsing into a JobConfig and the job runner with
 *        its exit-code contract (0 pass, 1 verification failed, 2 bad input, 3 cap exceeded).
 */

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qsp/errors.hpp"
#include "qsp/io.hpp"
#include "qsp/targets.hpp"
#include "qsp/verify.hpp"

namespace qsp::cli {

enum class Command { decompose, generate_ja, generate_inverse, verify };

enum Exit : int { ok = 0, verification_failed = 1, bad_input = 2, cap_exceeded = 3 };

/// Thrown after --help output has been printed.
struct HelpShown {};

struct JobConfig {
  Command command = Command::decompose;
  std::string input_path;
  std::string output_path;
  std::string decomposition_path;  ///< verify only
  std::string epsilon;             ///< overrides the target's epsilon when set
  std::string tau;
  std::string kappa;
  Bits initial_precision = 64;
  std::optional<Bits> max_precision;
  std::optional<std::size_t> grid_size;
  bool emit_angles = true;
  std::optional<Bits> precision_override;  ///< QSP_PRECISION_OVERRIDE
};

/// Parses argv; CLI11 errors and bad values surface as ValidationError.
inline JobConfig parse_args(int argc, const char* const* argv, const char* override_env = std::getenv("QSP_PRECISION_OVERRIDE")) {
  JobConfig cfg;
  CLI::App app{"Decompose periodic functions into products of primitive matrices"};
  app.require_subcommand(1);
  long initial = 64;
  long max_bits = 0;
  long grid = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--output", cfg.output_path, "where the result JSON goes");
    sub->add_option("--epsilon", cfg.epsilon, "target accuracy, decimal string");
  };
  auto* dec = app.add_subcommand("decompose", "decompose a target JSON");
  common(dec);
  dec->add_option("--input", cfg.input_path, "target JSON")->required();
  dec->add_option("--initial-precision", initial, "first working precision in bits");
  dec->add_option("--max-precision", max_bits, "largest working precision in bits");
  dec->add_option("--grid-size", grid, "verification grid size");
  dec->add_flag("--emit-angles,!--no-emit-angles", cfg.emit_angles, "write the angle form when it exists");

  auto* ja = app.add_subcommand("generate-ja", "Jacobi-Anger target for e^{i tau sin phi}");
  common(ja);
  ja->add_option("--tau", cfg.tau, "evolution time")->required();

  auto* inv = app.add_subcommand("generate-inverse", "bounded approximation of 1/(kappa sin phi)");
  common(inv);
  inv->add_option("--kappa", cfg.kappa, "condition number")->required();

  auto* ver = app.add_subcommand("verify", "check a decomposition against a target");
  common(ver);
  ver->add_option("--input", cfg.input_path, "target JSON")->required();
  ver->add_option("--decomposition", cfg.decomposition_path, "decomposition JSON")->required();
  ver->add_option("--grid-size", grid, "verification grid size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e);
    throw HelpShown{};
  } catch (const CLI::ParseError& e) {
    throw ValidationError(e.what());
  }
  if (dec->parsed()) cfg.command = Command::decompose;
  if (ja->parsed()) cfg.command = Command::generate_ja;
  if (inv->parsed()) cfg.command = Command::generate_inverse;
  if (ver->parsed()) cfg.command = Command::verify;

  if (initial < 2) throw ValidationError("--initial-precision must be at least 2");
  cfg.initial_precision = initial;
  if (max_bits != 0) {
    if (max_bits < 2) throw ValidationError("--max-precision must be at least 2");
    cfg.max_precision = max_bits;
  }
  if (grid != 0) {
    if (grid < 1) throw ValidationError("--grid-size must be positive");
    cfg.grid_size = static_cast<std::size_t>(grid);
  }
  bool generator = cfg.command == Command::generate_ja || cfg.command == Command::generate_inverse;
  if (generator && cfg.epsilon.empty()) throw ValidationError("--epsilon is required");
  if (generator && cfg.output_path.empty()) throw ValidationError("--output is required");
  if (cfg.command == Command::decompose && cfg.output_path.empty()) throw ValidationError("--output is required");
  if (!cfg.epsilon.empty()) {
    PrecisionScope s(128);
    Real eps = Real::parse(cfg.epsilon, 128);
    if (!(eps > Real(0) && eps <= Real::parse("0.01", 128))) {
      throw ValidationError("--epsilon must lie in (0, 1/100], got " + cfg.epsilon);
    }
  }
  if (override_env && *override_env) {
    char* end = nullptr;
    long r = std::strtol(override_env, &end, 10);
    if (*end != '\0' || r < 2) throw ValidationError(std::string("bad QSP_PRECISION_OVERRIDE: ") + override_env);
    cfg.precision_override = r;
  }
  return cfg;
}

inline void print_report(std::ostream& out, const VerifyReport& r) { out << to_json(r).dump(2) << "\n"; }

/// Runs one job. `out` receives the verification report, `err` the messages.
inline int run(const JobConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    switch (cfg.command) {
      case Command::generate_ja: {
        auto spec = jacobi_anger(jacobi_anger_spec(cfg.tau, cfg.epsilon));
        write_json_file(cfg.output_path, to_json(spec));
        return ok;
      }
      case Command::generate_inverse: {
        auto spec = inverse_poly(inverse_params(cfg.kappa, cfg.epsilon));
        write_json_file(cfg.output_path, to_json(spec));
        return ok;
      }
      case Command::decompose: {
        TargetSpec spec = target_from_json(read_json_file(cfg.input_path));
        if (!cfg.epsilon.empty()) spec.epsilon = cfg.epsilon;
        AdaptiveOptions opt;
        opt.initial_bits = cfg.initial_precision;
        opt.max_bits = cfg.max_precision;
        opt.fixed_bits = cfg.precision_override;
        opt.grid_size = cfg.grid_size;
        opt.emit_angles = cfg.emit_angles;
        PipelineResult res = run_adaptive(spec, opt);
        write_json_file(cfg.output_path, to_json(res.decomposition));
        print_report(out, res.report);
        return ok;
      }
      case Command::verify: {
        TargetSpec spec = target_from_json(read_json_file(cfg.input_path));
        if (!cfg.epsilon.empty()) spec.epsilon = cfg.epsilon;
        Decomposition d = decomposition_from_json(read_json_file(cfg.decomposition_path));
        VerifyReport rep = check(d, spec, cfg.grid_size.value_or(default_grid_size(spec.degree_bound())));
        if (!cfg.output_path.empty()) write_json_file(cfg.output_path, to_json(rep));
        print_report(out, rep);
        return rep.passed ? ok : verification_failed;
      }
    }
  } catch (const PrecisionCapExceeded& e) {
    err << "error: " << e.what() << "\n" << e.diagnostics();
    return cap_exceeded;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const Error& e) {
    // domain errors from out-of-range options, unwritable output paths
    err << "error: " << e.what() << "\n";
    return bad_input;
  }
  return bad_input;
}

/// argv in, exit code out.
inline int main(int argc, const char* const* argv) {
  JobConfig cfg;
  try {
    cfg = parse_args(argc, argv);
  } catch (const HelpShown&) {
    return ok;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bad_input;
  }
  return run(cfg);
}

}  // namespace qsp::cli
