#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<double> tolerance;
  std::optional<evanescent::Index> trials;
  std::optional<std::string> export_gamma;
  bool real = false;
};

void add_common(CLI::App* cmd, Flags& f, bool config_required) {
  auto* opt = cmd->add_option("--config", f.config, "JSON run configuration");
  if (config_required) opt->required();
  cmd->add_option("--seed", f.seed, "Seed (overrides the config)");
  cmd->add_option("--out", f.out, "Output path for the report, grid CSV or snapshot matrix");
  cmd->add_option("--tolerance", f.tolerance, "Relative singular-value threshold for numerical rank");
  cmd->add_option("--trials", f.trials, "Monte Carlo draws or STAP snapshots");
  cmd->add_option("--export-gamma", f.export_gamma, "Write the covariance matrix (.csv or binary)");
  cmd->add_flag("--real", f.real, "Use the real-valued field model");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank analysis of evanescent random field covariances"};
  app.require_subcommand(1);
  Flags flags;
  std::optional<evfield::Mode> chosen;
  const std::pair<const char*, const char*> verbs[] = {
      {"rank", "Predict and measure the covariance rank"},
      {"verify", "Audit dependency certificates on the dependent point set"},
      {"simulate", "Draw field snapshots and compare their covariance with the exact one"},
      {"stap", "Jammer/clutter subspace suppression experiment"},
      {"grid", "Formula versus numerical rank over a grid of configurations"},
  };
  for (const auto& [name, help] : verbs) {
    auto* cmd = app.add_subcommand(name, help);
    const evfield::Mode mode = evfield::parse_mode(name);
    add_common(cmd, flags, mode != evfield::Mode::grid);
    cmd->callback([&chosen, mode] { chosen = mode; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << evfield::diagnostic("usage", e.what(), evfield::kConfigError) << '\n';
    return evfield::kConfigError;
  }

  evfield::RunConfig cfg;
  try {
    if (!flags.config.empty()) {
      cfg = evfield::load_config(flags.config, *chosen);
    } else {
      cfg.mode = *chosen;
    }
    evfield::Overrides ov;
    ov.seed = flags.seed;
    ov.out = flags.out;
    ov.tolerance = flags.tolerance;
    ov.trials = flags.trials;
    ov.real_valued = flags.real;
    ov.export_gamma = flags.export_gamma;
    evfield::apply_overrides(cfg, ov);

    const evfield::CommandResult result = evfield::run(cfg);
    evfield::emit(cfg, result, std::cout);
    if (cfg.mode == evfield::Mode::grid && !cfg.outputs.report) {
      std::cerr << result.report.dump() << '\n';
    }
    if (!result.diagnostic.empty()) std::cerr << result.diagnostic << '\n';
    return result.exit_code;
  } catch (const evfield::ConfigError& e) {
    std::cerr << evfield::diagnostic("config", e.what(), evfield::kConfigError) << '\n';
  } catch (const std::exception& e) {
    std::cerr << evfield::diagnostic("runtime", e.what(), evfield::kConfigError) << '\n';
  }
  return evfield::kConfigError;
}
