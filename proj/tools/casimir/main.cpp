#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "casimir/errors.hpp"
#include "commands.hpp"

namespace cli = casimir::cli;

namespace {

void add_common(CLI::App* sub, cli::Common& c) {
  sub->add_option("--config", c.config, "JSON run configuration")->required();
  sub->add_option("--out-dir", c.out_dir, "output directory (overrides paths.output_dir)");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_flag("--quiet", c.quiet, "suppress progress output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lifshitz dispersion forces and force-curve analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CASIMIR_VERSION);

  cli::Common common;
  cli::EpsilonArgs eps;
  cli::ForceArgs force;
  cli::SynthArgs synth;
  cli::FitArgs fit;
  cli::ErrorsArgs errors;

  auto* s_eps = app.add_subcommand("epsilon", "tabulate eps(i xi) for one material");
  add_common(s_eps, common);
  s_eps->add_option("--material", eps.material, "material name from the config")->required();
  s_eps->add_option("--xi-min", eps.xi_min, "lowest frequency, with unit");
  s_eps->add_option("--xi-max", eps.xi_max, "highest frequency, with unit");
  s_eps->add_option("--points", eps.points, "log-spaced points")->check(CLI::Range(2, 100000));

  auto* s_force = app.add_subcommand("force", "Lifshitz F/2piR for the configured stack");
  add_common(s_force, common);
  s_force->add_option("--d-min", force.d_min, "smallest separation, with unit");
  s_force->add_option("--d-max", force.d_max, "largest separation, with unit");
  s_force->add_option("--points", force.points, "log-spaced points")->check(CLI::Range(2, 100000));
  s_force->add_flag("--no-roughness", force.no_roughness, "skip the roughness correction");

  auto* s_synth = app.add_subcommand("synth", "synthetic approach curves from the model");
  add_common(s_synth, common);
  s_synth->add_option("--delta", synth.delta, "separation offset of the data, with unit");
  s_synth->add_option("--alpha", synth.alpha, "electrostatic coefficient, with unit (N)");
  s_synth->add_option("--curves", synth.curves, "number of curves");
  s_synth->add_option("--spring-constant", synth.spring_constant, "spring constant, with unit");
  s_synth->add_option("--jump-in", synth.jump_in, "solve the spring constant for this jump-in");
  s_synth->add_flag("--no-roughness", synth.no_roughness, "synthesize from the uncorrected model");

  auto* s_fit = app.add_subcommand("fit", "average curves and fit deformation and electrostatics");
  add_common(s_fit, common);
  s_fit->add_option("files", fit.files, "force-curve files (default: paths.force_curves)");
  s_fit->add_flag("--no-roughness", fit.no_roughness, "fit with the uncorrected model");

  auto* s_err = app.add_subcommand("errors", "accumulated rms and pointwise relative errors");
  add_common(s_err, common);
  s_err->add_option("files", errors.files, "force-curve files (default: paths.force_curves)");
  s_err->add_option("--delta", errors.delta, "shift subtracted from the data, with unit");
  s_err->add_flag("--no-roughness", errors.no_roughness, "compare with the uncorrected model");

  auto* s_jkr = app.add_subcommand("jkr", "JKR/DMT contact report");
  add_common(s_jkr, common);

  auto* s_study = app.add_subcommand("study", "roughness model-discrimination study");
  add_common(s_study, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*s_eps) return cli::cmd_epsilon(common, eps);
    if (*s_force) return cli::cmd_force(common, force);
    if (*s_synth) return cli::cmd_synth(common, synth);
    if (*s_fit) return cli::cmd_fit(common, fit);
    if (*s_err) return cli::cmd_errors(common, errors);
    if (*s_jkr) return cli::cmd_jkr(common);
    if (*s_study) return cli::cmd_study(common);
  } catch (const casimir::UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const casimir::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
