// Command-line laboratory for symmetry-reduced critical points of the
// phase-transition energy on round spheres: solves, spectra, parabolic
// flows, mass diagnostics and the acceptance report.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "ac/errors.hpp"
#include "ac/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"aclab - critical points, Morse data and flows on round spheres"};
  app.require_subcommand(1);

  ac::RunConfig cfg;
  std::string config_file, layers_text, eps_list_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "JSON config file; flags override");
    sub->add_option("--geometry", cfg.geometry, "equatorial|clifford");
    sub->add_option("--n", cfg.n, "ambient S^{n+1} for the equatorial reduction");
    sub->add_option("--p", cfg.p, "first clifford factor");
    sub->add_option("--q", cfg.q, "second clifford factor");
    sub->add_option("--eps", cfg.eps, "interface width parameter");
    sub->add_option("--eps-list", eps_list_text, "comma-separated decreasing eps sweep");
    sub->add_option("--nodes", cfg.nodes, "grid nodes (h <= eps/4 enforced)");
    sub->add_option("--potential", cfg.potential, "potential name (default quartic)");
    sub->add_option("--potential-coeffs", cfg.potential_coeffs,
                    "polynomial coefficients c0 c1 ... for a custom potential");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--seed", cfg.seed, "Monte-Carlo seed");
    sub->add_option("--mc-samples", cfg.mc_samples, "Monte-Carlo sample count");
    sub->add_flag("--serial", cfg.serial, "disable the OpenMP fan-out");
    sub->add_option("--layers", layers_text, "ansatz layers r1:+,r2:-");
    sub->add_flag("--bo", cfg.bo, "Brezis-Oswald half-domain construction");
    sub->add_option("--solution", cfg.solution_file, "profile.csv of a solution");
    sub->add_option("--from-solution", cfg.solution_file,
                    "start the flow from this profile.csv");
    sub->add_option("--perturb", cfg.perturb, "add theta * phi_1 to the start profile");
    sub->add_option("--initial", cfg.initial_file, "explicit initial profile.csv");
    sub->add_option("--dt", cfg.dt, "time step (default eps / (2 sup|W''|))");
    sub->add_option("--t-max", cfg.t_max, "time horizon (default 1e4 eps)");
    sub->add_option("--settle-tol", cfg.settle_tol, "settling tolerance");
    sub->add_option("--levels", cfg.levels, "ambient levels for oracle-check (<= 6)");
  };

  CLI::App* subs[] = {
      app.add_subcommand("solve", "find a critical point"),
      app.add_subcommand("spectrum", "index / nullity of a solution"),
      app.add_subcommand("flow", "semi-implicit parabolic flow"),
      app.add_subcommand("measure", "energy and varifold masses"),
      app.add_subcommand("sweep", "eps continuation with mass table"),
      app.add_subcommand("frankel-demo",
                         "nodal sets of one- and two-interface solutions"),
      app.add_subcommand("oracle-check",
                         "constant-potential spectrum vs the ambient sphere"),
      app.add_subcommand("report", "acceptance table across an eps sweep"),
  };
  for (CLI::App* sub : subs) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ac::exit_usage;
  }

  CLI::App* active = app.get_subcommands().front();
  cfg.subcommand = active->get_name();

  try {
    if (!config_file.empty()) {
      // The file supplies every value the user did not pass explicitly.
      ac::RunConfig merged;
      ac::apply_config_file(merged, config_file);
      merged.subcommand = cfg.subcommand;  // the invoked subcommand always wins
      auto seen = [&](const std::string& name) { return active->count(name) > 0; };
      if (seen("--geometry")) merged.geometry = cfg.geometry;
      if (seen("--n")) merged.n = cfg.n;
      if (seen("--p")) merged.p = cfg.p;
      if (seen("--q")) merged.q = cfg.q;
      if (seen("--eps")) merged.eps = cfg.eps;
      if (seen("--nodes")) merged.nodes = cfg.nodes;
      if (seen("--potential")) merged.potential = cfg.potential;
      if (seen("--potential-coeffs")) merged.potential_coeffs = cfg.potential_coeffs;
      if (seen("--out")) merged.out_dir = cfg.out_dir;
      if (seen("--seed")) merged.seed = cfg.seed;
      if (seen("--mc-samples")) merged.mc_samples = cfg.mc_samples;
      if (seen("--serial")) merged.serial = cfg.serial;
      if (seen("--bo")) merged.bo = cfg.bo;
      if (seen("--solution") || seen("--from-solution"))
        merged.solution_file = cfg.solution_file;
      if (seen("--perturb")) merged.perturb = cfg.perturb;
      if (seen("--initial")) merged.initial_file = cfg.initial_file;
      if (seen("--dt")) merged.dt = cfg.dt;
      if (seen("--t-max")) merged.t_max = cfg.t_max;
      if (seen("--settle-tol")) merged.settle_tol = cfg.settle_tol;
      if (seen("--levels")) merged.levels = cfg.levels;
      if (seen("--eps-list")) merged.eps_list = ac::parse_eps_list(eps_list_text);
      if (seen("--layers")) merged.layers = ac::parse_layers(layers_text);
      cfg = merged;
    } else {
      if (!eps_list_text.empty()) cfg.eps_list = ac::parse_eps_list(eps_list_text);
      if (!layers_text.empty()) cfg.layers = ac::parse_layers(layers_text);
    }
  } catch (const ac::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ac::exit_usage;
  }

  return ac::run(cfg);
}
