#include "cli.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace bext::cli {

namespace {

struct Globals {
  std::string format;
  std::string output;
  int threads = 0;
  long long seed = 0;
};

void emit(const Payload& p, const Globals& g, std::ostream& out) {
  Format f = p.default_format;
  if (g.format == "csv") f = Format::Csv;
  if (g.format == "json") f = Format::Json;

  std::ostringstream buf;
  Payload copy = p;
  copy.config["threads"] = g.threads;
  copy.config["seed"] = g.seed;
  if (f == Format::Csv) {
    write_csv(buf, copy);
  } else {
    write_json(buf, copy);
  }
  if (g.output.empty()) {
    out << buf.str();
    return;
  }
  std::ofstream file(g.output, std::ios::binary);
  if (!file) throw InputError("cannot write " + g.output);
  file << buf.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boundary-condition entanglement toolkit", "bext"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Globals g;
  app.add_option("--format", g.format, "Output format (default per command)")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--output,-o", g.output, "Write to this file instead of stdout");
  app.add_option("--threads", g.threads, "Worker threads for energy scans (0: $BEXT_THREADS or 1)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Seed recorded in the metadata");

  std::function<Payload()> action;

  CompatOptions compat;
  auto* c = app.add_subcommand("compat-curve", "Compatibility curves tan^2(a1/2) - tan^2(a2/2) = sigma");
  c->add_option("--sigma", compat.sigma, "Spectral gaps lambda1 - lambda2")->required()->delimiter(',');
  c->add_option("--samples", compat.samples, "Points per curve")->capture_default_str();
  c->add_option("--max-binding", compat.max_binding, "Largest tan^2(a2/2) sampled")->capture_default_str();
  c->add_flag("--torus", compat.torus, "Add the three mirror images on [0, 2pi)^2");
  c->callback([&] { action = [&] { return cmd_compat_curve(compat); }; });

  HalflineOptions half;
  auto* h = app.add_subcommand("halfline", "Bound states of the half-line with diagonal boundary angles");
  h->add_option("--lambda", half.lambda, "Bulk eigenvalues, one per level")->required()->delimiter(',');
  h->add_option("--alpha", half.alpha, "Boundary angles (one, or one per level)")->delimiter(',');
  h->add_option("--chain-alpha1", half.chain_alpha1,
                "Make all levels degenerate starting from this alpha_1 (lambdas descending)");
  h->add_option("--samples", half.samples, "Sample each bound state on this many points")->capture_default_str();
  h->add_option("--length", half.length, "Sampling length")->capture_default_str();
  h->callback([&] {
    if (half.alpha.empty() && half.chain_alpha1 <= 0.0) throw CLI::ValidationError("halfline", "--alpha or --chain-alpha1 is required");
    action = [&] { return cmd_halfline(half); };
  });

  RotorOptions rotor;
  auto* r = app.add_subcommand("rotor-spectrum", "Exact spectrum of the planar rotor (x) spin on [0, 1]");
  r->add_option("--mu", rotor.mu, "Spin splitting mu >= 0")->required();
  r->add_option("--delta", rotor.delta, "Quasi-periodicity angle")->capture_default_str();
  r->add_option("--family", rotor.family, "Spin boundary family")
      ->check(CLI::IsMember({"identity", "diag", "antidiag"}))
      ->capture_default_str();
  r->add_option("--angle", rotor.angle, "alpha (diag) or beta (antidiag)")->capture_default_str();
  r->add_option("--window", rotor.window, "Energy window e_min e_max")->expected(2);
  r->add_option("--k", rotor.k, "Number of eigenfunctions (whole degenerate blocks are kept)")->capture_default_str();
  r->add_option("--samples", rotor.samples, "Grid points per eigenfunction")->capture_default_str();
  r->add_option("--step", rotor.step, "Energy scan step")->capture_default_str();
  r->callback([&] {
    rotor.threads = g.threads;
    action = [&] { return cmd_rotor_spectrum(rotor); };
  });

  FemOptions fem;
  auto* f = app.add_subcommand("fem", "Finite-element eigenpairs from a JSON config");
  f->add_option("--config", fem.config_path, "Config file")->required();
  f->callback([&] {
    fem.threads = g.threads;
    action = [&] { return cmd_fem(fem); };
  });

  EntangleOptions ent;
  auto* e = app.add_subcommand("entangle", "Entanglement of a sampled state");
  e->add_option("--input", ent.input_path, "State file (CSV or JSON)")->required();
  e->add_option("--index", ent.index, "Eigenfunction index for rotor-spectrum JSON input")->capture_default_str();
  e->add_option("--threshold", ent.threshold, "Separability threshold on the entropy")->capture_default_str();
  e->callback([&] { action = [&] { return cmd_entangle(ent); }; });

  SweepOptions sweep;
  auto* s = app.add_subcommand("sweep", "Entanglement along the compatibility curve");
  s->add_option("--sigma", sweep.sigma, "Spectral gap")->capture_default_str();
  s->add_option("--s-start", sweep.s_start, "First s = alpha1/2 (default arctan sqrt(sigma))");
  s->add_option("--s-end", sweep.s_end, "Last s")->capture_default_str();
  s->add_option("--steps", sweep.steps, "Number of intervals")->capture_default_str();
  s->add_option("--c1", sweep.c1, "Amplitude on level 0")->capture_default_str();
  s->add_option("--c2", sweep.c2, "Amplitude on level 1")->capture_default_str();
  s->add_option("--lambda2", sweep.lambda2, "Lower bulk eigenvalue")->capture_default_str();
  s->add_option("--length", sweep.length, "Quadrature length")->capture_default_str();
  s->add_option("--grid-points", sweep.grid_points, "Quadrature points")->capture_default_str();
  s->callback([&] { action = [&] { return cmd_sweep(sweep); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& ex) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& ex) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& ex) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitInvalidInput;
  }

  try {
    emit(action(), g, out);
  } catch (const InputError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::domain_error& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitInvalidInput;
  } catch (const nlohmann::json::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& ex) {
    err << "numerical failure: " << ex.what() << '\n';
    return kExitNumericalFailure;
  }
  return kExitOk;
}

}  // namespace bext::cli
