#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bext/spectrum.hpp"
#include "output.hpp"

namespace bext::cli {

/// Exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exit code 3.
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CompatOptions {
  std::vector<double> sigma;
  int samples = 100;
  double max_binding = 100.0;
  bool torus = false;
};

struct HalflineOptions {
  std::vector<double> lambda;
  std::vector<double> alpha;
  double chain_alpha1 = 0.0;  ///< > 0 selects the multipartite chain
  int samples = 0;
  double length = 40.0;
};

struct RotorOptions {
  double mu = 0.0;
  double delta = 0.0;
  std::string family = "diag";
  double angle = 0.0;
  std::vector<double> window;  ///< empty or {e_min, e_max}
  int k = 6;
  int samples = 201;
  double step = 0.01;
  int threads = 0;
};

struct FemOptions {
  std::string config_path;
  int threads = 0;
};

struct EntangleOptions {
  std::string input_path;
  int index = 0;
  double threshold = 1e-6;
};

struct SweepOptions {
  double sigma = 1.0;
  double s_start = -1.0;  ///< < 0: arctan sqrt(sigma)
  double s_end = 1.4;
  int steps = 50;
  double c1 = 0.7071067811865476;
  double c2 = 0.7071067811865476;
  double lambda2 = 0.0;
  double length = 40.0;
  int grid_points = 400001;
};

Payload cmd_compat_curve(const CompatOptions& o);
Payload cmd_halfline(const HalflineOptions& o);
Payload cmd_rotor_spectrum(const RotorOptions& o);
Payload cmd_fem(const FemOptions& o);
Payload cmd_entangle(const EntangleOptions& o);
Payload cmd_sweep(const SweepOptions& o);

/// Parses a FEM config document (schema in docs/FORMATS.md) and runs it.
Payload run_fem_config(const json& config, int threads = 0);

/// Reads a sampled state from CSV or JSON text (schema in docs/FORMATS.md).
/// JSON rotor-spectrum payloads are accepted; `index` selects the
/// eigenfunction.
HybridState parse_state(const std::string& text, int index = 0);

}  // namespace bext::cli
