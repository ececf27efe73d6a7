#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bext/boundary.hpp"
#include "bext/entanglement.hpp"
#include "bext/fem.hpp"
#include "bext/halfline.hpp"
#include "bext/rotor.hpp"

namespace bext::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json state_json(const HybridState& s) {
  json comps = json::array();
  for (int a = 0; a < s.n_levels(); ++a) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < s.values.rows(); ++i) {
      re.push_back(s.values(i, a).real());
      im.push_back(s.values(i, a).imag());
    }
    comps.push_back(json{{"level", a}, {"re", re}, {"im", im}});
  }
  return json{{"x", real_array(s.grid)}, {"components", comps}};
}

SpinFamily parse_family(const std::string& name) {
  if (name == "identity") return SpinFamily::Identity;
  if (name == "diag" || name == "diagonal") return SpinFamily::Diagonal;
  if (name == "antidiag" || name == "anti-diagonal") return SpinFamily::AntiDiagonal;
  throw InputError("unknown spin family '" + name + "' (identity, diag, antidiag)");
}

std::string structure_name(const TensorStructure& t) {
  if (std::holds_alternative<ProductWithIdentity>(t)) return "product_with_identity";
  if (std::holds_alternative<Product>(t)) return "product";
  return "non_product";
}

json verdict_json(const SpectralResult& r) {
  DynamicsVerdict v;
  try {
    v = dynamics_separability_verdict(r);
  } catch (const std::invalid_argument& e) {
    return json{{"status", "undetermined"}, {"detail", e.what()}};
  }
  if (std::holds_alternative<Separable>(v)) return json{{"status", "separable"}};
  const auto& w = std::get<NonSeparable>(v);
  return json{{"status", "non_separable"},
              {"kind", w.kind == NonSeparable::Kind::Entangled ? "entangled" : "profile_mismatch"},
              {"eigenfunction", w.eigenfunction},
              {"partner", w.partner},
              {"value", w.value},
              {"detail", w.detail}};
}

double max_imag(const HybridState& s) { return s.values.size() == 0 ? 0.0 : s.values.imag().cwiseAbs().maxCoeff(); }

}  // namespace

Payload cmd_compat_curve(const CompatOptions& o) {
  if (o.sigma.empty()) throw InputError("--sigma needs at least one value");
  Payload p;
  p.command = "compat-curve";
  p.default_format = Format::Csv;
  p.config = {{"sigma", o.sigma}, {"samples", o.samples}, {"max_binding", o.max_binding}, {"torus", o.torus}};
  p.table.columns = {"sigma", "image", "alpha1", "alpha2", "residual"};
  json curves = json::array();
  for (double sigma : o.sigma) {
    if (!(sigma > 0.0)) throw InputError("sigma must be positive, got " + format_double(sigma));
    const CompatCurve c = compat_curve(sigma, o.samples, o.max_binding);
    json a1 = json::array(), a2 = json::array(), res = json::array(), img = json::array();
    const int n_images = o.torus ? 4 : 1;
    for (int image = 0; image < n_images; ++image) {
      for (const CompatPoint& pt : c.points) {
        const CompatPoint q = torus_images(pt)[static_cast<std::size_t>(image)];
        const double r = compat_residual(sigma, pt);
        p.table.rows.push_back({sigma, static_cast<long long>(image), q.alpha1, q.alpha2, r});
        a1.push_back(q.alpha1);
        a2.push_back(q.alpha2);
        res.push_back(r);
        img.push_back(image);
      }
    }
    curves.push_back(json{{"sigma", sigma}, {"image", img}, {"alpha1", a1}, {"alpha2", a2}, {"residual", res}});
  }
  p.result = {{"curves", curves}};
  return p;
}

Payload cmd_halfline(const HalflineOptions& o) {
  Payload p;
  p.command = "halfline";
  p.config = {{"lambda", o.lambda}, {"alpha", o.alpha}, {"chain_alpha1", o.chain_alpha1},
              {"samples", o.samples}, {"length", o.length}};
  if (o.lambda.empty()) throw InputError("--lambda needs at least one value");
  if (o.samples == 1 || o.samples < 0) throw InputError("--samples must be 0 or >= 2");

  std::vector<double> lambdas = o.lambda;
  std::vector<double> alphas;
  if (o.chain_alpha1 > 0.0) {
    alphas = multipartite_curve(lambdas, o.chain_alpha1);
  } else {
    if (o.alpha.size() != lambdas.size() && o.alpha.size() != 1) {
      throw InputError("--alpha needs one value or as many values as --lambda");
    }
    for (std::size_t i = 0; i < lambdas.size(); ++i) alphas.push_back(o.alpha.size() == 1 ? o.alpha[0] : o.alpha[i]);
  }

  p.table.columns = {"level", "lambda", "alpha", "bound", "energy", "decay_rate"};
  json levels = json::array();
  const std::vector<double> grid = o.samples >= 2 ? uniform_grid(o.length, o.samples) : std::vector<double>{};
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto e = bound_state_energy(lambdas[i], alphas[i]);
    json lv{{"level", i}, {"lambda", lambdas[i]}, {"alpha", alphas[i]}, {"bound", e.has_value()}};
    if (e) {
      const double kappa = std::tan(alphas[i] / 2.0);
      lv["energy"] = *e;
      lv["decay_rate"] = kappa;
      if (!grid.empty()) {
        json psi = json::array();
        for (double x : grid) psi.push_back(std::sqrt(2.0 * kappa) * std::exp(-kappa * x));
        lv["state"] = json{{"x", real_array(grid)}, {"psi", psi}};
      }
      p.table.rows.push_back({static_cast<long long>(i), lambdas[i], alphas[i], std::string("true"), *e, kappa});
    } else {
      lv["energy"] = nullptr;
      lv["decay_rate"] = nullptr;
      p.table.rows.push_back({static_cast<long long>(i), lambdas[i], alphas[i], std::string("false"), {}, {}});
    }
    levels.push_back(lv);
  }
  p.result = {{"levels", levels}};
  if (o.chain_alpha1 > 0.0) p.result["common_energy"] = levels.front()["energy"];
  return p;
}

Payload cmd_rotor_spectrum(const RotorOptions& o) {
  Payload p;
  p.command = "rotor-spectrum";
  p.config = {{"mu", o.mu}, {"delta", o.delta}, {"family", o.family}, {"angle", o.angle}, {"window", o.window},
              {"k", o.k}, {"samples", o.samples}, {"step", o.step}};
  if (o.k < 1) throw InputError("--k must be positive");
  if (o.samples < 2) throw InputError("--samples must be >= 2");
  if (!o.window.empty() && o.window.size() != 2) throw InputError("--window takes two values");

  const BoundaryUnitary u = rotor_boundary(o.delta, parse_family(o.family), o.angle);
  const MatchingProblem problem = MatchingProblem::rotor(o.mu, u);
  ScanOptions scan;
  scan.step = o.step;
  scan.threads = o.threads;
  const auto count = static_cast<std::size_t>(o.k);

  SpectralResult roots;
  if (o.window.empty()) {
    roots = find_lowest_eigenvalues(problem, count, scan);
  } else {
    roots = find_eigenvalues(problem, o.window[0], o.window[1], 0, scan).lowest_blocks(count);
    if (roots.eigenvalues.empty()) throw NumericalFailure("no eigenvalues found in the requested window");
  }
  SpectralResult r = roots;
  for (std::size_t b = 0; b < r.eigenvalues.size(); ++b) {
    for (auto& mode : assemble_eigenspace(r.eigenvalues[b], problem, o.samples, r.multiplicities[b], scan.nullity_tol)) {
      r.eigenfunctions.push_back(std::move(mode.state));
      r.block_of.push_back(b);
    }
  }
  const SpectralResult canon = canonicalize_degenerate_blocks(r);

  const ExtensionSpec spec(Geometry::Interval, 2, {o.mu, -o.mu}, u);
  json fns = json::array();
  p.table.columns = {"index", "energy", "multiplicity", "entropy", "separable", "max_imag"};
  for (std::size_t j = 0; j < canon.eigenfunctions.size(); ++j) {
    const HybridState& f = canon.eigenfunctions[j];
    const std::size_t b = canon.block_of[j];
    const EntanglementReport rep = entanglement_entropy(f);
    json fj = state_json(f);
    fj["index"] = j;
    fj["energy"] = canon.eigenvalues[b];
    fj["block"] = b;
    fj["entropy"] = rep.entropy;
    fj["separable"] = rep.separable;
    fj["max_imag"] = max_imag(f);
    fns.push_back(fj);
    p.table.rows.push_back({static_cast<long long>(j), canon.eigenvalues[b],
                            static_cast<long long>(canon.multiplicities[b]), rep.entropy,
                            std::string(rep.separable ? "true" : "false"), max_imag(f)});
  }
  p.result = {{"bulk_eigenvalues", {o.mu, -o.mu}},
              {"boundary_unitary", complex_matrix(u.matrix())},
              {"tensor_structure", structure_name(classify_tensor_structure(u, 2, 2))},
              {"predicted_separable", predict_separable_dynamics(spec)},
              {"eigenvalues", real_array(canon.eigenvalues)},
              {"multiplicities", canon.multiplicities},
              {"eigenfunctions", fns},
              {"verdict", verdict_json(canon)}};
  return p;
}

namespace {

BoundaryUnitary parse_boundary(const json& b, Geometry geometry, int n_levels) {
  const std::string type = b.at("type").get<std::string>();
  const int dim = boundary_points(geometry) * n_levels;
  if (type == "dirichlet") return BoundaryUnitary(-CMatrix::Identity(dim, dim));
  if (type == "neumann") return BoundaryUnitary(CMatrix::Identity(dim, dim));
  if (type == "phases") return make_diagonal(b.at("phases").get<std::vector<double>>());
  if (type == "halfline") return bound_state_boundary(b.at("alphas").get<std::vector<double>>());
  if (type == "quasi_periodic") {
    return tensor_boundary(make_quasi_periodic(b.at("delta").get<double>()), CMatrix::Identity(n_levels, n_levels));
  }
  if (type == "rotor") {
    return rotor_boundary(b.at("delta").get<double>(), parse_family(b.value("family", std::string("diag"))),
                          b.value("angle", 0.0));
  }
  if (type == "matrix") {
    const auto re = b.at("re").get<std::vector<std::vector<double>>>();
    const auto im = b.contains("im") ? b.at("im").get<std::vector<std::vector<double>>>()
                                     : std::vector<std::vector<double>>(re.size(), std::vector<double>(re.size()));
    const auto n = static_cast<Eigen::Index>(re.size());
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& ri = re[static_cast<std::size_t>(i)];
      const auto& ii = im.at(static_cast<std::size_t>(i));
      if (static_cast<Eigen::Index>(ri.size()) != n || static_cast<Eigen::Index>(ii.size()) != n) {
        throw InputError("boundary matrix must be square");
      }
      for (Eigen::Index j = 0; j < n; ++j) {
        m(i, j) = cplx(ri[static_cast<std::size_t>(j)], ii[static_cast<std::size_t>(j)]);
      }
    }
    return BoundaryUnitary(m);
  }
  throw InputError("unknown boundary type '" + type + "'");
}

std::vector<double> reference_eigenvalues(const json& ref, const json& cfg, Geometry geometry,
                                          const std::vector<double>& bulk, const BoundaryUnitary& u, int k,
                                          bool has_potential, int threads) {
  if (ref.is_array()) return ref.get<std::vector<double>>();
  const std::string kind = ref.get<std::string>();
  std::vector<double> out;
  if (kind == "matching") {
    if (geometry != Geometry::Interval || has_potential) {
      throw InputError("reference 'matching' needs an interval without potential");
    }
    ScanOptions scan;
    scan.threads = threads;
    out = find_lowest_eigenvalues(MatchingProblem(bulk, u), static_cast<std::size_t>(k), scan).expanded_eigenvalues();
  } else if (kind == "analytic") {
    if (geometry != Geometry::HalfLine || has_potential || cfg.at("boundary").at("type") != "halfline") {
      throw InputError("reference 'analytic' needs a half-line with a 'halfline' boundary and no potential");
    }
    const auto alphas = cfg.at("boundary").at("alphas").get<std::vector<double>>();
    for (std::size_t a = 0; a < bulk.size(); ++a) {
      if (const auto e = bound_state_energy(bulk[a], alphas.at(a))) out.push_back(*e);
    }
    std::sort(out.begin(), out.end());
  } else {
    throw InputError("unknown reference '" + kind + "'");
  }
  if (out.size() < static_cast<std::size_t>(k)) throw InputError("reference has fewer than k eigenvalues");
  out.resize(static_cast<std::size_t>(k));
  return out;
}

}  // namespace

Payload run_fem_config(const json& cfg, int threads) {
  Payload p;
  p.command = "fem";
  p.config = cfg;

  const std::string geo = cfg.value("geometry", std::string("interval"));
  if (geo != "interval" && geo != "halfline") throw InputError("geometry must be 'interval' or 'halfline'");
  const Geometry geometry = geo == "interval" ? Geometry::Interval : Geometry::HalfLine;
  const double length = cfg.value("length", geometry == Geometry::Interval ? 1.0 : 40.0);
  const int n = cfg.value("n_elements", 100);
  const int order = cfg.value("element_order", 1);
  const int k = cfg.value("k", 6);
  std::vector<double> bulk;
  if (cfg.contains("mu")) {
    const double mu = cfg.at("mu").get<double>();
    bulk = {mu, -mu};
  } else {
    bulk = cfg.at("bulk_eigenvalues").get<std::vector<double>>();
  }
  const BoundaryUnitary u = parse_boundary(cfg.at("boundary"), geometry, static_cast<int>(bulk.size()));
  FemProblem problem = make_fem_problem(geometry, bulk, u, n, length, order);
  const bool has_potential = cfg.contains("potential");
  if (has_potential) {
    const auto coeffs = cfg.at("potential").get<std::vector<double>>();
    problem.potential = [coeffs](double x) {
      double v = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
      return v;
    };
  }

  const FemEigenpairs pairs = solve_lowest(problem, k);
  const SpectralResult clusters = to_spectral_result(pairs);
  const FemErrorModel model = calibrate_error_model();
  std::vector<double> reference;
  if (cfg.contains("reference")) {
    reference = reference_eigenvalues(cfg.at("reference"), cfg, geometry, bulk, u, k, has_potential, threads);
  }

  json residuals = json::array();
  json bounds = json::array();
  for (std::size_t j = 0; j < pairs.eigenvalues.size(); ++j) {
    residuals.push_back(boundary_condition_residual(problem, u, pairs, j));
    const double e = reference.empty() ? pairs.eigenvalues[j] : reference[j];
    bounds.push_back(model.bound(problem.h(), e, bulk));
  }

  p.table.columns = {"n_elements", "h", "index", "eigenvalue", "reference", "error", "bound"};
  for (std::size_t j = 0; j < pairs.eigenvalues.size(); ++j) {
    std::vector<Cell> row{static_cast<long long>(n), problem.h(), static_cast<long long>(j), pairs.eigenvalues[j]};
    if (reference.empty()) {
      row.insert(row.end(), {Cell{}, Cell{}});
    } else {
      row.insert(row.end(), {reference[j], std::abs(pairs.eigenvalues[j] - reference[j])});
    }
    row.push_back(bounds[j].get<double>());
    p.table.rows.push_back(row);
  }

  p.result = {{"problem",
               {{"geometry", geo},
                {"length", length},
                {"n_elements", n},
                {"element_order", order},
                {"h", problem.h()},
                {"bulk_eigenvalues", real_array(bulk)},
                {"boundary_unitary", complex_matrix(u.matrix())},
                {"dirichlet_rank", problem.robin.dirichlet_rank()}}},
              {"eigenvalues", real_array(pairs.eigenvalues)},
              {"clusters", {{"eigenvalues", real_array(clusters.eigenvalues)}, {"multiplicities", clusters.multiplicities}}},
              {"boundary_residuals", residuals},
              {"error_model", {{"c", model.c}, {"bounds", bounds}}}};
  if (!reference.empty()) {
    json errs = json::array();
    for (std::size_t j = 0; j < reference.size(); ++j) errs.push_back(std::abs(pairs.eigenvalues[j] - reference[j]));
    p.result["reference"] = real_array(reference);
    p.result["errors"] = errs;
  }
  if (cfg.value("include_vectors", true)) {
    json vecs = json::array();
    for (const CMatrix& v : pairs.eigenvectors) vecs.push_back(state_json(HybridState{pairs.mesh, v}));
    p.result["eigenvectors"] = vecs;
  }
  if (cfg.contains("refinements")) {
    if (reference.empty()) throw InputError("refinements need a reference");
    const ConvergenceTable t = convergence_study(problem, k, cfg.at("refinements").get<std::vector<int>>(), reference);
    json rows = json::array();
    for (const ConvergenceRow& row : t.rows) {
      rows.push_back({{"n_elements", row.n_elements},
                      {"h", row.h},
                      {"eigenvalues", real_array(row.eigenvalues)},
                      {"errors", real_array(row.errors)}});
      for (std::size_t j = 0; j < row.eigenvalues.size(); ++j) {
        p.table.rows.push_back({static_cast<long long>(row.n_elements), row.h, static_cast<long long>(j),
                                row.eigenvalues[j], t.reference[j], row.errors[j],
                                model.bound(row.h, t.reference[j], bulk)});
      }
    }
    p.result["convergence"] = {{"rows", rows}, {"observed_order", t.observed_order}};
  }
  return p;
}

Payload cmd_fem(const FemOptions& o) {
  json cfg;
  try {
    cfg = json::parse(read_file(o.config_path));
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid FEM config: ") + e.what());
  }
  Payload p = run_fem_config(cfg, o.threads);
  p.config = {{"config_path", o.config_path}, {"config", cfg}};
  return p;
}

namespace {

HybridState state_from_json(const json& s) {
  HybridState out;
  out.grid = s.at("x").get<std::vector<double>>();
  const json& comps = s.at("components");
  if (comps.empty()) throw InputError("state needs at least one component");
  const auto m = static_cast<Eigen::Index>(out.grid.size());
  out.values = CMatrix::Zero(m, static_cast<Eigen::Index>(comps.size()));
  for (std::size_t a = 0; a < comps.size(); ++a) {
    const auto re = comps[a].at("re").get<std::vector<double>>();
    const auto im = comps[a].contains("im") ? comps[a].at("im").get<std::vector<double>>() : std::vector<double>(re.size());
    if (static_cast<Eigen::Index>(re.size()) != m || static_cast<Eigen::Index>(im.size()) != m) {
      throw InputError("component length does not match the grid");
    }
    for (Eigen::Index i = 0; i < m; ++i) {
      out.values(i, static_cast<Eigen::Index>(a)) = cplx(re[static_cast<std::size_t>(i)], im[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

std::vector<double> split_numbers(const std::string& line) {
  std::vector<double> v;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(field, &used));
      if (field.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw InputError("not a number: '" + field + "'");
    }
  }
  return v;
}

HybridState state_from_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  bool header_seen = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    rows.push_back(split_numbers(line));
  }
  if (rows.empty()) throw InputError("state file has no data rows");
  const std::size_t width = rows[0].size();
  if (width < 3 || width % 2 == 0) throw InputError("state CSV needs columns x, re_0, im_0, re_1, im_1, ...");
  HybridState out;
  out.values = CMatrix(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>((width - 1) / 2));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width) throw InputError("ragged state CSV at data row " + std::to_string(i + 1));
    out.grid.push_back(rows[i][0]);
    for (std::size_t a = 0; a < (width - 1) / 2; ++a) {
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) = cplx(rows[i][1 + 2 * a], rows[i][2 + 2 * a]);
    }
  }
  return out;
}

}  // namespace

HybridState parse_state(const std::string& text, int index) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw InputError("empty state file");
  HybridState s;
  if (text[first] == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(std::string("invalid state JSON: ") + e.what());
    }
    const json* node = &doc;
    if (doc.contains("result")) node = &doc.at("result");
    if (node->contains("eigenfunctions")) {
      const json& fns = node->at("eigenfunctions");
      if (index < 0 || static_cast<std::size_t>(index) >= fns.size()) throw InputError("eigenfunction index out of range");
      s = state_from_json(fns.at(static_cast<std::size_t>(index)));
    } else {
      s = state_from_json(*node);
    }
  } else {
    s = state_from_csv(text);
  }
  if (s.grid.size() < 2) throw InputError("state needs at least two grid points");
  for (std::size_t i = 1; i < s.grid.size(); ++i) {
    if (!(s.grid[i] > s.grid[i - 1])) throw InputError("state grid must be strictly ascending");
  }
  return s;
}

Payload cmd_entangle(const EntangleOptions& o) {
  Payload p;
  p.command = "entangle";
  p.config = {{"input", o.input_path}, {"index", o.index}, {"threshold", o.threshold}};
  const HybridState s = parse_state(read_file(o.input_path), o.index);
  const EntanglementReport rep = entanglement_entropy(s, o.threshold);
  p.result = {{"n_levels", s.n_levels()},
              {"n_points", s.size()},
              {"norm", l2_norm(s)},
              {"reduced_density", complex_matrix(rep.reduced_density)},
              {"schmidt_coefficients", real_array(rep.schmidt_coefficients)},
              {"entropy", rep.entropy},
              {"separable", rep.separable},
              {"threshold", o.threshold}};
  p.table.columns = {"k", "schmidt_coefficient", "entropy", "separable"};
  for (std::size_t j = 0; j < rep.schmidt_coefficients.size(); ++j) {
    p.table.rows.push_back({static_cast<long long>(j), rep.schmidt_coefficients[j], rep.entropy,
                            std::string(rep.separable ? "true" : "false")});
  }
  return p;
}

Payload cmd_sweep(const SweepOptions& o) {
  Payload p;
  p.command = "sweep";
  p.default_format = Format::Csv;
  const double s_start = o.s_start < 0.0 ? std::atan(std::sqrt(o.sigma)) : o.s_start;
  p.config = {{"sigma", o.sigma}, {"s_start", s_start}, {"s_end", o.s_end}, {"steps", o.steps}, {"c1", o.c1},
              {"c2", o.c2}, {"lambda2", o.lambda2}, {"length", o.length}, {"grid_points", o.grid_points}};
  if (!(o.sigma > 0.0)) throw InputError("sigma must be positive");
  if (o.steps < 0) throw InputError("--steps must be >= 0");
  if (o.grid_points < 2) throw InputError("--grid-points must be >= 2");
  if (!(o.length > 0.0)) throw InputError("--length must be positive");

  const std::vector<double> grid = uniform_grid(o.length, o.grid_points);
  p.table.columns = {"s", "energy", "entropy_quadrature", "entropy_closed_form", "status"};
  json rows = json::array();
  for (int i = 0; i <= o.steps; ++i) {
    const double s = o.steps == 0 ? s_start : s_start + (o.s_end - s_start) * i / o.steps;
    BoundStateSolution st;
    try {
      st = sweep_state(s, o.sigma, o.c1, o.c2, o.lambda2);
    } catch (const std::domain_error& e) {
      p.table.rows.push_back({s, {}, {}, {}, std::string(e.what())});
      rows.push_back({{"s", s}, {"energy", nullptr}, {"entropy_quadrature", nullptr},
                      {"entropy_closed_form", nullptr}, {"status", e.what()}});
      continue;
    }
    const double closed = entanglement_from_density(st.reduced_density(2)).entropy;
    const double quad = entanglement_entropy(st.sample(grid, 2)).entropy;
    p.table.rows.push_back({s, st.energy, quad, closed, std::string("ok")});
    rows.push_back({{"s", s}, {"energy", st.energy}, {"entropy_quadrature", quad},
                    {"entropy_closed_form", closed}, {"status", "ok"}});
  }
  p.result = {{"rows", rows}};
  return p;
}

}  // namespace bext::cli
