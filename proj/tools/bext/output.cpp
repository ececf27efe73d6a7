#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace bext::cli {

json conventions() {
  json c;
  c["units"] = "hbar = 1, 2m = 1: kinetic term -d^2/dx^2";
  c["angles"] = "radians";
  c["half_angle"] = "a level with boundary angle alpha has Robin slope tan(alpha/2); sweep parameter s = alpha1/2";
  c["bound_state_sign"] =
      "level binds iff tan(alpha/2) > 0, decay rate tan(alpha/2), E = lambda - tan^2(alpha/2); "
      "realized by the boundary unitary exp(-i alpha)";
  c["boundary_condition"] = "phi - i phi_dot = U (phi + i phi_dot), phi_dot the outward normal derivative";
  c["ordering"] = "spin-major: boundary index = point + n_points * level; (x) U_A with U_B is kron(U_B, U_A)";
  c["levels"] = "rotor: level 0 = spin up (+mu), level 1 = spin down (-mu)";
  c["entropy"] = "von Neumann entropy of the level reduced density, natural log";
  return c;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

json meta(const Payload& p) {
  json m;
  m["version"] = kVersion;
  m["command"] = p.command;
  m["conventions"] = conventions();
  m["config"] = p.config;
  return m;
}

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

}  // namespace

void write_json(std::ostream& out, const Payload& p) {
  json doc;
  doc["meta"] = meta(p);
  doc["result"] = p.result;
  out << doc.dump(2) << '\n';
}

void write_csv(std::ostream& out, const Payload& p) {
  out << "# bext " << kVersion << '\n';
  out << "# command: " << p.command << '\n';
  const json conv = conventions();
  for (const auto& [key, value] : conv.items()) out << "# " << key << ": " << value.get<std::string>() << '\n';
  out << "# config: " << p.config.dump() << '\n';
  for (std::size_t i = 0; i < p.table.columns.size(); ++i) out << (i ? "," : "") << p.table.columns[i];
  out << '\n';
  for (const auto& row : p.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

json real_array(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

json complex_matrix(const CMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rr = json::array();
    json ri = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return json{{"re", re}, {"im", im}};
}

}  // namespace bext::cli
