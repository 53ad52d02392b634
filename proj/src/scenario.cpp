// Copyright 2026 The Chronos Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chronos/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "chronos/errors.hpp"
#include "overloaded.hpp"

namespace chronos {

using nlohmann::json;
using detail::overloaded;

namespace {

constexpr double kNormTolerance = 1e-9;
constexpr double kDensityMassTolerance = 1e-6;

// ---------------------------------------------------------------- parsing

class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

  Node at(const std::string& key) const {
    require_object();
    if (!j_.contains(key)) throw ParseError(child_path(key), "missing required field");
    return Node(j_.at(key), child_path(key));
  }
  std::optional<Node> find(const std::string& key) const {
    require_object();
    if (!j_.contains(key)) return std::nullopt;
    return Node(j_.at(key), child_path(key));
  }
  Node index(std::size_t i) const {
    return Node(j_.at(i), path_ + "[" + std::to_string(i) + "]");
  }

  double number() const {
    if (!j_.is_number()) throw ParseError(path_, "expected a number");
    return j_.get<double>();
  }
  std::size_t count() const {
    if (!j_.is_number_integer() || j_.get<long long>() < 0) {
      throw ParseError(path_, "expected a nonnegative integer");
    }
    return j_.get<std::size_t>();
  }
  std::string string() const {
    if (!j_.is_string()) throw ParseError(path_, "expected a string");
    return j_.get<std::string>();
  }
  std::size_t size() const {
    if (!j_.is_array()) throw ParseError(path_, "expected an array");
    return j_.size();
  }
  std::vector<double> numbers() const {
    std::vector<double> v(size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = index(i).number();
    return v;
  }
  double number_or(const std::string& key, double fallback) const {
    auto n = find(key);
    return n ? n->number() : fallback;
  }
  void allow_only(std::initializer_list<const char*> keys) const {
    require_object();
    for (const auto& [k, _] : j_.items()) {
      bool ok = false;
      for (const char* allowed : keys) ok = ok || k == allowed;
      if (!ok) throw ParseError(child_path(k), "unknown field");
    }
  }

 private:
  void require_object() const {
    if (!j_.is_object()) throw ParseError(path_, "expected an object");
  }
  std::string child_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& j_;
  std::string path_;
};

CMatrix parse_complex_matrix(const Node& n) {
  n.allow_only({"re", "im"});
  const Node re = n.at("re");
  const auto rows = re.size();
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    const auto row = re.index(i).numbers();
    if (row.size() != rows) throw ParseError(re.index(i).path(), "matrix must be square");
    for (std::size_t j = 0; j < rows; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
  }
  if (auto im = n.find("im")) {
    if (im->size() != rows) throw ParseError(im->path(), "imaginary part shape differs");
    for (std::size_t i = 0; i < rows; ++i) {
      const auto row = im->index(i).numbers();
      if (row.size() != rows) throw ParseError(im->index(i).path(), "imaginary part shape differs");
      for (std::size_t j = 0; j < rows; ++j) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += cplx(0.0, row[j]);
      }
    }
  }
  return m;
}

CVector parse_complex_vector(const Node& n) {
  n.allow_only({"re", "im"});
  const auto re = n.at("re").numbers();
  CVector v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) v[static_cast<Eigen::Index>(i)] = re[i];
  if (auto im = n.find("im")) {
    const auto iv = im->numbers();
    if (iv.size() != re.size()) throw ParseError(im->path(), "imaginary part length differs");
    for (std::size_t i = 0; i < iv.size(); ++i) v[static_cast<Eigen::Index>(i)] += cplx(0.0, iv[i]);
  }
  return v;
}

Potential parse_potential(const Node& n) {
  const std::string kind = n.at("kind").string();
  if (kind == "zero") {
    n.allow_only({"kind"});
    return potential::Zero{};
  }
  if (kind == "harmonic") {
    n.allow_only({"kind", "omega"});
    return potential::Harmonic{n.at("omega").number()};
  }
  if (kind == "square_well") {
    n.allow_only({"kind", "width", "depth"});
    return potential::SquareWell{n.at("width").number(), n.at("depth").number()};
  }
  throw ParseError(n.path() + ".kind", "unknown potential '" + kind + "' (zero, harmonic, square_well)");
}

InitialWavefunction parse_initial(const Node& n) {
  const std::string kind = n.at("kind").string();
  if (kind == "gaussian") {
    n.allow_only({"kind", "x0", "sigma", "p0"});
    return initial::Gaussian{n.at("x0").number(), n.at("sigma").number(), n.number_or("p0", 0.0)};
  }
  if (kind == "eigen_superposition") {
    n.allow_only({"kind", "levels", "coefficients"});
    const Node lv = n.at("levels");
    std::vector<std::size_t> levels(lv.size());
    for (std::size_t i = 0; i < levels.size(); ++i) levels[i] = lv.index(i).count();
    return initial::EigenSuperposition{std::move(levels), n.at("coefficients").numbers()};
  }
  throw ParseError(n.path() + ".kind", "unknown initial state '" + kind + "' (gaussian, eigen_superposition)");
}

SystemSpec parse_system(const Node& n) {
  n.allow_only({"type", "params"});
  const std::string type = n.at("type").string();
  const Node p = n.at("params");
  if (type == "grid") {
    p.allow_only({"x_min", "x_max", "n", "potential", "initial"});
    return GridSystem{p.at("x_min").number(), p.at("x_max").number(), p.at("n").count(),
                      parse_potential(p.at("potential")), parse_initial(p.at("initial"))};
  }
  if (type == "finite_dim") {
    p.allow_only({"hamiltonian", "initial"});
    return FiniteSystem{parse_complex_matrix(p.at("hamiltonian")), parse_complex_vector(p.at("initial"))};
  }
  throw ParseError(n.path() + ".type", "unknown system type '" + type + "' (grid, finite_dim)");
}

double trapezoid_mass(const std::vector<double>& t, const std::vector<double>& f) {
  double m = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) m += 0.5 * (f[i] + f[i - 1]) * (t[i] - t[i - 1]);
  return m;
}

struct ParsedCollapse {
  CollapseDistribution dist;
  std::optional<std::string> csv;
};

ParsedCollapse parse_collapse(const Node& n, double run_t_max, const std::filesystem::path& base_dir) {
  n.allow_only({"variant", "params", "csv_path"});
  const std::string variant = n.at("variant").string();
  const auto params = n.find("params");
  const double t_max = params ? params->number_or("t_max", run_t_max) : run_t_max;

  const auto need_params = [&]() -> const Node& {
    if (!params) throw ParseError(n.path() + ".params", "missing required field");
    return *params;
  };
  const auto build = [&](auto&& make, const std::string& field) {
    try {
      return make();
    } catch (const DomainError& e) {
      throw ValidationError(field, e.what());
    }
  };

  const std::string where = n.path() + ".params";
  if (variant == "delta") {
    const Node& p = need_params();
    p.allow_only({"at", "t_max"});
    return {build([&] { return CollapseDistribution::delta(p.at("at").number(), t_max); }, where), {}};
  }
  if (variant == "uniform") {
    const Node& p = need_params();
    p.allow_only({"a", "b", "t_max"});
    return {build([&] { return CollapseDistribution::uniform(p.at("a").number(), p.at("b").number(), t_max); },
                  where),
            {}};
  }
  if (variant == "exponential") {
    const Node& p = need_params();
    p.allow_only({"rate", "offset", "t_max"});
    return {build([&] {
              return CollapseDistribution::exponential(p.at("rate").number(), t_max, p.number_or("offset", 0.0));
            }, where),
            {}};
  }
  if (variant == "gamma") {
    const Node& p = need_params();
    p.allow_only({"shape", "scale", "offset", "t_max"});
    return {build([&] {
              return CollapseDistribution::gamma(p.at("shape").number(), p.at("scale").number(), t_max,
                                                 p.number_or("offset", 0.0));
            }, where),
            {}};
  }
  if (variant == "truncated_gaussian") {
    const Node& p = need_params();
    p.allow_only({"mean", "sigma", "t_max"});
    return {build([&] {
              return CollapseDistribution::truncated_gaussian(p.at("mean").number(), p.at("sigma").number(), t_max);
            }, where),
            {}};
  }
  if (variant == "tabulated") {
    collapse::Tabulated table;
    std::optional<std::string> csv;
    std::string density_field = where + ".densities";
    if (auto path = n.find("csv_path")) {
      csv = path->string();
      if (params) params->allow_only({"t_max"});
      const std::filesystem::path resolved = base_dir / *csv;
      table = CollapseDistribution::read_table_csv(resolved);
      density_field = n.path() + ".csv_path";
    } else {
      const Node& p = need_params();
      p.allow_only({"t", "densities", "t_max"});
      table.t = p.at("t").numbers();
      table.density = p.at("densities").numbers();
    }
    if (table.t.size() == table.density.size() && table.t.size() >= 2) {
      const double mass = trapezoid_mass(table.t, table.density);
      if (!(std::abs(mass - 1.0) <= kDensityMassTolerance)) {
        throw ValidationError(density_field, "tabulated density integrates to " + std::to_string(mass) +
                                                 ", expected 1");
      }
    }
    return {build([&] { return CollapseDistribution::tabulated(table.t, table.density, t_max); }, density_field),
            csv};
  }
  throw ParseError(n.path() + ".variant",
                   "unknown variant '" + variant +
                       "' (delta, uniform, exponential, gamma, truncated_gaussian, tabulated)");
}

Propagation parse_propagation(const std::string& s, const std::string& path) {
  if (s == "split_operator") return Propagation::SplitOperator;
  if (s == "exact") return Propagation::Exact;
  throw ParseError(path, "unknown method '" + s + "' (split_operator, exact)");
}

const char* propagation_name(Propagation p) {
  return p == Propagation::SplitOperator ? "split_operator" : "exact";
}

// --------------------------------------------------------- serialization

json complex_matrix_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  bool any_imag = false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array(), q = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      r.push_back(m(i, j).real());
      q.push_back(m(i, j).imag());
      any_imag = any_imag || m(i, j).imag() != 0.0;
    }
    re.push_back(r);
    im.push_back(q);
  }
  json out{{"re", re}};
  if (any_imag) out["im"] = im;
  return out;
}

json complex_vector_json(const CVector& v) {
  json re = json::array(), im = json::array();
  bool any_imag = false;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v[i].real());
    im.push_back(v[i].imag());
    any_imag = any_imag || v[i].imag() != 0.0;
  }
  json out{{"re", re}};
  if (any_imag) out["im"] = im;
  return out;
}

json collapse_json(const CollapseDistribution& d, const std::optional<std::string>& csv) {
  json params;
  std::string variant;
  std::visit(overloaded{
                 [&](const collapse::Delta& x) {
                   variant = "delta";
                   params = {{"at", x.at}};
                 },
                 [&](const collapse::Uniform& x) {
                   variant = "uniform";
                   params = {{"a", x.a}, {"b", x.b}};
                 },
                 [&](const collapse::Exponential& x) {
                   variant = "exponential";
                   params = {{"rate", x.rate}, {"offset", x.offset}};
                 },
                 [&](const collapse::Gamma& x) {
                   variant = "gamma";
                   params = {{"shape", x.shape}, {"scale", x.scale}, {"offset", x.offset}};
                 },
                 [&](const collapse::TruncatedGaussian& x) {
                   variant = "truncated_gaussian";
                   params = {{"mean", x.mean}, {"sigma", x.sigma}};
                 },
                 [&](const collapse::Tabulated& x) {
                   variant = "tabulated";
                   if (!csv) params = {{"t", x.t}, {"densities", x.density}};
                   else params = json::object();
                 },
             },
             d.variant());
  params["t_max"] = d.t_max();
  json out{{"variant", variant}, {"params", params}};
  if (csv) out["csv_path"] = *csv;
  return out;
}

// ---------------------------------------------------------- validation

void validate(const Scenario& sc) {
  if (sc.name.empty()) throw ValidationError("name", "must not be empty");
  if (!(sc.t_max > 0.0) || !std::isfinite(sc.t_max)) throw ValidationError("time_grid.t_max", "must be positive");
  if (sc.n_steps < 2) throw ValidationError("time_grid.n_steps", "must be at least 2");
  if (!(sc.constants.hbar > 0.0)) throw ValidationError("constants.hbar", "must be positive");
  if (!(sc.constants.mass > 0.0)) throw ValidationError("constants.mass", "must be positive");
  if (sc.collapse.t_max() > sc.t_max * (1.0 + 1e-12)) {
    throw ValidationError("collapse.params.t_max", "collapse support extends past the time grid");
  }
  if (const auto* g = std::get_if<GridSystem>(&sc.system)) {
    try {
      SpatialGrid(g->x_min, g->x_max, g->n);
    } catch (const Error& e) {
      throw ValidationError("system.params", e.what());
    }
    if (const auto* h = std::get_if<potential::Harmonic>(&g->potential); h && !(h->omega > 0.0)) {
      throw ValidationError("system.params.potential.omega", "must be positive");
    }
    if (const auto* w = std::get_if<potential::SquareWell>(&g->potential);
        w && (!(w->width > 0.0) || !std::isfinite(w->depth))) {
      throw ValidationError("system.params.potential", "square well needs width > 0 and a finite depth");
    }
    if (const auto* gs = std::get_if<initial::Gaussian>(&g->initial); gs && !(gs->sigma > 0.0)) {
      throw ValidationError("system.params.initial.sigma", "must be positive");
    }
    if (const auto* es = std::get_if<initial::EigenSuperposition>(&g->initial)) {
      if (es->levels.empty() || es->levels.size() != es->coefficients.size()) {
        throw ValidationError("system.params.initial", "levels and coefficients must be nonempty and match");
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < es->levels.size(); ++i) {
        if (es->levels[i] >= g->n) throw ValidationError("system.params.initial.levels", "level out of range");
        norm += es->coefficients[i] * es->coefficients[i];
      }
      if (std::abs(norm - 1.0) > kNormTolerance) {
        throw ValidationError("system.params.initial.coefficients",
                              "initial state is not normalized (sum |c|^2 = " + std::to_string(norm) + ")");
      }
    }
  } else {
    const auto& f = std::get<FiniteSystem>(sc.system);
    if (f.hamiltonian.rows() == 0) throw ValidationError("system.params.hamiltonian", "must not be empty");
    if (f.initial.size() != f.hamiltonian.rows()) {
      throw ValidationError("system.params.initial", "length differs from the Hamiltonian dimension");
    }
    if (!(hermiticity_residual(f.hamiltonian) < 1e-12)) {
      throw ValidationError("system.params.hamiltonian", "must be Hermitian");
    }
    if (std::abs(f.initial.squaredNorm() - 1.0) > kNormTolerance) {
      throw ValidationError("system.params.initial", "initial state is not normalized");
    }
    if (sc.propagation == Propagation::SplitOperator) {
      throw ValidationError("time_grid.method", "split_operator needs a grid system");
    }
  }
}

// ------------------------------------------------------------ builtins

struct DistSpec {
  std::string name;
  CollapseDistribution dist;
};

std::vector<DistSpec> standard_distributions(double t_max, double rate, double mean, double sigma,
                                             double delta_at) {
  return {
      {"delta", CollapseDistribution::delta(delta_at, t_max)},
      {"uniform", CollapseDistribution::uniform(0.0, t_max, t_max)},
      {"exponential", CollapseDistribution::exponential(rate, t_max)},
      {"truncated_gaussian", CollapseDistribution::truncated_gaussian(mean, sigma, t_max)},
  };
}

Scenario make(std::string name, SystemSpec system, double t_max, std::size_t n_steps, Propagation prop,
              CollapseDistribution dist) {
  return Scenario{std::move(name), std::move(system), t_max, n_steps, prop, std::move(dist), std::nullopt,
                  Constants{}, {}};
}

std::vector<Scenario> build_builtins() {
  std::vector<Scenario> out;
  const double pi = std::numbers::pi;

  {  // free particle, x0 = 0, p0 = 2: <x>(t) = 2 t
    const GridSystem sys{-20.0, 20.0, 256, potential::Zero{}, initial::Gaussian{0.0, 1.0, 2.0}};
    for (auto& d : standard_distributions(2.0, 1.5, 1.0, 0.4, 1.2345)) {
      Scenario sc = make("free-gaussian/" + d.name, sys, 2.0, 1000, Propagation::SplitOperator, d.dist);
      const double m1 = d.dist.mean();
      sc.references.push_back({"x", 2.0 * m1, 1e-6, "exact", "free motion: <x>(t) = x0 + p0 t / m, averaged over f"});
      out.push_back(std::move(sc));
    }
  }
  {  // coherent state of amplitude 2: <x>(t) = 2 cos t
    const GridSystem sys{-12.0, 12.0, 128, potential::Harmonic{1.0},
                         initial::Gaussian{2.0, 1.0 / std::numbers::sqrt2, 0.0}};
    const double t_max = 2.0 * pi;
    for (auto& d : standard_distributions(t_max, 1.0, pi, 1.0, 1.2345)) {
      Scenario sc = make("harmonic-coherent/" + d.name, sys, t_max, 8000, Propagation::SplitOperator, d.dist);
      if (d.name == "uniform") {
        sc.references.push_back({"x", 0.0, 1e-6, "exact", "2 cos t averaged over one period"});
      } else if (d.name == "exponential") {
        sc.references.push_back({"x", 1.0, 1e-6, "exact", "2 int e^-t cos t dt / (1 - e^-2pi) over [0, 2pi]"});
      } else if (d.name == "delta") {
        sc.references.push_back({"x", 2.0 * std::cos(1.2345), 1e-6, "exact", "2 cos t'"});
      }
      out.push_back(std::move(sc));
    }
  }
  {  // stationary ground state
    const GridSystem sys{-12.0, 12.0, 128, potential::Harmonic{1.0}, initial::EigenSuperposition{{0}, {1.0}}};
    for (auto& d : standard_distributions(10.0, 0.5, 5.0, 2.0, 2.345)) {
      Scenario sc = make("harmonic-ground/" + d.name, sys, 10.0, 1000, Propagation::Exact, d.dist);
      sc.references.push_back({"H", 0.5, 1e-8, "exact", "ground-state energy hbar omega / 2"});
      out.push_back(std::move(sc));
    }
  }
  {  // resonant two-level system, H = (Omega_R / 2) sigma_x, psi0 = |0>: <sigma_z>(t) = cos t
    CVector psi0(2);
    psi0 << 1.0, 0.0;
    const FiniteSystem sys{0.5 * pauli_x(), psi0};
    for (auto& d : standard_distributions(30.0, 1.0, 15.0, 4.0, 1.2345)) {
      Scenario sc = make("rabi-qubit/" + d.name, sys, 30.0, 30000, Propagation::Exact, d.dist);
      if (d.name == "exponential") {
        sc.references.push_back({"sigma_z", 0.499999999999993342843194216348, 1e-6, "oracle",
                                 "int_0^30 e^-t cos t dt / (1 - e^-30), 50-digit quadrature"});
      } else if (d.name == "uniform") {
        sc.references.push_back({"sigma_z", std::sin(30.0) / 30.0, 1e-6, "exact", "sin(30) / 30"});
      } else if (d.name == "delta") {
        sc.references.push_back({"sigma_z", std::cos(1.2345), 1e-6, "exact", "cos t'"});
      }
      out.push_back(std::move(sc));
    }
  }
  {  // (|e,0> + |g,1>) / sqrt 2 with trivial dynamics; basis |e0>, |e1>, |g0>, |g1>
    CVector psi0 = CVector::Zero(4);
    psi0[0] = psi0[3] = 1.0 / std::numbers::sqrt2;
    const FiniteSystem sys{CMatrix::Zero(4, 4), psi0};
    for (auto& d : standard_distributions(10.0, 0.5, 5.0, 2.0, 3.3)) {
      Scenario sc = make("decay-superposition/" + d.name, sys, 10.0, 1000, Propagation::Exact, d.dist);
      sc.references.push_back({"sigma_z", 0.0, 1e-9, "exact", "equal excited and ground weight"});
      sc.references.push_back({"projector:0", 0.5, 1e-9, "exact", "|<e,0|psi>|^2"});
      out.push_back(std::move(sc));
    }
  }
  {  // two lowest levels of a finite square well
    const double c = 1.0 / std::numbers::sqrt2;
    const GridSystem sys{-8.0, 8.0, 256, potential::SquareWell{4.0, 50.0},
                         initial::EigenSuperposition{{0, 1}, {c, c}}};
    for (auto& d : standard_distributions(10.0, 0.5, 5.0, 2.0, 2.345)) {
      out.push_back(make("square-well-superposition/" + d.name, sys, 10.0, 4000, Propagation::Exact, d.dist));
    }
  }
  for (const auto& sc : out) validate(sc);
  return out;
}

std::string default_distribution(const std::string& system) {
  return system == "rabi-qubit" ? "exponential" : "uniform";
}

}  // namespace

const std::vector<Scenario>& builtin_scenarios() {
  static const std::vector<Scenario> all = build_builtins();
  return all;
}

std::vector<std::string> builtin_systems() {
  return {"free-gaussian", "harmonic-coherent", "harmonic-ground", "rabi-qubit", "decay-superposition",
          "square-well-superposition"};
}

Scenario find_builtin(const std::string& name) {
  const std::string full = name.find('/') == std::string::npos ? name + "/" + default_distribution(name) : name;
  for (const auto& sc : builtin_scenarios()) {
    if (sc.name == full) return sc;
  }
  std::string known;
  for (const auto& s : builtin_systems()) known += (known.empty() ? "" : ", ") + s;
  throw ParseError("scenario", "unknown builtin '" + name + "' (systems: " + known +
                                   "; distributions: delta, uniform, exponential, truncated_gaussian)");
}

Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  const Node root(j, "");
  root.allow_only({"name", "system", "time_grid", "collapse", "constants", "references"});

  const Node tg = root.at("time_grid");
  tg.allow_only({"t_max", "n_steps", "method"});
  const double t_max = tg.at("t_max").number();
  const std::size_t n_steps = tg.at("n_steps").count();

  SystemSpec system = parse_system(root.at("system"));
  const bool grid = std::holds_alternative<GridSystem>(system);
  Propagation prop = grid ? Propagation::SplitOperator : Propagation::Exact;
  if (auto m = tg.find("method")) prop = parse_propagation(m->string(), m->path());

  Constants constants;
  if (auto c = root.find("constants")) {
    c->allow_only({"hbar", "mass"});
    constants.hbar = c->number_or("hbar", 1.0);
    constants.mass = c->number_or("mass", 1.0);
  }

  auto collapse = parse_collapse(root.at("collapse"), t_max, base_dir);

  std::vector<Reference> refs;
  if (auto r = root.find("references")) {
    for (std::size_t i = 0; i < r->size(); ++i) {
      const Node e = r->index(i);
      e.allow_only({"observable", "value", "tolerance", "kind", "oracle"});
      Reference ref{e.at("observable").string(), e.at("value").number(), e.at("tolerance").number(),
                    e.at("kind").string(), e.find("oracle") ? e.at("oracle").string() : std::string()};
      if (ref.kind != "exact" && ref.kind != "oracle") {
        throw ValidationError(e.path() + ".kind", "must be 'exact' or 'oracle'");
      }
      if (!(ref.tolerance >= 0.0)) throw ValidationError(e.path() + ".tolerance", "must be nonnegative");
      refs.push_back(std::move(ref));
    }
  }

  Scenario sc{root.at("name").string(), std::move(system), t_max, n_steps, prop,
              std::move(collapse.dist), std::move(collapse.csv), constants, std::move(refs)};
  validate(sc);
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open scenario file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.parent_path());
}

std::string serialize_scenario(const Scenario& sc) {
  json system;
  if (const auto* g = std::get_if<GridSystem>(&sc.system)) {
    json pot = std::visit(overloaded{
                              [](const potential::Zero&) { return json{{"kind", "zero"}}; },
                              [](const potential::Harmonic& h) { return json{{"kind", "harmonic"}, {"omega", h.omega}}; },
                              [](const potential::SquareWell& w) {
                                return json{{"kind", "square_well"}, {"width", w.width}, {"depth", w.depth}};
                              },
                          },
                          g->potential);
    json init = std::visit(overloaded{
                               [](const initial::Gaussian& s) {
                                 return json{{"kind", "gaussian"}, {"x0", s.x0}, {"sigma", s.sigma}, {"p0", s.p0}};
                               },
                               [](const initial::EigenSuperposition& s) {
                                 return json{{"kind", "eigen_superposition"},
                                             {"levels", s.levels},
                                             {"coefficients", s.coefficients}};
                               },
                           },
                           g->initial);
    system = {{"type", "grid"},
              {"params", {{"x_min", g->x_min}, {"x_max", g->x_max}, {"n", g->n}, {"potential", pot}, {"initial", init}}}};
  } else {
    const auto& f = std::get<FiniteSystem>(sc.system);
    system = {{"type", "finite_dim"},
              {"params", {{"hamiltonian", complex_matrix_json(f.hamiltonian)}, {"initial", complex_vector_json(f.initial)}}}};
  }
  json refs = json::array();
  for (const auto& r : sc.references) {
    refs.push_back({{"observable", r.observable},
                    {"value", r.value},
                    {"tolerance", r.tolerance},
                    {"kind", r.kind},
                    {"oracle", r.oracle}});
  }
  const json j{{"name", sc.name},
               {"system", system},
               {"time_grid", {{"t_max", sc.t_max}, {"n_steps", sc.n_steps}, {"method", propagation_name(sc.propagation)}}},
               {"collapse", collapse_json(sc.collapse, sc.collapse_csv)},
               {"constants", {{"hbar", sc.constants.hbar}, {"mass", sc.constants.mass}}},
               {"references", refs}};
  return j.dump(2) + "\n";
}

void save_scenario(const Scenario& sc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << serialize_scenario(sc);
  if (!out) throw Error("failed writing " + path.string());
}

Representation scenario_representation(const Scenario& sc) {
  if (const auto* g = std::get_if<GridSystem>(&sc.system)) return SpatialGrid(g->x_min, g->x_max, g->n);
  return FiniteDim{static_cast<std::size_t>(std::get<FiniteSystem>(sc.system).hamiltonian.rows())};
}

LinearOperator scenario_hamiltonian(const Scenario& sc) {
  if (const auto* g = std::get_if<GridSystem>(&sc.system)) {
    const SpatialGrid grid(g->x_min, g->x_max, g->n);
    const double m = sc.constants.mass;
    const auto v = std::visit(overloaded{
                                  [](const potential::Zero&) -> std::function<double(double)> {
                                    return [](double) { return 0.0; };
                                  },
                                  [m](const potential::Harmonic& h) -> std::function<double(double)> {
                                    return [m, w = h.omega](double x) { return 0.5 * m * w * w * x * x; };
                                  },
                                  [](const potential::SquareWell& s) -> std::function<double(double)> {
                                    return [s](double x) { return std::abs(x) < 0.5 * s.width ? 0.0 : s.depth; };
                                  },
                              },
                              g->potential);
    return build_hamiltonian(grid, v, sc.constants);
  }
  return LinearOperator::dense(std::get<FiniteSystem>(sc.system).hamiltonian, true);
}

StateVector scenario_initial_state(const Scenario& sc) {
  if (const auto* f = std::get_if<FiniteSystem>(&sc.system)) {
    return StateVector(FiniteDim{static_cast<std::size_t>(f->initial.size())}, f->initial);
  }
  const auto& g = std::get<GridSystem>(sc.system);
  const SpatialGrid grid(g.x_min, g.x_max, g.n);
  if (const auto* s = std::get_if<initial::Gaussian>(&g.initial)) {
    return gaussian_packet(grid, s->x0, s->sigma, s->p0, sc.constants.hbar);
  }
  const auto& es = std::get<initial::EigenSuperposition>(g.initial);
  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(scenario_hamiltonian(sc).to_dense());
  if (eig.info() != Eigen::Success) throw NumericalError("Hamiltonian diagonalization failed");
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(g.n));
  for (std::size_t j = 0; j < es.levels.size(); ++j) {
    CVector v = eig.eigenvectors().col(static_cast<Eigen::Index>(es.levels[j]));
    Eigen::Index peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    v *= std::abs(v[peak]) / v[peak];  // fix the phase: largest component real positive
    psi += es.coefficients[j] * v;
  }
  return StateVector(grid, psi / std::sqrt(grid.dx()));
}

TimeGrid scenario_time_grid(const Scenario& sc) { return TimeGrid(sc.t_max, sc.n_steps); }

Trajectory run_trajectory(const Scenario& sc) {
  const LinearOperator h = scenario_hamiltonian(sc);
  const StateVector psi0 = scenario_initial_state(sc);
  const TimeGrid tg = scenario_time_grid(sc);
  return sc.propagation == Propagation::SplitOperator ? evolve_split_operator(psi0, h, tg, sc.constants.hbar)
                                                      : evolve_exact(psi0, h, tg, sc.constants.hbar);
}

Scenario refined(const Scenario& sc, std::size_t factor) {
  if (factor == 0) throw DomainError("refinement factor must be positive");
  Scenario out = sc;
  out.n_steps *= factor;
  return out;
}

Scenario with_t_max(const Scenario& sc, double t_max) {
  if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
  Scenario out = sc;
  const double dt = sc.t_max / static_cast<double>(sc.n_steps);
  out.n_steps = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(t_max / dt)));
  out.t_max = t_max;
  if (sc.collapse.t_max() > t_max) out.collapse = CollapseDistribution(sc.collapse.variant(), t_max);
  if (t_max != sc.t_max) out.references.clear();
  return out;
}

}  // namespace chronos
