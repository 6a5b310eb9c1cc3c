// Copyright 2026 The scatlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scatlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "scatlab/analysis.hpp"
#include "scatlab/csv.hpp"
#include "scatlab/error.hpp"
#include "scatlab/kernel.hpp"
#include "scatlab/parallel.hpp"
#include "scatlab/potential.hpp"
#include "scatlab/radial.hpp"
#include "scatlab/specfun.hpp"

namespace scatlab::cli {

namespace fs = std::filesystem;

namespace {

// Ordered key/value lines of summary.txt.
class Summary {
 public:
  void add(const std::string& key, const std::string& value) { lines_ += key + ": " + value + "\n"; }
  void add(const std::string& key, double value) { add(key, format_double(value)); }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }
  void flag(const std::string& key, bool ok) { add(key, ok ? "yes" : "no"); }
  const std::string& str() const { return lines_; }

 private:
  std::string lines_;
};

Potential load(const std::string& path) {
  Potential q = load_potential_file(path);
  if (q.id().empty()) q.set_id(fs::path(path).stem().string());
  return q;
}

Potential load_or_zero(const std::string& path, double a) {
  if (!path.empty()) return load(path);
  Potential z = Potential::zero(a);
  z.set_id("zero");
  return z;
}

KernelOptions kernel_options(const ExperimentConfig& cfg) {
  KernelOptions ko;
  if (cfg.grid_eta) ko.n_eta = *cfg.grid_eta;
  if (cfg.grid_xi) ko.n_xi = *cfg.grid_xi;
  if (cfg.tol) ko.convergence_tol = *cfg.tol;
  return ko;
}

RadialOptions radial_options(const ExperimentConfig& cfg) {
  RadialOptions ro;
  if (cfg.tol) ro.rtol = *cfg.tol;
  return ro;
}

RunOutput finish(std::vector<Artifact> artifacts, const Summary& s) {
  RunOutput out;
  out.summary = s.str();
  out.artifacts = std::move(artifacts);
  out.artifacts.push_back({"summary.txt", out.summary});
  return out;
}

RunOutput run_phase_shifts(const ExperimentConfig& cfg) {
  const Potential q = load(cfg.potential);
  const int lmax = cfg.lmax.value_or(30);
  const PhaseShiftTable table = phase_shift_table(q, lmax, radial_options(cfg), cfg.threads);
  double worst = 0.0;
  for (const auto& e : table.entries()) worst = std::max(worst, std::abs(e.delta));
  Summary s;
  s.add("command", "phase-shifts");
  s.add("potential", q.id());
  s.add("lmax", lmax);
  s.add("max_abs_delta", worst);
  return finish({{"phase_shifts.csv", table.to_csv()}}, s);
}

RunOutput run_kernel(const ExperimentConfig& cfg) {
  const Potential q = load(cfg.potential);
  const KernelGrid kg = solve_kernel(q, kernel_options(cfg));
  const double a = q.support();

  CsvTable diag({"r", "K_rr", "g", "q_recovered", "q"});
  diag.add_meta("potential", q.id());
  double diag_err = 0.0;
  for (int k = 0; k <= 90; ++k) {
    const double r = a * (0.1 + 0.01 * k);
    const double K = kernel_K(kg, r, r);
    const double g = kg.goursat().g(r);
    if (g != 0.0) diag_err = std::max(diag_err, std::abs(K - g) / std::abs(g));
    else diag_err = std::max(diag_err, std::abs(K));
    diag.add_row({r, K, g, recover_potential(kg, r), q(r)});
  }
  const MajorantCheck mc = majorant_check(kg);
  const ContractionEstimate ce = contraction_estimate(kg);
  const FixedPointResidual fr = fixed_point_residual(kg);
  const IteratedBoundCheck ib = iterated_bound_check(kg.goursat());
  const WeightedNorm wn = weighted_l1_norm(kg, a);
  const int stride = std::max(1, kg.n_eta() / 100);

  Summary s;
  s.add("command", "kernel");
  s.add("potential", q.id());
  s.add("xi_min", kg.xi_min());
  s.add("xi_max", kg.xi_max());
  s.add("eta_max", kg.eta_max());
  s.add("step", kg.step());
  s.add("gamma", kg.gamma);
  s.add("refinement_sup_change", kg.refinement.sup_change);
  s.add("refinement_max_pointwise_change", kg.refinement.max_pointwise_change);
  s.flag("refinement_converged", kg.refinement.converged);
  s.add("edge_max", kg.edge_max);
  s.add("diagonal_max_rel_err", diag_err);
  s.add("contraction_bound", ce.bound);
  s.add("contraction_max_ratio", ce.max_ratio);
  s.add("fixed_point_residual_weighted", fr.weighted);
  s.add("fixed_point_residual_unweighted", fr.unweighted);
  s.add("majorant_worst_ratio", mc.worst_ratio);
  for (std::size_t n = 0; n < ib.worst_ratio.size(); ++n)
    s.add(fmt::format("iterated_bound_ratio_{}", n + 1), ib.worst_ratio[n]);
  s.add("weighted_l1_norm_at_a", wn.value);
  s.add("weighted_l1_tail_bound", wn.tail_bound);
  s.add("csv_stride", stride);
  return finish({{"kernel.csv", kg.to_csv(stride)}, {"kernel_diagonal.csv", diag.str()}}, s);
}

RunOutput run_transform_check(const ExperimentConfig& cfg) {
  const Potential q = load(cfg.potential);
  const KernelGrid kg = solve_kernel(q, kernel_options(cfg));
  const double a = q.support();
  const std::vector<double> radii = {0.25 * a, 0.5 * a, a};
  std::vector<int> ells;
  for (int l = 0; l <= cfg.lmax.value_or(10); ++l) ells.push_back(l);
  if (std::find(ells.begin(), ells.end(), 40) == ells.end()) ells.push_back(40);

  struct Row {
    int ell;
    double r, transform, regular, rel;
  };
  std::vector<std::vector<Row>> rows(ells.size());
  parallel_for(static_cast<int>(ells.size()), cfg.threads, [&](int k) {
    RadialOptions ro = radial_options(cfg);
    ro.extra_radii = radii;
    const RadialSolution sol = regular_solution(q, ells[k], ro);
    for (double r : radii) {
      std::size_t i = 0;
      while (i + 1 < sol.grid.size() && std::abs(sol.grid[i] - r) > 1e-12 * a) ++i;
      const double phi = sol.scaled_phi(i).value();
      const double tr = apply_transform(kg, ells[k], r);
      rows[k].push_back({ells[k], r, tr, phi, std::abs(tr - phi) / std::abs(phi)});
    }
  });
  CsvTable csv({"ell", "r", "transform", "regular", "rel_err"});
  csv.add_meta("potential", q.id());
  double worst = 0.0;
  for (const auto& block : rows)
    for (const Row& r : block) {
      csv.add_row({static_cast<double>(r.ell), r.r, r.transform, r.regular, r.rel});
      worst = std::max(worst, r.rel);
    }
  Summary s;
  s.add("command", "transform-check");
  s.add("potential", q.id());
  s.add("max_rel_err", worst);
  s.flag("max rel err <= 1e-4", worst <= 1e-4);
  return finish({{"transform_check.csv", csv.str()}}, s);
}

DifferencePotential pair(const ExperimentConfig& cfg) {
  const Potential q1 = load(cfg.q1);
  return DifferencePotential(q1, load_or_zero(cfg.q2, q1.support()));
}

RunOutput run_orthogonality(const ExperimentConfig& cfg) {
  const DifferencePotential p = pair(cfg);
  const int lmax = cfg.lmax.value_or(10);
  std::vector<OrthogonalityValue> vals(lmax + 1);
  parallel_for(lmax + 1, cfg.threads, [&](int l) { vals[l] = h_ell(p, l, radial_options(cfg)); });
  CsvTable csv({"ell", "h", "boundary", "lagrange_diff", "error", "h1"});
  csv.add_meta("q1", p.q1().id());
  csv.add_meta("q2", p.q2().id());
  double worst = 0.0;
  for (const auto& v : vals) {
    const double diff = std::abs(v.value - v.boundary);
    worst = std::max(worst, diff);
    const double h1 = v.value * std::exp(2.0 * log_gamma_factor(static_cast<double>(v.ell)).real());
    csv.add_row({static_cast<double>(v.ell), v.value, v.boundary, diff, v.error, h1});
  }
  Summary s;
  s.add("command", "orthogonality");
  s.add("q1", p.q1().id());
  s.add("q2", p.q2().id());
  s.add("lmax", lmax);
  s.add("max_lagrange_diff", worst);
  s.flag("lagrange identity within 1e-8", worst <= 1e-8);
  return finish({{"orthogonality.csv", csv.str()}}, s);
}

RunOutput run_functional_scan(const ExperimentConfig& cfg) {
  const DifferencePotential p = pair(cfg);
  std::vector<AngularIndex> ells;
  for (int l = 0; l <= cfg.lmax.value_or(5); ++l) ells.push_back(AngularIndex::integer(l));
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 5; ++j) ells.push_back(AngularIndex::complex({0.5 + 0.5 * i, -5.0 + 2.5 * j}));
  const std::vector<FunctionalSample> samples = functional_scan(p, ells, cfg.threads);
  double consistency = 0.0, imag_h = 0.0;
  for (const auto& fs : samples) {
    const double scale = std::abs(fs.H);
    if (scale > 0.0)
      consistency = std::max(
          consistency, std::abs(fs.H - fs.h0 * std::exp(2.0 * log_gamma_factor(fs.ell))) / scale);
    if (fs.has_h) imag_h = std::max(imag_h, std::abs(fs.h.imag()));
  }
  const GrowthCheck g = growth_check(p, 10, 5, 0.5, 5.0, -5.0, 5.0, cfg.threads);
  Summary s;
  s.add("command", "functional-scan");
  s.add("q1", p.q1().id());
  s.add("q2", p.q2().id());
  s.add("samples", static_cast<int>(samples.size()));
  s.add("max_H_consistency_rel_err", consistency);
  s.add("max_imag_h_integer", imag_h);
  s.add("growth_constant", growth_constant(p));
  s.flag("growth bound holds", g.holds);
  s.flag("growth bound without factor 4 holds", g.literal_holds);
  const std::string id = p.q1().id() + "-" + p.q2().id();
  return finish({{"functional_scan.csv", functional_scan_csv(samples, id)}}, s);
}

RunOutput run_nevanlinna(const ExperimentConfig& cfg) {
  const DifferencePotential p = pair(cfg);
  CsvTable csv({"r_disc", "value", "bound", "poisson", "poisson_exact"});
  csv.add_meta("q1", p.q1().id());
  csv.add_meta("q2", p.q2().id());
  bool all = true;
  for (double r : {0.3, 0.5, 0.7, 0.9}) {
    const NevanlinnaResult n = nevanlinna_integral(p, r, 256, cfg.threads);
    all = all && n.value <= n.bound;
    csv.add_row({r, n.value, n.bound, poisson_integral(r), 2.0 * std::numbers::pi / (1.0 - r * r)});
  }
  const ContourCheck cc = cauchy_contour_check(p, {2.0, 0.0}, 0.25, 64, cfg.threads);
  Summary s;
  s.add("command", "nevanlinna");
  s.add("q1", p.q1().id());
  s.add("q2", p.q2().id());
  s.flag("nevanlinna bound holds", all);
  s.add("cauchy_modulus", cc.modulus);
  s.add("cauchy_max_abs_H", cc.max_abs);
  return finish({{"nevanlinna.csv", csv.str()}}, s);
}

RunOutput run_muntz(const ExperimentConfig& cfg) {
  const IndexSet set = IndexSet::parse(cfg.index_set.empty() ? "arithmetic:0:2" : cfg.index_set);
  const int lmax = cfg.lmax.value_or(1000);
  CsvTable csv({"ell", "partial_sum"});
  csv.add_meta("index_set", set.descriptor());
  double sum = 0.0;
  for (int l : set.members(lmax)) {
    if (l > 0) sum += 1.0 / l;
    csv.add_row({static_cast<double>(l), sum});
  }
  Summary s;
  s.add("command", "muntz");
  s.add("index_set", set.descriptor());
  s.add("classification", to_string(muntz_classify(set)));
  s.add("partial_sum", sum);
  s.add("lmax", lmax);
  return finish({{"muntz.csv", csv.str()}}, s);
}

RunOutput run_asymptotics(const ExperimentConfig& cfg) {
  const int lmax = cfg.lmax.value_or(100);
  std::vector<int> ells;
  for (int l = 20; l <= lmax; l += 10) ells.push_back(l);
  if (ells.empty() || ells.back() != lmax) ells.push_back(lmax);
  CsvTable ucsv({"ell", "r", "log_u", "log_u_asymptotic", "ratio"});
  const double r = 1.0;
  double ratio_at_max = 0.0;
  for (int l : ells) {
    const specfun::ScaledPair u = specfun::riccati_bessel_scaled(l, r);
    const specfun::AsymptoticValue as = specfun::u_asymptotic(l, r);
    const double log_u = std::log(std::abs(u.mantissa)) + u.log_scale;
    const double ratio = std::exp(log_u - as.log_value);
    ratio_at_max = ratio;
    ucsv.add_row({static_cast<double>(l), r, log_u, as.log_value, ratio});
  }
  std::vector<Artifact> artifacts{{"asymptotics.csv", ucsv.str()}};
  Summary s;
  s.add("command", "asymptotics");
  s.add("lmax", lmax);
  s.add("u_ratio_at_lmax", ratio_at_max);
  if (!cfg.q1.empty()) {
    const DifferencePotential p = pair(cfg);
    CsvTable hcsv({"ell", "log_abs_h", "log_abs_moment", "ratio"});
    hcsv.add_meta("q1", p.q1().id());
    hcsv.add_meta("q2", p.q2().id());
    for (int l : ells) {
      const MomentHeuristic m = moment_heuristic(p, l);
      hcsv.add_row({static_cast<double>(l), m.log_abs_h, m.log_abs_moment, m.ratio});
      s.add(fmt::format("moment_ratio_l{}", l), m.ratio);
    }
    artifacts.push_back({"heuristic.csv", hcsv.str()});
  }
  return finish(std::move(artifacts), s);
}

RunOutput run_discriminate(const ExperimentConfig& cfg) {
  const Potential q1 = load(cfg.q1);
  const Potential q2 = load_or_zero(cfg.q2, q1.support());
  const IndexSet set = IndexSet::parse(cfg.index_set.empty() ? "arithmetic:0:1" : cfg.index_set);
  const int lmax = cfg.lmax.value_or(20);
  const DiscriminationReport rep = discrimination_experiment(q1, q2, set, lmax, cfg.threads);
  Summary s;
  s.add("command", "discriminate");
  s.add("q1", q1.id());
  s.add("q2", q2.id());
  s.add("index_set", set.descriptor());
  s.add("classification", to_string(muntz_classify(set)));
  s.add("lmax", lmax);
  s.add("sup_delta", rep.sup_delta);
  s.add("sup_h", rep.sup_h);
  s.add("correlation", rep.correlation);
  s.add("boundary_mismatch", rep.boundary_mismatch);
  return finish({{"discrimination.csv", rep.to_csv()}}, s);
}

template <class T>
void set_if(const nlohmann::json& j, const char* key, T& target) {
  if (j.contains(key)) target = j.at(key).get<T>();
}

std::string resolve(const std::string& path, const std::string& base) {
  if (path.empty() || base.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base) / path).lexically_normal().string();
}

void require_file(const std::string& path, const char* what) {
  if (path.empty()) throw ValidationError(fmt::format("{} is required for this command", what));
  std::error_code ec;
  if (!fs::is_regular_file(path, ec))
    throw ValidationError(fmt::format("{} file '{}' does not exist", what, path));
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {
      "phase-shifts", "kernel",  "transform-check", "orthogonality", "functional-scan",
      "nevanlinna",   "muntz", "asymptotics",     "discriminate"};
  return names;
}

void apply_config_json(ExperimentConfig& cfg, const std::string& text, const std::string& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(fmt::format("config: {}", e.what()));
  }
  if (!j.is_object()) throw ParseError("config: top level must be an object");
  static const std::vector<std::string> known = {"command", "out",      "potential", "q1",
                                                 "q2",      "index_set", "lmax",      "tol",
                                                 "grid_xi", "grid_eta"};
  for (const auto& item : j.items())
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      throw ValidationError(fmt::format("config: unknown key '{}'", item.key()));
  try {
    set_if(j, "command", cfg.command);
    set_if(j, "out", cfg.out_dir);
    set_if(j, "potential", cfg.potential);
    set_if(j, "q1", cfg.q1);
    set_if(j, "q2", cfg.q2);
    set_if(j, "index_set", cfg.index_set);
    if (j.contains("lmax")) cfg.lmax = j.at("lmax").get<int>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("grid_xi")) cfg.grid_xi = j.at("grid_xi").get<int>();
    if (j.contains("grid_eta")) cfg.grid_eta = j.at("grid_eta").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("config: {}", e.what()));
  }
  cfg.potential = resolve(cfg.potential, base_dir);
  cfg.q1 = resolve(cfg.q1, base_dir);
  cfg.q2 = resolve(cfg.q2, base_dir);
  if (j.contains("out")) cfg.out_dir = resolve(cfg.out_dir, base_dir);
}

void validate(const ExperimentConfig& cfg) {
  const auto& names = commands();
  if (std::find(names.begin(), names.end(), cfg.command) == names.end())
    throw ValidationError(fmt::format("unknown command '{}'", cfg.command));
  if (cfg.lmax && (*cfg.lmax < 0 || *cfg.lmax > 1000))
    throw ValidationError("--lmax must lie in [0, 1000]");
  if (cfg.tol && !(*cfg.tol > 0.0 && *cfg.tol <= 1e-2))
    throw ValidationError("--tol must lie in (0, 1e-2]");
  if (cfg.grid_eta && (*cfg.grid_eta < 8 || *cfg.grid_eta > 20000))
    throw ValidationError("--grid-eta must lie in [8, 20000]");
  if (cfg.grid_xi && (*cfg.grid_xi < 12 || *cfg.grid_xi > 40000))
    throw ValidationError("--grid-xi must lie in [12, 40000]");
  if (cfg.out_dir.empty()) throw ValidationError("--out must not be empty");

  const std::string& c = cfg.command;
  if (c == "phase-shifts" || c == "kernel" || c == "transform-check") require_file(cfg.potential, "--potential");
  if (c == "orthogonality" || c == "functional-scan" || c == "nevanlinna" || c == "discriminate")
    require_file(cfg.q1, "--q1");
  if (!cfg.q1.empty()) require_file(cfg.q1, "--q1");
  if (!cfg.q2.empty()) require_file(cfg.q2, "--q2");
  if (c == "discriminate" && cfg.lmax && *cfg.lmax > 100)
    throw ValidationError("discriminate needs --lmax <= 100");
  if (c == "asymptotics" && cfg.lmax && *cfg.lmax < 20)
    throw ValidationError("asymptotics needs --lmax >= 20");
  if (!cfg.index_set.empty()) IndexSet::parse(cfg.index_set);
}

RunOutput run(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::string& c = cfg.command;
  if (c == "phase-shifts") return run_phase_shifts(cfg);
  if (c == "kernel") return run_kernel(cfg);
  if (c == "transform-check") return run_transform_check(cfg);
  if (c == "orthogonality") return run_orthogonality(cfg);
  if (c == "functional-scan") return run_functional_scan(cfg);
  if (c == "nevanlinna") return run_nevanlinna(cfg);
  if (c == "muntz") return run_muntz(cfg);
  if (c == "asymptotics") return run_asymptotics(cfg);
  return run_discriminate(cfg);
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

void write_artifacts(const std::string& dir, const std::vector<Artifact>& artifacts) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", dir, ec.message()));
  std::vector<Artifact> sorted = artifacts;
  std::sort(sorted.begin(), sorted.end(), [](const Artifact& x, const Artifact& y) { return x.name < y.name; });
  std::string manifest;
  auto put = [&](const std::string& name, const std::string& content) {
    const fs::path path = fs::path(dir) / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << content;
    f.close();
    if (!f) throw IoError(fmt::format("cannot write '{}'", path.string()));
  };
  for (const Artifact& a : sorted) {
    put(a.name, a.content);
    manifest += sha256_hex(a.content) + "  " + a.name + "\n";
  }
  put("MANIFEST.txt", manifest);
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed-energy scattering experiments"};
  ExperimentConfig flags;
  std::string config_path, command;
  int lmax = 0, grid_xi = 0, grid_eta = 0;
  double tol = 0.0;
  app.add_option("command", command, "one of: " + fmt::format("{}", fmt::join(commands(), ", ")));
  app.add_option("--config", config_path, "JSON configuration file");
  auto* o_out = app.add_option("--out", flags.out_dir, "output directory");
  auto* o_lmax = app.add_option("--lmax", lmax, "largest angular momentum");
  auto* o_tol = app.add_option("--tol", tol, "tolerance");
  auto* o_xi = app.add_option("--grid-xi", grid_xi, "kernel grid steps in xi");
  auto* o_eta = app.add_option("--grid-eta", grid_eta, "kernel grid steps in eta");
  auto* o_set = app.add_option("--index-set", flags.index_set, "arithmetic:c:d | primes | geometric:b | list:l1,l2,...");
  auto* o_pot = app.add_option("--potential", flags.potential, "potential JSON");
  auto* o_q1 = app.add_option("--q1", flags.q1, "first potential JSON");
  auto* o_q2 = app.add_option("--q2", flags.q2, "second potential JSON");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitConfig;
  }

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream f(config_path, std::ios::binary);
      if (!f) throw ValidationError(fmt::format("config file '{}' cannot be read", config_path));
      std::stringstream ss;
      ss << f.rdbuf();
      apply_config_json(cfg, ss.str(), fs::path(config_path).parent_path().string());
    }
    if (!command.empty()) cfg.command = command;
    if (o_out->count()) cfg.out_dir = flags.out_dir;
    if (o_lmax->count()) cfg.lmax = lmax;
    if (o_tol->count()) cfg.tol = tol;
    if (o_xi->count()) cfg.grid_xi = grid_xi;
    if (o_eta->count()) cfg.grid_eta = grid_eta;
    if (o_set->count()) cfg.index_set = flags.index_set;
    if (o_pot->count()) cfg.potential = flags.potential;
    if (o_q1->count()) cfg.q1 = flags.q1;
    if (o_q2->count()) cfg.q2 = flags.q2;
    cfg.threads = thread_count();
    if (cfg.command.empty()) throw ValidationError("no command given");
    validate(cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitConfig;
  }

  try {
    const RunOutput res = run(cfg);
    write_artifacts(cfg.out_dir, res.artifacts);
    out << res.summary;
    return kExitOk;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return kExitConvergence;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace scatlab::cli
