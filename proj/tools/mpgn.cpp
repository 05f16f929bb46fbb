// mpgn: command-line front end for the successive-minima engine, exponent
// scans, inequality suites and minimal systems.
//
// Exit codes: 0 success, 1 a check failed (or another runtime error),
// 2 usage error, 3 enumeration budget exceeded.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mpgn/checks.hpp"
#include "mpgn/error.hpp"
#include "mpgn/exponents.hpp"
#include "mpgn/io.hpp"
#include "mpgn/minimal_systems.hpp"

namespace {

using namespace mpgn;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Args {
  std::string lattice_file;
  std::string gen;
  int dim = 3;
  std::uint64_t seed = 0;
  std::string thetas;
  std::string f = "sup-plus";
  std::string tau;
  std::string radii = "1.5:1.148698354997035:16";
  int directions = 24;
  std::uint64_t budget = 0;
  std::optional<double> tol;
  std::string out = "-";
  std::string format;
  std::string config;
  bool corrupt_engine = false;
  // check
  std::string suite = "all";
  std::size_t samples = 100;
  double max_tau = 8.0;
  std::uint64_t sample_seed = 1;
  bool no_finite_terms = false;
  // exponents / minimal
  double vector_scan = 0.0;
  double radius = 6.0;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw BadParams("not a number: '" + item + "'");
    }
    if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos)
      throw BadParams("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

TauVector parse_tau(const std::string& text, int dim) {
  std::vector<double> v = parse_list(text);
  if (static_cast<int>(v.size()) != dim)
    throw BadParams("--tau needs " + std::to_string(dim) + " components");
  double sum = std::accumulate(v.begin(), v.end(), 0.0);
  if (std::abs(sum) > 1e-6) throw BadParams("--tau components must sum to 0 (got " + std::to_string(sum) + ")");
  return TauVector::projected(std::move(v));
}

Lattice load_source(const Args& a) {
  if (!a.lattice_file.empty() && !a.gen.empty()) throw BadParams("give either --lattice or --gen, not both");
  if (!a.lattice_file.empty()) return io::load_lattice(a.lattice_file);
  if (a.gen.empty()) throw BadParams("a lattice is required: --lattice FILE or --gen KIND");
  TestLatticeParams p;
  p.dim = a.dim;
  p.seed = a.seed;
  if (!a.thetas.empty()) p.thetas = parse_list(a.thetas);
  return make_test_lattice(parse_test_lattice_kind(a.gen), p);
}

EngineOptions engine_of(const Args& a) {
  EngineOptions e;
  if (a.budget > 0) e.budget = a.budget;
  if (a.corrupt_engine) {
    e.perturb_index = 2;
    e.perturb_factor = 1.01;
  }
  return e;
}

ScanConfig scan_config(const Args& a, int dim) {
  if (a.directions < 1) throw BadParams("--directions must be positive");
  ScanConfig cfg = ScanConfig::standard(dim, a.directions, RadiusSchedule::parse(a.radii));
  cfg.engine = engine_of(a);
  cfg.validate(dim);
  return cfg;
}

void add_lattice_options(CLI::App* cmd, Args& a) {
  cmd->add_option("--lattice", a.lattice_file, "Lattice JSON file");
  cmd->add_option("--gen", a.gen, "Generator: integer, totally-real-cubic, unipotent, random-unimodular, axis-sublattice");
  cmd->add_option("--dim", a.dim, "Dimension for --gen");
  cmd->add_option("--seed", a.seed, "Seed for --gen");
  cmd->add_option("--thetas", a.thetas, "Unipotent first-row entries, comma separated");
  cmd->add_option("--budget", a.budget, "Enumeration node budget (default: MPGN_BUDGET or 1e8)");
  cmd->add_flag("--corrupt-engine", a.corrupt_engine, "Inflate lambda_2 by 1% (harness self-test)");
}

void add_scan_options(CLI::App* cmd, Args& a) {
  cmd->add_option("--f", a.f, "Gauge: sup-plus, sup-minus, sup, weighted:w1,..,wd");
  cmd->add_option("--radii", a.radii, "Radius schedule r0:ratio:count");
  cmd->add_option("--directions", a.directions, "Number of Halton directions");
}

void add_output_options(CLI::App* cmd, Args& a, const std::string& default_format) {
  cmd->add_option("--out", a.out, "Output path ('-' for stdout)");
  cmd->add_option("--format", a.format, "Output format (default " + default_format + ")")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--config", a.config, "Flat JSON file with option values");
}

/// Fills options not given on the command line from a flat JSON object.
void apply_config(CLI::App* cmd, const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(io::read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw BadParams("config is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw BadParams("config must be a flat JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "config") throw BadParams("config files cannot nest");
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (!opt) throw BadParams("unknown config key '" + key + "'");
    if (opt->count() > 0) continue;
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_boolean()) {
      if (!value.get<bool>()) continue;
      text = "true";
    } else if (value.is_number() || value.is_array()) {
      if (value.is_array()) {
        for (const auto& x : value) text += (text.empty() ? "" : ",") + (x.is_string() ? x.get<std::string>() : x.dump());
      } else {
        text = value.dump();
      }
    } else {
      throw BadParams("config key '" + key + "' has an unsupported value");
    }
    opt->add_result(text);
    opt->run_callback();
  }
}

int cmd_gen(const Args& a) {
  if (a.gen.empty()) throw BadParams("gen needs a lattice kind");
  io::write_text(a.out, io::lattice_to_json(load_source(a)));
  return 0;
}

int cmd_minima(const Args& a) {
  Lattice lattice = load_source(a);
  if (a.tau.empty()) throw BadParams("minima needs --tau");
  TauVector tau = parse_tau(a.tau, lattice.dim());
  MinimaProfile p = successive_minima(lattice, tau, engine_of(a));
  if (a.format == "json") {
    nlohmann::json j{{"lattice", lattice.label()},
                     {"tau", std::vector<double>(tau.components().begin(), tau.components().end())},
                     {"lambda", p.lambdas},
                     {"L", p.L},
                     {"S", p.S}};
    nlohmann::json w = nlohmann::json::array();
    for (const auto& x : p.witnesses) w.push_back(x.coeffs);
    j["witnesses"] = w;
    io::write_text(a.out, j.dump(2) + "\n");
  } else {
    io::write_text(a.out, io::profile_csv_header(lattice.dim()) + io::profile_csv_row(p));
  }
  return 0;
}

int cmd_scan(const Args& a) {
  Lattice lattice = load_source(a);
  GaugeFunction f = GaugeFunction::parse(a.f);
  auto samples = scan_profiles(lattice, scan_config(a, lattice.dim()));
  io::write_text(a.out, io::scan_trajectory_csv(samples, f));
  return 0;
}

int cmd_exponents(const Args& a) {
  Lattice lattice = load_source(a);
  GaugeFunction f = GaugeFunction::parse(a.f);
  EstimateSet set;
  if (a.vector_scan > 0.0) {
    if (!(f == GaugeFunction::sup_plus())) throw BadParams("the vector scan estimates Psi_1 for f = sup-plus only");
    VectorScanOptions vo;
    vo.engine = engine_of(a);
    set.lattice = lattice.label();
    set.f = f;
    set.dim = lattice.dim();
    set.items.push_back(estimate_psi1_vector_scan(lattice, a.vector_scan, vo));
  } else {
    set = estimate_exponents(lattice, f, scan_config(a, lattice.dim()));
  }
  if (a.format == "csv") {
    std::string s = "lattice,f,k,kind,value,oscillation\n";
    for (const auto& e : set.items) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", e.value, e.oscillation());
      s += e.lattice + "," + e.f.name() + "," + std::to_string(e.k) + "," + to_string(e.kind) + "," + buf + "\n";
    }
    io::write_text(a.out, s);
  } else {
    io::write_text(a.out, io::estimates_to_json(set));
  }
  return 0;
}

int cmd_check(const Args& a) {
  Lattice lattice = load_source(a);
  const int d = lattice.dim();
  const EngineOptions engine = engine_of(a);
  static const std::vector<std::string> kSuites = {"all", "local", "L", "S", "duality",
                                                   "transference", "relations", "split", "d3"};
  if (std::find(kSuites.begin(), kSuites.end(), a.suite) == kSuites.end())
    throw BadParams("unknown suite '" + a.suite + "'");
  const bool all = a.suite == "all";
  std::vector<CheckReport> reports;

  auto samples = random_tau_samples(d, a.samples, a.max_tau, a.sample_seed);
  if (all || a.suite == "local") reports.push_back(check_all_local(lattice, samples, engine));
  if (a.suite == "L") reports.push_back(check_L_properties(lattice, samples, engine));
  if (a.suite == "S") reports.push_back(check_S_properties(lattice, samples, engine));
  if (a.suite == "duality") reports.push_back(check_duality(lattice, samples, engine));
  if (a.suite == "transference") reports.push_back(check_transference_local(lattice, samples, engine));

  const bool want_rel = all || a.suite == "relations" || a.suite == "split";
  const bool want_d3 = a.suite == "d3" || (all && d == 3);
  if (want_rel || want_d3) {
    GaugeFunction f = GaugeFunction::parse(a.f);
    ScanConfig cfg = scan_config(a, d);
    Lattice dual = dual_lattice(lattice);
    EstimateSet est = estimate_exponents(lattice, f, cfg);
    EstimateSet dual_conj = estimate_exponents(dual, f.conjugate(), cfg);
    RelationOptions ro;
    ro.tol = a.tol;
    ro.finite_radius_terms = !a.no_finite_terms;
    if (want_rel) {
      EstimateSet dual_f = estimate_exponents(dual, f, cfg);
      if (a.suite == "split")
        reports.push_back(check_split_chain(est, dual_f, dual_conj, ro));
      else
        reports.push_back(check_exponent_relations(est, dual_f, dual_conj, ro));
    }
    if (want_d3) {
      DegeneracyOptions dopt;
      dopt.relation = ro;
      dopt.engine = engine;
      try {
        reports.push_back(d3_degeneracy_check(lattice, est, dual_conj, dopt));
      } catch (const NotIrrational& e) {
        CheckReport r;
        r.check_name = "d3_degeneracy";
        r.lattices = {lattice.label()};
        r.skipped = true;
        r.notes.push_back(e.what());
        reports.push_back(r);
      }
    }
  }

  bool ok = true;
  std::string text;
  if (reports.size() == 1) {
    text = io::report_to_json(reports.front());
  } else {
    text = "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i)
      text += io::report_to_json(reports[i]) + (i + 1 < reports.size() ? ",\n" : "");
    text += "]\n";
  }
  for (const auto& r : reports) {
    ok = ok && r.passed();
    for (const auto& name : r.failures()) std::cerr << "FAIL " << r.check_name << ": " << name << "\n";
  }
  io::write_text(a.out, text);
  return ok ? 0 : kExitCheckFailed;
}

int cmd_minimal(const Args& a) {
  Lattice lattice = load_source(a);
  const EngineOptions engine = engine_of(a);
  auto systems = find_minkowski_bases(lattice, a.radius, engine);
  std::string s = io::systems_csv_header(lattice.dim());
  for (const auto& sys : systems) s += io::systems_csv_row(sys, is_minimal_system(lattice, sys, engine).minimal);
  io::write_text(a.out, s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Successive minima of diagonally deformed lattices, exponent scans and inequality suites"};
  app.require_subcommand(1);
  Args a;

  auto* gen = app.add_subcommand("gen", "Write a generated lattice as JSON");
  gen->add_option("kind", a.gen, "Lattice kind")->required();
  gen->add_option("--dim", a.dim, "Dimension");
  gen->add_option("--seed", a.seed, "Seed");
  gen->add_option("--thetas", a.thetas, "Unipotent first-row entries, comma separated");
  gen->add_option("--out", a.out, "Output path ('-' for stdout)");
  gen->add_option("--config", a.config, "Flat JSON file with option values");

  auto* minima = app.add_subcommand("minima", "Successive minima profile at one tau");
  add_lattice_options(minima, a);
  minima->add_option("--tau", a.tau, "Comma-separated tau components (sum 0)");
  add_output_options(minima, a, "csv");

  auto* scan = app.add_subcommand("scan", "Minima along rays: plot-ready trajectory CSV");
  add_lattice_options(scan, a);
  add_scan_options(scan, a);
  add_output_options(scan, a, "csv");

  auto* exponents = app.add_subcommand("exponents", "Exponent estimates with convergence traces");
  add_lattice_options(exponents, a);
  add_scan_options(exponents, a);
  exponents->add_option("--vector-scan", a.vector_scan, "Estimate Psi_1 from lattice points with |v| <= N instead");
  add_output_options(exponents, a, "json");

  auto* check = app.add_subcommand("check", "Run inequality suites; exit 1 on any failure");
  add_lattice_options(check, a);
  add_scan_options(check, a);
  check->add_option("--suite", a.suite, "all, local, L, S, duality, transference, relations, split, d3");
  check->add_option("--samples", a.samples, "Number of random tau samples");
  check->add_option("--max-tau", a.max_tau, "Largest sup-norm of the samples");
  check->add_option("--sample-seed", a.sample_seed, "Seed of the tau samples");
  check->add_option("--tol", a.tol, "Estimator tolerance for exponent relations");
  check->add_flag("--no-finite-terms", a.no_finite_terms, "Drop the C / f_min finite-radius allowances");
  add_output_options(check, a, "json");

  auto* minimal = app.add_subcommand("minimal", "Minkowski bases (d = 3) as systems CSV");
  add_lattice_options(minimal, a);
  minimal->add_option("--radius", a.radius, "Search radius (sup norm)");
  add_output_options(minimal, a, "csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    if (!a.config.empty()) apply_config(cmd, a.config);
    if (cmd == gen) return cmd_gen(a);
    if (cmd == minima) return cmd_minima(a);
    if (cmd == scan) return cmd_scan(a);
    if (cmd == exponents) return cmd_exponents(a);
    if (cmd == check) return cmd_check(a);
    return cmd_minimal(a);
  } catch (const BadParams& e) {
    std::cerr << "mpgn: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    std::cerr << "mpgn: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "mpgn: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "mpgn: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}
