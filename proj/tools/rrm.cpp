#include <rrm/analysis.hpp>
#include <rrm/io.hpp>
#include <rrm/problems.hpp>
#include <rrm/types.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace rrm;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

/// "a..b" or a comma list of exponents e; each expands to n = 2^e cells per
/// unit length.
std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> exps;
  try {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
      const int a = std::stoi(text.substr(0, dots));
      const int b = std::stoi(text.substr(dots + 2));
      for (int e = a; e <= b; ++e) exps.push_back(e);
    } else {
      for (const std::string& tok : split(text, ',')) exps.push_back(std::stoi(tok));
    }
  } catch (const std::exception&) {
    throw ConfigError("cannot parse level list '" + text + "'");
  }
  if (exps.empty()) throw ConfigError("empty level list");
  std::vector<int> ns;
  for (int e : exps) {
    if (e < 2 || e > 20) throw ConfigError("level exponent out of range: " + std::to_string(e));
    ns.push_back(1 << e);
  }
  return ns;
}

std::vector<Real> parse_reals(const std::string& text) {
  std::vector<Real> out;
  try {
    for (const std::string& tok : split(text, ',')) out.push_back(std::stod(tok));
  } catch (const std::exception&) {
    throw ConfigError("cannot parse number list '" + text + "'");
  }
  return out;
}

BetaSpec parse_beta(const std::string& s) {
  if (s == "affine") return {};
  if (s.rfind("const:", 0) == 0) {
    BetaSpec b;
    b.affine = false;
    try {
      b.constant = std::stod(s.substr(6));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse beta constant in '" + s + "'");
    }
    return b;
  }
  throw ConfigError("beta must be 'affine' or 'const:<value>'");
}

Domain parse_domain(const std::string& s) {
  if (s == "unit-square") return Domain::unit_square();
  if (s == "l-shape") return Domain::l_shape();
  throw ConfigError("domain must be 'unit-square' or 'l-shape'");
}

GridKind parse_grid(const std::string& s) {
  if (s == "uniform") return GridKind::Uniform;
  if (s == "graded") return GridKind::Graded;
  throw ConfigError("grid must be 'uniform' or 'graded'");
}

StudyKind parse_study(const std::string& s) {
  if (s == "manufactured") return StudyKind::Manufactured;
  if (s == "boundary-layer") return StudyKind::BoundaryLayer;
  throw ConfigError("study must be 'manufactured' or 'boundary-layer'");
}

std::optional<int> env_max_n() {
  const char* v = std::getenv("RRM_MAX_N");
  if (!v) return std::nullopt;
  const int n = std::atoi(v);
  if (n <= 0) throw ConfigError("RRM_MAX_N must be a positive integer");
  return n;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string join_reals(const std::vector<Real>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_number(v[i]);
  }
  return s;
}

/// Write the table (and its manifest) under out_dir, or to stdout when no
/// directory was given.
void emit(const std::string& out_dir, const std::string& name, const OutputTable& table,
          RunManifest manifest, bool gnuplot) {
  const std::string meta =
      "config=" + hash_hex(config_hash(manifest)) + " version=" + std::string(kVersion);
  if (out_dir.empty()) {
    write_table(std::cout, table, meta, gnuplot);
    return;
  }
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string csv_path = (fs::path(out_dir) / (name + (gnuplot ? ".dat" : ".csv"))).string();
  manifest.outputs.push_back(csv_path);
  {
    std::ofstream f(csv_path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + csv_path);
    write_table(f, table, meta, gnuplot);
  }
  const std::string man_path = (fs::path(out_dir) / (name + ".manifest.json")).string();
  {
    std::ofstream f(man_path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + man_path);
    write_manifest(f, manifest);
  }
  std::cout << "wrote " << csv_path << " and " << man_path << "\n";
}

struct CheckLine {
  std::string suite;
  std::string subject;
  std::string detail;
  bool pass = true;
};

void print_checks(const std::vector<CheckLine>& checks) {
  size_t w1 = 0, w2 = 0;
  for (const auto& c : checks) {
    w1 = std::max(w1, c.suite.size());
    w2 = std::max(w2, c.subject.size());
  }
  for (const auto& c : checks)
    std::printf("%-*s  %-*s  %s  [%s]\n", static_cast<int>(w1), c.suite.c_str(),
                static_cast<int>(w2), c.subject.c_str(), c.detail.c_str(),
                c.pass ? "PASS" : "FAIL");
}

int cmd_verify(const std::string& suite, const std::string& out_dir, bool gnuplot) {
  std::vector<CheckLine> checks;
  const bool all = suite == "all";

  if (all || suite == "grisvard") {
    for (const GridCase& gc : standard_battery()) {
      const Real dev = grisvard_deviation(gc);
      checks.push_back({"grisvard", gc.label,
                        "max-rel-deviation=" + format_number(dev) + " bound=1e-12",
                        dev <= 1e-12});
    }
  }
  if (all || suite == "reproduction") {
    for (const GridCase& gc : standard_battery()) {
      const Real res = reproduction_residual(gc);
      checks.push_back({"reproduction", gc.label,
                        "max-cell-residual=" + format_number(res) + " bound=1e-10",
                        res <= 1e-10});
      const Real alt = checkerboard_residual(gc);
      checks.push_back({"checkerboard", gc.label,
                        "null-sum-residual=" + format_number(alt) + " bound=1e-11",
                        alt <= 1e-11});
    }
  }
  if (all || suite == "interpolation") {
    for (const Domain& dom : {Domain::unit_square(), Domain::l_shape()}) {
      const InterpolationStudy st = interpolation_study(dom, GridKind::Uniform, {8, 16, 32, 64});
      for (int k = 1; k <= 2; ++k) {
        const Real slope = st.rates.overall[static_cast<size_t>(k)];
        const Real target = 3.0 - k;
        checks.push_back({"interpolation", std::string(dom.kind_name()) + "/k=" + std::to_string(k),
                          "slope=" + format_number(slope) + " target=" + format_number(target) +
                              "+-0.2",
                          std::abs(slope - target) <= 0.2});
      }
      if (!out_dir.empty()) {
        OutputTable t;
        t.columns = {"h", "error_k0", "error_k1", "error_k2", "rate_k0", "rate_k1", "rate_k2"};
        for (size_t l = 0; l < st.h.size(); ++l) {
          std::vector<std::string> row{format_number(st.h[l])};
          for (int k = 0; k < 3; ++k)
            row.push_back(format_number(st.errors(static_cast<Eigen::Index>(l), k)));
          for (int k = 0; k < 3; ++k)
            row.push_back(l == 0 ? ""
                                 : format_number(st.rates.step_rates(
                                       static_cast<Eigen::Index>(l) - 1, k)));
          t.rows.push_back(std::move(row));
        }
        RunManifest m;
        m.command = "rrm verify interpolation --out " + out_dir;
        m.config = {{"suite", "interpolation"},
                    {"domain", dom.kind_name()},
                    {"grid", "uniform"},
                    {"levels", "8,16,32,64"}};
        m.version = kVersion;
        emit(out_dir, std::string("interpolation-") + dom.kind_name(), t, m, gnuplot);
      }
    }
  }

  print_checks(checks);
  int failed = 0;
  for (const auto& c : checks) failed += c.pass ? 0 : 1;
  std::printf("%zu checks, %d failed\n", checks.size(), failed);
  return failed == 0 ? 0 : 1;
}

int cmd_perturbation(const PerturbationConfig& cfg, const std::string& out_dir, bool gnuplot,
                     const std::string& command) {
  const PerturbationResult res = run_perturbation(cfg);

  OutputTable t;
  t.columns = {"eps",    "n",      "h",           "err_h1",  "err_h2",      "energy",
               "rel_energy", "rate_h1", "rate_h2", "rate_energy", "rate_rel_energy"};
  for (const PerturbationRun& run : res.runs) {
    for (size_t l = 0; l < run.reports.size(); ++l) {
      const ErrorReport& r = run.reports[l];
      std::vector<std::string> row{format_number(run.eps),
                                   std::to_string(cfg.levels[l]),
                                   format_number(r.h),
                                   format_number(r.err_h1),
                                   format_number(r.err_h2),
                                   format_number(r.energy),
                                   format_number(r.rel_energy)};
      for (Eigen::Index q = 0; q < 4; ++q)
        row.push_back(l == 0 ? ""
                             : format_number(run.rates.step_rates(
                                   static_cast<Eigen::Index>(l) - 1, q)));
      t.rows.push_back(std::move(row));
    }
    if (run.reports.size() >= 2) {
      std::vector<std::string> row{format_number(run.eps), "overall", "", "", "", "", ""};
      for (size_t q = 0; q < 4; ++q) row.push_back(format_number(run.rates.overall[q]));
      t.rows.push_back(std::move(row));
    }
  }

  RunManifest m;
  m.command = command;
  m.config = {{"domain", cfg.domain.kind_name()},
              {"grid", cfg.grid == GridKind::Uniform ? "uniform" : "graded"},
              {"ratio", format_number(cfg.theta)},
              {"levels_n", join_ints(cfg.levels)},
              {"eps", join_reals(cfg.eps_list)},
              {"beta", cfg.beta.label()},
              {"study", cfg.study == StudyKind::Manufactured ? "manufactured" : "boundary-layer"},
              {"max_n", std::to_string(cfg.max_n)}};
  m.version = kVersion;
  emit(out_dir, "perturbation", t, m, gnuplot);
  return 0;
}

int cmd_transmission(const TransmissionConfig& cfg, const std::string& out_dir, bool gnuplot,
                     const std::string& command) {
  const TransmissionResult res = run_transmission(cfg);

  OutputTable t;
  t.columns = {"n", "h"};
  for (int q = 1; q <= cfg.k; ++q) t.columns.push_back("lambda_" + std::to_string(q));
  for (size_t l = 0; l < res.n.size(); ++l) {
    std::vector<std::string> row{std::to_string(res.n[l]), format_number(res.h[l])};
    for (Real lam : res.lambdas[l]) row.push_back(format_number(lam));
    t.rows.push_back(std::move(row));
  }
  if (res.rates_defined) {
    std::vector<std::string> row{"rate", ""};
    for (Real r : res.rates.overall) row.push_back(format_number(r));
    t.rows.push_back(std::move(row));
  }

  RunManifest m;
  m.command = command;
  m.config = {{"domain", cfg.domain.kind_name()},
              {"grid", cfg.grid == GridKind::Uniform ? "uniform" : "graded"},
              {"ratio", format_number(cfg.theta)},
              {"levels_n", join_ints(cfg.levels)},
              {"beta", cfg.beta.label()},
              {"k", std::to_string(cfg.k)},
              {"max_n", std::to_string(cfg.max_n)}};
  m.version = kVersion;
  emit(out_dir, "transmission", t, m, gnuplot);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced rectangular Morley schemes for inhomogeneous fourth-order problems"};
  app.require_subcommand(1);

  auto* ver = app.add_subcommand("verify", "Run the element property suites");
  std::string suite = "all";
  ver->add_option("suite", suite, "grisvard | reproduction | interpolation | all")
      ->check(CLI::IsMember({"grisvard", "reproduction", "interpolation", "all"}));

  auto* per = app.add_subcommand("perturbation", "Singularly perturbed bi-Laplace study");
  auto* tra = app.add_subcommand("transmission", "Transmission eigenvalue study");

  std::string domain_s = "unit-square", grid_s = "uniform", beta_s = "affine";
  std::string study_s = "manufactured";
  std::string levels_s = "3..5", eps_s = "1";
  std::string out_dir;
  Real theta = 0.4;
  int k = 6;
  bool gnuplot = false;

  for (CLI::App* cmd : {per, tra}) {
    cmd->add_option("--domain", domain_s, "unit-square | l-shape");
    cmd->add_option("--grid", grid_s, "uniform | graded");
    cmd->add_option("--ratio", theta, "graded split ratio in (0,1)");
    cmd->add_option("--levels", levels_s, "exponents: 'a..b' or comma list; n = 2^e");
  }
  per->add_option("--eps", eps_s, "comma list of perturbation parameters");
  per->add_option("--beta", beta_s, "affine | const:<value>");
  per->add_option("--study", study_s, "manufactured | boundary-layer");
  tra->add_option("--beta", beta_s, "affine | const:<value> (must stay above 1)");
  tra->add_option("--k", k, "number of eigenvalues");
  for (CLI::App* cmd : {ver, per, tra}) {
    cmd->add_option("--out", out_dir, "output directory (CSV + manifest)");
    cmd->add_flag("--gnuplot", gnuplot, "whitespace-separated output instead of CSV");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (ver->parsed()) return cmd_verify(suite, out_dir, gnuplot);

    const std::optional<int> cap = env_max_n();
    if (per->parsed()) {
      PerturbationConfig cfg;
      cfg.domain = parse_domain(domain_s);
      cfg.grid = parse_grid(grid_s);
      cfg.theta = theta;
      cfg.levels = parse_levels(levels_s);
      cfg.eps_list = parse_reals(eps_s);
      cfg.beta = parse_beta(beta_s);
      cfg.study = parse_study(study_s);
      if (cap) {
        std::fprintf(stderr, "warning: RRM_MAX_N=%d overrides the desk-scale cap (%d)\n", *cap,
                     cfg.max_n);
        cfg.max_n = *cap;
      }
      std::string command = "rrm perturbation --domain " + domain_s + " --grid " + grid_s +
                            " --levels " + levels_s + " --eps " + eps_s + " --beta " + beta_s +
                            " --study " + study_s;
      return cmd_perturbation(cfg, out_dir, gnuplot, command);
    }
    if (tra->parsed()) {
      TransmissionConfig cfg;
      cfg.domain = parse_domain(domain_s);
      cfg.grid = parse_grid(grid_s);
      cfg.theta = theta;
      cfg.levels = parse_levels(levels_s);
      cfg.beta = parse_beta(beta_s);
      cfg.k = k;
      if (cap) {
        std::fprintf(stderr, "warning: RRM_MAX_N=%d overrides the desk-scale cap (%d)\n", *cap,
                     cfg.max_n);
        cfg.max_n = *cap;
      }
      std::string command = "rrm transmission --domain " + domain_s + " --grid " + grid_s +
                            " --levels " + levels_s + " --beta " + beta_s + " --k " +
                            std::to_string(k);
      return cmd_transmission(cfg, out_dir, gnuplot, command);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
