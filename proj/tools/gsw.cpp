#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gsw/decide.hpp"
#include "gsw/report.hpp"

using namespace gsw;

namespace {

struct CommonOpts {
  std::string kind = "roumieu";
  std::string p = "2";
  int qmax = 64;
  std::string grid;  // "T,h" or "n,T,h"
  unsigned seed = 42;
  double tol = 1e-6;
  std::string out = ".";
  std::string config;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--kind", o.kind, "beurling or roumieu")
      ->check(CLI::IsMember({"beurling", "roumieu"}));
  cmd->add_option("--p", o.p, "Lp exponent: 1, 2, inf, or 0 for L0");
  cmd->add_option("--qmax", o.qmax, "order horizon for sequence sweeps");
  cmd->add_option("--grid", o.grid, "grid as T,h or n,T,h");
  cmd->add_option("--seed", o.seed, "seed for randomized suites");
  cmd->add_option("--tol", o.tol, "tolerance for identity checks");
  cmd->add_option("--out", o.out, "output directory for reports");
  cmd->add_option("--config", o.config, "config file with name = spec lines");
}

Kind parse_kind(const std::string& s) {
  return s == "beurling" ? Kind::Beurling : Kind::Roumieu;
}

GridSpec make_grid(const CommonOpts& o) {
  if (o.grid.empty()) return GridSpec::standard(1);
  std::vector<double> v;
  std::stringstream ss(o.grid);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(std::stod(part));
  GridSpec g;
  if (v.size() == 2) {
    g.n = 1;
    g.T = v[0];
    g.h = v[1];
  } else if (v.size() == 3) {
    g.n = int(v[0]);
    g.T = v[1];
    g.h = v[2];
  } else {
    throw std::invalid_argument("--grid needs T,h or n,T,h");
  }
  g.validate();
  return g;
}

BanachSpaceModel make_model(const CommonOpts& o) {
  GridSpec g = make_grid(o);
  if (o.p == "0") return BanachSpaceModel::l0(g);
  if (o.p == "inf" || o.p == "infinity")
    return BanachSpaceModel::lp(std::numeric_limits<double>::infinity(), g);
  std::size_t comma = o.p.find(',');
  if (comma != std::string::npos)
    return BanachSpaceModel::mixed_lp(std::stod(o.p.substr(0, comma)),
                                      std::stod(o.p.substr(comma + 1)), g);
  return BanachSpaceModel::lp(std::stod(o.p), g);
}

/// Substitutes names defined in the config file; CLI text wins when both could
/// apply (a raw spec is used as written).
std::string resolve_spec(const std::string& arg, const CommonOpts& o) {
  if (o.config.empty()) return arg;
  std::ifstream f(o.config);
  if (!f) throw std::runtime_error("cannot read config " + o.config);
  std::stringstream buf;
  buf << f.rdbuf();
  for (const auto& [name, spec] : parse_config(buf.str()))
    if (name == arg) return spec;
  return arg;
}

void print_verdict_row(const std::string& name, const Verdict& v) {
  std::string data = gsw::detail::verdict_data(v);
  std::printf("  %-14s %-13s %s", name.c_str(), to_string(v.status), data.c_str());
  if (!v.note.empty()) std::printf("  [%s]", v.note.c_str());
  std::printf("\n");
}

int cmd_conditions(const std::string& raw_spec, const CommonOpts& o) {
  std::string spec = resolve_spec(raw_spec, o);
  Kind kind = parse_kind(o.kind);
  Horizons hz;
  hz.q_max = o.qmax;
  hz.tol = o.tol;

  std::string head = spec.substr(0, spec.find_first_of(":("));
  if (head == "pow" || head == "logpow" || head == "phi-table") {
    BmtWeight w = parse_omega(spec);
    auto rep = check_bmt_conditions(w, 1e8, hz);
    std::printf("conditions for %s\n", print_omega(w).c_str());
    print_verdict_row("(alpha)", rep.alpha);
    print_verdict_row("(gamma)", rep.gamma);
    print_verdict_row("(delta)", rep.delta);
    return 0;
  }
  if (head == "fromomega" || head == "polyshift" || head == "fromseq") {
    FunctionSystemSpec fs = parse_function_system(spec, o.qmax);
    WeightFunctionSystem W = fs.instantiate();
    std::printf("conditions for %s (%s)\n", fs.text.c_str(), to_string(kind));
    print_verdict_row("[wM]", check_wM(W, kind, hz));
    print_verdict_row("[M]", check_M(W, kind, hz));
    return 0;
  }
  SequenceSystemSpec ss = parse_sequence_system(spec, o.qmax);
  WeightSequenceSystem M = ss.instantiate();
  std::printf("conditions for %s (%s)\n", ss.text.c_str(), to_string(kind));
  print_verdict_row("[L]", check_L(M, kind, hz));
  print_verdict_row("[wI]", check_wI(M, kind, hz));
  print_verdict_row("[I]", check_I(M, kind, hz));
  WeightFunctionSystem W = derived_function_system(M);
  std::printf("derived function system:\n");
  print_verdict_row("[wM]", check_wM(W, kind, hz));
  print_verdict_row("[M]", check_M(W, kind, hz));
  return 0;
}

int verdict_exit(const Verdict& v) {
  if (v.witnessed()) return 0;
  if (v.falsified()) return 1;
  return 3;
}

int cmd_compare_sequences(const std::string& a, const std::string& b,
                          const CommonOpts& o) {
  Horizons hz;
  hz.tol = o.tol;
  WeightSequence M = parse_weight_sequence(resolve_spec(a, o), o.qmax);
  WeightSequence N = parse_weight_sequence(resolve_spec(b, o), o.qmax);
  Verdict sub = relation_subseteq(M, N, o.qmax, hz);
  Verdict prec = relation_preceq(M, N, o.qmax, hz);
  std::printf("%s vs %s\n", print_weight_sequence(M).c_str(),
              print_weight_sequence(N).c_str());
  print_verdict_row("subseteq", sub);
  print_verdict_row("preceq", prec);
  return verdict_exit(prec);
}

int cmd_compare_functions(const std::string& a, const std::string& b,
                          const CommonOpts& o) {
  Horizons hz;
  hz.tol = o.tol;
  ScalarWeight omega{parse_omega(resolve_spec(a, o))};
  ScalarWeight sigma{parse_omega(resolve_spec(b, o))};
  Verdict fwd = compare_weight_functions(omega, sigma, 1e8, hz);
  Verdict rev = compare_weight_functions(sigma, omega, 1e8, hz);
  std::printf("sigma = O(omega): ");
  print_verdict_row("", fwd);
  std::printf("omega = O(sigma): ");
  print_verdict_row("", rev);
  return verdict_exit(fwd);
}

int cmd_decide(const std::string& a, const std::string& b, const CommonOpts& o) {
  Horizons hz;
  hz.q_max = o.qmax;
  hz.tol = o.tol;
  Kind kind = parse_kind(o.kind);
  BanachSpaceModel model = make_model(o);
  SpaceSpec A = parse_space(resolve_spec(a, o), kind, model, o.qmax);
  SpaceSpec B = parse_space(resolve_spec(b, o), kind, model, o.qmax);
  DecisionCertificate cert = decide_inclusion(A, B, hz);
  write_report(o.out, {cert}, {});
  std::printf("%s\n", render_summary({cert}, {}).c_str());
  switch (cert.conclusion) {
    case Conclusion::Included: return 0;
    case Conclusion::NotIncluded: return 1;
    case Conclusion::Inconclusive: return 3;
  }
  return 3;
}

void run_reconstruction_suite(std::vector<CheckResult>& out, const CommonOpts& o) {
  GridSpec g = GridSpec::standard(1);
  std::mt19937_64 rng(o.seed);

  Window wi = interpolating_window(AnalyticFunction::gaussian(1.0), g);
  SequenceData c = SequenceData::zero(1, 64);
  std::uniform_int_distribution<int> pick(-64, 64);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int i = 0; i < 16; ++i) {
    std::vector<int> j{pick(rng)};
    c.at(j) = cplx(uni(rng), uni(rng));
  }
  GridFunction r = synthesis(c, wi);
  SequenceData back = evaluation(r, 64);
  double worst = 0.0;
  for (std::size_t i = 0; i < c.c.size(); ++i)
    worst = std::max(worst, std::abs(c.c[i] - back.c[i]));
  out.push_back({"reconstruction", "c = S(R_psi(c))", worst <= 1e-8, worst, 1e-8, ""});

  Window wp = partition_window(1.0, g);
  std::vector<std::pair<std::vector<int>, cplx>> terms;
  for (int k = -8; k <= 8; ++k) terms.push_back({{k}, cplx(uni(rng), uni(rng))});
  AnalyticFunction f = AnalyticFunction::trig(terms, 1);
  PeriodizeResult pr = periodize(multiply(wp, GridFunction::analytic(g, f)));
  double sup = 0.0;
  for (int i = 0; i <= 512; ++i) {
    double x = -1.0 + 2.0 * i / 512.0;
    sup = std::max(sup, std::abs(pr.g.provider().value1(x) - f.value1(x)));
  }
  out.push_back({"reconstruction", "f = Pi(L_psi(f))", sup <= o.tol, sup, o.tol, ""});

  Parametrix1D p = Parametrix1D::make(8);
  AnalyticFunction fb = AnalyticFunction::bump(8, 2.0);
  ParametrixReport r1 = parametrix_reproduce(p, fb, std::ldexp(1.0, -6));
  ParametrixReport r2 = parametrix_reproduce(p, fb, std::ldexp(1.0, -7));
  out.push_back({"reconstruction", "parametrix identity", r1.max_error <= o.tol,
                 r1.max_error, o.tol, ""});
  double ratio = r1.max_error / r2.max_error;
  out.push_back({"reconstruction", "parametrix convergence", ratio >= 3.0, ratio, 3.0,
                 "error ratio under h -> h/2"});
}

void run_norms_suite(std::vector<CheckResult>& out, const CommonOpts& o) {
  GridSpec g = GridSpec::standard(1);
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> pick(-int(g.T) + 1, int(g.T) - 1);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  int mismatches = 0, trials = 100;
  for (int t = 0; t < trials; ++t) {
    SequenceData c = SequenceData::zero(1, int(g.T) - 1);
    int nnz = 1 + int(rng() % 12);
    for (int i = 0; i < nnz; ++i) {
      std::vector<int> j{pick(rng)};
      c.at(j) = cplx(uni(rng), uni(rng));
    }
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
      auto model = BanachSpaceModel::lp(p, g);
      double got = ed_norm(model, c).value;
      std::vector<double> mags;
      for (const auto& v : c.c) mags.push_back(std::abs(v));
      double want;
      if (std::isinf(p)) {
        want = 0.0;
        for (double m : mags) want = std::max(want, m);
      } else if (p == 1.0) {
        want = pairwise_sum(mags);
      } else {
        for (double& m : mags) m = m * m;
        want = std::sqrt(pairwise_sum(mags));
      }
      if (got != want) ++mismatches;
    }
  }
  out.push_back({"norms", "ed_norm = lp bitwise", mismatches == 0, double(mismatches),
                 0.0, std::to_string(trials) + " random sequences, p in {1,2,inf}"});

  std::mt19937_64 rng2(o.seed + 1);
  Window wi = interpolating_window(AnalyticFunction::gaussian(1.0), g);
  int violations = 0;
  for (int t = 0; t < 20; ++t) {
    SequenceData c = SequenceData::zero(1, 8);
    for (int j = -8; j <= 8; ++j) {
      std::vector<int> jj{j};
      c.at(jj) = cplx(uni(rng2), uni(rng2));
    }
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
      auto b = synthesis_norm_check(c, wi, BanachSpaceModel::lp(p, g));
      if (!b.holds) ++violations;
    }
  }
  out.push_back({"norms", "synthesis norm bound", violations == 0, double(violations),
                 0.0, "ratio <= 1 on random coefficient sets"});
}

int cmd_verify(const std::string& suite, const CommonOpts& o) {
  std::vector<CheckResult> checks;
  if (suite == "reconstruction" || suite == "all") run_reconstruction_suite(checks, o);
  if (suite == "norms" || suite == "all") run_norms_suite(checks, o);
  if (checks.empty()) {
    std::fprintf(stderr, "unknown suite '%s'\n", suite.c_str());
    return 2;
  }
  std::string summary = render_summary({}, checks);
  std::printf("%s", summary.c_str());
  write_file(o.out + "/summary.txt", summary);
  write_file(o.out + "/certificate.csv", render_checks_csv(checks));
  for (const auto& c : checks)
    if (!c.passed) return 1;
  return 0;
}

int cmd_report(const std::vector<std::string>& inputs, const CommonOpts& o) {
  // Re-renders previously written CSV rows: concatenates row-for-row (one
  // header), and derives the summary from conclusion/result rows.
  std::string csv;
  std::string summary;
  bool have_header = false;
  for (const auto& path : inputs) {
    std::ifstream f(path);
    if (!f) {
      std::fprintf(stderr, "cannot read %s\n", path.c_str());
      return 2;
    }
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
      if (line.empty()) continue;
      bool header = line.rfind("certificate,", 0) == 0 || line.rfind("suite,", 0) == 0;
      if (header && first) {
        first = false;
        if (have_header) continue;
        have_header = true;
      }
      csv += line + "\n";
      std::stringstream ss(line);
      std::vector<std::string> cells;
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      if (cells.size() >= 4 && cells[1] == "conclusion")
        summary += "certificate " + cells[0] + ": " + cells[3] + "\n";
      if (cells.size() >= 3 && cells[0] != "suite" && cells[0] != "certificate" &&
          (cells[2] == "pass" || cells[2] == "fail"))
        summary += cells[2] + "  " + cells[0] + "/" + cells[1] + "\n";
    }
  }
  write_file(o.out + "/certificate.csv", csv);
  write_file(o.out + "/summary.txt", summary);
  std::printf("%s", summary.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calculus of weight sequences, functions and systems"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string spec_a, spec_b, suite = "all";
  std::vector<std::string> report_inputs;

  auto* conditions = app.add_subcommand("conditions", "check system conditions");
  conditions->add_option("spec", spec_a, "system or weight-function spec")->required();
  add_common(conditions, o);

  auto* cmps = app.add_subcommand("compare-sequences", "decide subseteq / preceq");
  cmps->add_option("a", spec_a, "left weight sequence")->required();
  cmps->add_option("b", spec_b, "right weight sequence")->required();
  add_common(cmps, o);

  auto* cmpf = app.add_subcommand("compare-functions", "decide sigma = O(omega)");
  cmpf->add_option("a", spec_a, "omega spec")->required();
  cmpf->add_option("b", spec_b, "sigma spec")->required();
  add_common(cmpf, o);

  auto* decide = app.add_subcommand("decide-inclusion", "decide space inclusion");
  decide->add_option("a", spec_a, "left space spec")->required();
  decide->add_option("b", spec_b, "right space spec")->required();
  add_common(decide, o);

  auto* verify = app.add_subcommand("verify", "run identity suites");
  verify->add_option("--suite", suite, "reconstruction, norms, or all");
  add_common(verify, o);

  auto* report = app.add_subcommand("report", "re-render certificates");
  report->add_option("inputs", report_inputs, "certificate.csv files");
  add_common(report, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (conditions->parsed()) return cmd_conditions(spec_a, o);
    if (cmps->parsed()) return cmd_compare_sequences(spec_a, spec_b, o);
    if (cmpf->parsed()) return cmd_compare_functions(spec_a, spec_b, o);
    if (decide->parsed()) return cmd_decide(spec_a, spec_b, o);
    if (verify->parsed()) return cmd_verify(suite, o);
    if (report->parsed()) return cmd_report(report_inputs, o);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
