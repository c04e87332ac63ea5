#include "semitall/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "semitall/acceptance.hpp"
#include "semitall/certifier.hpp"
#include "semitall/classifier.hpp"
#include "semitall/error.hpp"
#include "semitall/json_writer.hpp"
#include "semitall/polyfactor.hpp"
#include "semitall/solver.hpp"
#include "semitall/tensor_io.hpp"
#include "semitall/tensorcore.hpp"

namespace semitall {

namespace {

enum class OutputMode { Json, Csv, Plain };

struct RunConfig {
  std::string command;
  std::optional<int> m, n, p;
  double eps = 1e-3;
  int trials = 50;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  int jobs = 1;
  std::string input;
  std::string output;
  std::string save_input;
  std::string experiment_mode;
  OutputMode mode = OutputMode::Json;
};

class Elapsed {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json big_to_json(const BigInt& v) {
  if (v <= BigInt(std::numeric_limits<std::int64_t>::max())) return static_cast<std::int64_t>(v);
  return v.str();
}

json complex_vector(const CVector& v) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return json{{"re", re}, {"im", im}};
}

Format require_format(const RunConfig& cfg) {
  if (!cfg.m || !cfg.n) fail(ErrorCode::Domain, cfg.command + ": --m and --n are required");
  return Format::critical(*cfg.m, *cfg.n);
}

json tolerances_json(const CertifyOptions& opts) {
  return json{{"span_tol", opts.span_tol},
              {"reality_tol", opts.solve.reality_tol},
              {"kernel_tol", opts.solve.kernel_tol},
              {"dedup_tol", opts.solve.dedup_tol},
              {"corrector_tol", opts.solve.track.corrector_tol},
              {"final_tol", opts.solve.track.final_tol},
              {"chart_max_condition", opts.max_condition}};
}

CertifyOptions certify_options(const RunConfig& cfg) {
  CertifyOptions opts;
  opts.solve.seed = cfg.seed;
  opts.solve.jobs = cfg.jobs;
  if (cfg.tol) opts.span_tol = *cfg.tol;
  return opts;
}

json verdict_json(const Verdict& v) {
  json reasons = json::array();
  for (Reason r : v.reasons) reasons.push_back(to_string(r));
  json doc{{"m", v.m}, {"n", v.n}, {"p", v.p}, {"verdict", to_string(v.trank)}, {"reasons", reasons}, {"grank", v.grank}};
  if (v.p == (v.m - 1) * (v.n - 1) + 1) {
    doc["alpha"] = big_to_json(v.alpha);
    doc["bit_disjoint"] = v.bit_disjoint;
  }
  if (v.trank == TrankSet::Single) doc["trank"] = {v.p};
  if (v.trank == TrankSet::Plural) doc["trank"] = {v.p, v.p + 1};
  return doc;
}

std::string reasons_text(const Verdict& v) {
  std::string s;
  for (Reason r : v.reasons) s += (s.empty() ? "" : ";") + std::string(to_string(r));
  return s;
}

json stats_json(const ExperimentStats& st) {
  json verdicts = json::array();
  for (CertVerdict v : st.verdicts) verdicts.push_back(to_string(v));
  return json{{"kind", st.kind},
              {"m", st.format.m},
              {"n", st.format.n},
              {"p", st.format.p},
              {"eps", st.eps},
              {"seed", st.seed},
              {"trials", st.trials},
              {"rank_p", st.rank_p},
              {"rank_gt_p", st.rank_gt_p},
              {"inconclusive", st.inconclusive},
              {"chart_violations", st.chart_violations},
              {"mean_dim_U", st.mean_dim_U},
              {"max_dim_U", st.max_dim_U},
              {"dim_U", st.dim_U},
              {"verdicts", verdicts}};
}

json certificate_json(const RankCertificate& c) {
  json psis = json::array();
  for (Eigen::Index j = 0; j < c.psi_vectors.cols(); ++j) {
    json col = json::array();
    for (Eigen::Index i = 0; i < c.psi_vectors.rows(); ++i) col.push_back(c.psi_vectors(i, j));
    psis.push_back(col);
  }
  return json{{"m", c.format.m},
              {"n", c.format.n},
              {"p", c.format.p},
              {"verdict", to_string(c.verdict)},
              {"reason", c.reason},
              {"dim_U", c.dim_U},
              {"real_points", c.real_points},
              {"paths_total", c.paths_total},
              {"paths_failed", c.paths_failed},
              {"multiplicity_warnings", c.multiplicity_warnings},
              {"degenerate_points", c.degenerate_points},
              {"psi_vectors", psis}};
}

// Reads --input or builds the default tensor for solve/certify.
Tensor3 input_tensor(const RunConfig& cfg, bool pencil) {
  if (!cfg.input.empty()) return load_tensor(cfg.input);
  const Format fmt = require_format(cfg);
  const StartFrame frame = make_start_frame(fmt.m, fmt.n);
  if (pencil) return frame.Aprime + random_tensor(fmt.u, fmt.n, fmt.m, cfg.seed) * cfg.eps;
  return tau(frame.W0 + cfg.eps * random_matrix(fmt.u, fmt.p, cfg.seed), fmt);
}

struct Report {
  json doc;
  std::string text;  // plain or csv rendering, when the command provides one
  int exit_code = kExitOk;
};

Report cmd_alpha(const RunConfig& cfg) {
  const Format fmt = require_format(cfg);
  const BigInt alpha = alpha_closed(fmt.m, fmt.n);
  Report r;
  r.doc = {{"m", fmt.m}, {"n", fmt.n}, {"p", fmt.p}, {"u", fmt.u}, {"alpha", big_to_json(alpha)},
           {"alpha_lt_p", alpha < fmt.p}};
  r.text = "alpha(" + std::to_string(fmt.m) + "," + std::to_string(fmt.n) + ") = " + alpha.str() +
           ", p = " + std::to_string(fmt.p) + (alpha < fmt.p ? " (alpha < p)\n" : " (alpha >= p)\n");
  return r;
}

Report cmd_divisors(const RunConfig& cfg) {
  const Format fmt = require_format(cfg);
  json list = json::array();
  std::ostringstream text;
  for (const auto& sel : real_divisor_selections(fmt.u, fmt.m - 1)) {
    ComplexPoly h = sel.expand();
    std::vector<double> coeffs;
    for (cplx c : h.coeffs) coeffs.push_back(c.real());
    for (auto& c : h.coeffs) c = cplx(c.real(), 0.0);
    const auto point = divisor_to_point(h, fmt.m);
    list.push_back({{"roots", sel.subset}, {"coefficients", coeffs}, {"point", point}});
    text << "roots";
    for (int k : sel.subset) text << ' ' << k;
    text << "  coefficients";
    for (double c : coeffs) text << ' ' << format_double(c);
    text << '\n';
  }
  Report r;
  r.doc = {{"m", fmt.m}, {"n", fmt.n}, {"u", fmt.u}, {"degree", fmt.m - 1}, {"count", list.size()}, {"divisors", list}};
  r.text = text.str();
  return r;
}

Report cmd_classify(const RunConfig& cfg) {
  if (!cfg.m || !cfg.n) fail(ErrorCode::Domain, "classify: --m and --n are required");
  const int p = cfg.p.value_or((*cfg.m - 1) * (*cfg.n - 1) + 1);
  const Verdict v = classify(*cfg.m, *cfg.n, p);
  Report r;
  r.doc = verdict_json(v);
  r.text = std::string(to_string(v.trank)) + " " + reasons_text(v) + "\n";
  return r;
}

Report cmd_table(const RunConfig& cfg) {
  const int m_max = cfg.m.value_or(9);
  const int n_max = cfg.n.value_or(40);
  const auto rows = theorem_table(m_max, n_max);
  json list = json::array();
  std::ostringstream csv;
  csv << "m,n,p,alpha,bit_disjoint,verdict,reasons\n";
  for (const auto& v : rows) {
    list.push_back(verdict_json(v));
    csv << v.m << ',' << v.n << ',' << v.p << ',' << v.alpha.str() << ',' << (v.bit_disjoint ? "true" : "false")
        << ',' << to_string(v.trank) << ',' << reasons_text(v) << '\n';
  }
  Report r;
  r.doc = {{"m_max", m_max}, {"n_max", n_max}, {"rows", list}};
  r.text = csv.str();
  return r;
}

Report cmd_solve(const RunConfig& cfg) {
  const Elapsed clock;
  const Tensor3 B = input_tensor(cfg, true);
  if (!cfg.save_input.empty()) save_tensor(cfg.save_input, B);
  SolveOptions opts;
  opts.seed = cfg.seed;
  opts.jobs = cfg.jobs;
  if (cfg.tol) opts.reality_tol = *cfg.tol;
  const SolveReport rep = solve_all(B, opts);
  json sols = json::array();
  for (const auto& s : rep.solutions)
    sols.push_back({{"path", s.path}, {"a", complex_vector(s.a)}, {"b", complex_vector(s.b)},
                    {"residual", s.residual}, {"is_real", s.is_real}, {"chart_escape", s.chart_escape}});
  json failures = json::array();
  for (const auto& f : rep.failures) failures.push_back({{"path", f.path}, {"reason", to_string(f.reason)}, {"t", f.t}});
  json warnings = json::array();
  for (const auto& w : rep.warnings)
    warnings.push_back({{"code", "WARN_MULTIPLICITY"}, {"paths", {w.first, w.second}}, {"distance", w.distance}});
  Report r;
  r.doc = {{"shape", B.shape()},
           {"n_paths", rep.n_paths},
           {"real_count", rep.real_count},
           {"complete", rep.complete()},
           {"gamma", {rep.gamma.real(), rep.gamma.imag()}},
           {"chart_b", std::vector<double>(rep.chart_b.data(), rep.chart_b.data() + rep.chart_b.size())},
           {"retracked_paths", rep.retracked},
           {"tolerances", {{"reality_tol", opts.reality_tol}, {"dedup_tol", opts.dedup_tol},
                           {"corrector_tol", opts.track.corrector_tol}, {"final_tol", opts.track.final_tol}}},
           {"failures", failures},
           {"warnings", warnings},
           {"solutions", sols},
           {"elapsed_seconds", clock.seconds()}};
  std::ostringstream text;
  text << rep.solutions.size() << "/" << rep.n_paths << " endpoints, " << rep.real_count << " real, "
       << rep.failures.size() << " failures, " << rep.warnings.size() << " multiplicity warnings\n";
  r.text = text.str();
  if (!rep.failures.empty()) r.exit_code = kExitNumerical;
  return r;
}

Report cmd_certify(const RunConfig& cfg) {
  const Elapsed clock;
  const Tensor3 T = input_tensor(cfg, false);
  if (!cfg.save_input.empty()) save_tensor(cfg.save_input, T);
  const CertifyOptions opts = certify_options(cfg);
  const RankCertificate cert = certify(T, opts);
  Report r;
  r.doc = certificate_json(cert);
  r.doc["tolerances"] = tolerances_json(opts);
  r.doc["elapsed_seconds"] = clock.seconds();
  r.text = std::string(to_string(cert.verdict)) + " dim_U=" + std::to_string(cert.dim_U) + " real_points=" +
           std::to_string(cert.real_points) + " p=" + std::to_string(cert.format.p) + "\n";
  if (cert.paths_failed > 0) r.exit_code = kExitNumerical;
  return r;
}

Report cmd_experiment(const RunConfig& cfg) {
  const Elapsed clock;
  const Format fmt = require_format(cfg);
  const CertifyOptions opts = certify_options(cfg);
  ExperimentStats st;
  if (cfg.experiment_mode == "perturb") {
    st = perturb_experiment(fmt, cfg.eps, cfg.trials, cfg.seed, opts, cfg.jobs);
  } else if (cfg.experiment_mode == "global") {
    st = global_experiment(fmt, cfg.trials, cfg.seed, opts, cfg.jobs);
  } else if (cfg.experiment_mode == "lowrank") {
    st = low_rank_experiment(fmt, cfg.trials, cfg.seed, opts, cfg.jobs);
  } else {
    fail(ErrorCode::Domain, "experiment: mode must be perturb, global or lowrank");
  }
  Report r;
  r.doc = stats_json(st);
  r.doc["tolerances"] = tolerances_json(opts);
  r.doc["elapsed_seconds"] = clock.seconds();
  std::ostringstream text;
  text << st.kind << " (" << fmt.m << "," << fmt.n << ") trials=" << st.trials << " RANK_P=" << st.rank_p
       << " RANK_GT_P=" << st.rank_gt_p << " INCONCLUSIVE=" << st.inconclusive << " mean_dim_U=" << st.mean_dim_U
       << '\n';
  r.text = text.str();
  return r;
}

Report cmd_selftest(const RunConfig& cfg, std::ostream& err) {
  AcceptanceConfig acfg;
  acfg.seed = cfg.seed;
  acfg.jobs = cfg.jobs;
  acfg.tol_override = cfg.tol;
  const Elapsed clock;
  const auto results = run_acceptance(acfg, cfg.mode == OutputMode::Json ? &err : nullptr);
  json list = json::array();
  std::ostringstream text;
  bool all = true;
  for (const auto& res : results) {
    all = all && res.passed;
    list.push_back({{"id", res.id}, {"name", res.name}, {"passed", res.passed}, {"detail", res.detail},
                    {"seconds", res.seconds}, {"budget_seconds", res.budget_seconds}});
    text << format_result_line(res) << '\n';
  }
  text << (all ? "all criteria passed" : "some criteria FAILED") << '\n';
  Report r;
  r.doc = {{"passed", all}, {"criteria", list}, {"elapsed_seconds", clock.seconds()}};
  if (cfg.tol) r.doc["tol_override"] = *cfg.tol;
  r.text = text.str();
  r.exit_code = all ? kExitOk : kExitNumerical;
  return r;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Typical ranks of real n x p x m tensors at p = (m-1)(n-1)+1", "semitall-rank"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string format = "json";
  app.add_option("--m", cfg.m, "number of slices m (3 <= m <= n)");
  app.add_option("--n", cfg.n, "n");
  app.add_option("--p", cfg.p, "p (classify only; default (m-1)(n-1)+1)");
  app.add_option("--eps", cfg.eps, "perturbation size")->capture_default_str();
  app.add_option("--trials", cfg.trials, "number of trials")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--tol", cfg.tol, "tolerance override");
  app.add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--input", cfg.input, "input tensor file");
  app.add_option("--output", cfg.output, "write the report here instead of stdout");
  app.add_option("--save-input", cfg.save_input, "write the generated input tensor (solve, certify)");
  app.add_option("--format", format, "json, csv (table only) or plain")
      ->check(CLI::IsMember({"json", "csv", "plain"}))
      ->capture_default_str();

  app.add_subcommand("alpha", "number of real monic degree-(m-1) divisors of y^u + 1");
  app.add_subcommand("divisors", "list the real monic divisors and their points");
  app.add_subcommand("classify", "typical-rank verdict for one format");
  app.add_subcommand("table", "verdicts for 3 <= m <= --m, m <= n <= --n");
  app.add_subcommand("solve", "all solutions of M(a, B) b = 0 by homotopy continuation");
  app.add_subcommand("certify", "rank-p certificate for an n x p x m tensor");
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo certification experiment");
  experiment->add_option("mode", cfg.experiment_mode, "perturb, global or lowrank")
      ->required()
      ->check(CLI::IsMember({"perturb", "global", "lowrank"}));
  app.add_subcommand("selftest", "run the acceptance criteria");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitDomain;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.mode = format == "csv" ? OutputMode::Csv : (format == "plain" ? OutputMode::Plain : OutputMode::Json);
  if (cfg.mode == OutputMode::Csv && cfg.command != "table") {
    err << "error: --format csv is only available for table\n";
    return kExitDomain;
  }

  Report report;
  try {
    if (cfg.command == "alpha") report = cmd_alpha(cfg);
    else if (cfg.command == "divisors") report = cmd_divisors(cfg);
    else if (cfg.command == "classify") report = cmd_classify(cfg);
    else if (cfg.command == "table") report = cmd_table(cfg);
    else if (cfg.command == "solve") report = cmd_solve(cfg);
    else if (cfg.command == "certify") report = cmd_certify(cfg);
    else if (cfg.command == "experiment") report = cmd_experiment(cfg);
    else report = cmd_selftest(cfg, err);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    const bool numerical = e.code() == ErrorCode::Internal || e.code() == ErrorCode::DegenerateStart;
    return numerical ? kExitNumerical : kExitDomain;
  }

  json doc{{"command", cfg.command}, {"seed", cfg.seed}};
  if (cfg.command == "experiment") doc["mode"] = cfg.experiment_mode;
  if (!cfg.input.empty()) doc["input"] = cfg.input;
  if (cfg.command == "solve" || cfg.command == "certify" || cfg.command == "experiment") doc["eps"] = cfg.eps;
  doc.update(report.doc);

  std::ostringstream rendered;
  if (cfg.mode == OutputMode::Json) {
    write_json(rendered, doc);
    rendered << '\n';
  } else {
    rendered << report.text;
  }
  if (cfg.output.empty()) {
    out << rendered.str();
  } else {
    std::ofstream file(cfg.output);
    if (!file) {
      err << "error: cannot open " << cfg.output << "\n";
      return kExitDomain;
    }
    file << rendered.str();
  }
  return report.exit_code;
}

}  // namespace semitall
