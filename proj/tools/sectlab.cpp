#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sectlab/constants.hpp"
#include "sectlab/errors.hpp"
#include "sectlab/functionals.hpp"
#include "sectlab/measures.hpp"
#include "sectlab/parallel.hpp"
#include "sectlab/report.hpp"
#include "sectlab/spec_io.hpp"
#include "sectlab/verifier.hpp"

namespace {

using nlohmann::json;
using namespace sectlab;

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct Output {
  bool pretty = false;
  bool deterministic = false;
  int threads = 0;
};

struct Budgets {
  int frames = Budget{}.frames;
  int samples = Budget{}.sphere_samples;
  int trials = Budget{}.trials;
  int volume_samples = Budget{}.volume_samples;
  int points_per_frame = CheckBudget{}.points_per_frame;
  int transforms = CheckBudget{}.transforms;

  CheckBudget check_budget() const {
    CheckBudget b;
    b.frames = frames;
    b.sphere_samples = samples;
    b.trials = trials;
    b.volume_samples = volume_samples;
    b.points_per_frame = points_per_frame;
    b.transforms = transforms;
    return b;
  }
  json to_json() const {
    return {{"frames", frames},
            {"sphere_samples", samples},
            {"trials", trials},
            {"volume_samples", volume_samples},
            {"points_per_frame", points_per_frame},
            {"transforms", transforms}};
  }
};

void add_budget_flags(CLI::App* cmd, Budgets& b) {
  cmd->add_option("--frames", b.frames, "Grassmannian frames")->check(CLI::PositiveNumber);
  cmd->add_option("--samples", b.samples, "sphere samples per integral")->check(CLI::PositiveNumber);
  cmd->add_option("--trials", b.trials, "simplex trials")->check(CLI::PositiveNumber);
  cmd->add_option("--volume-samples", b.volume_samples)->check(CLI::PositiveNumber);
  cmd->add_option("--points-per-frame", b.points_per_frame)->check(CLI::PositiveNumber);
  cmd->add_option("--transforms", b.transforms, "SL(n) maps in the grinberg check")->check(CLI::NonNegativeNumber);
}

// A spec argument is either inline JSON or a path to a JSON file.
json load_spec(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && arg[first] == '{') {
    try {
      return json::parse(arg);
    } catch (const json::parse_error& e) {
      throw SpecError(std::string("inline spec: ") + e.what());
    }
  }
  return load_json_file(arg);
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json stamp(json doc, const Output& out) {
  doc["build"] = build_id();
  if (!out.deterministic) doc["generated_at"] = timestamp();
  return doc;
}

std::string render(const json& doc, const Output& out) { return out.pretty ? doc.dump(2) : doc.dump(); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw SpecError("cannot write " + path);
  f << text;
  if (!f) throw SpecError("write failed for " + path);
}

std::string csv_number(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string reports_csv(const std::vector<CheckReport>& reports) {
  std::string out =
      "schema,check_name,n,k,status,relation,lhs_log,lhs_log_se,rhs_log,rhs_log_se,margin,margin_units,seed\n";
  for (const auto& r : reports) {
    const bool err = r.status == Status::kError;
    out += "sectlab.verify.v1," + csv_field(r.check_name) + "," + std::to_string(r.n) + "," + std::to_string(r.k) +
           "," + to_string(r.status) + "," + (err ? "" : csv_field(to_string(r.relation))) + ",";
    if (!err) {
      const Estimate l = r.lhs.log_domain ? r.lhs : to_log(r.lhs);
      const Estimate rr = r.rhs.log_domain ? r.rhs : to_log(r.rhs);
      out += csv_number(l.value) + "," + csv_number(l.std_error) + "," + csv_number(rr.value) + "," +
             csv_number(rr.std_error) + "," + csv_number(r.margin) + "," + csv_field(r.margin_units);
    } else {
      out += ",,,,,";
    }
    out += "," + std::to_string(r.seed) + "\n";
  }
  return out;
}

int exit_code(const std::vector<CheckReport>& reports) {
  bool fail = false;
  for (const auto& r : reports) {
    if (r.status == Status::kError) return kExitError;
    fail |= r.status == Status::kFail;
  }
  return fail ? kExitFail : 0;
}

void print_error(const std::string& type, const std::string& message) {
  std::cerr << json{{"error", {{"type", type}, {"message", message}}}}.dump() << "\n";
}

// ---- constants ---------------------------------------------------------------

int run_constants(int n, int k, const Output& out) {
  if (n < 2 || k < 1 || k > n - 1) throw DomainError("constants: need n >= 2 and 1 <= k <= n-1");
  const LogScalar g = constants::gamma_nk(n, k);
  json doc = {{"schema", "sectlab.constants.v1"},
              {"n", n},
              {"k", k},
              {"omega_n_log", constants::log_ball_volume(n).log_value},
              {"omega_n", constants::log_ball_volume(n).linear()},
              {"gamma_nk", g.linear()},
              {"gamma_nk_log", g.log_value},
              {"gamma_bounds_ok", constants::gamma_bounds_hold(n, k)},
              {"p_log", constants::log_bp_constant(n, n - k).log_value},
              {"p_s", n - k},
              {"lemma34_ratio", constants::lemma34_ratio(n, k)}};
  std::cout << render(stamp(doc, out), out) << "\n";
  return 0;
}

// ---- estimate ----------------------------------------------------------------

struct EstimateArgs {
  std::string functional;
  std::string body;
  std::string measure;
  std::optional<int> n;
  int k = 1;
  double p = 1.0;
  std::uint64_t seed = 7;
  bool json_out = false;
  Budgets budget;
};

int run_estimate(const EstimateArgs& a, const Output& out) {
  const json body_spec = load_spec(a.body);
  const StarBody body = parse_body(body_spec, a.n);
  const std::optional<DensityOracle> g =
      a.measure.empty() ? std::nullopt : std::optional<DensityOracle>(parse_density(load_spec(a.measure)));
  const StreamHandle stream{a.seed, 0};
  const auto& b = a.budget;
  const int n = body.dim();
  const auto source = [&] { return g ? PointSource::restricted(*g, body) : PointSource::uniform(body); };
  const auto need_k = [&] {
    if (a.k < 1 || a.k > n - 1) throw DomainError("estimate: k must lie in [1, n-1]");
  };

  Estimate e;
  json extra = json::object();
  const std::string& f = a.functional;
  if (f == "volume") {
    e = detail::log_volume_of(body, b.volume_samples, stream);
  } else if (f == "sylvester") {
    e = sylvester(source(), n, a.p, b.trials, stream, b.volume_samples);
  } else if (f == "L") {
    const IsotropicConstant ic = isotropic_constant(source(), b.trials, stream);
    e = ic.value;
    extra["shift"] = vector_to_json(ic.shift);
    extra["recentered"] = ic.recentered;
    extra["sup_rule"] = ic.sup_rule;
  } else if (f == "phi") {
    need_k();
    e = dual_affine_quermass(body, a.k, b.frames, b.samples, stream, b.volume_samples);
  } else if (f == "w") {
    need_k();
    e = w_tilde(body, a.k, b.frames, b.samples, stream, b.volume_samples);
  } else if (f == "i_minus_k") {
    need_k();
    e = i_minus_k(body, a.k, b.samples, stream, b.volume_samples);
  } else if (f == "vrad") {
    e = volume_radius(body, b.samples, stream);
  } else if (f == "max_section") {
    need_k();
    const MaxSection m = max_section_measure(g.value_or(lebesgue()), body, a.k, b.frames, b.samples, stream);
    e = m.value;
    extra["argmax"] = frame_to_json(m.argmax);
  } else if (f == "measure") {
    e = measure_of_body(g.value_or(lebesgue()), body, b.samples, stream);
  } else {
    throw SpecError("unknown functional \"" + f + "\"");
  }

  const json est = estimate_json(e);
  if (!a.json_out) {
    std::cout << f << " = " << csv_number(est.at("value").is_null() ? 0.0 : est.at("value").get<double>());
    if (!est.at("se").is_null()) std::cout << " +- " << est.at("se").get<double>();
    std::cout << "  (log " << est.at("log").get<double>() << ", n = " << est.at("n_samples").get<long long>()
              << ")\n";
    return 0;
  }
  json config = {{"command", "estimate"}, {"functional", f},   {"body", body_spec}, {"k", a.k},
                 {"p", a.p},              {"seed", a.seed},    {"budget", b.to_json()}};
  if (g) config["measure"] = g->spec();
  if (a.n) config["n"] = *a.n;
  json doc = {{"schema", "sectlab.estimate.v1"},
              {"functional", f},
              {"n", n},
              {"estimate", est},
              {"extra", extra},
              {"config", config}};
  std::cout << render(stamp(doc, out), out) << "\n";
  return 0;
}

// ---- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string check;
  std::string body;
  std::string body2;
  std::string measure;
  std::optional<int> n;
  int k = 1;
  std::uint64_t seed = 7;
  std::string json_path;
  std::string csv_path;
  bool reverse = false;
  Budgets budget;
};

void fill_dim(json& spec, std::optional<int> n) {
  if (n && !spec.contains("dim")) spec["dim"] = *n;
}

int run_verify(const VerifyArgs& a, const Output& out) {
  json entry = {{"check", a.check}, {"k", a.k}};
  json body = load_spec(a.body);
  fill_dim(body, a.n);
  entry["body"] = body;
  if (!a.body2.empty()) {
    json body2 = load_spec(a.body2);
    fill_dim(body2, a.n);
    entry["body2"] = body2;
  }
  if (!a.measure.empty()) entry["measure"] = load_spec(a.measure);
  if (a.reverse) entry["reverse"] = true;
  // fail early on a bad spec instead of reporting it as a check error
  parse_body(entry.at("body"));
  if (entry.contains("body2")) parse_body(entry.at("body2"));
  if (entry.contains("measure")) parse_density(entry.at("measure"));

  const std::vector<CheckReport> reports = run_check(entry, a.budget.check_budget(), a.seed);
  json config = {{"command", "verify"}, {"entry", entry}, {"seed", a.seed}, {"budget", a.budget.to_json()}};
  json rows = json::array();
  for (const auto& r : reports) {
    json j = to_json(r);
    j["config"] = config;
    rows.push_back(std::move(j));
  }
  const int code = exit_code(reports);
  json doc = {{"schema", "sectlab.verify.v1"},
              {"status", code == 0 ? "pass" : code == kExitFail ? "fail" : "error"},
              {"config", config},
              {"reports", rows}};
  const std::string text = render(stamp(doc, out), out) + "\n";
  if (!a.json_path.empty()) write_file(a.json_path, text);
  if (!a.csv_path.empty()) write_file(a.csv_path, reports_csv(reports));
  std::cout << text;
  return code;
}

// ---- scan --------------------------------------------------------------------

int run_scan(const std::string& check, int n_min, int n_max, const std::string& csv_path) {
  if (check != "lemma34") throw SpecError("scan: unknown check \"" + check + "\" (expected lemma34)");
  if (n_min < 2 || n_max < n_min) throw DomainError("scan: need 2 <= n-min <= n-max");
  std::string text = "schema,n,k,gamma_nk,log_gamma_nk,gamma_bounds_ok,log_p,lemma34_ratio\n";
  for (int n = n_min; n <= n_max; ++n) {
    for (int k = 1; k <= n - 1; ++k) {
      const LogScalar g = constants::gamma_nk(n, k);
      text += "sectlab.scan.v1," + std::to_string(n) + "," + std::to_string(k) + "," + csv_number(g.linear()) + "," +
              csv_number(g.log_value) + "," + (constants::gamma_bounds_hold(n, k) ? "true" : "false") + "," +
              csv_number(constants::log_bp_constant(n, n - k).log_value) + "," +
              csv_number(constants::lemma34_ratio(n, k)) + "\n";
    }
  }
  if (csv_path.empty()) {
    std::cout << text;
  } else {
    write_file(csv_path, text);
  }
  return 0;
}

// ---- suite -------------------------------------------------------------------

struct SuiteArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool reverse = false;
  bool list = false;
  std::string json_path;
  std::string csv_path;
};

int run_suite_cmd(const SuiteArgs& a, const Output& out) {
  json config = a.config_path.empty() ? default_suite_config() : load_spec(a.config_path);
  if (a.seed) config["seed"] = *a.seed;
  if (a.reverse) config["reverse"] = true;
  if (a.list) {
    json entries = json::array();
    for (auto& e : expand_suite(config)) entries.push_back(std::move(e));
    std::cout << render({{"schema", "sectlab.suite_plan.v1"}, {"entries", entries}}, out) << "\n";
    return 0;
  }
  const SuiteResult result = run_suite(config);
  const std::string text = render(stamp(suite_json(result), out), out) + "\n";
  if (!a.json_path.empty()) write_file(a.json_path, text);
  if (!a.csv_path.empty()) write_file(a.csv_path, reports_csv(result.reports));
  std::cout << text;
  switch (result.status) {
    case Status::kError:
      return kExitError;
    case Status::kFail:
      return kExitFail;
    default:
      return 0;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sectlab: sections, functionals and inequality checks for star bodies"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(build_id()));
  Output out;
  app.add_option("--threads", out.threads, "worker threads (default SECTLAB_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--deterministic", out.deterministic, "omit timestamps from JSON output");
  app.add_flag("--pretty", out.pretty, "indent JSON output");

  int c_n = 0, c_k = 0;
  auto* constants_cmd = app.add_subcommand("constants", "exact constants for (n, k)");
  constants_cmd->add_option("--n", c_n)->required();
  constants_cmd->add_option("--k", c_k)->required();

  EstimateArgs est;
  auto* estimate_cmd = app.add_subcommand("estimate", "Monte Carlo estimate of one functional");
  estimate_cmd->add_option("--functional", est.functional)
      ->required()
      ->check(CLI::IsMember({"volume", "sylvester", "L", "phi", "w", "i_minus_k", "vrad", "max_section", "measure"}));
  estimate_cmd->add_option("--body", est.body, "body spec file or inline JSON")->required();
  estimate_cmd->add_option("--measure", est.measure, "density spec file or inline JSON");
  estimate_cmd->add_option("--n", est.n, "dimension for specs without \"dim\"");
  estimate_cmd->add_option("--k", est.k);
  estimate_cmd->add_option("--p", est.p, "moment order for sylvester");
  estimate_cmd->add_option("--seed", est.seed);
  estimate_cmd->add_flag("--json", est.json_out, "emit a JSON report");
  add_budget_flags(estimate_cmd, est.budget);

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "run one check");
  verify_cmd->add_option("--check", ver.check)->required()->check(CLI::IsMember(check_names()));
  verify_cmd->add_option("--body", ver.body, "body spec file or inline JSON")->required();
  verify_cmd->add_option("--body2", ver.body2, "second body (busemann_petty)");
  verify_cmd->add_option("--measure", ver.measure, "density spec file or inline JSON");
  verify_cmd->add_option("--n", ver.n, "dimension for specs without \"dim\"");
  verify_cmd->add_option("--k", ver.k);
  verify_cmd->add_option("--seed", ver.seed);
  verify_cmd->add_option("--json", ver.json_path, "also write the JSON report here");
  verify_cmd->add_option("--csv", ver.csv_path, "write one CSV row per report");
  verify_cmd->add_flag("--reverse", ver.reverse, "swap the sides of inequalities");
  add_budget_flags(verify_cmd, ver.budget);

  std::string scan_check = "lemma34";
  std::string scan_csv;
  int n_min = 2, n_max = 60;
  auto* scan_cmd = app.add_subcommand("scan", "sweep an (n, k) grid to CSV");
  scan_cmd->add_option("--check", scan_check);
  scan_cmd->add_option("--n-min", n_min);
  scan_cmd->add_option("--n-max", n_max);
  scan_cmd->add_option("--csv", scan_csv, "output path (default stdout)");

  SuiteArgs suite;
  auto* suite_cmd = app.add_subcommand("suite", "run the verification suite");
  suite_cmd->add_option("--config", suite.config_path, "suite config (default: built-in grid)");
  suite_cmd->add_option("--seed", suite.seed);
  suite_cmd->add_flag("--reverse", suite.reverse, "swap the sides of every inequality");
  suite_cmd->add_flag("--list", suite.list, "print the expanded check list and exit");
  suite_cmd->add_option("--json", suite.json_path);
  suite_cmd->add_option("--csv", suite.csv_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return kExitError;
  }

  try {
    if (out.threads > 0) set_worker_count(out.threads);
    if (*constants_cmd) return run_constants(c_n, c_k, out);
    if (*estimate_cmd) return run_estimate(est, out);
    if (*verify_cmd) return run_verify(ver, out);
    if (*scan_cmd) return run_scan(scan_check, n_min, n_max, scan_csv);
    if (*suite_cmd) return run_suite_cmd(suite, out);
  } catch (const SpecError& e) {
    print_error("spec", e.what());
    return kExitError;
  } catch (const DomainError& e) {
    print_error("domain", e.what());
    return kExitError;
  } catch (const Error& e) {
    print_error("numeric", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return kExitError;
  }
  return kExitError;
}
