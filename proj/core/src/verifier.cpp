#include "sectlab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "sectlab/constants.hpp"
#include "sectlab/errors.hpp"
#include "sectlab/parallel.hpp"
#include "sectlab/sampler.hpp"
#include "sectlab/spec_io.hpp"

namespace sectlab {

namespace {

using nlohmann::json;

json budget_json(const CheckBudget& b) {
  return {{"frames", b.frames},
          {"sphere_samples", b.sphere_samples},
          {"trials", b.trials},
          {"volume_samples", b.volume_samples},
          {"points_per_frame", b.points_per_frame},
          {"transforms", b.transforms}};
}

CheckBudget merge_budget(CheckBudget b, const json& j) {
  if (!j.is_object()) return b;
  b.frames = j.value("frames", b.frames);
  b.sphere_samples = j.value("sphere_samples", b.sphere_samples);
  b.trials = j.value("trials", b.trials);
  b.volume_samples = j.value("volume_samples", b.volume_samples);
  b.points_per_frame = j.value("points_per_frame", b.points_per_frame);
  b.transforms = j.value("transforms", b.transforms);
  return b;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

// Section scans shared by checks that run on the same (measure, body, k,
// budget, stream) cell within one suite.
class ScanCache {
 public:
  SectionScan get(const DensityOracle& g, const StarBody& body, int k, const CheckBudget& b, StreamHandle stream) {
    const std::string key = g.spec().dump() + "|" + body.spec().dump() + "|" + std::to_string(k) + "|" +
                            std::to_string(b.frames) + "|" + std::to_string(b.sphere_samples) + "|" +
                            std::to_string(stream.seed) + "|" + std::to_string(stream.stream_id);
    std::promise<SectionScan> promise;
    std::shared_future<SectionScan> result;
    bool owner = false;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = scans_.find(key);
      if (it == scans_.end()) {
        result = promise.get_future().share();
        scans_.emplace(key, result);
        owner = true;
      } else {
        result = it->second;
      }
    }
    if (owner) {
      try {
        promise.set_value(scan_sections(g, body, k, b.frames, b.sphere_samples, stream));
      } catch (...) {
        promise.set_exception(std::current_exception());
      }
    }
    return result.get();
  }

 private:
  std::mutex mutex_;
  std::map<std::string, std::shared_future<SectionScan>> scans_;
};

namespace {

SectionScan measure_scan(ScanCache* cache, const DensityOracle& g, const StarBody& body, int k, const CheckBudget& b,
                         StreamHandle stream) {
  if (cache) return cache->get(g, body, k, b, stream);
  return scan_sections(g, body, k, b.frames, b.sphere_samples, stream);
}

void check_k(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1) {
    throw DomainError("need 1 <= k <= n-1, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
}

CheckReport base_report(std::string name, int n, int k, StreamHandle stream, json inputs) {
  CheckReport r;
  r.check_name = std::move(name);
  r.n = n;
  r.k = k;
  r.seed = stream.seed;
  r.inputs = std::move(inputs);
  return r;
}

Estimate log_body_volume(const StarBody& body, const CheckBudget& b, StreamHandle stream) {
  return log_volume(body, b.volume_samples, stream.child(streams::kVolume));
}

Estimate log_body_measure(const DensityOracle& g, const StarBody& body, const CheckBudget& b, StreamHandle stream) {
  return to_log(measure_of_body(g, body, b.volume_samples, stream.child(streams::kMeasure)));
}

double log_gamma_nk(int n, int k) { return constants::gamma_nk(n, k).log_value; }
double log_p(int n, int s) { return constants::log_bp_constant(n, s).log_value; }

// Sum of log-domain estimates, each scaled, plus an exact constant.
Estimate combine(double constant, std::initializer_list<std::pair<double, Estimate>> terms, std::string rule) {
  double value = constant;
  double var = 0.0;
  std::int64_t count = 0;
  for (const auto& [a, e] : terms) {
    const Estimate l = to_log(e);
    value += a * l.value;
    var += a * a * l.std_error * l.std_error;
    count = std::max(count, l.n_samples);
  }
  return Estimate{value, std::sqrt(var), count, true, std::move(rule)};
}

json scan_summary(const SectionScan& scan) {
  double lo = scan.measures.front().value;
  double hi = lo;
  for (const auto& m : scan.measures) {
    lo = std::min(lo, m.value);
    hi = std::max(hi, m.value);
  }
  return {{"frames", scan.measures.size()}, {"min", lo}, {"max", hi}, {"argmax", scan.argmax}};
}

CheckReport chain_check(std::string name, const DensityOracle& g, const StarBody& body, int k, const CheckBudget& b,
                        StreamHandle stream, ScanCache* cache) {
  const int n = body.dim();
  check_k(n, k);
  g.check_dim(n);
  const SupBound sup = g.sup_on(body);
  if (!std::isfinite(sup.value)) throw DomainError(name + ": density must be bounded on the body");
  CheckReport r = base_report(std::move(name), n, k, stream, {{"body", body.spec()}, {"measure", g.spec()}, {"k", k}});
  const SectionScan scan = measure_scan(cache, g, body, k, b, stream);
  const Estimate mu = log_body_measure(g, body, b, stream);
  const Estimate vol = log_body_volume(body, b, stream);
  const Estimate eps = to_log(scan.max());
  r.lhs = combine(0.0, {{n - k, mu}}, "(n-k) log mu(K)");
  r.rhs = combine(-n * log_gamma_nk(n, k) + log_p(n, n - k),
                  {{n - k, eps}, {static_cast<double>(k * (n - k)) / n, vol}},
                  "gamma^-n p(n,n-k) eps^(n-k) |K|^(k(n-k)/n)");
  r.notes.push_back("max is sampled over " + std::to_string(b.frames) + " frames (a lower bound, so the check is conservative)");
  r.extra["sections"] = scan_summary(scan);
  r.extra["eps"] = scan.max().value;
  judge_less_equal(r);
  return r;
}

// Per-frame log of |K cap F|^{n-k} E|conv|^k (or the measure analogue),
// averaged over frames in log domain.
Estimate frame_identity_rhs(const SectionScan& scan, int n, int k, const std::function<PointSource(const Frame&)>& source,
                            const CheckBudget& b, StreamHandle stream) {
  const StreamHandle points = stream.child(streams::kPoints);
  const auto logs = parallel_map(scan.frames.size(), [&](std::size_t f) {
    const Estimate inner = log_simplex_moment(source(scan.frames[f]), k, b.points_per_frame, points.child(f));
    return (n - k) * std::log(scan.measures[f].value) + inner.value;
  });
  Estimate e = log_mean_exp(logs);
  e.value += log_p(n, n - k);
  e.rule = "p(n,n-k) * mean over frames of section^(n-k) * E|conv|^k (" + std::to_string(b.points_per_frame) +
           " draws per frame); " + e.rule;
  return e;
}

Matrix sl_transform(int n, StreamHandle stream, std::size_t index) {
  CounterRng rng(stream.child(streams::kTransforms).child(index));
  const Matrix q = random_rotation(n, rng);
  Vector a(n);
  for (int i = 0; i < n; ++i) a[i] = 0.3 * rng.normal();
  a.array() -= a.mean();
  return q * a.array().exp().matrix().asDiagonal();
}

void reverse_report(CheckReport& r) {
  if (r.status == Status::kError || r.relation != Relation::kLessEqual) return;
  std::swap(r.lhs, r.rhs);
  judge_less_equal(r);
  r.notes.push_back("reversed: sides swapped as a negative control");
}

}  // namespace

CheckReport check_bp_identity(const StarBody& body, int k, const CheckBudget& b, StreamHandle stream) {
  const int n = body.dim();
  check_k(n, k);
  CheckReport r = base_report("bp_identity", n, k, stream, {{"body", body.spec()}, {"k", k}});
  const SectionScan scan = scan_sections(lebesgue(), body, k, b.frames, b.sphere_samples, stream);
  r.lhs = combine(0.0, {{n - k, log_body_volume(body, b, stream)}}, "(n-k) log |K|");
  r.rhs = frame_identity_rhs(
      scan, n, k, [&](const Frame& f) { return PointSource::uniform_probability(section(body, f)); }, b, stream);
  r.extra["sections"] = scan_summary(scan);
  judge_equal(r);
  return r;
}

CheckReport check_slicing_chain(const DensityOracle& g, const StarBody& body, int k, const CheckBudget& b,
                                StreamHandle stream) {
  if (!body.convex()) throw DomainError("slicing_chain: body must be convex");
  return chain_check("slicing_chain", g, body, k, b, stream, nullptr);
}

CheckReport check_stability(const DensityOracle& g, const StarBody& body, int k, const CheckBudget& b,
                            StreamHandle stream) {
  return chain_check("stability", g, body, k, b, stream, nullptr);
}

namespace {

CheckReport dpp_impl(const DensityOracle& g, const StarBody& body, int k, const CheckBudget& b, StreamHandle stream,
                     ScanCache* cache) {
  const int n = body.dim();
  check_k(n, k);
  g.check_dim(n);
  CheckReport r = base_report("dpp", n, k, stream, {{"body", body.spec()}, {"measure", g.spec()}, {"k", k}});
  const SupBound sup = g.sup_on(body);
  const SectionScan scan = measure_scan(cache, g, body, k, b, stream);
  r.lhs = detail::log_mean_power(scan, n);
  r.rhs = combine(-n * log_gamma_nk(n, k) + k * std::log(sup.value), {{n - k, log_body_measure(g, body, b, stream)}},
                  "gamma^-n sup(g)^k mu(K)^(n-k)");
  r.notes.push_back("sup of g: " + sup.rule);
  r.extra["sup"] = sup.value;
  r.extra["sup_exact"] = sup.exact;
  r.extra["sections"] = scan_summary(scan);
  judge_less_equal(r);
  return r;
}

CheckReport logconcave_impl(const DensityOracle& g, const StarBody& body, int k, const CheckBudget& b,
                            StreamHandle stream, ScanCache* cache) {
  const int n = body.dim();
  check_k(n, k);
  g.check_dim(n);
  if (!g.even() || !g.log_concave()) throw DomainError("logconcave_identity: density must be even and log-concave");
  if (!body.symmetric()) throw DomainError("logconcave_identity: body must be symmetric");
  CheckReport r =
      base_report("logconcave_identity", n, k, stream, {{"body", body.spec()}, {"measure", g.spec()}, {"k", k}});
  const SectionScan scan = measure_scan(cache, g, body, k, b, stream);
  r.lhs = combine(0.0, {{n - k, log_body_measure(g, body, b, stream)}}, "(n-k) log mu(K)");
  r.rhs = frame_identity_rhs(
      scan, n, k, [&](const Frame& f) { return PointSource::restricted(restrict(g, f), section(body, f)); }, b,
      stream);
  r.extra["sections"] = scan_summary(scan);
  judge_equal(r);
  return r;
}

}  // namespace

CheckReport check_dpp(const DensityOracle& g, const StarBody& body, int k, const CheckBudget& b, StreamHandle stream) {
  return dpp_impl(g, body, k, b, stream, nullptr);
}

CheckReport check_logconcave_identity(const DensityOracle& g, const StarBody& body, int k, const CheckBudget& b,
                                      StreamHandle stream) {
  return logconcave_impl(g, body, k, b, stream, nullptr);
}

CheckReport check_grinberg_invariance(const StarBody& body, int k, const Matrix& transform, const CheckBudget& b,
                                      StreamHandle stream) {
  const int n = body.dim();
  check_k(n, k);
  const double det = transform.determinant();
  if (std::abs(det - 1.0) > 1e-9) throw DomainError("grinberg: transform must have determinant 1");
  CheckReport r = base_report("grinberg_invariance", n, k, stream,
                              {{"body", body.spec()}, {"k", k}, {"transform", matrix_to_json(transform)}});
  const Estimate lv = log_body_volume(body, b, stream);
  const StarBody image = linear_image(body, transform);
  const SectionScan base = scan_sections(lebesgue(), body, k, b.frames, b.sphere_samples, stream);
  const SectionScan moved = scan_sections(lebesgue(), image, k, b.frames, b.sphere_samples, stream);
  r.lhs = detail::log_dual_quermass(moved, n, k, Estimate::exact_log(lv.value));
  r.rhs = detail::log_dual_quermass(base, n, k, Estimate::exact_log(lv.value));
  r.notes.push_back("common random frames; shared volume normalization (det T = 1)");
  judge_equal(r);
  return r;
}

std::vector<CheckReport> check_grinberg(const StarBody& body, int k, const CheckBudget& b, StreamHandle stream) {
  const int n = body.dim();
  check_k(n, k);
  std::vector<CheckReport> out;
  for (int t = 0; t < b.transforms; ++t) {
    CheckReport r = check_grinberg_invariance(body, k, sl_transform(n, stream, t), b, stream);
    r.extra["transform_index"] = t;
    out.push_back(std::move(r));
  }
  CheckReport r = base_report("grinberg_maximality", n, k, stream, {{"body", body.spec()}, {"k", k}});
  const SectionScan scan = scan_sections(lebesgue(), body, k, b.frames, b.sphere_samples, stream);
  r.lhs = detail::log_dual_quermass(scan, n, k, log_body_volume(body, b, stream));
  r.rhs = Estimate::exact_log(-log_gamma_nk(n, k) / k, "gamma_{n,k}^{-1/k}");
  r.extra["sqrt_e_bound_holds"] = r.rhs.value <= 0.5;
  judge_less_equal(r);
  out.push_back(std::move(r));
  return out;
}

CheckReport check_busemann_petty_volume(const StarBody& kb, const StarBody& db, int k, const CheckBudget& b,
                                        StreamHandle stream) {
  const int n = kb.dim();
  if (db.dim() != n) throw DomainError("busemann_petty: bodies must have the same dimension");
  check_k(n, k);
  CheckReport r =
      base_report("busemann_petty", n, k, stream, {{"body", kb.spec()}, {"body2", db.spec()}, {"k", k}});
  const SectionScan sk = scan_sections(lebesgue(), kb, k, b.frames, b.sphere_samples, stream);
  const SectionScan sd = scan_sections(lebesgue(), db, k, b.frames, b.sphere_samples, stream);
  int violations = 0;
  for (std::size_t f = 0; f < sk.measures.size(); ++f) {
    const Estimate& a = sk.measures[f];
    const Estimate& c = sd.measures[f];
    const double tol = kSigmas * std::hypot(a.relative_error(), c.relative_error());
    if (a.value > c.value * (1.0 + tol) * (1.0 + kExactFloor)) ++violations;
  }
  r.extra["dominance_violations"] = violations;
  r.extra["frames"] = b.frames;
  const Estimate lvk = log_body_volume(kb, b, stream);
  const Estimate lvd = log_body_volume(db, b, stream);
  const Estimate phik = detail::log_dual_quermass(sk, n, k, lvk);
  const Estimate phid = detail::log_dual_quermass(sd, n, k, lvd);
  const double e = static_cast<double>(n - k) / n;
  r.lhs = combine(0.0, {{e, lvk}}, "|K|^((n-k)/n)");
  r.rhs = combine(0.0, {{static_cast<double>(k), phid}, {-static_cast<double>(k), phik}, {e, lvd}},
                  "(Phi~(Dbar)/Phi~(Kbar))^k |D|^((n-k)/n)");
  judge_less_equal(r);
  if (violations > 0) {
    r.pass = false;
    r.status = Status::kHypothesisFails;
    r.notes.push_back("section dominance fails on " + std::to_string(violations) + " sampled frames");
  }
  return r;
}

CheckReport check_alpha_beta_construction(const StarBody& body, int k, const CheckBudget& b, StreamHandle stream) {
  const int n = body.dim();
  check_k(n, k);
  if (!body.symmetric()) throw DomainError("alpha_beta: body must be symmetric");
  CheckReport r = base_report("alpha_beta", n, k, stream, {{"body", body.spec()}, {"k", k}});
  const SectionScan scan = scan_sections(lebesgue(), body, k, b.frames, b.sphere_samples, stream);
  const int s = n - k;
  const double log_omega_s = constants::log_ball_volume(s).log_value;
  const Estimate max_v = to_log(scan.max());
  const double r_ball = std::exp((max_v.value - log_omega_s) / s);
  int violations = 0;
  for (const auto& m : scan.measures) {
    if (m.value > std::exp(log_omega_s + s * std::log(r_ball)) * (1.0 + kExactFloor)) ++violations;
  }
  const Estimate lv = log_body_volume(body, b, stream);
  const Estimate phi = detail::log_dual_quermass(scan, n, k, Estimate::exact_log(lv.value));
  const double log_beta = -log_gamma_nk(n, k) / k - phi.value;
  r.lhs = Estimate::exact_log(static_cast<double>(s) / n * lv.value, "|K|^((n-k)/n), shared normalization");
  r.rhs = combine(log_gamma_nk(n, k) + k * log_beta, {{1.0, max_v}}, "gamma beta^k max|K cap F|");
  r.rhs.std_error = std::hypot(max_v.std_error, k * phi.std_error);
  r.lhs.std_error = s / static_cast<double>(n) * lv.std_error;
  r.extra["r"] = r_ball;
  r.extra["beta_bound"] = std::exp(log_beta);
  r.extra["dominance_violations"] = violations;
  r.notes.push_back("max is sampled; r is defined by the sampled max");
  judge_less_equal(r);
  return r;
}

CheckReport check_polar_product(const StarBody& body, int k, const CheckBudget& b, StreamHandle stream) {
  const int n = body.dim();
  check_k(n, k);
  CheckReport r = base_report("polar_product", n, k, stream, {{"body", body.spec()}, {"k", k}});
  const Estimate lv = Estimate::exact_log(log_body_volume(body, b, stream).value, "shared normalization");
  const SectionScan scan = scan_sections(lebesgue(), body, k, b.frames, b.sphere_samples, stream);
  const Estimate w = detail::log_w_tilde(scan, n, k, lv);
  const Estimate i = detail::log_i_minus_k(body, k, b.volume_samples, stream.child(streams::kPoints), lv);
  r.lhs = log_product(w, i);
  const double c = std::log(n - k) + constants::log_ball_volume(n - k).log_value - std::log(n) -
                   constants::log_ball_volume(n).log_value;
  r.rhs = Estimate::exact_log(c / k, "((n-k) w_{n-k} / (n w_n))^(1/k)");
  r.extra["w_tilde"] = std::exp(w.value);
  r.extra["i_minus_k"] = std::exp(i.value);
  judge_equal(r);
  return r;
}

CheckReport check_holder_chain(const StarBody& body, int k, const CheckBudget& b, StreamHandle stream) {
  const int n = body.dim();
  check_k(n, k);
  CheckReport r = base_report("holder_chain", n, k, stream, {{"body", body.spec()}, {"k", k}});
  const Estimate lv = Estimate::exact_log(log_body_volume(body, b, stream).value, "shared normalization");
  const SectionScan scan = scan_sections(lebesgue(), body, k, b.frames, b.sphere_samples, stream);
  r.lhs = detail::log_w_tilde(scan, n, k, lv);
  r.rhs = detail::log_dual_quermass(scan, n, k, lv);
  r.notes.push_back("both sides on the same frames");
  judge_less_equal(r);
  return r;
}

namespace {

std::vector<CheckReport> sylvester_monotone(const PointSource& src, const CheckBudget& b, StreamHandle stream) {
  const int m = src.dim();
  const StreamHandle pts = stream.child(streams::kPoints);
  std::vector<Estimate> s;
  for (double p : {1.0, 2.0, 4.0}) s.push_back(log_affine(log_simplex_moment(src, p, b.trials, pts), 1.0 / p, 0.0, "x^(1/p)"));
  std::vector<CheckReport> out;
  const double ps[] = {1.0, 2.0, 4.0};
  for (int i = 0; i < 2; ++i) {
    CheckReport r = base_report("sylvester_monotone", m, 0, stream, src.spec());
    r.inputs["p"] = {ps[i], ps[i + 1]};
    r.lhs = s[i];
    r.rhs = s[i + 1];
    r.notes.push_back("same simplices for every p");
    judge_less_equal(r);
    out.push_back(std::move(r));
  }
  return out;
}

PointSource entry_source(const json& entry) {
  const StarBody body = parse_body(entry.at("body"));
  if (entry.contains("measure")) return PointSource::restricted(parse_density(entry.at("measure")), body);
  return PointSource::uniform_probability(body);
}

std::vector<CheckReport> dispatch(const std::string& name, const json& entry, const CheckBudget& b,
                                  StreamHandle stream, ScanCache* cache) {
  const int k = entry.value("k", 1);
  auto body = [&] { return parse_body(entry.at("body")); };
  auto measure = [&] { return entry.contains("measure") ? parse_density(entry.at("measure")) : lebesgue(); };
  if (name == "bp_identity") return {check_bp_identity(body(), k, b, stream)};
  if (name == "slicing_chain") {
    const StarBody kb = body();
    if (!kb.convex()) throw DomainError("slicing_chain: body must be convex");
    return {chain_check(name, measure(), kb, k, b, stream, cache)};
  }
  if (name == "stability") return {chain_check(name, measure(), body(), k, b, stream, cache)};
  if (name == "dpp") return {dpp_impl(measure(), body(), k, b, stream, cache)};
  if (name == "logconcave_identity") return {logconcave_impl(measure(), body(), k, b, stream, cache)};
  if (name == "grinberg") return check_grinberg(body(), k, b, stream);
  if (name == "busemann_petty") {
    return {check_busemann_petty_volume(body(), parse_body(entry.at("body2")), k, b, stream)};
  }
  if (name == "alpha_beta") return {check_alpha_beta_construction(body(), k, b, stream)};
  if (name == "polar_product") return {check_polar_product(body(), k, b, stream)};
  if (name == "holder_chain") return {check_holder_chain(body(), k, b, stream)};
  if (name == "blaschke") return {blaschke_check(entry_source(entry), b.trials, stream)};
  if (name == "sylvester_monotone") return sylvester_monotone(entry_source(entry), b, stream);
  throw SpecError("unknown check \"" + name + "\"");
}

int entry_dim(const json& entry) {
  if (entry.contains("body") && entry.at("body").contains("dim")) return entry.at("body").value("dim", 0);
  return 0;
}

// Whether a grid cell is in the domain of the check; cells outside are
// skipped, not reported.
bool applicable(const std::string& check, const json& entry, int n, int k) {
  const bool needs_k = check != "blaschke" && check != "sylvester_monotone";
  if (needs_k && (k < 1 || k > n - 1)) return false;
  if (check == "alpha_beta" || check == "logconcave_identity") {
    try {
      if (!parse_body(entry.at("body")).symmetric()) return false;
      if (check == "logconcave_identity") {
        const DensityOracle g = entry.contains("measure") ? parse_density(entry.at("measure")) : lebesgue();
        if (!g.even() || !g.log_concave()) return false;
      }
    } catch (const Error&) {
      return true;  // let run_check report the error
    }
  }
  return true;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "bp_identity",  "slicing_chain", "stability",     "dpp",          "logconcave_identity", "grinberg",
      "busemann_petty", "alpha_beta",  "polar_product", "holder_chain", "blaschke",            "sylvester_monotone"};
  return names;
}

namespace {

// Numbers as doubles, so that 1 and 1.0 name the same cell.
json canonical(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() || j.is_object()) {
    json out = j;
    for (auto it = out.begin(); it != out.end(); ++it) *it = canonical(*it);
    return out;
  }
  return j;
}

// The stream depends on the cell (body, measure, k, ...) but not on the
// check name, so checks on one cell see the same frames.
StreamHandle cell_stream(const json& entry, std::uint64_t seed) {
  json cell = entry;
  cell.erase("check");
  cell.erase("budget");
  return StreamHandle{entry.value("seed", seed), fnv1a(canonical(cell).dump())};
}

std::vector<CheckReport> run_check_cached(const json& entry, const CheckBudget& base, std::uint64_t seed,
                                          ScanCache* cache) {
  const std::string name = entry.value("check", std::string{});
  const CheckBudget b = merge_budget(base, entry.value("budget", json::object()));
  const StreamHandle stream = cell_stream(entry, seed);
  std::vector<CheckReport> out;
  try {
    out = dispatch(name, entry, b, stream, cache);
  } catch (const std::exception& e) {
    CheckReport r = error_report(name, entry_dim(entry), entry.value("k", 0), e.what());
    r.seed = stream.seed;
    r.inputs = entry;
    out.push_back(std::move(r));
  }
  for (auto& r : out) {
    r.extra["budget"] = budget_json(b);
    if (entry.value("reverse", false)) reverse_report(r);
  }
  return out;
}

}  // namespace

std::vector<CheckReport> run_check(const json& entry, const CheckBudget& budget, std::uint64_t seed) {
  return run_check_cached(entry, budget, seed, nullptr);
}

std::vector<json> expand_suite(const json& config) {
  std::vector<json> entries;
  const bool reverse = config.value("reverse", false);
  auto push = [&](json e) {
    if (reverse) e["reverse"] = true;
    entries.push_back(std::move(e));
  };
  if (config.contains("checks")) {
    for (const auto& e : config.at("checks")) push(e);
  }
  if (config.contains("grids")) {
    for (const auto& grid : config.at("grids")) {
      const json ks = grid.value("k", json::array({1}));
      const json measures = grid.value("measures", json::array({json{{"kind", "lebesgue"}}}));
      const json bodies = grid.value("bodies", json::array());
      const json pairs = grid.value("pairs", json::array());
      auto push_cell = [&](json e) {
        if (grid.contains("budget")) e["budget"] = grid.at("budget");
        push(std::move(e));
      };
      for (const auto& check : grid.at("checks")) {
        const std::string name = check.get<std::string>();
        const bool per_measure = name == "slicing_chain" || name == "stability" || name == "dpp" ||
                                 name == "logconcave_identity";
        for (const auto& nj : grid.at("n")) {
          const int n = nj.get<int>();
          for (const auto& kj : ks) {
            const int k = kj.get<int>();
            auto with_dim = [n](json spec) {
              if (!spec.contains("dim") && !spec.contains("base") && !spec.contains("matrix") &&
                  !spec.contains("vertices") && !spec.contains("normals")) {
                spec["dim"] = n;
              }
              return spec;
            };
            if (name == "busemann_petty") {
              for (const auto& pair : pairs) {
                json e = {{"check", name}, {"k", k}, {"body", with_dim(pair.at(0))}, {"body2", with_dim(pair.at(1))}};
                if (applicable(name, e, n, k)) push_cell(e);
              }
              continue;
            }
            for (const auto& body : bodies) {
              if (per_measure) {
                for (const auto& m : measures) {
                  json e = {{"check", name}, {"k", k}, {"body", with_dim(body)}, {"measure", m}};
                  if (applicable(name, e, n, k)) push_cell(e);
                }
              } else {
                json e = {{"check", name}, {"k", k}, {"body", with_dim(body)}};
                if (applicable(name, e, n, k)) push_cell(e);
              }
            }
          }
        }
      }
    }
  }
  return entries;
}

SuiteResult run_suite(const json& config) {
  SuiteResult result;
  result.config = config;
  const CheckBudget budget = merge_budget(CheckBudget{}, config.value("budget", json::object()));
  const std::uint64_t seed = config.value("seed", std::uint64_t{1});
  const std::vector<json> entries = expand_suite(config);
  ScanCache cache;
  const auto per_entry =
      parallel_map(entries.size(), [&](std::size_t i) { return run_check_cached(entries[i], budget, seed, &cache); });
  bool any_fail = false;
  bool any_error = false;
  for (const auto& reports : per_entry) {
    for (const auto& r : reports) {
      any_fail |= r.status == Status::kFail;
      any_error |= r.status == Status::kError;
      result.reports.push_back(r);
    }
  }
  result.status = any_error ? Status::kError : any_fail ? Status::kFail : Status::kPass;
  return result;
}

json default_suite_config(std::uint64_t seed) {
  const json ball = {{"kind", "euclidean_ball"}};
  const json cube_spec = {{"kind", "cube"}};
  const json l1 = {{"kind", "lp_ball"}, {"p", 1.0}};
  const json poly = {{"kind", "random_h_polytope"}, {"seed", 7}};
  const json bodies = {ball, cube_spec, l1};
  const json lebesgue_spec = {{"kind", "lebesgue"}};
  const json gauss = {{"kind", "gaussian"}, {"sigma", 1.0}};
  const json expo = {{"kind", "radial_exp"}, {"rate", 1.0}};
  json config;
  config["seed"] = seed;
  config["budget"] = budget_json(CheckBudget{});
  json grids = json::array();
  json checks = json::array();
  const auto with_dim = [](json spec, int n) {
    spec["dim"] = n;
    return spec;
  };
  // equality checks average heavy-tailed per-frame terms, so they trade
  // inner draws for frames
  const json identity_budget = {{"frames", 8000}, {"sphere_samples", 1000}, {"points_per_frame", 250}};
  const json invariance_budget = {{"frames", 4000}, {"sphere_samples", 1000}};
  grids.push_back({{"checks", {"bp_identity"}},
                   {"n", {3, 4}},
                   {"k", {1, 2}},
                   {"bodies", bodies},
                   {"budget", identity_budget}});
  grids.push_back({{"checks", {"polar_product", "holder_chain", "alpha_beta"}},
                   {"n", {3, 4}},
                   {"k", {1, 2}},
                   {"bodies", bodies}});
  grids.push_back({{"checks", {"grinberg"}},
                   {"n", {3, 4, 5}},
                   {"k", {1, 2}},
                   {"bodies", {ball, cube_spec, l1, poly}},
                   {"budget", {{"transforms", 0}}}});
  grids.push_back({{"checks", {"holder_chain"}}, {"n", {3, 4, 5}}, {"k", {1, 2}}, {"bodies", {poly}}});
  for (const auto& [n, k, body] : {std::tuple{3, 1, cube_spec}, std::tuple{4, 2, l1}, std::tuple{5, 2, cube_spec}}) {
    checks.push_back({{"check", "grinberg"}, {"k", k}, {"body", with_dim(body, n)}, {"budget", invariance_budget}});
  }
  grids.push_back({{"checks", {"dpp", "slicing_chain", "stability"}},
                   {"n", {2, 3, 4, 5}},
                   {"k", {1, 2}},
                   {"bodies", bodies},
                   {"measures", {lebesgue_spec, gauss, expo}}});
  grids.push_back({{"checks", {"dpp", "slicing_chain", "stability"}},
                   {"n", {3, 4}},
                   {"k", {1, 2}},
                   {"bodies", {poly}},
                   {"measures", {lebesgue_spec, gauss}}});
  grids.push_back({{"checks", {"logconcave_identity"}},
                   {"n", {3}},
                   {"k", {1, 2}},
                   {"bodies", bodies},
                   {"measures", {gauss, expo}},
                   {"budget", {{"frames", 4000}, {"sphere_samples", 500}, {"points_per_frame", 250}}}});
  grids.push_back({{"checks", {"busemann_petty"}},
                   {"n", {3}},
                   {"k", {1}},
                   {"pairs",
                    {{cube_spec, json{{"kind", "euclidean_ball"}, {"radius", std::sqrt(3.0)}}},
                     {ball, json{{"kind", "euclidean_ball"}, {"radius", 2.0}}}}}});
  config["grids"] = grids;
  checks.push_back({{"check", "blaschke"}, {"body", {{"kind", "cube"}, {"dim", 1}, {"half_width", 0.5}}}});
  checks.push_back({{"check", "blaschke"}, {"body", {{"kind", "cube"}, {"dim", 2}, {"half_width", 0.5}}}});
  checks.push_back({{"check", "blaschke"}, {"body", {{"kind", "euclidean_ball"}, {"dim", 2}}}});
  for (int m : {2, 3}) checks.push_back({{"check", "sylvester_monotone"}, {"body", {{"kind", "cube"}, {"dim", m}}}});
  checks.push_back({{"check", "sylvester_monotone"}, {"body", {{"kind", "euclidean_ball"}, {"dim", 2}}}});
  config["checks"] = checks;
  return config;
}

json suite_json(const SuiteResult& result) {
  json reports = json::array();
  int pass = 0, fail = 0, error = 0, hyp = 0;
  for (const auto& r : result.reports) {
    reports.push_back(to_json(r));
    switch (r.status) {
      case Status::kPass:
        ++pass;
        break;
      case Status::kFail:
        ++fail;
        break;
      case Status::kError:
        ++error;
        break;
      case Status::kHypothesisFails:
        ++hyp;
        break;
    }
  }
  return {{"schema", "sectlab.suite.v1"},
          {"status", to_string(result.status)},
          {"summary",
           {{"total", result.reports.size()}, {"pass", pass}, {"fail", fail}, {"error", error}, {"hypothesis_fails", hyp}}},
          {"config", result.config},
          {"reports", reports}};
}

}  // namespace sectlab
