#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sectlab/bodies.hpp"
#include "sectlab/functionals.hpp"
#include "sectlab/measures.hpp"
#include "sectlab/report.hpp"
#include "sectlab/rng.hpp"

namespace sectlab {

/// Budget with the per-frame point count used by the identity checks.
struct CheckBudget : Budget {
  int points_per_frame = 2000;
  int transforms = 5;
};

/// |K|^{n-k} = p(n,n-k) E_F[ |K cap F|^{n-k} E|conv(0, x_1..x_{n-k})|^k ].
CheckReport check_bp_identity(const StarBody& body, int k, const CheckBudget& budget, StreamHandle stream);

/// mu(K)^{n-k} <= gamma^{-n} p(n,n-k) max_F mu(K cap F)^{n-k} |K|^{k(n-k)/n}, max sampled.
CheckReport check_slicing_chain(const DensityOracle& g, const StarBody& body, int k, const CheckBudget& budget,
                                StreamHandle stream);

/// Same chain with eps = max sampled int_{K cap F} g.
CheckReport check_stability(const DensityOracle& g, const StarBody& body, int k, const CheckBudget& budget,
                            StreamHandle stream);

/// E_F[mu(K cap F)^n] <= gamma^{-n} sup_K(g)^k mu(K)^{n-k}.
CheckReport check_dpp(const DensityOracle& g, const StarBody& body, int k, const CheckBudget& budget,
                      StreamHandle stream);

/// mu(K)^{n-k} = p(n,n-k) E_F[ mu(K cap F)^{n-k} S_k(mu_{K cap F})^k ] for
/// even log-concave g and symmetric K.
CheckReport check_logconcave_identity(const DensityOracle& g, const StarBody& body, int k,
                                      const CheckBudget& budget, StreamHandle stream);

/// Phi~_[k](T K) = Phi~_[k](K) on common frames for one SL(n) map T.
CheckReport check_grinberg_invariance(const StarBody& body, int k, const Matrix& transform,
                                      const CheckBudget& budget, StreamHandle stream);

/// Seeded transforms Q diag(e^a) (sum a = 0) from stream.child(kTransforms),
/// one invariance report each, followed by the maximality report
/// Phi~_[k](Kbar) <= gamma_{n,k}^{-1/k}.
std::vector<CheckReport> check_grinberg(const StarBody& body, int k, const CheckBudget& budget, StreamHandle stream);

/// Dominance |K cap F| <= |D cap F| on every sampled frame first; then
/// |K|^{(n-k)/n} <= (Phi~(Dbar)/Phi~(Kbar))^k |D|^{(n-k)/n}.
CheckReport check_busemann_petty_volume(const StarBody& k_body, const StarBody& d_body, int k,
                                        const CheckBudget& budget, StreamHandle stream);

/// r from max sampled |K cap F| = w_{n-k} r^{n-k}; then
/// |K|^{(n-k)/n} <= gamma_{n,k} beta^k max|K cap F| with the per-instance
/// bound beta = Phi~(B)/Phi~(Kbar).
CheckReport check_alpha_beta_construction(const StarBody& body, int k, const CheckBudget& budget,
                                          StreamHandle stream);

/// W~_[k](Kbar) I_{-k}(Kbar) = ((n-k) w_{n-k} / (n w_n))^{1/k}.
CheckReport check_polar_product(const StarBody& body, int k, const CheckBudget& budget, StreamHandle stream);

/// W~_[k](Kbar) <= Phi~_[k](Kbar) on common frames.
CheckReport check_holder_chain(const StarBody& body, int k, const CheckBudget& budget, StreamHandle stream);

/// Names accepted by run_suite and the CLI.
const std::vector<std::string>& check_names();

/// Runs one check described by a JSON entry
///   {"check": name, "body": spec, "body2": spec, "measure": spec, "k": K}
/// and returns its reports; library errors become status "error".
std::vector<CheckReport> run_check(const nlohmann::json& entry, const CheckBudget& budget, std::uint64_t seed);

struct SuiteResult {
  std::vector<CheckReport> reports;
  Status status = Status::kPass;
  nlohmann::json config;
};

/// Config:
///   {"seed": S, "budget": {...}, "reverse": bool,
///    "checks": [entry, ...],
///    "grids": [{"checks": [...], "n": [...], "k": [...],
///               "bodies": [spec, ...], "measures": [spec, ...],
///               "pairs": [[spec, spec], ...]}]}
/// Grid bodies get "dim" filled in from n; combinations a check does not
/// accept (k >= n, non-symmetric body for a symmetric-only check) are
/// skipped. "reverse" swaps both sides of every "<=" check, as a negative
/// control for the harness.
SuiteResult run_suite(const nlohmann::json& config);

/// The acceptance grid: n <= 5, k <= 2, four bodies, three measures.
nlohmann::json default_suite_config(std::uint64_t seed = 7);

nlohmann::json suite_json(const SuiteResult& result);

/// Expands grids into the flat check list run_suite executes.
std::vector<nlohmann::json> expand_suite(const nlohmann::json& config);

}  // namespace sectlab
