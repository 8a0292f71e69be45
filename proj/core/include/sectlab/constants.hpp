#pragma once

#include "sectlab/log_scalar.hpp"

namespace sectlab::constants {

/// Natural log of Gamma(x) for x > 0. Reentrant (no global sign state).
double log_gamma(double x);

/// log of omega_n = pi^{n/2} / Gamma(n/2 + 1), the volume of the Euclidean unit ball.
LogScalar log_ball_volume(int n);

/// gamma_{n,k} = omega_n^{(n-k)/n} / omega_{n-k}, for 1 <= k <= n-1.
LogScalar gamma_nk(int n, int k);

/// Exact Blaschke-Petkantschin constant
///   p(n,s) = (s!)^{n-s} [(n w_n) ... ((n-s+1) w_{n-s+1})] / [(s w_s) ... (2 w_2) w_1]
/// for 1 <= s <= n-1, accumulated as a sum of logs.
LogScalar log_bp_constant(int n, int s);

/// [gamma_{n,k}^{-n} p(n,n-k)]^{1/(k(n-k))} / sqrt(n-k), evaluated in log domain.
double lemma34_ratio(int n, int k);

/// e^{-k/2} < gamma_{n,k} < 1, compared on the log scale.
bool gamma_bounds_hold(int n, int k);

}  // namespace sectlab::constants
