#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tenrank/degeneration.hpp"

namespace tenrank {

using SchmidtProfile = std::vector<std::pair<Bipartition, int>>;

/// Schmidt ranks across every bipartition (side containing factor 0).
/// Throws ArityCapExceeded when the arity exceeds cap.
SchmidtProfile schmidt_profile(const CycTensor& t, int cap = 8);

/// Exact order of log(a1)/log(b1) against log(a2)/log(b2) for rationals > 1:
/// negative, zero or positive.
int compare_log_ratio(const Rational& a1, const Rational& b1, const Rational& a2, const Rational& b2);

struct RateBound {
  /// (rk_S(target), rk_S(source)) at the maximizing cut.
  std::pair<int, int> best_pair{1, 1};
  std::optional<Bipartition> best_cut;
  bool value_is_at_least_one = false;
  /// Strictly above 1: no rate-one certificate can exist.
  bool value_exceeds_one = false;
  /// Presentation only.
  std::string display_value;
  std::vector<std::string> trace;
};

/// max_S log rk_S(tgt) / log rk_S(src). Throws ArityMismatch.
RateBound rate_lower_bound(const CycTensor& src, const CycTensor& tgt);

struct RateCertificate {
  bool rate_one = false;
  std::optional<DegenerationCertificate> degeneration;
  RateBound bound;
  /// The half that failed when rate_one is false.
  std::string failing;
  std::vector<std::string> trace;
};

/// Rate one when maps degenerate src to tgt (rate <= 1) and some cut has
/// log-ratio >= 1 (rate >= 1). Never throws on a failing half.
RateCertificate rate_one_certificate(const CycTensor& src, const CycTensor& tgt, const EpsLocalMap& maps);

/// Canonical maps for the pairs L->M, M->N, L->N, GHZ->L, GHZ->M, GHZ->N.
/// Throws BadSpec for other pairs.
EpsLocalMap canonical_rate_maps(Family source, Family target, int d, int n);

/// A_i |p> = v_i^(p), scale folded into factor 0, so slocc_apply(GHZ(r,n), A) = t.
/// Throws UnverifiedDecomposition.
CycLocalMap slocc_from_decomposition(const CycTensor& t, const CycDecomposition& dec);

}  // namespace tenrank
