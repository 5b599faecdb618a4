#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tenrank/decomposition.hpp"

namespace tenrank {

enum class PersistenceMethod { PYRAMID, EXACT_QUBIT, SCREENED };
std::string_view to_string(PersistenceMethod m);

using CycVector = std::vector<Cyclotomic>;

struct PersistenceCertificate {
  PersistenceMethod method = PersistenceMethod::PYRAMID;
  /// One witness e per recursion level (arity - 2 of them): every covector
  /// with <f|e> != 0 contracts the current level to a persistent tensor.
  std::vector<CycVector> witness_chain;
  std::vector<std::string> diagnostics;
  std::uint64_t subject = 0;
  /// False for SCREENED results.
  bool conclusive = true;
  int sampled_covectors = 0;
};

struct RankCertificate {
  int lower = 0;
  std::optional<int> upper;
  /// Where the upper bound comes from (a verified decomposition).
  std::string upper_ref;
  std::vector<std::string> trace;
  std::uint64_t subject = 0;

  bool exact() const { return upper && *upper == lower; }
};

// ---- persistence certificates ------------------------------------------

/// Sufficient condition for tensors in (C^d)^n supported on {sum j < d}
/// whose coefficients at |0..j..0, d-j-1> (j at any slot before the last)
/// are all nonzero. Returns nullopt (NotApplicable) otherwise, with the
/// reason in *why.
std::optional<PersistenceCertificate> pyramid_persistence(const CycTensor& t, std::string* why = nullptr);

/// 2x2x2 hyperdeterminant (Cayley form).
Cyclotomic tangle3(const CycTensor& t);

struct QubitDecision {
  bool persistent = false;
  std::optional<PersistenceCertificate> certificate;
  /// Every candidate that passed the all-t checks (n = 4); the chosen one first.
  std::vector<CycVector> valid_witnesses;
  /// True when a negative answer rests on a structural argument rather than
  /// on exhausting the candidate set.
  bool structural = true;
  std::vector<std::string> trace;
};

/// Exact decision for all-qubit tensors of arity 2, 3, 4.
/// Throws UnsupportedArity for n >= 5 and BadDim if some dim is not 2.
QubitDecision decide_persistence_qubits(const CycTensor& t, const std::vector<CycVector>& extra_candidates = {});

enum class ScreenOutcome { LikelyPersistent, Inconclusive, NotPersistentEvidence };
std::string_view to_string(ScreenOutcome o);

struct ScreenResult {
  ScreenOutcome outcome = ScreenOutcome::Inconclusive;
  /// Non-conclusive certificate carrying the candidate chain that survived.
  std::optional<PersistenceCertificate> certificate;
  int sampled_covectors = 0;
  std::vector<std::string> trace;
};

/// Heuristic: samples rational covectors with <f|e> = 1 for candidate
/// witnesses e and recurses. Never a proof.
ScreenResult screen_persistence(const CycTensor& t, int trials, std::uint64_t seed);

/// Re-expresses a certificate for (A_1 x ... x A_n) t with invertible A_i:
/// witnesses move to A_k e_k. Throws CertificateSubjectMismatch or
/// DivisionByZero (singular map).
PersistenceCertificate transport_certificate(const PersistenceCertificate& cert, const CycTensor& t, const CycLocalMap& maps);

// ---- rank lower bounds ---------------------------------------------------

/// sum_{k<n} (r_k - 1) + 1 with r_k the mode ranks; the trace replays the
/// contraction recursion along the witness chain. Throws WeakCertificate on
/// SCREENED input and CertificateSubjectMismatch if cert is for another tensor.
RankCertificate persistent_lower_bound(const CycTensor& t, const PersistenceCertificate& cert);

/// Attaches a verified decomposition as the upper bound.
/// Throws UnverifiedDecomposition if it does not expand to t.
RankCertificate with_upper_bound(RankCertificate cert, const CycTensor& t, const CycDecomposition& dec);

/// Exact rank certificate from flattening ranks and a decomposition whose
/// size equals the largest flattening rank (e.g. GHZ, matrices).
RankCertificate flattening_rank_certificate(const CycTensor& t, const CycDecomposition& dec);

/// Per-factor (dim U_i, dim V_i); U occupies the first dim U_i indices.
using BlockSplit = std::vector<std::pair<int, int>>;

/// Whether every support entry lies in U_1 x .. x U_n or has last index in V_n.
bool is_block_pyramidal(const CycTensor& q, const BlockSplit& split, std::string* why = nullptr);

/// rk(Q) >= rk(head) + sum_{k<n}(dim V_k - 1) + 1 for block pyramidal Q whose
/// step block carries a persistence certificate. Throws NotBlockPyramidal,
/// CertificateSubjectMismatch, WeakCertificate.
RankCertificate composite_lower_bound(const CycTensor& q, const BlockSplit& split, const RankCertificate& head_cert,
                                      const PersistenceCertificate& step_cert);

enum class GhzProductMode { Kron, Tensor };

/// Exact rank d * rk(P) of G(d,n) [x] P for a minimal-rank persistent P.
/// Throws NotMinimalRank unless p_rank is exact and equals sum(d_k - 1) + 1.
RankCertificate ghz_kron_cert(const CycTensor& p, const RankCertificate& p_rank, const PersistenceCertificate& p_cert,
                              const CycDecomposition& p_dec, int d, GhzProductMode mode);

/// Permutation (new position -> old term index) that puts a basis of factor j
/// at positions D_j .. D_j + d_j - 1 for every j < n. Each contraction level
/// is re-certified with certify_persistence; when p = frame(base) for a base
/// tensor whose levels certify directly (M' from M, say), pass the invertible
/// frame and the work happens on base. Throws RearrangementFailed.
std::vector<int> rearrange_decomposition(const CycTensor& p, const CycDecomposition& dec, const PersistenceCertificate& cert,
                                         const CycLocalMap& frame = {});

/// Checks the basis property that rearrange_decomposition promises.
bool has_basis_layout(const CycTensor& p, const CycDecomposition& dec);

/// Pyramid or exact-qubit certificate when either applies, else nullopt.
std::optional<PersistenceCertificate> certify_persistence(const CycTensor& t);

/// certify_persistence, falling back to transport from M (for M') and N
/// (for N') when the family is known.
std::optional<PersistenceCertificate> certify_family_persistence(const FamilySpec& spec);

/// Rank certificate for a named family: persistence lower bound (flattening
/// bound when no certificate exists) plus the family decomposition when one
/// is constructed.
RankCertificate family_rank_certificate(const FamilySpec& spec);

/// Frame in which a family's contractions certify level by level: the M -> M'
/// basis change, the N -> N' flip, empty otherwise.
CycLocalMap family_frame(const FamilySpec& spec);

}  // namespace tenrank
