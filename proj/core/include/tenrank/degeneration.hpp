#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tenrank/decomposition.hpp"

namespace tenrank {

struct DegenerationCertificate {
  /// d in eps^d |target> + sum_l eps^{d+l} |err_l>, after the maps are made polynomial.
  int approximation_degree = 0;
  /// Largest l with a nonzero error tensor.
  int error_degree = 0;
  /// Total power of eps multiplied into the maps to clear negative exponents.
  int normalization_shift = 0;
  /// Lowest-order tensor = scalar * target.
  Cyclotomic scalar = Cyclotomic(1);
  bool verified = false;
  std::uint64_t source = 0;
  std::uint64_t target = 0;
  std::vector<std::string> trace;
};

/// Expands (A_1(eps) x ... x A_n(eps)) src and checks that its lowest eps-order
/// is a nonzero multiple of tgt. Throws NotADegeneration otherwise.
DegenerationCertificate verify_degeneration(const CycTensor& src, const EpsLocalMap& maps, const CycTensor& tgt);

enum class ChainStep { L_TO_M, M_TO_N };
std::string_view to_string(ChainStep s);
ChainStep parse_chain_step(std::string_view s);

/// L -> M: diag(eps^-2, eps^{n-2}, ..., eps^{n-2}, eps^{2(n-1)}) on every factor.
/// M -> N: diag(1, eps, ..., eps, 1) on the first n-1 factors, its inverse on the last.
/// Throws BadSpec for n < 3 and BadDim for d < 2.
EpsLocalMap canonical_chain_maps(ChainStep step, int d, int n);

/// Factorwise second * first.
EpsLocalMap compose(const EpsLocalMap& second, const EpsLocalMap& first);

/// d-term approximations of L, M' (d >= 3) and N'. Throws BadSpec for other
/// families and for M' with d = 2.
EpsDecomposition eps_decomposition(Family family, int d, int n);

struct BorderRankCertificate {
  EpsDecomposition terms;
  int lower = 0;
  int upper = 0;
  /// Lowest eps-order of the expansion; the certificate divides it out.
  int order = 0;
  Cyclotomic scalar = Cyclotomic(1);
  std::uint64_t subject = 0;
  std::vector<std::string> trace;

  bool exact() const { return lower == upper; }
};

/// Checks that the lowest-order part of the expansion is a nonzero multiple of
/// t, then pairs the term count with the largest mode flattening rank.
/// Throws InvalidEpsDecomposition.
BorderRankCertificate border_rank_certificate(const CycTensor& t, const EpsDecomposition& epsdec);

/// A_i sends |p> to the i-th vector of term p (scale folded into factor 0),
/// so GHZ(r,n) degenerates to whatever the terms approximate.
/// Throws InvalidEpsDecomposition on an empty or misshapen input.
EpsLocalMap ghz_degeneration_from_eps(const EpsDecomposition& epsdec, int n);

}  // namespace tenrank
