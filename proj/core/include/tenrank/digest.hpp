#pragma once

#include <cstdint>
#include <string>

#include "tenrank/tensor.hpp"

namespace tenrank {

/// Canonical one-line text of a tensor: kind, shape, then `idx=value` pairs
/// in lexicographic index order with canonical scalar literals.
std::string canonical_text(const CycTensor& t);
std::string canonical_text(const EpsTensor& t);

/// FNV-1a 64 of canonical_text.
std::uint64_t digest(const CycTensor& t);
std::uint64_t digest(const EpsTensor& t);
/// 16 lowercase hex digits.
std::string digest_hex(std::uint64_t d);

}  // namespace tenrank
