#include "tenrank/digest.hpp"

#include <cstdio>

#include "tenrank/scalar_io.hpp"

namespace tenrank {
namespace {

template <class S>
std::string text_of(const Tensor<S>& t) {
  std::string out(scalar_kind<S>);
  out += t.shape().str();
  for (const auto& [k, v] : t.entries()) {
    out += ' ';
    auto idx = t.shape().multi(k);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(idx[i]);
    }
    out += '=';
    out += format_scalar(v);
  }
  return out;
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

std::string canonical_text(const CycTensor& t) { return text_of(t); }
std::string canonical_text(const EpsTensor& t) { return text_of(t); }
std::uint64_t digest(const CycTensor& t) { return fnv1a(text_of(t)); }
std::uint64_t digest(const EpsTensor& t) { return fnv1a(text_of(t)); }

std::string digest_hex(std::uint64_t d) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(d));
  return buf;
}

}  // namespace tenrank
