#include "tenrank/families.hpp"

#include <algorithm>
#include <cctype>

namespace tenrank {
namespace {

using Entries = std::vector<CycTensor::Entry>;

// Sets digits (slot -> value) on top of |0...0>.
Index basis_index(const Shape& shape, std::initializer_list<std::pair<int, int>> digits) {
  Index lin = 0;
  for (auto [slot, v] : digits) lin += static_cast<Index>(v) * shape.stride(slot);
  return lin;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::BadSpec, what);
}

// Every index with digit sum `total`, enumerated recursively.
void compositions(const Shape& shape, int slot, int remaining, Index acc, Entries& out) {
  if (slot == shape.arity()) {
    if (remaining == 0) out.emplace_back(acc, Cyclotomic(1));
    return;
  }
  for (int j = 0; j <= std::min(remaining, shape.dim(slot) - 1); ++j)
    compositions(shape, slot + 1, remaining - j, acc + static_cast<Index>(j) * shape.stride(slot), out);
}

void add_w_part(const Shape& shape, int d, Entries& out) {
  for (int slot = 0; slot < shape.arity(); ++slot) out.emplace_back(basis_index(shape, {{slot, d - 1}}), Cyclotomic(1));
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::GHZ: return "ghz";
    case Family::W: return "w";
    case Family::DICKE: return "dicke";
    case Family::L: return "l";
    case Family::M: return "m";
    case Family::MPRIME: return "mprime";
    case Family::N: return "n";
    case Family::NPRIME: return "nprime";
    case Family::Y: return "y";
    case Family::NONSYM4: return "nonsym4";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  std::string s;
  for (char c : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "m'") s = "mprime";
  if (s == "n'") s = "nprime";
  for (Family f : {Family::GHZ, Family::W, Family::DICKE, Family::L, Family::M, Family::MPRIME, Family::N, Family::NPRIME, Family::Y, Family::NONSYM4})
    if (to_string(f) == s) return f;
  return std::nullopt;
}

FamilySpec FamilySpec::normalized() const {
  FamilySpec s = *this;
  switch (s.family) {
    case Family::W:
    case Family::DICKE:
      s.d = 2;
      break;
    case Family::Y:
      s.d = 3;
      break;
    case Family::NONSYM4:
      s.d = 2;
      s.n = 4;
      break;
    default:
      break;
  }
  require(s.d >= 2, "family needs d >= 2");
  require(s.n >= 2, "family needs n >= 2");
  if (s.family == Family::DICKE) require(s.l >= 0 && s.l <= s.n, "DICKE needs 0 <= l <= n");
  if (s.family == Family::NONSYM4) require(s.sign == 1 || s.sign == -1, "NONSYM4 sign must be +1 or -1");
  return s;
}

std::string FamilySpec::str() const {
  std::string out = std::string(to_string(family)) + "(d=" + std::to_string(d) + ",n=" + std::to_string(n);
  if (family == Family::DICKE) out += ",l=" + std::to_string(l);
  if (family == Family::NONSYM4) out += ",alpha=" + alpha.str() + ",beta=" + beta.str() + ",sign=" + (sign > 0 ? "+" : "-");
  return out + ")";
}

CycTensor ghz(int d, int n) {
  require(d >= 1 && n >= 1, "GHZ needs d >= 1, n >= 1");
  Shape shape = Shape::uniform(d, n);
  Entries out;
  Index diag = 0;
  for (int i = 0; i < n; ++i) diag += shape.stride(i);
  for (int j = 0; j < d; ++j) out.emplace_back(static_cast<Index>(j) * diag, Cyclotomic(1));
  return CycTensor::from_linear(std::move(shape), std::move(out));
}

CycTensor w_state(int n) { return dicke(n, 1); }

CycTensor dicke(int n, int l) {
  require(n >= 1 && l >= 0 && l <= n, "DICKE needs 0 <= l <= n");
  Shape shape = Shape::uniform(2, n);
  Entries out;
  for (Index k = 0; k < shape.size(); ++k)
    if (__builtin_popcountll(k) == l) out.emplace_back(k, Cyclotomic(1));
  return CycTensor::from_linear(std::move(shape), std::move(out));
}

CycTensor l_state(int d, int n) {
  require(d >= 2 && n >= 2, "L needs d >= 2, n >= 2");
  Shape shape = Shape::uniform(d, n);
  Entries out;
  compositions(shape, 0, d - 1, 0, out);
  return CycTensor::from_linear(std::move(shape), std::move(out));
}

CycTensor m_state(int d, int n) {
  require(d >= 2 && n >= 2, "M needs d >= 2, n >= 2");
  Shape shape = Shape::uniform(d, n);
  Entries out;
  add_w_part(shape, d, out);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int j = 1; j <= d - 2; ++j) out.emplace_back(basis_index(shape, {{a, j}, {b, d - j - 1}}), Cyclotomic(1));
  return CycTensor::from_linear(std::move(shape), std::move(out));
}

CycTensor mprime_state(int d, int n) {
  require(d >= 2 && n >= 2, "M' needs d >= 2, n >= 2");
  Shape shape = Shape::uniform(d, n);
  Entries out;
  add_w_part(shape, d, out);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int j = 1; j <= d - 2; ++j) out.emplace_back(basis_index(shape, {{a, j}, {b, j}}), Cyclotomic(1));
  return CycTensor::from_linear(std::move(shape), std::move(out));
}

CycTensor n_state(int d, int n) {
  require(d >= 2 && n >= 2, "N needs d >= 2, n >= 2");
  Shape shape = Shape::uniform(d, n);
  Entries out;
  out.emplace_back(basis_index(shape, {{n - 1, d - 1}}), Cyclotomic(1));
  for (int slot = 0; slot <= n - 2; ++slot)
    for (int j = 1; j <= d - 1; ++j) out.emplace_back(basis_index(shape, {{slot, j}, {n - 1, d - j - 1}}), Cyclotomic(1));
  return CycTensor::from_linear(std::move(shape), std::move(out));
}

CycTensor nprime_state(int d, int n) {
  CycLocalMap flip = uniform_map(CycMatrix::identity(d), n);
  flip.back() = flip_matrix(d);
  return slocc_apply(n_state(d, n), flip);
}

CycTensor make_state(const FamilySpec& raw) {
  FamilySpec s = raw.normalized();
  switch (s.family) {
    case Family::GHZ: return ghz(s.d, s.n);
    case Family::W: return w_state(s.n);
    case Family::DICKE: return dicke(s.n, s.l);
    case Family::L:
    case Family::Y: return l_state(s.d, s.n);
    case Family::M: return m_state(s.d, s.n);
    case Family::MPRIME: return mprime_state(s.d, s.n);
    case Family::N: return n_state(s.d, s.n);
    case Family::NPRIME: return nprime_state(s.d, s.n);
    case Family::NONSYM4: {
      Shape shape = Shape::uniform(2, 4);
      Rational mix = s.sign > 0 ? s.alpha + s.beta : s.alpha - s.beta;
      std::vector<std::pair<std::vector<int>, Cyclotomic>> e = {
          {{0, 0, 1, 1}, Cyclotomic(s.alpha * s.alpha)}, {{0, 1, 0, 1}, Cyclotomic(s.beta * s.beta)},
          {{0, 1, 1, 0}, Cyclotomic(mix * mix)},         {{1, 0, 0, 1}, Cyclotomic(1)},
          {{1, 0, 1, 0}, Cyclotomic(1)},                 {{1, 1, 0, 0}, Cyclotomic(1)}};
      return CycTensor::from_entries(std::move(shape), e);
    }
  }
  throw Error(ErrorCode::BadSpec, "unknown family");
}

CycMatrix m_basis_change(int d) {
  if (d < 3) throw Error(ErrorCode::BadDim, "M basis change needs d >= 3");
  CycMatrix b = CycMatrix::identity(d);
  const Cyclotomic i = Cyclotomic::root(4, 1);
  const Cyclotomic half(Rational(1, 2));
  for (int j = 1; j <= (d - 2) / 2; ++j) {
    int k = d - j - 1;
    b(j, j) = Cyclotomic(1);
    b(k, j) = i;
    b(j, k) = half;
    b(k, k) = -(i * half);
  }
  return b;
}

CycMatrix flip_matrix(int d) {
  CycMatrix f(d, d);
  for (int j = 0; j < d; ++j) f(d - j - 1, j) = Cyclotomic(1);
  return f;
}

CycLocalMap uniform_map(const CycMatrix& a, int n) { return CycLocalMap(static_cast<std::size_t>(n), a); }

}  // namespace tenrank
