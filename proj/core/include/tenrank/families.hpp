#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tenrank/tensor_ops.hpp"

namespace tenrank {

enum class Family { GHZ, W, DICKE, L, M, MPRIME, N, NPRIME, Y, NONSYM4 };

std::string_view to_string(Family f);
/// Case-insensitive; accepts "mprime"/"m'" and "nprime"/"n'".
std::optional<Family> parse_family(std::string_view name);

struct FamilySpec {
  Family family = Family::W;
  int d = 2;
  int n = 2;
  int l = 0;  // DICKE excitations
  Rational alpha = 1;  // NONSYM4
  Rational beta = 1;   // NONSYM4
  int sign = 1;        // NONSYM4

  /// Fills forced fields (W/DICKE/NONSYM4 set d = 2, NONSYM4 n = 4, Y d = 3)
  /// and throws BadSpec on anything else that is inconsistent.
  FamilySpec normalized() const;
  std::string str() const;
};

/// Coefficient-1 explicit expansions of the named families.
CycTensor make_state(const FamilySpec& spec);

CycTensor ghz(int d, int n);
CycTensor w_state(int n);
CycTensor dicke(int n, int l);
CycTensor l_state(int d, int n);
CycTensor m_state(int d, int n);
CycTensor mprime_state(int d, int n);
CycTensor n_state(int d, int n);
CycTensor nprime_state(int d, int n);

/// Per-factor basis change with M(d,n) -> M'(d,n) exactly. On every plane
/// {|j>, |k>}, k = d-j-1, 1 <= j <= floor((d-2)/2): |j> -> |j> + i|k> and
/// |k> -> (|j> - i|k>)/2. Identity for d = 3. Throws BadDim for d < 3.
CycMatrix m_basis_change(int d);
/// |j> -> |d-j-1>, the N <-> N' relabeling of the last factor.
CycMatrix flip_matrix(int d);
/// The same matrix on each of n factors.
CycLocalMap uniform_map(const CycMatrix& a, int n);

}  // namespace tenrank
