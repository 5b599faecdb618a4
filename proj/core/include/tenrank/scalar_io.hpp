#pragma once

#include <string>
#include <string_view>

#include "tenrank/eps_laurent.hpp"

namespace tenrank {

// Scalar literal grammar shared by tensor files and the CLI:
//   rational   -?INT[/INT]
//   root       z<m>^<k>        (zeta_m^k; `z<m>` alone means k = 1)
//   epsilon    e^<k>           (k may be negative; `e` alone means k = 1)
// combined with `*`, `+`, `-` and parentheses, e.g. `2*z12^5-1/3` or
// `(1+z4)*e^-2+3*e^1`.
//
// Output is canonical: cyclotomics are printed in their smallest field with
// power-basis terms in ascending exponent order, eps terms in ascending degree.

std::string format_scalar(const Rational& r);
std::string format_scalar(const Cyclotomic& c);
std::string format_scalar(const EpsLaurent& e);

/// Throws ParseError; also throws ParseError if an `e^k` appears.
Cyclotomic parse_cyclotomic(std::string_view text);
EpsLaurent parse_eps(std::string_view text);

template <class S>
S parse_scalar(std::string_view text);
template <>
inline Cyclotomic parse_scalar<Cyclotomic>(std::string_view text) { return parse_cyclotomic(text); }
template <>
inline EpsLaurent parse_scalar<EpsLaurent>(std::string_view text) { return parse_eps(text); }

}  // namespace tenrank
