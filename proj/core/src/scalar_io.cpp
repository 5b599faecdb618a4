#include "tenrank/scalar_io.hpp"

#include <cctype>

#include "tenrank/error.hpp"

namespace tenrank {
namespace {

bool needs_parens(const std::string& s) {
  // Any sign after the first character means more than one summand.
  return s.find_first_of("+-", 1) != std::string::npos;
}

void append_term(std::string& out, const std::string& term) {
  if (!out.empty() && term.front() != '-') out += '+';
  out += term;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  EpsLaurent parse_all() {
    EpsLaurent v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, what + " at offset " + std::to_string(pos_) + " in scalar '" + std::string(text_) + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return text_.substr(start, pos_ - start);
  }

  std::int64_t small_int() {
    auto d = digits();
    if (d.size() > 9) fail("exponent or order too large");
    return std::stoll(std::string(d));
  }

  std::int64_t signed_exponent() {
    if (!eat('^')) return 1;
    bool neg = eat('-');
    std::int64_t k = small_int();
    return neg ? -k : k;
  }

  EpsLaurent expr() {
    EpsLaurent acc = term();
    for (;;) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  EpsLaurent term() {
    bool neg = eat('-');
    EpsLaurent acc = factor();
    while (eat('*')) acc = acc * factor();
    return neg ? -acc : acc;
  }

  EpsLaurent factor() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      EpsLaurent v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == 'z') {
      ++pos_;
      std::int64_t m = small_int();
      if (m < 1 || m > kMaxCyclotomicOrder) fail("cyclotomic order out of range");
      return EpsLaurent(Cyclotomic::root(static_cast<int>(m), signed_exponent()));
    }
    if (c == 'e') {
      ++pos_;
      return EpsLaurent::monomial(static_cast<int>(signed_exponent()));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      digits();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        digits();
      }
      try {
        return EpsLaurent(Rational::parse(text_.substr(start, pos_ - start)));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::DivisionByZero) fail("zero denominator");
        throw;
      }
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string format_scalar(const Rational& r) { return r.str(); }

std::string format_scalar(const Cyclotomic& value) {
  if (value.is_zero()) return "0";
  Cyclotomic c = value.minimal();
  if (c.is_rational()) return c.to_rational().str();
  std::string out;
  const std::string root = "z" + std::to_string(c.order()) + "^";
  const auto& coeffs = c.coeffs();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Rational& q = coeffs[k];
    if (q.is_zero()) continue;
    std::string term;
    if (k == 0) {
      term = q.str();
    } else if (q.is_one()) {
      term = root + std::to_string(k);
    } else if ((-q).is_one()) {
      term = "-" + root + std::to_string(k);
    } else {
      term = q.str() + "*" + root + std::to_string(k);
    }
    append_term(out, term);
  }
  return out;
}

std::string format_scalar(const EpsLaurent& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : e.terms()) {
    std::string coeff = format_scalar(c);
    std::string term;
    if (k == 0) {
      term = coeff;
    } else {
      std::string mono = "e^" + std::to_string(k);
      if (coeff == "1") {
        term = mono;
      } else if (coeff == "-1") {
        term = "-" + mono;
      } else if (needs_parens(coeff)) {
        term = "(" + coeff + ")*" + mono;
      } else {
        term = coeff + "*" + mono;
      }
    }
    append_term(out, term);
  }
  return out;
}

EpsLaurent parse_eps(std::string_view text) { return Parser(text).parse_all(); }

Cyclotomic parse_cyclotomic(std::string_view text) {
  EpsLaurent v = parse_eps(text);
  if (!v.is_constant()) throw Error(ErrorCode::ParseError, "eps term in cyclotomic scalar '" + std::string(text) + "'");
  return v.coeff(0);
}

}  // namespace tenrank
