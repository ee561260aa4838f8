#pragma once

#include <map>
#include <string>
#include <vector>

#include "graphhom/rational.hpp"

namespace graphhom {

// Sparse multivariate polynomial over Q: exponent vector -> coefficient.
class Poly {
public:
  using Exponents = std::vector<int>;

  explicit Poly(int vars = 0) : vars_(vars) {
    if (vars < 0 || vars > 8) throw validation_error("variable count out of range");
  }

  static Poly constant(int vars, const Rational& c) {
    Poly p(vars);
    if (c != 0) p.terms_[Exponents(vars, 0)] = c;
    return p;
  }

  static Poly variable(int vars, int i) {
    if (i < 0 || i >= vars) throw validation_error("variable index out of range");
    Poly p(vars);
    Exponents e(vars, 0);
    e[i] = 1;
    p.terms_[e] = rat(1);
    return p;
  }

  int vars() const { return vars_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  void add_term(const Exponents& e, const Rational& c) {
    if (static_cast<int>(e.size()) != vars_) throw validation_error("exponent vector length mismatch");
    for (int x : e)
      if (x < 0) throw validation_error("negative exponent");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end())
      terms_[e] = c;
    else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
    if (terms_.size() > 200000) throw budget_error("polynomial term budget exceeded");
  }

  Poly operator+(const Poly& o) const {
    check_vars(o);
    Poly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
  }

  Poly operator-(const Poly& o) const {
    check_vars(o);
    Poly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
  }

  Poly operator*(const Poly& o) const {
    check_vars(o);
    Poly out(vars_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        Exponents e = e1;
        for (int i = 0; i < vars_; ++i) e[i] += e2[i];
        out.add_term(e, c1 * c2);
      }
    return out;
  }

  Poly operator*(const Rational& c) const {
    Poly out(vars_);
    for (const auto& [e, v] : terms_) out.add_term(e, v * c);
    return out;
  }

  Poly operator-() const { return *this * rat(-1); }

  Poly derivative(int i) const {
    if (i < 0 || i >= vars_) throw validation_error("variable index out of range");
    Poly out(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents d = e;
      --d[i];
      out.add_term(d, c * e[i]);
    }
    return out;
  }

  bool operator==(const Poly& o) const = default;

  // "3/2*x1^2*x2 - x3 + 1" style rendering, variables are x1..xd
  std::string to_text() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      std::string mono;
      for (int i = 0; i < vars_; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(i + 1);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      std::string coeff = to_string(c);
      std::string term;
      if (mono.empty())
        term = coeff;
      else if (c == 1)
        term = mono;
      else if (c == -1)
        term = "-" + mono;
      else
        term = coeff + "*" + mono;
      if (out.empty())
        out = term;
      else if (!term.empty() && term[0] == '-')
        out += " - " + term.substr(1);
      else
        out += " + " + term;
    }
    return out;
  }

private:
  void check_vars(const Poly& o) const {
    if (vars_ != o.vars_) throw validation_error("polynomial variable count mismatch");
  }

  int vars_;
  std::map<Exponents, Rational> terms_;
};

// Parses "x1*x2 + 3/2*x1^2 - 4" into a polynomial in `vars` variables.
inline Poly parse_poly(const std::string& text, int vars) {
  Poly out(vars);
  size_t i = 0;
  auto skip = [&] { while (i < text.size() && text[i] == ' ') ++i; };
  auto parse_int = [&]() -> long {
    size_t start = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == start) throw validation_error("expected a number in polynomial: " + text);
    return std::stol(text.substr(start, i - start));
  };

  skip();
  if (i == text.size()) throw validation_error("empty polynomial");
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    skip();
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw validation_error("expected + or - in polynomial: " + text);
    }
    first = false;
    skip();
    Rational coeff = rat(sign);
    Poly::Exponents expo(vars, 0);
    bool saw_factor = false;
    for (;;) {
      skip();
      if (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        long num = parse_int();
        long den = 1;
        if (i < text.size() && text[i] == '/') {
          ++i;
          den = parse_int();
        }
        coeff *= rat(num, den);
        saw_factor = true;
      } else if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) {
        ++i;
        long var = parse_int();
        if (var < 1 || var > vars)
          throw validation_error("variable x" + std::to_string(var) + " out of range");
        long e = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          e = parse_int();
        }
        expo[var - 1] += static_cast<int>(e);
        saw_factor = true;
      } else {
        break;
      }
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        continue;
      }
      // juxtaposition without '*' is not allowed; next must be +/- or end
      break;
    }
    if (!saw_factor) throw validation_error("dangling sign in polynomial: " + text);
    out.add_term(expo, coeff);
  }
  return out;
}

} // namespace graphhom
