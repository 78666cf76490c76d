// Multivariate polynomials over Q in at most two variables, plus the
// monomial bases used throughout basis assembly.
#ifndef CDR_POLY_HPP
#define CDR_POLY_HPP

#include "cdr/base.hpp"

#include <map>

namespace cdr {

using Expo = std::array<int, 2>;  // exponents; unused variables stay 0

class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rat& c) {
    if (c != 0) terms_[{0, 0}] = c;
  }
  static Poly var(int j) {
    Poly p;
    Expo e{0, 0};
    e[j] = 1;
    p.terms_[e] = 1;
    return p;
  }
  static Poly monomial(Expo e, const Rat& c) {
    Poly p;
    if (c != 0) p.terms_[e] = c;
    return p;
  }

  const std::map<Expo, Rat>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  int totalDegree() const {
    int d = -1;
    for (auto& [e, c] : terms_) d = std::max(d, e[0] + e[1]);
    return d;  // -1 for the zero polynomial
  }

  Rat coeff(Expo e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  Poly& operator+=(const Poly& o) {
    for (auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  Poly operator+(const Poly& o) const {
    Poly p = *this;
    p += o;
    return p;
  }
  Poly operator-(const Poly& o) const {
    Poly p = *this;
    p -= o;
    return p;
  }
  Poly operator*(const Poly& o) const {
    Poly p;
    for (auto& [e1, c1] : terms_)
      for (auto& [e2, c2] : o.terms_)
        p.add({e1[0] + e2[0], e1[1] + e2[1]}, c1 * c2);
    return p;
  }
  Poly operator*(const Rat& s) const {
    Poly p;
    if (s == 0) return p;
    for (auto& [e, c] : terms_) p.terms_[e] = c * s;
    return p;
  }
  Poly operator-() const { return *this * Rat(-1); }

  Poly derivative(int j) const {
    Poly p;
    for (auto& [e, c] : terms_) {
      if (e[j] == 0) continue;
      Expo d = e;
      d[j] -= 1;
      p.add(d, c * e[j]);
    }
    return p;
  }

  // Antiderivative in variable j (used by 1D integration).
  Poly antiderivative(int j) const {
    Poly p;
    for (auto& [e, c] : terms_) {
      Expo d = e;
      d[j] += 1;
      p.add(d, c / d[j]);
    }
    return p;
  }

  Rat eval(const std::array<Rat, 2>& x) const {
    Rat s = 0;
    for (auto& [e, c] : terms_) {
      Rat t = c;
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < e[j]; ++k) t *= x[j];
      s += t;
    }
    return s;
  }

  // Substitute each variable by an affine polynomial in new variables.
  Poly substitute(const std::vector<Poly>& repl) const {
    Poly out;
    for (auto& [e, c] : terms_) {
      Poly t(c);
      for (int j = 0; j < 2; ++j) {
        if (e[j] == 0) continue;
        Poly pw = power(repl[j], e[j]);
        t = t * pw;
      }
      out += t;
    }
    return out;
  }

  static Poly power(const Poly& base, int k) {
    Poly out{Rat(1)};
    for (int i = 0; i < k; ++i) out = out * base;
    return out;
  }

  std::string str(const std::vector<std::string>& names = {"x", "y"}) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [e, c] : terms_) {
      if (!first) s += " + ";
      first = false;
      s += ratStr(c);
      for (int j = 0; j < 2; ++j)
        if (e[j] > 0) {
          s += "*" + names[j];
          if (e[j] > 1) s += "^" + std::to_string(e[j]);
        }
    }
    return s;
  }

 private:
  void add(Expo e, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  std::map<Expo, Rat> terms_;
};

inline Poly operator*(const Rat& s, const Poly& p) { return p * s; }

// Monomial exponents of nvars variables with total degree <= cap,
// ordered by (degree, lexicographic). cap < 0 yields the empty list.
inline std::vector<Expo> monomialExponents(int nvars, int cap) {
  std::vector<Expo> out;
  if (cap < 0) return out;
  if (nvars == 0) {
    out.push_back({0, 0});
    return out;
  }
  for (int d = 0; d <= cap; ++d) {
    if (nvars == 1) {
      out.push_back({d, 0});
    } else {
      for (int i = d; i >= 0; --i) out.push_back({i, d - i});
    }
  }
  return out;
}

inline int polySpaceDim(int nvars, int cap) {
  return int(monomialExponents(nvars, cap).size());
}

}  // namespace cdr

#endif
