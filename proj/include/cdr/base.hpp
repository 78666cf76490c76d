// Exact rational scalars, multi-indices and error codes shared by the
// whole library. Everything downstream works over Q; no floating point
// enters any verification path.
#ifndef CDR_BASE_HPP
#define CDR_BASE_HPP

#include <boost/multiprecision/gmp.hpp>

#include <array>
#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdr {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

enum class Err {
  Parse,
  NotPure,
  IndexMismatch,
  EpsilonTooLarge,
  DegenerateCell,
  ShapeMismatch,
  AxiomViolation,
  SingularGram,
  MissingComponent,
  NotAFace,
  CellMismatch,
  DegreeMismatch,
  NotWeaklyDifferentiable,
  UnmatchedFacet,
  ArrangementMismatch,
  DegenerateBand,
  UnsupportedDimension,
};

inline const char* errName(Err e) {
  switch (e) {
    case Err::Parse: return "ParseError";
    case Err::NotPure: return "NotPure";
    case Err::IndexMismatch: return "IndexMismatch";
    case Err::EpsilonTooLarge: return "EpsilonTooLarge";
    case Err::DegenerateCell: return "DegenerateCell";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::AxiomViolation: return "AxiomViolation";
    case Err::SingularGram: return "SingularGram";
    case Err::MissingComponent: return "MissingComponent";
    case Err::NotAFace: return "NotAFace";
    case Err::CellMismatch: return "CellMismatch";
    case Err::DegreeMismatch: return "DegreeMismatch";
    case Err::NotWeaklyDifferentiable: return "NotWeaklyDifferentiable";
    case Err::UnmatchedFacet: return "UnmatchedFacet";
    case Err::ArrangementMismatch: return "ArrangementMismatch";
    case Err::DegenerateBand: return "DegenerateBand";
    case Err::UnsupportedDimension: return "UnsupportedDimension";
  }
  return "Error";
}

struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& msg)
      : std::runtime_error(std::string(errName(c)) + ": " + msg), code(c) {}
};

// Parse "p/q" or "p"; rejects empty and malformed strings.
inline Rat parseRat(const std::string& s) {
  if (s.empty()) throw Error(Err::Parse, "empty rational literal");
  try {
    Rat r(s);
    return r;
  } catch (const std::exception&) {
    throw Error(Err::Parse, "bad rational literal '" + s + "'");
  }
}

inline std::string ratStr(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

// Non-normative decimal rendering used only in reports/SVG.
inline std::string ratDecimal(const Rat& r, int digits = 6) {
  boost::multiprecision::mpf_float_100 f(r);
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << f;
  return os.str();
}

inline double ratDouble(const Rat& r) { return r.convert_to<double>(); }

// Exact square root when the rational is a perfect square of a rational.
inline std::optional<Rat> ratSqrtExact(const Rat& r) {
  if (r < 0) return std::nullopt;
  if (r == 0) return Rat(0);
  Int num = numerator(r), den = denominator(r);
  Int sn = sqrt(num), sd = sqrt(den);
  if (sn * sn == num && sd * sd == den) return Rat(sn) / Rat(sd);
  return std::nullopt;
}

// Sorted tuple of top-cell indices. Length 1 = a top cell itself,
// length p+1 = the label of a codimension-p sub-simplex / p-overlap.
struct MultiIndex {
  std::vector<int> ids;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> v) : ids(std::move(v)) {
    std::sort(ids.begin(), ids.end());
  }
  MultiIndex(std::initializer_list<int> v) : ids(v) {
    std::sort(ids.begin(), ids.end());
  }

  int size() const { return static_cast<int>(ids.size()); }
  int p() const { return size() - 1; }
  bool contains(int i) const {
    return std::binary_search(ids.begin(), ids.end(), i);
  }
  bool refines(const MultiIndex& o) const {  // o subset of this
    return std::includes(ids.begin(), ids.end(), o.ids.begin(), o.ids.end());
  }
  MultiIndex erased(int pos) const {
    MultiIndex m;
    m.ids = ids;
    m.ids.erase(m.ids.begin() + pos);
    return m;
  }
  MultiIndex with(int i) const {
    MultiIndex m;
    m.ids = ids;
    m.ids.push_back(i);
    std::sort(m.ids.begin(), m.ids.end());
    return m;
  }
  bool operator<(const MultiIndex& o) const {
    if (ids.size() != o.ids.size()) return ids.size() < o.ids.size();
    return ids < o.ids;
  }
  bool operator==(const MultiIndex& o) const { return ids == o.ids; }
  bool operator!=(const MultiIndex& o) const { return ids != o.ids; }

  std::string str() const {
    std::string s = "(";
    for (size_t k = 0; k < ids.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(ids[k]);
    }
    return s + ")";
  }
};

struct Bigrade {
  int p = 0, q = 0;
  bool operator<(const Bigrade& o) const {
    return p != o.p ? p < o.p : q < o.q;
  }
  bool operator==(const Bigrade& o) const { return p == o.p && q == o.q; }
  bool operator!=(const Bigrade& o) const { return !(*this == o); }
  std::string str() const {
    return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
  }
};

// Coefficient degree cap policy. Uniform keeps P_r coefficients at every
// form degree; Graded uses P_{r-q} so that exterior derivatives admit
// in-space potentials (needed for cohomology to match topology).
enum class CapPolicy { Uniform, Graded };

inline int capForDegree(int r, int q, CapPolicy pol) {
  int c = (pol == CapPolicy::Uniform) ? r : r - q;
  return c;  // negative means the space is empty
}

}  // namespace cdr

#endif
