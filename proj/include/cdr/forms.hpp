// Polynomial differential forms on affine charts: wedge, exterior
// derivative, affine pullback, trace, exact integration and L2 inner
// products with the metric induced by the ambient Euclidean one.
#ifndef CDR_FORMS_HPP
#define CDR_FORMS_HPP

#include "cdr/poly.hpp"

#include <numeric>

namespace cdr {

using Vec2 = std::array<Rat, 2>;

inline Vec2 vsub(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 vadd(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 vscale(const Rat& s, const Vec2& a) { return {s * a[0], s * a[1]}; }
inline Rat dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline Rat cross(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }
inline Vec2 perp(const Vec2& a) { return {-a[1], a[0]}; }

// Affine polynomial map u -> M u + c between chart coordinate spaces.
struct AffinePolyMap {
  int srcDim = 0, dstDim = 0;
  std::array<std::array<Rat, 2>, 2> m{};  // m[j][i]: d(dst_j)/d(src_i)
  std::array<Rat, 2> c{};

  static AffinePolyMap identity(int dim) {
    AffinePolyMap f;
    f.srcDim = f.dstDim = dim;
    for (int j = 0; j < dim; ++j) f.m[j][j] = 1;
    return f;
  }
  std::array<Rat, 2> apply(const std::array<Rat, 2>& u) const {
    std::array<Rat, 2> out{c[0], c[1]};
    for (int j = 0; j < dstDim; ++j)
      for (int i = 0; i < srcDim; ++i) out[j] += m[j][i] * u[i];
    return out;
  }
  // this after g  (this ∘ g): src of g, dst of this
  AffinePolyMap after(const AffinePolyMap& g) const {
    if (g.dstDim != srcDim) throw Error(Err::ShapeMismatch, "affine compose");
    AffinePolyMap f;
    f.srcDim = g.srcDim;
    f.dstDim = dstDim;
    for (int j = 0; j < dstDim; ++j) {
      f.c[j] = c[j];
      for (int i = 0; i < srcDim; ++i) f.c[j] += m[j][i] * g.c[i];
      for (int k = 0; k < g.srcDim; ++k) {
        Rat s = 0;
        for (int i = 0; i < srcDim; ++i) s += m[j][i] * g.m[i][k];
        f.m[j][k] = s;
      }
    }
    return f;
  }
  bool operator==(const AffinePolyMap& o) const {
    if (srcDim != o.srcDim || dstDim != o.dstDim) return false;
    for (int j = 0; j < dstDim; ++j) {
      if (c[j] != o.c[j]) return false;
      for (int i = 0; i < srcDim; ++i)
        if (m[j][i] != o.m[j][i]) return false;
    }
    return true;
  }
  Poly componentPoly(int j) const {
    Poly p(c[j]);
    for (int i = 0; i < srcDim; ++i) p += Poly::var(i) * m[j][i];
    return p;
  }
};

// Affine chart E(u) = origin + B u of an entity embedded in R^ambient.
struct Chart {
  int ambient = 2;
  int dim = 2;
  Vec2 origin{Rat(0), Rat(0)};
  std::array<Vec2, 2> basis{Vec2{Rat(0), Rat(0)}, Vec2{Rat(0), Rat(0)}};

  static Chart ambientIdentity(int n) {
    Chart c;
    c.ambient = c.dim = n;
    c.basis[0] = {Rat(1), Rat(0)};
    if (n == 2) c.basis[1] = {Rat(0), Rat(1)};
    return c;
  }
  static Chart segment(const Vec2& w0, const Vec2& w1, int ambient) {
    Chart c;
    c.ambient = ambient;
    c.dim = 1;
    c.origin = w0;
    c.basis[0] = vsub(w1, w0);
    return c;
  }
  static Chart point(const Vec2& v, int ambient) {
    Chart c;
    c.ambient = ambient;
    c.dim = 0;
    c.origin = v;
    return c;
  }

  Vec2 toAmbient(const std::array<Rat, 2>& u) const {
    Vec2 x = origin;
    for (int k = 0; k < dim; ++k) x = vadd(x, vscale(u[k], basis[k]));
    return x;
  }
  // Metric G = B^T B (dim x dim).
  std::array<std::array<Rat, 2>, 2> metric() const {
    std::array<std::array<Rat, 2>, 2> g{};
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g[i][j] = dot(basis[i], basis[j]);
    return g;
  }
  Rat metricDet() const {
    auto g = metric();
    if (dim == 0) return 1;
    if (dim == 1) return g[0][0];
    return g[0][0] * g[1][1] - g[0][1] * g[1][0];
  }
  // sqrt(det G); requires a rational value (rational measures).
  Rat volFactor() const {
    auto s = ratSqrtExact(metricDet());
    if (!s)
      throw Error(Err::DegenerateCell,
                  "entity measure is irrational; rational chart lengths "
                  "are required for metric computations");
    return *s;
  }
  bool hasRationalVolume() const { return ratSqrtExact(metricDet()).has_value(); }

  // Euclidean-orthogonal projection of ambient points into chart
  // coordinates: u(x) = G^{-1} B^T (x - origin). Restricted to the
  // chart's affine hull this inverts E.
  AffinePolyMap projectionFromAmbient() const {
    AffinePolyMap f;
    f.srcDim = ambient;
    f.dstDim = dim;
    if (dim == 0) return f;
    auto g = metric();
    if (dim == 1) {
      Rat inv = Rat(1) / g[0][0];
      for (int i = 0; i < ambient; ++i) f.m[0][i] = inv * basis[0][i];
      Rat o = 0;
      for (int i = 0; i < ambient; ++i) o += f.m[0][i] * origin[i];
      f.c[0] = -o;
      return f;
    }
    // dim == 2 == ambient
    Rat det = metricDet();
    std::array<std::array<Rat, 2>, 2> ginv{};
    ginv[0][0] = g[1][1] / det;
    ginv[1][1] = g[0][0] / det;
    ginv[0][1] = -g[0][1] / det;
    ginv[1][0] = -g[1][0] / det;
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i)
        f.m[j][i] = ginv[j][0] * basis[0][i] + ginv[j][1] * basis[1][i];
    for (int j = 0; j < 2; ++j) {
      Rat o = 0;
      for (int i = 0; i < 2; ++i) o += f.m[j][i] * origin[i];
      f.c[j] = -o;
    }
    return f;
  }
};

// Inclusion of `face` into `host` expressed in chart coordinates,
// verified exactly; throws NotAFace when the face leaves host's hull.
inline AffinePolyMap inclusionMap(const Chart& host, const Chart& face) {
  AffinePolyMap proj = host.projectionFromAmbient();
  AffinePolyMap emb;  // face chart -> ambient
  emb.srcDim = face.dim;
  emb.dstDim = face.ambient;
  for (int j = 0; j < face.ambient; ++j) {
    emb.c[j] = face.origin[j];
    for (int i = 0; i < face.dim; ++i) emb.m[j][i] = face.basis[i][j];
  }
  AffinePolyMap inc = proj.after(emb);
  // verify E_host(inc(u)) == E_face(u) symbolically
  AffinePolyMap hostEmb;
  hostEmb.srcDim = host.dim;
  hostEmb.dstDim = host.ambient;
  for (int j = 0; j < host.ambient; ++j) {
    hostEmb.c[j] = host.origin[j];
    for (int i = 0; i < host.dim; ++i) hostEmb.m[j][i] = host.basis[i][j];
  }
  if (!(hostEmb.after(inc) == emb))
    throw Error(Err::NotAFace, "face does not lie in the host's affine hull");
  return inc;
}

// ---------------------------------------------------------------------
// PolyForm: polynomial differential form in chart coordinates.
// ---------------------------------------------------------------------

using IdxTuple = std::vector<int>;  // strictly increasing indices

inline std::vector<IdxTuple> covectorTuples(int nvars, int q) {
  std::vector<IdxTuple> out;
  if (q < 0 || q > nvars) return out;
  if (q == 0) {
    out.push_back({});
    return out;
  }
  if (q == 1) {
    for (int i = 0; i < nvars; ++i) out.push_back({i});
    return out;
  }
  // q == 2, nvars == 2
  out.push_back({0, 1});
  return out;
}

// Sign of merging two increasing tuples; 0 if they share an index.
inline int mergeSign(const IdxTuple& a, const IdxTuple& b, IdxTuple& merged) {
  merged.clear();
  merged.reserve(a.size() + b.size());
  int sign = 1;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      merged.push_back(a[i++]);
    } else {
      if ((a.size() - i) % 2 == 1) sign = -sign;
      merged.push_back(b[j++]);
    }
  }
  while (i < a.size()) merged.push_back(a[i++]);
  while (j < b.size()) merged.push_back(b[j++]);
  return sign;
}

struct PolyForm {
  int nvars = 2;
  int q = 0;
  std::map<IdxTuple, Poly> comps;

  PolyForm() = default;
  PolyForm(int nv, int deg) : nvars(nv), q(deg) {}
  static PolyForm zero(int nv, int deg) { return PolyForm(nv, deg); }
  static PolyForm constant(int nv, const Rat& c) {
    PolyForm f(nv, 0);
    f.set({}, Poly(c));
    return f;
  }
  static PolyForm fromPoly(int nv, const Poly& p) {
    PolyForm f(nv, 0);
    f.set({}, p);
    return f;
  }
  static PolyForm monomialForm(int nv, int deg, const IdxTuple& t, const Poly& p) {
    PolyForm f(nv, deg);
    f.set(t, p);
    return f;
  }

  bool isZero() const { return comps.empty(); }
  void set(const IdxTuple& t, const Poly& p) {
    if (p.isZero())
      comps.erase(t);
    else
      comps[t] = p;
  }
  Poly component(const IdxTuple& t) const {
    auto it = comps.find(t);
    return it == comps.end() ? Poly() : it->second;
  }
  void add(const IdxTuple& t, const Poly& p) {
    if (p.isZero()) return;
    auto it = comps.find(t);
    if (it == comps.end()) {
      comps[t] = p;
    } else {
      it->second += p;
      if (it->second.isZero()) comps.erase(it);
    }
  }

  PolyForm operator+(const PolyForm& o) const {
    requireSame(o);
    PolyForm f = *this;
    for (auto& [t, p] : o.comps) f.add(t, p);
    return f;
  }
  PolyForm operator-(const PolyForm& o) const {
    requireSame(o);
    PolyForm f = *this;
    for (auto& [t, p] : o.comps) f.add(t, -p);
    return f;
  }
  PolyForm operator*(const Rat& s) const {
    PolyForm f(nvars, q);
    if (s == 0) return f;
    for (auto& [t, p] : comps) f.comps[t] = p * s;
    return f;
  }
  bool operator==(const PolyForm& o) const {
    return nvars == o.nvars && q == o.q && comps == o.comps;
  }

  int coeffDegree() const {
    int d = -1;
    for (auto& [t, p] : comps) d = std::max(d, p.totalDegree());
    return d;
  }

  std::string str() const {
    if (comps.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [t, p] : comps) {
      if (!first) s += "  +  ";
      first = false;
      s += "(" + p.str() + ")";
      for (int i : t) s += std::string(" d") + (i == 0 ? "u0" : "u1");
    }
    return s;
  }

 private:
  void requireSame(const PolyForm& o) const {
    if (nvars != o.nvars) throw Error(Err::CellMismatch, "forms on different charts");
    if (q != o.q) throw Error(Err::DegreeMismatch, "form degrees differ");
  }
};

inline PolyForm wedge(const PolyForm& a, const PolyForm& b) {
  if (a.nvars != b.nvars) throw Error(Err::CellMismatch, "wedge across charts");
  PolyForm out(a.nvars, a.q + b.q);
  if (a.q + b.q > a.nvars) return out;  // identically zero beyond top degree
  IdxTuple merged;
  for (auto& [ta, pa] : a.comps)
    for (auto& [tb, pb] : b.comps) {
      int s = mergeSign(ta, tb, merged);
      if (s == 0) continue;
      out.add(merged, pa * pb * Rat(s));
    }
  return out;
}

// d(f du_I) = sum_j df/du_j du_j ^ du_I. Top-degree input yields the
// zero (q+1)-form.
inline PolyForm exteriorDerivative(const PolyForm& a) {
  PolyForm out(a.nvars, a.q + 1);
  if (a.q + 1 > a.nvars) return out;
  IdxTuple merged;
  for (auto& [t, p] : a.comps) {
    for (int j = 0; j < a.nvars; ++j) {
      Poly dp = p.derivative(j);
      if (dp.isZero()) continue;
      IdxTuple dj{j};
      int s = mergeSign(dj, t, merged);
      if (s == 0) continue;
      out.add(merged, dp * Rat(s));
    }
  }
  return out;
}

// Pullback along the affine map phi (src -> dst) of a form living on
// the destination chart; the result lives on the source chart.
inline PolyForm pullback(const AffinePolyMap& phi, const PolyForm& a) {
  if (a.nvars != phi.dstDim)
    throw Error(Err::ShapeMismatch, "pullback: form not on the map's codomain");
  PolyForm out(phi.srcDim, a.q);
  if (a.q > phi.srcDim) return out;  // restricting past the tangent dimension
  std::vector<Poly> repl;
  for (int j = 0; j < 2; ++j)
    repl.push_back(j < phi.dstDim ? phi.componentPoly(j) : Poly());
  auto srcTuples = covectorTuples(phi.srcDim, a.q);
  for (auto& [t, p] : a.comps) {
    Poly sub = p.substitute(repl);
    if (sub.isZero()) continue;
    for (auto& s : srcTuples) {
      // det of the q x q minor m[t, s]
      Rat det;
      if (a.q == 0) {
        det = 1;
      } else if (a.q == 1) {
        det = phi.m[t[0]][s[0]];
      } else {
        det = phi.m[t[0]][s[0]] * phi.m[t[1]][s[1]] -
              phi.m[t[0]][s[1]] * phi.m[t[1]][s[0]];
      }
      if (det == 0) continue;
      out.add(s, sub * det);
    }
  }
  return out;
}

// Trace onto a face: pullback along the chart-level inclusion.
inline PolyForm trace(const Chart& host, const Chart& face, const PolyForm& a) {
  return pullback(inclusionMap(host, face), a);
}

// ---------------------------------------------------------------------
// Exact integration
// ---------------------------------------------------------------------

inline Rat polygonArea2(const std::vector<Vec2>& poly) {  // twice signed area
  Rat s = 0;
  int n = int(poly.size());
  for (int i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    s += cross(a, b);
  }
  return s;
}
inline Rat polygonArea(const std::vector<Vec2>& poly) { return polygonArea2(poly) / 2; }

inline Rat factorialRat(int n) {
  Rat f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Integral of u0^a u1^b over the reference triangle = a! b! / (a+b+2)!.
inline Rat referenceTriangleMonomial(int a, int b) {
  return factorialRat(a) * factorialRat(b) / factorialRat(a + b + 2);
}

inline Rat integratePolyOverTriangle(const Poly& p, const Vec2& v0, const Vec2& v1,
                                     const Vec2& v2) {
  // x = v0 + s (v1-v0) + t (v2-v0)
  Vec2 e1 = vsub(v1, v0), e2 = vsub(v2, v0);
  Rat jac = cross(e1, e2);  // signed; equals 2*area
  if (jac == 0) return Rat(0);
  std::vector<Poly> repl(2);
  repl[0] = Poly(v0[0]) + Poly::var(0) * e1[0] + Poly::var(1) * e2[0];
  repl[1] = Poly(v0[1]) + Poly::var(0) * e1[1] + Poly::var(1) * e2[1];
  Poly sub = p.substitute(repl);
  Rat s = 0;
  for (auto& [e, c] : sub.terms()) s += c * referenceTriangleMonomial(e[0], e[1]);
  return s * jac;
}

// Fan triangulation from the first vertex; exact for any simple polygon
// given in ccw order (signed pieces cancel on reflex fans).
inline Rat integratePolyOverPolygon(const Poly& p, const std::vector<Vec2>& poly) {
  Rat s = 0;
  for (size_t i = 1; i + 1 < poly.size(); ++i)
    s += integratePolyOverTriangle(p, poly[0], poly[i], poly[i + 1]);
  return s;
}

inline Rat integratePolyInterval(const Poly& p, const Rat& a, const Rat& b) {
  Poly anti = p.antiderivative(0);
  return anti.eval({b, Rat(0)}) - anti.eval({a, Rat(0)});
}

// Integration domain: an entity's chart plus its extent in chart coords.
struct Domain {
  Chart chart;
  std::vector<Vec2> poly;  // dim 2: ccw polygon in chart coordinates
  Rat a{0}, b{1};          // dim 1: interval in chart coordinate

  static Domain polygon(std::vector<Vec2> pts, int ambient = 2) {
    Domain d;
    d.chart = Chart::ambientIdentity(ambient);
    d.poly = std::move(pts);
    return d;
  }
  static Domain onChart(const Chart& c) {
    Domain d;
    d.chart = c;
    return d;
  }
  Rat measure() const {
    if (chart.dim == 0) return 1;  // point mass
    if (chart.dim == 1) return (b - a) * chart.volFactor();
    return polygonArea(poly);  // identity charts only
  }
};

// Integral of a top-degree form over the (positively oriented) domain.
inline Rat integrateTop(const PolyForm& w, const Domain& d) {
  if (w.q != d.chart.dim)
    throw Error(Err::DegreeMismatch, "integrateTop expects a top-degree form");
  if (d.chart.dim == 0) {
    return w.component({}).eval({Rat(0), Rat(0)});
  }
  if (d.chart.dim == 1) {
    return integratePolyInterval(w.component({0}), d.a, d.b);
  }
  return integratePolyOverPolygon(w.component({0, 1}), d.poly);
}

// L2 inner product with the induced metric.
inline Rat innerL2(const PolyForm& x, const PolyForm& y, const Domain& d) {
  if (x.nvars != y.nvars || x.nvars != d.chart.dim)
    throw Error(Err::CellMismatch, "innerL2 chart mismatch");
  if (x.q != y.q) throw Error(Err::DegreeMismatch, "innerL2 degree mismatch");
  int dim = d.chart.dim;
  if (dim == 0) return x.component({}).eval({Rat(0), Rat(0)}) *
                       y.component({}).eval({Rat(0), Rat(0)});
  auto g = d.chart.metric();
  Rat vol = d.chart.volFactor();
  // inverse metric
  std::array<std::array<Rat, 2>, 2> gi{};
  if (dim == 1) {
    gi[0][0] = Rat(1) / g[0][0];
  } else {
    Rat det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    gi[0][0] = g[1][1] / det;
    gi[1][1] = g[0][0] / det;
    gi[0][1] = -g[0][1] / det;
    gi[1][0] = -g[1][0] / det;
  }
  auto tupleInner = [&](const IdxTuple& s, const IdxTuple& t) -> Rat {
    if (x.q == 0) return Rat(1);
    if (x.q == 1) return gi[s[0]][t[0]];
    return gi[s[0]][t[0]] * gi[s[1]][t[1]] - gi[s[0]][t[1]] * gi[s[1]][t[0]];
  };
  Poly acc;
  for (auto& [s, px] : x.comps)
    for (auto& [t, py] : y.comps) {
      Rat w = tupleInner(s, t);
      if (w == 0) continue;
      acc += px * py * w;
    }
  if (acc.isZero()) return Rat(0);
  Rat raw = (dim == 1) ? integratePolyInterval(acc, d.a, d.b)
                       : integratePolyOverPolygon(acc, d.poly);
  return raw * vol;
}

}  // namespace cdr

#endif
