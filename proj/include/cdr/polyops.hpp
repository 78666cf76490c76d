// Exact convex-polygon operations over Q: clipping, intersection,
// difference, hulls, and oriented segment chains grouped by line.
// All predicates are exact; no tolerance appears anywhere.
#ifndef CDR_POLYOPS_HPP
#define CDR_POLYOPS_HPP

#include "cdr/forms.hpp"

#include <map>
#include <set>
#include <tuple>

namespace cdr {

using Polygon = std::vector<Vec2>;  // ccw, no repeated or collinear vertices

inline Polygon normalizePolygon(Polygon p) {
  // drop consecutive duplicates
  Polygon q;
  for (auto& v : p) {
    if (q.empty() || !(q.back() == v)) q.push_back(v);
  }
  while (q.size() > 1 && q.front() == q.back()) q.pop_back();
  // drop collinear middle vertices
  Polygon out;
  int n = int(q.size());
  if (n < 3) return {};
  for (int i = 0; i < n; ++i) {
    const Vec2& a = q[(i + n - 1) % n];
    const Vec2& b = q[i];
    const Vec2& c = q[(i + 1) % n];
    if (cross(vsub(b, a), vsub(c, b)) != 0) out.push_back(b);
  }
  if (out.size() < 3) return {};
  if (polygonArea2(out) <= 0) return {};
  return out;
}

// Keep the side a*x + b*y <= c.
inline Polygon clipHalfPlane(const Polygon& poly, const Rat& a, const Rat& b,
                             const Rat& c) {
  if (poly.empty()) return {};
  Polygon out;
  int n = int(poly.size());
  for (int i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    Rat fp = a * p[0] + b * p[1] - c;
    Rat fq = a * q[0] + b * q[1] - c;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
      Rat t = fp / (fp - fq);
      out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
    }
  }
  return normalizePolygon(out);
}

inline Polygon convexIntersect(const Polygon& a, const Polygon& b) {
  Polygon cur = a;
  int n = int(b.size());
  for (int i = 0; i < n && !cur.empty(); ++i) {
    const Vec2& p = b[i];
    const Vec2& q = b[(i + 1) % n];
    Vec2 e = vsub(q, p);
    // inside of ccw edge: cross(e, x - p) >= 0  <=>  -e1*x + e0*y <= -e1*p0 + e0*p1
    cur = clipHalfPlane(cur, -e[1], e[0], -e[1] * p[0] + e[0] * p[1]);
  }
  return cur;
}

// A \ B as disjoint convex pieces (positive area only).
inline std::vector<Polygon> convexDifference(const Polygon& a, const Polygon& b) {
  std::vector<Polygon> out;
  Polygon cur = a;
  int n = int(b.size());
  for (int i = 0; i < n && !cur.empty(); ++i) {
    const Vec2& p = b[i];
    const Vec2& q = b[(i + 1) % n];
    Vec2 e = vsub(q, p);
    // outside piece: cross(e, x-p) <= 0
    Polygon outside = clipHalfPlane(cur, e[1], -e[0], e[1] * p[0] - e[0] * p[1]);
    if (!outside.empty()) out.push_back(outside);
    cur = clipHalfPlane(cur, -e[1], e[0], -e[1] * p[0] + e[0] * p[1]);
  }
  return out;
}

// Exact closure-contact test (separating axis, convex inputs).
inline bool convexTouch(const Polygon& a, const Polygon& b) {
  auto separated = [](const Polygon& p, const Polygon& q) {
    int n = int(p.size());
    for (int i = 0; i < n; ++i) {
      Vec2 e = vsub(p[(i + 1) % n], p[i]);
      Vec2 nrm = perp(e);
      Rat minP = dot(nrm, p[0]), maxP = minP;
      for (auto& v : p) {
        Rat d = dot(nrm, v);
        minP = std::min(minP, d);
        maxP = std::max(maxP, d);
      }
      Rat minQ = dot(nrm, q[0]), maxQ = minQ;
      for (auto& v : q) {
        Rat d = dot(nrm, v);
        minQ = std::min(minQ, d);
        maxQ = std::max(maxQ, d);
      }
      if (minQ > maxP || minP > maxQ) return true;
    }
    return false;
  };
  return !separated(a, b) && !separated(b, a);
}

inline bool pointInConvex(const Vec2& x, const Polygon& poly) {
  int n = int(poly.size());
  for (int i = 0; i < n; ++i) {
    Vec2 e = vsub(poly[(i + 1) % n], poly[i]);
    if (cross(e, vsub(x, poly[i])) < 0) return false;
  }
  return true;
}
inline bool pointStrictlyInConvex(const Vec2& x, const Polygon& poly) {
  int n = int(poly.size());
  for (int i = 0; i < n; ++i) {
    Vec2 e = vsub(poly[(i + 1) % n], poly[i]);
    if (cross(e, vsub(x, poly[i])) <= 0) return false;
  }
  return true;
}

inline Polygon convexHull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  int n = int(pts.size());
  if (n < 3) return {};
  std::vector<Vec2> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(vsub(h[k - 1], h[k - 2]), vsub(pts[i], h[k - 2])) <= 0) --k;
    h[k++] = pts[i];
  }
  for (int i = n - 2, t = k + 1; i >= 0; --i) {
    while (k >= t && cross(vsub(h[k - 1], h[k - 2]), vsub(pts[i], h[k - 2])) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return normalizePolygon(h);
}

// ---------------------------------------------------------------------
// Oriented segments grouped by supporting line
// ---------------------------------------------------------------------

struct LineKey {
  Int a, b, c;  // a x + b y = c, primitive, sign-normalized
  bool operator<(const LineKey& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
  }
  bool operator==(const LineKey& o) const { return a == o.a && b == o.b && c == o.c; }
};

inline LineKey lineThrough(const Vec2& p, const Vec2& q) {
  // normal (a,b) = perp(q - p); line a x + b y = c
  Rat ra = p[1] - q[1];
  Rat rb = q[0] - p[0];
  Rat rc = ra * p[0] + rb * p[1];
  Int da = denominator(ra), db = denominator(rb), dc = denominator(rc);
  Int l = lcm(lcm(da, db), dc);
  Int ia = numerator(ra) * (l / da);
  Int ib = numerator(rb) * (l / db);
  Int ic = numerator(rc) * (l / dc);
  Int g = gcd(gcd(abs(ia), abs(ib)), abs(ic));
  if (g == 0) throw Error(Err::DegenerateCell, "degenerate segment");
  ia /= g;
  ib /= g;
  ic /= g;
  if (ia < 0 || (ia == 0 && ib < 0)) {
    ia = -ia;
    ib = -ib;
    ic = -ic;
  }
  return {ia, ib, ic};
}

// Canonical parameter of a point along a line: t = x . dir with the
// line's canonical direction dir = (b, -a).
inline Rat lineParam(const LineKey& k, const Vec2& x) {
  return Rat(k.b) * x[0] - Rat(k.a) * x[1];
}
inline Vec2 linePoint(const LineKey& k, const Rat& t) {
  // point = c * n / |n|^2 + t * dir / |dir|^2, n = (a,b), dir = (b,-a)
  Rat n2 = Rat(k.a) * Rat(k.a) + Rat(k.b) * Rat(k.b);
  return {Rat(k.c) * Rat(k.a) / n2 + t * Rat(k.b) / n2,
          Rat(k.c) * Rat(k.b) / n2 - t * Rat(k.a) / n2};
}

// Weighted interval coverage on a line's canonical parameter.
class IntervalCover {
 public:
  void add(const Rat& t0, const Rat& t1, int w) {
    if (t0 == t1) return;
    if (t0 < t1) {
      delta_[t0] += w;
      delta_[t1] -= w;
    } else {
      delta_[t1] -= w;
      delta_[t0] += w;
    }
  }
  // maximal runs (t0, t1, weight != 0)
  std::vector<std::tuple<Rat, Rat, int>> runs() const {
    std::vector<std::tuple<Rat, Rat, int>> out;
    int w = 0;
    bool have = false;
    Rat prev;
    for (auto& [t, d] : delta_) {
      if (have && w != 0 && prev != t) out.push_back({prev, t, w});
      w += d;
      prev = t;
      have = true;
    }
    return out;
  }
  bool allZero() const {
    int w = 0;
    Rat prev;
    bool have = false;
    for (auto& [t, d] : delta_) {
      if (have && w != 0 && prev != t) return false;
      w += d;
      prev = t;
      have = true;
    }
    return true;
  }

 private:
  std::map<Rat, int> delta_;
};

struct OrientedSegment {
  Vec2 p0, p1;
  Rat length2() const {
    Vec2 d = vsub(p1, p0);
    return dot(d, d);
  }
};

// Oriented 1-chains grouped per supporting line. Adding a polygon's ccw
// boundary and subtracting a neighbor's cancels shared walls exactly.
class SegmentChain {
 public:
  void addSegment(const Vec2& p0, const Vec2& p1, int w = 1) {
    if (p0 == p1) return;
    LineKey k = lineThrough(p0, p1);
    Rat t0 = lineParam(k, p0), t1 = lineParam(k, p1);
    lines_[k].add(t0, t1, t0 < t1 ? w : -w);
  }
  void addPolygonBoundary(const Polygon& poly, int w = 1) {
    int n = int(poly.size());
    for (int i = 0; i < n; ++i) addSegment(poly[i], poly[(i + 1) % n], w);
  }
  // net oriented segments (weight folded into orientation/multiplicity)
  std::vector<OrientedSegment> netSegments() const {
    std::vector<OrientedSegment> out;
    for (auto& [k, cover] : lines_) {
      for (auto& [t0, t1, w] : cover.runs()) {
        Vec2 a = linePoint(k, t0), b = linePoint(k, t1);
        int reps = w > 0 ? w : -w;
        for (int r = 0; r < reps; ++r) {
          if (w > 0)
            out.push_back({a, b});
          else
            out.push_back({b, a});
        }
      }
    }
    return out;
  }
  bool empty() const {
    for (auto& [k, cover] : lines_)
      if (!cover.allZero()) return false;
    return true;
  }
  const std::map<LineKey, IntervalCover>& lines() const { return lines_; }

 private:
  std::map<LineKey, IntervalCover> lines_;
};

// Overlap of two oriented chains restricted to opposite orientation:
// returns the segments (oriented as in `a`) where a runs +1 and b runs
// -1 on the same line (or vice versa with sign flip).
inline std::vector<OrientedSegment> opposedOverlap(const SegmentChain& a,
                                                   const SegmentChain& b) {
  std::vector<OrientedSegment> out;
  for (auto& [k, coverA] : a.lines()) {
    auto itB = b.lines().find(k);
    if (itB == b.lines().end()) continue;
    // intersect runs with opposite signs
    auto runsA = coverA.runs();
    auto runsB = itB->second.runs();
    for (auto& [a0, a1, wa] : runsA)
      for (auto& [b0, b1, wb] : runsB) {
        if (wa * wb >= 0) continue;
        Rat lo = std::max(a0, b0), hi = std::min(a1, b1);
        if (lo < hi) {
          Vec2 p = linePoint(k, lo), q = linePoint(k, hi);
          if (wa > 0)
            out.push_back({p, q});
          else
            out.push_back({q, p});
        }
      }
  }
  return out;
}

// Total |overlap| length^2-free measure: we only need "is the shared
// boundary of positive length", computed exactly from parameters.
inline bool chainsSharePositiveLength(const SegmentChain& a, const SegmentChain& b) {
  for (auto& [k, coverA] : a.lines()) {
    auto itB = b.lines().find(k);
    if (itB == b.lines().end()) continue;
    auto runsA = coverA.runs();
    auto runsB = itB->second.runs();
    for (auto& [a0, a1, wa] : runsA)
      for (auto& [b0, b1, wb] : runsB) {
        Rat lo = std::max(a0, b0), hi = std::min(a1, b1);
        if (lo < hi) return true;
      }
  }
  return false;
}

}  // namespace cdr

#endif
