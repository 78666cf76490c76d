// Piecewise-affine simplicial geometries with rational coordinates and
// multi-index labels on lower-dimensional simplices. Ambient dimension
// is 1 or 2; labels tie codimension-p simplices to p+1 top cells.
#ifndef CDR_GEOMETRY_HPP
#define CDR_GEOMETRY_HPP

#include "cdr/polyops.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>

namespace cdr {

struct LabeledEntity {
  MultiIndex index;
  std::vector<int> verts;  // vertex ids, dim+1 of them
  int dim = 0;             // n - p
  Chart chart;
};

struct PermissibilityIssue {
  std::string kind;    // "index-mismatch" | "does-not-extend" | "overlap"
  std::string detail;
};

struct PermissibilityReport {
  bool pass = true;
  std::vector<PermissibilityIssue> issues;
};

class SimplicialGeometry {
 public:
  int n = 2;
  std::vector<Vec2> vertices;
  std::vector<std::vector<int>> topCells;
  std::map<MultiIndex, LabeledEntity> entities;  // all levels, incl. singletons
  std::set<int> boundaryVerts;

  const LabeledEntity& entity(const MultiIndex& mi) const {
    auto it = entities.find(mi);
    if (it == entities.end())
      throw Error(Err::MissingComponent, "no entity labeled " + mi.str());
    return it->second;
  }
  bool hasEntity(const MultiIndex& mi) const { return entities.count(mi) > 0; }

  // I^p, sorted.
  std::vector<MultiIndex> level(int p) const {
    std::vector<MultiIndex> out;
    for (auto& [mi, e] : entities)
      if (mi.p() == p) out.push_back(mi);
    return out;
  }
  int maxLevel() const {
    int m = -1;
    for (auto& [mi, e] : entities) m = std::max(m, mi.p());
    return m;
  }
  // I_i: labeled strict supersets of i.
  std::vector<MultiIndex> supersOf(const MultiIndex& i) const {
    std::vector<MultiIndex> out;
    for (auto& [mi, e] : entities)
      if (mi.size() > i.size() && mi.refines(i)) out.push_back(mi);
    return out;
  }
  // supersets exactly one index longer
  std::vector<MultiIndex> nextOf(const MultiIndex& i) const {
    std::vector<MultiIndex> out;
    for (auto& [mi, e] : entities)
      if (mi.size() == i.size() + 1 && mi.refines(i)) out.push_back(mi);
    return out;
  }
  // number of saturated label chains i = J_0 < J_1 < ... < J_m = k
  int chainCount(const MultiIndex& i, const MultiIndex& k) const {
    if (i == k) return 1;
    int s = 0;
    for (auto& j : nextOf(i))
      if (k.refines(j)) s += chainCount(j, k);
    return s;
  }

  Polygon topPolygon(int t) const {
    Polygon p;
    for (int v : topCells[t]) p.push_back(vertices[v]);
    return p;
  }

  Domain entityDomain(const MultiIndex& mi) const {
    const LabeledEntity& e = entity(mi);
    if (e.dim == n && n == 2) return Domain::polygon(topPolygon(mi.ids[0]));
    Domain d = Domain::onChart(e.chart);
    if (e.dim == 1 && n == 1) {
      d.a = vertices[topCells[mi.ids[0]][0]][0];
      d.b = vertices[topCells[mi.ids[0]][1]][0];
    }
    return d;  // 2D edges use chart coordinate [0,1]
  }

  Rat entityMeasure(const MultiIndex& mi) const { return entityDomain(mi).measure(); }

  bool edgeLengthRational(const MultiIndex& mi) const {
    return entity(mi).chart.hasRationalVolume();
  }
};

namespace detail {

inline Rat jsonCoord(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) return parseRat(j.get<std::string>());
  if (j.is_number_float())
    throw Error(Err::Parse, "floating-point coordinates are not accepted; "
                            "use integers or \"p/q\" strings");
  throw Error(Err::Parse, "coordinate must be an integer or a \"p/q\" string");
}

inline MultiIndex parseMultiIndexKey(const std::string& key) {
  std::vector<int> ids;
  std::string cur;
  for (char ch : key) {
    if (ch == ',') {
      if (cur.empty()) throw Error(Err::Parse, "bad multi-index key '" + key + "'");
      ids.push_back(std::stoi(cur));
      cur.clear();
    } else if (ch == ' ') {
      continue;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      cur += ch;
    } else {
      throw Error(Err::Parse, "bad multi-index key '" + key + "'");
    }
  }
  if (cur.empty()) throw Error(Err::Parse, "bad multi-index key '" + key + "'");
  ids.push_back(std::stoi(cur));
  std::set<int> uniq(ids.begin(), ids.end());
  if (uniq.size() != ids.size())
    throw Error(Err::Parse, "repeated index in multi-index '" + key + "'");
  return MultiIndex(ids);
}

}  // namespace detail

inline SimplicialGeometry loadGeometry(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Err::Parse, std::string("invalid JSON: ") + e.what());
  }
  SimplicialGeometry g;
  if (!j.contains("ambient_dim") || !j["ambient_dim"].is_number_integer())
    throw Error(Err::Parse, "missing integer field 'ambient_dim'");
  g.n = j["ambient_dim"].get<int>();
  if (g.n != 1 && g.n != 2)
    throw Error(Err::UnsupportedDimension, "ambient_dim must be 1 or 2");

  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw Error(Err::Parse, "missing 'vertices' array");
  for (auto& vj : j["vertices"]) {
    if (!vj.is_array() || int(vj.size()) != g.n)
      throw Error(Err::Parse, "each vertex needs exactly ambient_dim coordinates");
    Vec2 v{Rat(0), Rat(0)};
    for (int k = 0; k < g.n; ++k) v[k] = detail::jsonCoord(vj[k]);
    g.vertices.push_back(v);
  }
  for (size_t a = 0; a < g.vertices.size(); ++a)
    for (size_t b = a + 1; b < g.vertices.size(); ++b)
      if (g.vertices[a] == g.vertices[b])
        throw Error(Err::Parse, "vertices " + std::to_string(a) + " and " +
                                    std::to_string(b) + " coincide");

  if (!j.contains("top_cells") || !j["top_cells"].is_array())
    throw Error(Err::Parse, "missing 'top_cells' array");
  for (auto& cj : j["top_cells"]) {
    if (!cj.is_array() || int(cj.size()) != g.n + 1)
      throw Error(Err::Parse, "each top cell needs ambient_dim+1 vertex ids");
    std::vector<int> cell;
    for (auto& e : cj) {
      if (!e.is_number_integer()) throw Error(Err::Parse, "vertex id must be integer");
      int v = e.get<int>();
      if (v < 0 || v >= int(g.vertices.size()))
        throw Error(Err::Parse, "vertex id out of range");
      cell.push_back(v);
    }
    std::set<int> uniq(cell.begin(), cell.end());
    if (uniq.size() != cell.size())
      throw Error(Err::Parse, "top cell repeats a vertex");
    g.topCells.push_back(cell);
  }
  if (g.topCells.empty())
    throw Error(Err::NotPure, "geometry has no top cells");

  // positive orientation
  for (size_t t = 0; t < g.topCells.size(); ++t) {
    if (g.n == 2) {
      Polygon p;
      for (int v : g.topCells[t]) p.push_back(g.vertices[v]);
      if (polygonArea2(p) <= 0)
        throw Error(Err::Parse, "top cell " + std::to_string(t) +
                                    " is degenerate or negatively oriented");
    } else {
      if (!(g.vertices[g.topCells[t][0]][0] < g.vertices[g.topCells[t][1]][0]))
        throw Error(Err::Parse, "top cell " + std::to_string(t) +
                                    " must list its left endpoint first");
    }
  }
  // duplicate cells
  {
    std::set<std::vector<int>> seen;
    for (auto cell : g.topCells) {
      std::sort(cell.begin(), cell.end());
      if (!seen.insert(cell).second)
        throw Error(Err::Parse, "duplicate top cell");
    }
  }
  // geometric overlap of distinct top cells
  for (size_t a = 0; a < g.topCells.size(); ++a)
    for (size_t b = a + 1; b < g.topCells.size(); ++b) {
      if (g.n == 2) {
        Polygon inter = convexIntersect(g.topPolygon(int(a)), g.topPolygon(int(b)));
        if (!inter.empty())
          throw Error(Err::NotPure, "top cells " + std::to_string(a) + " and " +
                                        std::to_string(b) + " overlap");
      } else {
        Rat a0 = g.vertices[g.topCells[a][0]][0], a1 = g.vertices[g.topCells[a][1]][0];
        Rat b0 = g.vertices[g.topCells[b][0]][0], b1 = g.vertices[g.topCells[b][1]][0];
        if (std::max(a0, b0) < std::min(a1, b1))
          throw Error(Err::NotPure, "top cells " + std::to_string(a) + " and " +
                                        std::to_string(b) + " overlap");
      }
    }

  // singleton entities
  for (size_t t = 0; t < g.topCells.size(); ++t) {
    LabeledEntity e;
    e.index = MultiIndex{int(t)};
    e.verts = g.topCells[t];
    e.dim = g.n;
    e.chart = Chart::ambientIdentity(g.n);
    g.entities[e.index] = e;
  }

  // labeled sub-simplices
  if (j.contains("sub_simplices")) {
    if (!j["sub_simplices"].is_object())
      throw Error(Err::Parse, "'sub_simplices' must be an object");
    for (auto& [key, val] : j["sub_simplices"].items()) {
      MultiIndex mi = detail::parseMultiIndexKey(key);
      int p = mi.p();
      if (p < 1 || p > g.n)
        throw Error(Err::IndexMismatch,
                    "multi-index " + mi.str() + " has no matching codimension");
      for (int t : mi.ids)
        if (t < 0 || t >= int(g.topCells.size()))
          throw Error(Err::Parse, "multi-index " + mi.str() + " names a missing cell");
      if (!val.is_array() || int(val.size()) != g.n - p + 1)
        throw Error(Err::Parse, "sub-simplex " + mi.str() + " needs " +
                                    std::to_string(g.n - p + 1) + " vertex ids");
      LabeledEntity e;
      e.index = mi;
      for (auto& vid : val) {
        if (!vid.is_number_integer()) throw Error(Err::Parse, "vertex id must be integer");
        int v = vid.get<int>();
        if (v < 0 || v >= int(g.vertices.size()))
          throw Error(Err::Parse, "vertex id out of range in " + mi.str());
        e.verts.push_back(v);
      }
      std::set<int> uniq(e.verts.begin(), e.verts.end());
      if (uniq.size() != e.verts.size())
        throw Error(Err::Parse, "sub-simplex " + mi.str() + " repeats a vertex");
      e.dim = g.n - p;

      // the labeled simplex must be a common face of exactly the named cells
      std::vector<int> sharing;
      for (size_t t = 0; t < g.topCells.size(); ++t) {
        bool face = true;
        for (int v : e.verts)
          if (std::find(g.topCells[t].begin(), g.topCells[t].end(), v) ==
              g.topCells[t].end()) {
            face = false;
            break;
          }
        if (face) sharing.push_back(int(t));
      }
      if (sharing.empty())
        throw Error(Err::NotPure,
                    "sub-simplex " + mi.str() + " is not a face of any top cell");
      if (sharing != mi.ids)
        throw Error(Err::IndexMismatch,
                    "sub-simplex " + mi.str() + " is shared by other cells than "
                    "its multi-index names");

      if (e.dim == 1)
        e.chart = Chart::segment(g.vertices[e.verts[0]], g.vertices[e.verts[1]], g.n);
      else
        e.chart = Chart::point(g.vertices[e.verts[0]], g.n);
      if (g.entities.count(mi))
        throw Error(Err::Parse, "duplicate label " + mi.str());
      g.entities[mi] = e;
    }
  }
  // distinct labels must name distinct simplices
  {
    std::set<std::vector<int>> seen;
    for (auto& [mi, e] : g.entities) {
      if (mi.size() == 1) continue;
      auto v = e.verts;
      std::sort(v.begin(), v.end());
      if (!seen.insert(v).second)
        throw Error(Err::IndexMismatch, "two labels name the same simplex");
    }
  }

  // boundary vertices
  if (g.n == 2) {
    std::map<std::pair<int, int>, int> edgeCount;
    for (auto& cell : g.topCells)
      for (int k = 0; k < 3; ++k) {
        int a = cell[k], b = cell[(k + 1) % 3];
        if (a > b) std::swap(a, b);
        edgeCount[{a, b}]++;
      }
    for (auto& [e, c] : edgeCount)
      if (c == 1) {
        g.boundaryVerts.insert(e.first);
        g.boundaryVerts.insert(e.second);
      }
  } else {
    std::map<int, int> vertCount;
    for (auto& cell : g.topCells)
      for (int v : cell) vertCount[v]++;
    for (auto& [v, c] : vertCount)
      if (c == 1) g.boundaryVerts.insert(v);
  }
  return g;
}

inline SimplicialGeometry loadGeometryFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Err::Parse, "cannot open geometry file " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return loadGeometry(text);
}

// Fig.-1-style permissibility: (a) labeled interfaces extend to the
// outer boundary, (b) the incidence structure of the top cells matches
// the labels exactly.
inline PermissibilityReport validatePermissibility(const SimplicialGeometry& g) {
  PermissibilityReport rep;
  auto fail = [&](const std::string& kind, const std::string& detail) {
    rep.pass = false;
    rep.issues.push_back({kind, detail});
  };

  int T = int(g.topCells.size());
  // (b) pairwise incidence
  for (int a = 0; a < T; ++a)
    for (int b = a + 1; b < T; ++b) {
      std::vector<int> shared;
      for (int v : g.topCells[a])
        if (std::find(g.topCells[b].begin(), g.topCells[b].end(), v) !=
            g.topCells[b].end())
          shared.push_back(v);
      MultiIndex pair{a, b};
      if (g.n == 2) {
        if (int(shared.size()) == 2) {
          if (!g.hasEntity(pair))
            fail("index-mismatch", "cells " + pair.str() +
                                       " share an edge with no pair label");
        } else if (int(shared.size()) == 1) {
          fail("index-mismatch", "cells " + pair.str() +
                                     " meet only at a vertex; pair indexing "
                                     "cannot match an (n-1)-simplex");
        } else if (shared.empty()) {
          if (convexTouch(g.topPolygon(a), g.topPolygon(b)))
            fail("overlap", "cells " + pair.str() +
                                " touch geometrically without shared vertices");
          if (g.hasEntity(pair))
            fail("index-mismatch", "label " + pair.str() + " names disjoint cells");
        }
      } else {
        if (int(shared.size()) == 1) {
          if (!g.hasEntity(pair))
            fail("index-mismatch", "segments " + pair.str() +
                                       " share a vertex with no pair label");
        }
      }
    }

  if (g.n == 2) {
    // (b) vertex incidence: three cells around an interior vertex must be
    // a labeled triple; four or more never match.
    for (int v = 0; v < int(g.vertices.size()); ++v) {
      std::vector<int> cells;
      for (int t = 0; t < T; ++t)
        if (std::find(g.topCells[t].begin(), g.topCells[t].end(), v) !=
            g.topCells[t].end())
          cells.push_back(t);
      if (int(cells.size()) >= 4) {
        fail("index-mismatch", "vertex " + std::to_string(v) + " lies in " +
                                   std::to_string(cells.size()) +
                                   " cells; intersection degree too high");
      } else if (int(cells.size()) == 3) {
        MultiIndex triple(cells);
        if (!g.hasEntity(triple) ||
            g.entity(triple).verts != std::vector<int>{v})
          fail("index-mismatch", "vertex " + std::to_string(v) +
                                     " is a triple point without label " +
                                     triple.str());
      }
    }
    // (a) labeled edges extend to the outer boundary
    for (auto& [mi, e] : g.entities) {
      if (mi.size() != 2) continue;
      for (int v : e.verts) {
        if (g.boundaryVerts.count(v)) continue;
        bool coveredByTriple = false;
        for (auto& [mj, ej] : g.entities) {
          if (mj.size() == 3 && mj.refines(mi) && ej.verts == std::vector<int>{v}) {
            coveredByTriple = true;
            break;
          }
        }
        if (!coveredByTriple)
          fail("does-not-extend",
               "interface " + mi.str() + " terminates at interior vertex " +
                   std::to_string(v) + " with no triple label");
      }
    }
  }
  return rep;
}

}  // namespace cdr

#endif
