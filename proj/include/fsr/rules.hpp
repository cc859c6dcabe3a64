#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsr/cell_complex.hpp"

namespace fsr {

/// A tile type: a polygon with at least three edges plus the rule's
/// per-edge subdivision counts (how many sub-edges side i receives in
/// one subdivision pass).
struct TileType {
  std::string name;
  int edge_count = 0;
  std::vector<int> edge_subdiv;

  friend bool operator==(const TileType&, const TileType&) = default;
};

/// The subdivision of one tile type, encoded as a disk complex given by
/// vertex-indexed cycles. `boundary` lists the boundary vertices starting
/// at the parent's corner 0 and running in the parent's cycle direction;
/// parent corners sit at the cumulative offsets of the subdivision vector.
/// Subtile cycles are stored starting at their own type-corner 0.
struct TemplateSubtile {
  int type = -1;
  std::vector<int> cycle;

  friend bool operator==(const TemplateSubtile&, const TemplateSubtile&) = default;
};

struct SubdivisionTemplate {
  int num_vertices = 0;
  std::vector<int> boundary;
  std::vector<TemplateSubtile> subtiles;

  friend bool operator==(const SubdivisionTemplate&, const SubdivisionTemplate&) = default;
};

namespace detail {

// Everything subdivide() needs to instantiate a template without
// re-deriving edge identities: the template as a complex, which of its
// edges lie on the boundary (and where), and subtile cycles resolved to
// directed edge references.
struct CompiledTemplate {
  CellComplex complex;            // subtiles as tiles, types filled in
  std::vector<int> boundary;      // copy of the vertex cycle
  std::vector<int> boundary_pos;  // vertex -> position in boundary, -1 if interior
  // per template edge: boundary position if on the boundary (-1 otherwise),
  // and whether the stored orientation agrees with the boundary direction
  std::vector<int> edge_boundary_pos;
  std::vector<char> edge_boundary_fwd;
  int interior_vertices = 0;  // count; interior ids are compacted order of appearance
  std::vector<int> interior_index;  // vertex -> dense interior index, -1 on boundary
};

} // namespace detail

struct SubdivisionRule {
  std::string name;
  std::vector<TileType> types;
  std::vector<SubdivisionTemplate> templates;  // one per type

  std::vector<detail::CompiledTemplate> compiled;  // filled by compile_rule

  int type_index(const std::string& n) const {
    for (int i = 0; i < static_cast<int>(types.size()); ++i)
      if (types[i].name == n) return i;
    return -1;
  }

  friend bool operator==(const SubdivisionRule& a, const SubdivisionRule& b) {
    return a.types == b.types && a.templates == b.templates;
  }
};

/// Single-tile disk complex of the given type (the "unsubdivided polygon").
inline CellComplex make_single_tile(const SubdivisionRule& rule, int type) {
  const int n = rule.types.at(type).edge_count;
  CellComplex c;
  c.num_vertices = n;
  Tile t;
  t.type = type;
  for (int i = 0; i < n; ++i) {
    c.edges.emplace_back(i, (i + 1) % n);
    t.sides.push_back(DirectedEdge{i, true});
  }
  c.tiles.push_back(std::move(t));
  return c;
}

namespace detail {

inline std::optional<std::string> compile_template(const TileType& type,
                                                   const SubdivisionTemplate& tpl,
                                                   const std::vector<TileType>& all_types,
                                                   CompiledTemplate& out) {
  const int nv = tpl.num_vertices;
  if (nv <= 0) return "template has no vertices";

  CellComplex c;
  c.num_vertices = nv;
  std::map<std::pair<int, int>, int> edge_of;  // (min,max) -> edge id

  auto edge_for = [&](int a, int b, bool create) -> std::pair<int, bool> {
    auto key = std::minmax(a, b);
    auto it = edge_of.find(key);
    if (it == edge_of.end()) {
      if (!create) return {-1, true};
      int id = static_cast<int>(c.edges.size());
      c.edges.emplace_back(a, b);
      edge_of.emplace(key, id);
      return {id, true};
    }
    return {it->second, c.edges[it->second].first == a};
  };

  for (const auto& sub : tpl.subtiles) {
    if (sub.type < 0 || sub.type >= static_cast<int>(all_types.size()))
      return "subtile references unknown tile type";
    if (static_cast<int>(sub.cycle.size()) != all_types[sub.type].edge_count)
      return "subtile cycle length " + std::to_string(sub.cycle.size()) +
             " does not match type '" + all_types[sub.type].name + "' edge count";
    Tile tile;
    tile.type = sub.type;
    const int n = static_cast<int>(sub.cycle.size());
    for (int i = 0; i < n; ++i) {
      int a = sub.cycle[i], b = sub.cycle[(i + 1) % n];
      if (a < 0 || a >= nv || b < 0 || b >= nv) return "subtile vertex out of range";
      if (a == b) return "subtile has a degenerate side";
      auto [e, fwd] = edge_for(a, b, true);
      tile.sides.push_back(DirectedEdge{e, fwd});
    }
    c.tiles.push_back(std::move(tile));
  }

  // the template must be a valid disk complex in its own right
  auto rep = validate_complex(c, true);
  if (!rep.ok) return "template complex invalid: " + rep.violations.front();

  // boundary must match the declared vertex cycle and the subdivision vector
  const long long want_len =
      std::accumulate(type.edge_subdiv.begin(), type.edge_subdiv.end(), 0LL);
  if (static_cast<long long>(tpl.boundary.size()) != want_len)
    return "boundary mismatch: template boundary has " + std::to_string(tpl.boundary.size()) +
           " sub-edges, subdivision vector needs " + std::to_string(want_len);

  const int L = static_cast<int>(tpl.boundary.size());
  out.boundary_pos.assign(nv, -1);
  for (int i = 0; i < L; ++i) {
    int v = tpl.boundary[i];
    if (v < 0 || v >= nv) return "boundary vertex out of range";
    if (out.boundary_pos[v] != -1) return "boundary cycle repeats a vertex";
    out.boundary_pos[v] = i;
  }

  out.edge_boundary_pos.assign(c.edges.size(), -1);
  out.edge_boundary_fwd.assign(c.edges.size(), 1);
  auto uses = detail::edge_uses(c);
  for (int i = 0; i < L; ++i) {
    int a = tpl.boundary[i], b = tpl.boundary[(i + 1) % L];
    auto [e, fwd] = edge_for(a, b, false);
    if (e < 0) return "declared boundary edge " + std::to_string(a) + "-" + std::to_string(b) +
                      " is not an edge of the template";
    if (uses[e].size() != 1)
      return "declared boundary edge " + std::to_string(a) + "-" + std::to_string(b) +
             " is interior to the template";
    out.edge_boundary_pos[e] = i;
    out.edge_boundary_fwd[e] = fwd ? 1 : 0;
  }
  // above guarantees every boundary edge of the complex is declared,
  // since counts match: a disk's boundary edge count equals L here
  int actual_boundary = 0;
  for (const auto& us : uses) actual_boundary += us.size() == 1;
  if (actual_boundary != L)
    return "template boundary has " + std::to_string(actual_boundary) +
           " edges, declared cycle has " + std::to_string(L);

  out.interior_index.assign(nv, -1);
  int k = 0;
  for (int v = 0; v < nv; ++v)
    if (out.boundary_pos[v] == -1) out.interior_index[v] = k++;
  out.interior_vertices = k;
  out.boundary = tpl.boundary;
  out.complex = std::move(c);
  return std::nullopt;
}

} // namespace detail

/// Validates the rule and fills in the compiled per-template data used by
/// subdivide(). Throws on structural errors; prefer validate_rule for a
/// report.
inline void compile_rule(SubdivisionRule& rule) {
  if (rule.types.size() != rule.templates.size())
    throw std::invalid_argument("rule must have one template per tile type");
  rule.compiled.assign(rule.types.size(), {});
  for (size_t i = 0; i < rule.types.size(); ++i) {
    const auto& ty = rule.types[i];
    if (ty.edge_count < 3)
      throw std::invalid_argument("tile type '" + ty.name + "' has fewer than 3 edges");
    if (static_cast<int>(ty.edge_subdiv.size()) != ty.edge_count)
      throw std::invalid_argument("tile type '" + ty.name + "' subdivision vector length mismatch");
    for (int d : ty.edge_subdiv)
      if (d < 1)
        throw std::invalid_argument("tile type '" + ty.name + "' has subdivision count < 1");
    auto err = detail::compile_template(ty, rule.templates[i], rule.types, rule.compiled[i]);
    if (err)
      throw std::invalid_argument("template for '" + ty.name + "': " + *err);
  }
}

/// Report-style rule validation: runs the same checks as compile_rule and
/// collects violations instead of throwing.
inline ValidationReport validate_rule(const SubdivisionRule& rule) {
  ValidationReport rep;
  if (rule.types.size() != rule.templates.size()) {
    rep.fail("rule must have one template per tile type");
    return rep;
  }
  for (size_t i = 0; i < rule.types.size(); ++i) {
    const auto& ty = rule.types[i];
    if (ty.edge_count < 3) rep.fail("tile type '" + ty.name + "' has fewer than 3 edges");
    if (static_cast<int>(ty.edge_subdiv.size()) != ty.edge_count) {
      rep.fail("tile type '" + ty.name + "' subdivision vector length mismatch");
      continue;
    }
    bool bad = false;
    for (int d : ty.edge_subdiv)
      if (d < 1) bad = true;
    if (bad) rep.fail("tile type '" + ty.name + "' has subdivision count < 1");
    if (ty.edge_count < 3 || bad) continue;
    detail::CompiledTemplate scratch;
    auto err = detail::compile_template(ty, rule.templates[i], rule.types, scratch);
    if (err) rep.fail("template for '" + ty.name + "': " + *err);
  }
  return rep;
}

/// Entry (i, j): number of subtiles of type j in the template of type i.
/// Used as the brute-force tile-count oracle for iterated subdivision.
inline std::vector<std::vector<long long>> counting_matrix(const SubdivisionRule& rule) {
  const int n = static_cast<int>(rule.types.size());
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (const auto& sub : rule.templates[i].subtiles) m[i][sub.type] += 1;
  return m;
}

// ---------------------------------------------------------------------------
// Built-in rules.
//
// R_{p,q}: three tile types. t1 is a quadrilateral subdividing into a
// central t1 surrounded by four t3. t2 is a quadrilateral subdividing into
// a p x q grid of t2. t3 is a (q+3)-gon (a quadrilateral whose bottom edge
// is subdivided into q sub-edges) subdividing into a p x q grid whose
// bottom row consists of t3 and all other rows of t2. Rows stack bottom-up,
// subtile order is row-major from the bottom row.
// ---------------------------------------------------------------------------

namespace detail {

// t1 template: parent corners 0..3, each side split into q; interior
// square c0..c3 glued to the tops of the four surrounding t3.
inline SubdivisionTemplate rpq_t1_template(int q, int t1, int t3) {
  SubdivisionTemplate tpl;
  const int corners = 4;
  auto side_vertex = [&](int side, int j) {
    // j in [0, q]; j == 0 -> corner `side`, j == q -> corner side+1
    if (j == 0) return side;
    if (j == q) return (side + 1) % corners;
    return corners + side * (q - 1) + (j - 1);
  };
  const int c0 = corners + 4 * (q - 1);
  tpl.num_vertices = c0 + 4;
  for (int side = 0; side < 4; ++side)
    for (int j = 0; j < q; ++j) tpl.boundary.push_back(side_vertex(side, j));

  TemplateSubtile central;
  central.type = t1;
  central.cycle = {c0, c0 + 1, c0 + 2, c0 + 3};
  tpl.subtiles.push_back(std::move(central));
  for (int side = 0; side < 4; ++side) {
    TemplateSubtile s;
    s.type = t3;
    for (int j = 0; j <= q; ++j) s.cycle.push_back(side_vertex(side, j));
    s.cycle.push_back(c0 + (side + 1) % 4);  // right spoke head
    s.cycle.push_back(c0 + side);            // top runs c_{side+1} -> c_side
    tpl.subtiles.push_back(std::move(s));
  }
  return tpl;
}

// p x q grid of quadrilaterals, rows bottom-up, all of type `cell_type`.
inline SubdivisionTemplate rpq_t2_template(int p, int q, int t2) {
  SubdivisionTemplate tpl;
  auto g = [&](int r, int c) { return r * (q + 1) + c; };
  tpl.num_vertices = (p + 1) * (q + 1);
  for (int c = 0; c < q; ++c) tpl.boundary.push_back(g(0, c));
  for (int r = 0; r < p; ++r) tpl.boundary.push_back(g(r, q));
  for (int c = q; c > 0; --c) tpl.boundary.push_back(g(p, c));
  for (int r = p; r > 0; --r) tpl.boundary.push_back(g(r, 0));
  for (int r = 0; r < p; ++r)
    for (int c = 0; c < q; ++c) {
      TemplateSubtile s;
      s.type = t2;
      s.cycle = {g(r, c), g(r, c + 1), g(r + 1, c + 1), g(r + 1, c)};
      tpl.subtiles.push_back(std::move(s));
    }
  return tpl;
}

// p x q grid whose bottom row is made of t3 cells (their subdivided bottoms
// lying along the parent's q bottom edges) and upper rows of t2.
inline SubdivisionTemplate rpq_t3_template(int p, int q, int t2, int t3) {
  SubdivisionTemplate tpl;
  auto g = [&](int r, int c) { return r * (q + 1) + c; };
  const int base = (p + 1) * (q + 1);
  auto beta = [&](int c, int j) {  // j in [1, q-1]: interior points of cell c's bottom
    return base + c * (q - 1) + (j - 1);
  };
  tpl.num_vertices = base + q * (q - 1);
  for (int c = 0; c < q; ++c) {
    tpl.boundary.push_back(g(0, c));
    for (int j = 1; j <= q - 1; ++j) tpl.boundary.push_back(beta(c, j));
  }
  for (int r = 0; r < p; ++r) tpl.boundary.push_back(g(r, q));
  for (int c = q; c > 0; --c) tpl.boundary.push_back(g(p, c));
  for (int r = p; r > 0; --r) tpl.boundary.push_back(g(r, 0));

  for (int c = 0; c < q; ++c) {  // bottom row: t3 cells
    TemplateSubtile s;
    s.type = t3;
    s.cycle.push_back(g(0, c));
    for (int j = 1; j <= q - 1; ++j) s.cycle.push_back(beta(c, j));
    s.cycle.push_back(g(0, c + 1));
    s.cycle.push_back(g(1, c + 1));
    s.cycle.push_back(g(1, c));
    tpl.subtiles.push_back(std::move(s));
  }
  for (int r = 1; r < p; ++r)
    for (int c = 0; c < q; ++c) {
      TemplateSubtile s;
      s.type = t2;
      s.cycle = {g(r, c), g(r, c + 1), g(r + 1, c + 1), g(r + 1, c)};
      tpl.subtiles.push_back(std::move(s));
    }
  return tpl;
}

// Shared generator; p >= 1 (p == 1 drops the t2 type entirely, which is
// the structure of the built-in R1).
inline SubdivisionRule make_rpq_impl(int p, int q, const std::string& name) {
  SubdivisionRule rule;
  rule.name = name;
  if (p >= 2) {
    rule.types.push_back({"t1", 4, {q, q, q, q}});
    rule.types.push_back({"t2", 4, {q, p, q, p}});
    std::vector<int> t3sub(q, q);
    t3sub.push_back(p);  // right
    t3sub.push_back(q);  // top
    t3sub.push_back(p);  // left
    rule.types.push_back({"t3", q + 3, t3sub});
    rule.templates.push_back(rpq_t1_template(q, 0, 2));
    rule.templates.push_back(rpq_t2_template(p, q, 1));
    rule.templates.push_back(rpq_t3_template(p, q, 1, 2));
  } else {
    // two types: t1 and the (q+3)-gon, called t2 here
    rule.types.push_back({"t1", 4, {q, q, q, q}});
    std::vector<int> t2sub(q, q);
    t2sub.push_back(1);
    t2sub.push_back(q);
    t2sub.push_back(1);
    rule.types.push_back({"t2", q + 3, t2sub});
    rule.templates.push_back(rpq_t1_template(q, 0, 1));
    rule.templates.push_back(rpq_t3_template(1, q, /*t2 unused*/ 1, 1));
  }
  compile_rule(rule);
  return rule;
}

inline SubdivisionRule make_pentagonal() {
  SubdivisionRule rule;
  rule.name = "pentagonal";
  rule.types.push_back({"t", 5, {2, 2, 2, 2, 2}});
  // corners 0..4, midpoints 5..9 (5+i on side i), central pentagon 10..14
  SubdivisionTemplate tpl;
  tpl.num_vertices = 15;
  for (int i = 0; i < 5; ++i) {
    tpl.boundary.push_back(i);
    tpl.boundary.push_back(5 + i);
  }
  TemplateSubtile central;
  central.type = 0;
  central.cycle = {10, 11, 12, 13, 14};
  tpl.subtiles.push_back(std::move(central));
  for (int i = 0; i < 5; ++i) {
    TemplateSubtile s;
    s.type = 0;
    s.cycle = {i, 5 + i, 10 + i, 10 + (i + 4) % 5, 5 + (i + 4) % 5};
    tpl.subtiles.push_back(std::move(s));
  }
  rule.templates.push_back(std::move(tpl));
  compile_rule(rule);
  return rule;
}

} // namespace detail

/// The two-parameter family R_{p,q}. Rejects p < 2 or q < 2; the p = 1
/// member is reachable as builtin("R1").
inline SubdivisionRule make_rpq(int p, int q) {
  if (p < 2 || q < 2) throw std::invalid_argument("make_rpq requires p, q >= 2");
  return detail::make_rpq_impl(p, q, "R" + std::to_string(p) + "," + std::to_string(q));
}

/// Built-in rules: "pentagonal", "R1", "R2".
inline SubdivisionRule builtin(const std::string& name) {
  if (name == "pentagonal") return detail::make_pentagonal();
  if (name == "R1") return detail::make_rpq_impl(1, 2, "R1");
  if (name == "R2") {
    auto r = detail::make_rpq_impl(2, 3, "R2");
    return r;
  }
  throw std::invalid_argument("unknown builtin rule '" + name + "'");
}

} // namespace fsr
