#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsr/cell_complex.hpp"
#include "fsr/rules.hpp"

namespace fsr {

inline constexpr std::int64_t kDefaultTileBudget = 10'000'000;

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BoundaryMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Result of one subdivision pass. Genealogy lives in the tiles
/// (parent, sub_index); edge provenance maps each new edge back to the
/// parent edge it subdivides (-1 for edges interior to a template).
struct SubdividedComplex {
  CellComplex complex;
  std::vector<int> edge_parent;
  std::vector<int> edge_offset;
};

/// Children of each parent tile, ordered by sub_index.
inline std::vector<std::vector<int>> children_index(const CellComplex& child, int parent_tiles) {
  std::vector<std::vector<int>> children(parent_tiles);
  for (int t = 0; t < static_cast<int>(child.tiles.size()); ++t) {
    const auto& tile = child.tiles[t];
    if (tile.parent < 0 || tile.parent >= parent_tiles)
      throw std::logic_error("children_index: tile without genealogy");
    auto& list = children[tile.parent];
    if (static_cast<int>(list.size()) <= tile.sub_index) list.resize(tile.sub_index + 1, -1);
    list[tile.sub_index] = t;
  }
  return children;
}

/// One subdivision pass X -> R(X). Every tile is replaced by an instance
/// of its type's template; parent edges are split once and shared by both
/// incident instances. Precondition: `c` is a valid complex whose tile
/// types belong to `rule`.
inline SubdividedComplex subdivide(const SubdivisionRule& rule, const CellComplex& c,
                                   std::int64_t tile_budget = kDefaultTileBudget) {
  if (rule.compiled.size() != rule.types.size())
    throw std::logic_error("subdivide: rule is not compiled");
  if (c.tiles.empty()) return {c, {}, {}};

  const int ne = static_cast<int>(c.edges.size());
  const int nt = static_cast<int>(c.tiles.size());

  std::int64_t predicted = 0;
  for (const auto& t : c.tiles) {
    if (t.type < 0 || t.type >= static_cast<int>(rule.types.size()))
      throw std::invalid_argument("subdivide: tile with unknown type " + std::to_string(t.type));
    predicted += static_cast<std::int64_t>(rule.templates[t.type].subtiles.size());
  }
  if (predicted > tile_budget)
    throw BudgetError("subdivide: predicted " + std::to_string(predicted) +
                      " tiles exceeds budget " + std::to_string(tile_budget));

  // subdivision count per edge, consistent from both sides
  std::vector<int> depth(ne, 0);
  for (int t = 0; t < nt; ++t) {
    const auto& tile = c.tiles[t];
    const auto& sub = rule.types[tile.type].edge_subdiv;
    for (int s = 0; s < static_cast<int>(tile.sides.size()); ++s) {
      int e = tile.sides[s].edge;
      int d = sub[s];
      if (depth[e] == 0)
        depth[e] = d;
      else if (depth[e] != d)
        throw BoundaryMismatchError("subdivide: edge " + std::to_string(e) +
                                    " subdivided into " + std::to_string(depth[e]) + " and " +
                                    std::to_string(d) + " sub-edges by its two sides");
    }
  }
  for (int e = 0; e < ne; ++e)
    if (depth[e] == 0)
      throw std::invalid_argument("subdivide: edge " + std::to_string(e) + " has no incident tile");

  SubdividedComplex out;
  CellComplex& nc = out.complex;
  nc.num_vertices = c.num_vertices;

  // split parent edges: vertex chain and sub-edge ids along each edge
  std::vector<std::vector<int>> chain(ne);    // vertices incl. endpoints, tail first
  std::vector<std::vector<int>> subedge(ne);  // d sub-edges, oriented along the parent edge
  for (int e = 0; e < ne; ++e) {
    auto [a, b] = c.edges[e];
    const int d = depth[e];
    auto& ch = chain[e];
    ch.push_back(a);
    for (int j = 1; j < d; ++j) ch.push_back(nc.num_vertices++);
    ch.push_back(b);
    for (int j = 0; j < d; ++j) {
      subedge[e].push_back(static_cast<int>(nc.edges.size()));
      nc.edges.emplace_back(ch[j], ch[j + 1]);
      out.edge_parent.push_back(e);
      out.edge_offset.push_back(j);
    }
  }

  nc.tiles.reserve(static_cast<size_t>(predicted));
  std::vector<int> vmap;       // template vertex -> global vertex (per tile)
  std::vector<int> emap;       // template edge -> global edge (per tile)
  std::vector<char> eflip;     // whether stored orientations disagree
  for (int t = 0; t < nt; ++t) {
    const auto& tile = c.tiles[t];
    const auto& ty = rule.types[tile.type];
    const auto& ct = rule.compiled[tile.type];
    const auto& tc = ct.complex;

    vmap.assign(tc.num_vertices, -1);

    // glue the template boundary onto the subdivided parent edges
    int pos = 0;
    for (int s = 0; s < static_cast<int>(tile.sides.size()); ++s) {
      const auto& d = tile.sides[s];
      const auto& ch = chain[d.edge];
      const int n = depth[d.edge];
      for (int j = 0; j < n; ++j) {
        int global = d.forward ? ch[j] : ch[n - j];
        vmap[ct.boundary[pos + j]] = global;
      }
      pos += ty.edge_subdiv[s];
    }
    for (int v = 0; v < tc.num_vertices; ++v)
      if (ct.interior_index[v] >= 0) vmap[v] = nc.num_vertices++;

    // side offsets of this tile's boundary chain
    std::vector<int> side_start(tile.sides.size() + 1, 0);
    for (size_t s = 0; s < tile.sides.size(); ++s)
      side_start[s + 1] = side_start[s] + ty.edge_subdiv[s];

    emap.assign(tc.edges.size(), -1);
    eflip.assign(tc.edges.size(), 0);
    for (int te = 0; te < static_cast<int>(tc.edges.size()); ++te) {
      int bp = ct.edge_boundary_pos[te];
      if (bp < 0) {
        emap[te] = static_cast<int>(nc.edges.size());
        nc.edges.emplace_back(vmap[tc.edges[te].first], vmap[tc.edges[te].second]);
        out.edge_parent.push_back(-1);
        out.edge_offset.push_back(-1);
        continue;
      }
      // boundary template edge at position bp: locate parent side and offset
      int s = 0;
      while (side_start[s + 1] <= bp) ++s;
      const int j = bp - side_start[s];
      const auto& d = tile.sides[s];
      const int n = depth[d.edge];
      if (d.forward) {
        emap[te] = subedge[d.edge][j];
        eflip[te] = ct.edge_boundary_fwd[te] ? 0 : 1;
      } else {
        emap[te] = subedge[d.edge][n - 1 - j];
        eflip[te] = ct.edge_boundary_fwd[te] ? 1 : 0;
      }
    }

    for (int si = 0; si < static_cast<int>(tc.tiles.size()); ++si) {
      Tile sub;
      sub.type = tc.tiles[si].type;
      sub.parent = t;
      sub.sub_index = si;
      sub.sides.reserve(tc.tiles[si].sides.size());
      for (const auto& d : tc.tiles[si].sides)
        sub.sides.push_back(DirectedEdge{emap[d.edge], eflip[d.edge] ? !d.forward : d.forward});
      nc.tiles.push_back(std::move(sub));
    }
  }
  return out;
}

/// The chain c, R(c), ..., R^n(c).
inline std::vector<CellComplex> iterate(const SubdivisionRule& rule, const CellComplex& c, int n,
                                        std::int64_t tile_budget = kDefaultTileBudget) {
  if (n < 0) throw std::invalid_argument("iterate: negative level");
  std::vector<CellComplex> chain;
  chain.reserve(n + 1);
  chain.push_back(c);
  for (int i = 0; i < n; ++i) chain.push_back(subdivide(rule, chain.back(), tile_budget).complex);
  return chain;
}

} // namespace fsr
