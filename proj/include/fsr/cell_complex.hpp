#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fsr {

/// A reference to an edge together with a traversal direction.
/// `forward` means tail -> head as stored in CellComplex::edges.
struct DirectedEdge {
  int edge = -1;
  bool forward = true;

  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

/// One closed 2-cell. Sides form a closed cycle of directed edges and are
/// stored starting at the tile's type-corner 0, in type order, so the
/// combinatorial structure map is implicit in the indexing.
/// `parent`/`sub_index` record genealogy across one subdivision step
/// (-1 for generation-0 tiles).
struct Tile {
  int type = -1;
  std::vector<DirectedEdge> sides;
  int parent = -1;
  int sub_index = -1;

  friend bool operator==(const Tile&, const Tile&) = default;
};

/// Finite polygonal 2-complex. Vertices are dense ids 0..num_vertices-1,
/// edges store an arbitrary but fixed orientation (tail, head).
/// Immutable by convention once built; all queries are const.
struct CellComplex {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<Tile> tiles;

  int tail(DirectedEdge d) const { return d.forward ? edges[d.edge].first : edges[d.edge].second; }
  int head(DirectedEdge d) const { return d.forward ? edges[d.edge].second : edges[d.edge].first; }

  friend bool operator==(const CellComplex&, const CellComplex&) = default;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
  long long euler = 0;

  void fail(std::string msg) {
    ok = false;
    violations.push_back(std::move(msg));
  }
};

enum class AdjacencyMode { Skinny, Fat };

namespace detail {

// side incidences per edge: (tile, side index, forward?)
struct EdgeUse {
  int tile;
  int side;
  bool forward;
};

inline std::vector<std::vector<EdgeUse>> edge_uses(const CellComplex& c) {
  std::vector<std::vector<EdgeUse>> uses(c.edges.size());
  for (int t = 0; t < static_cast<int>(c.tiles.size()); ++t) {
    const auto& sides = c.tiles[t].sides;
    for (int s = 0; s < static_cast<int>(sides.size()); ++s) {
      const auto& d = sides[s];
      if (d.edge >= 0 && d.edge < static_cast<int>(c.edges.size()))
        uses[d.edge].push_back({t, s, d.forward});
    }
  }
  return uses;
}

} // namespace detail

/// Checks the R-complex well-formedness conditions. Report-style: never
/// throws, collects violations. With `disk_mode` also requires the
/// complex to be a connected disk (chi = 1, single boundary circle).
inline ValidationReport validate_complex(const CellComplex& c, bool disk_mode = true) {
  ValidationReport rep;
  const int ne = static_cast<int>(c.edges.size());
  const int nt = static_cast<int>(c.tiles.size());

  for (int e = 0; e < ne; ++e) {
    auto [a, b] = c.edges[e];
    if (a < 0 || a >= c.num_vertices || b < 0 || b >= c.num_vertices)
      rep.fail("edge " + std::to_string(e) + " has endpoint out of range");
    else if (a == b)
      rep.fail("edge " + std::to_string(e) + " is a self-loop");
  }

  for (int t = 0; t < nt; ++t) {
    const auto& tile = c.tiles[t];
    if (tile.sides.size() < 3) {
      rep.fail("tile " + std::to_string(t) + " has fewer than 3 sides");
      continue;
    }
    bool in_range = true;
    for (const auto& d : tile.sides)
      if (d.edge < 0 || d.edge >= ne) {
        rep.fail("tile " + std::to_string(t) + " references missing edge");
        in_range = false;
      }
    if (!in_range) continue;
    const int n = static_cast<int>(tile.sides.size());
    for (int s = 0; s < n; ++s)
      if (c.head(tile.sides[s]) != c.tail(tile.sides[(s + 1) % n])) {
        rep.fail("tile " + std::to_string(t) + " edge cycle is not closed at side " +
                 std::to_string(s));
        break;
      }
  }
  if (!rep.ok) return rep;

  auto uses = detail::edge_uses(c);
  std::vector<char> vertex_used(c.num_vertices, 0);
  for (int e = 0; e < ne; ++e) {
    if (uses[e].empty())
      rep.fail("edge " + std::to_string(e) + " is dangling (no incident tile)");
    if (uses[e].size() > 2)
      rep.fail("edge " + std::to_string(e) + " over-shared (" + std::to_string(uses[e].size()) +
               " tile sides)");
    if (uses[e].size() == 2 && uses[e][0].forward == uses[e][1].forward)
      rep.fail("edge " + std::to_string(e) + " traversed twice in the same direction");
    vertex_used[c.edges[e].first] = 1;
    vertex_used[c.edges[e].second] = 1;
  }
  for (int v = 0; v < c.num_vertices; ++v)
    if (!vertex_used[v]) rep.fail("vertex " + std::to_string(v) + " is isolated");

  rep.euler = static_cast<long long>(c.num_vertices) - ne + nt;

  if (disk_mode && nt > 0) {
    if (rep.euler != 1)
      rep.fail("Euler characteristic is " + std::to_string(rep.euler) + ", expected 1");

    // connectivity over the vertex graph
    if (c.num_vertices > 0) {
      std::vector<std::vector<int>> adj(c.num_vertices);
      for (auto [a, b] : c.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
      std::vector<char> seen(c.num_vertices, 0);
      std::vector<int> stack{0};
      seen[0] = 1;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
          if (!seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
      }
      if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        rep.fail("complex is disconnected");
    }

    // boundary must be a single closed circle
    std::vector<int> next_from(c.num_vertices, -1);
    int boundary_edges = 0;
    bool pinched = false;
    for (int e = 0; e < ne; ++e) {
      if (uses[e].size() != 1) continue;
      ++boundary_edges;
      const auto& u = uses[e][0];
      DirectedEdge d{e, u.forward};
      int t0 = c.tail(d);
      if (next_from[t0] != -1) pinched = true;
      next_from[t0] = e;
    }
    if (pinched) rep.fail("boundary is pinched (vertex with two outgoing boundary edges)");
    if (boundary_edges == 0)
      rep.fail("no boundary edges (not a disk)");
    else if (!pinched) {
      // walk one cycle, count edges reached
      int start = -1;
      for (int v = 0; v < c.num_vertices; ++v)
        if (next_from[v] != -1) {
          start = v;
          break;
        }
      int v = start, walked = 0;
      while (walked < boundary_edges) {
        int e = next_from[v];
        if (e == -1) break;
        const auto& u = uses[e][0];
        v = c.head(DirectedEdge{e, u.forward});
        ++walked;
        if (v == start) break;
      }
      if (v != start || walked != boundary_edges)
        rep.fail("boundary is not a single closed circle");
    }
  }
  return rep;
}

/// The boundary circle of a valid disk complex, as directed edges in the
/// direction induced by the (unique) incident tile of each boundary edge.
/// Throws if the complex has zero or several boundary cycles.
inline std::vector<DirectedEdge> boundary_cycle(const CellComplex& c) {
  auto uses = detail::edge_uses(c);
  std::vector<int> next_from(c.num_vertices, -1);
  std::vector<bool> fwd(c.edges.size(), true);
  int boundary_edges = 0;
  for (int e = 0; e < static_cast<int>(c.edges.size()); ++e) {
    if (uses[e].size() != 1) continue;
    ++boundary_edges;
    fwd[e] = uses[e][0].forward;
    int t0 = c.tail(DirectedEdge{e, fwd[e]});
    if (next_from[t0] != -1)
      throw std::runtime_error("boundary_cycle: pinched boundary vertex " + std::to_string(t0));
    next_from[t0] = e;
  }
  if (boundary_edges == 0) throw std::runtime_error("boundary_cycle: complex has no boundary");

  std::vector<DirectedEdge> cycle;
  cycle.reserve(boundary_edges);
  int start = -1;
  for (int v = 0; v < c.num_vertices; ++v)
    if (next_from[v] != -1) {
      start = v;
      break;
    }
  int v = start;
  do {
    int e = next_from[v];
    if (e == -1) throw std::runtime_error("boundary_cycle: boundary walk broke off");
    cycle.push_back(DirectedEdge{e, fwd[e]});
    v = c.head(cycle.back());
  } while (v != start && static_cast<int>(cycle.size()) <= boundary_edges);
  if (static_cast<int>(cycle.size()) != boundary_edges)
    throw std::runtime_error("boundary_cycle: multiple boundary components");
  return cycle;
}

/// Vertex ids on the boundary circle.
inline std::vector<int> boundary_vertices(const CellComplex& c) {
  std::vector<int> out;
  for (const auto& d : boundary_cycle(c)) out.push_back(c.tail(d));
  return out;
}

/// Vertices of a tile, in cycle order (tails of its sides).
inline std::vector<int> tile_vertices(const CellComplex& c, int t) {
  std::vector<int> out;
  out.reserve(c.tiles[t].sides.size());
  for (const auto& d : c.tiles[t].sides) out.push_back(c.tail(d));
  return out;
}

/// Symmetric tile adjacency. Fat: tiles sharing at least one edge.
/// Skinny: tiles sharing at least one vertex (a supergraph of fat).
inline std::vector<std::vector<int>> tile_adjacency(const CellComplex& c, AdjacencyMode mode) {
  const int nt = static_cast<int>(c.tiles.size());
  std::vector<std::vector<int>> adj(nt);
  if (mode == AdjacencyMode::Fat) {
    auto uses = detail::edge_uses(c);
    for (const auto& us : uses)
      if (us.size() == 2 && us[0].tile != us[1].tile) {
        adj[us[0].tile].push_back(us[1].tile);
        adj[us[1].tile].push_back(us[0].tile);
      }
  } else {
    std::vector<std::vector<int>> at_vertex(c.num_vertices);
    for (int t = 0; t < nt; ++t)
      for (int v : tile_vertices(c, t)) at_vertex[v].push_back(t);
    for (auto& ts : at_vertex) {
      std::sort(ts.begin(), ts.end());
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
      for (size_t i = 0; i < ts.size(); ++i)
        for (size_t j = i + 1; j < ts.size(); ++j) {
          adj[ts[i]].push_back(ts[j]);
          adj[ts[j]].push_back(ts[i]);
        }
    }
  }
  for (auto& v : adj) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return adj;
}

} // namespace fsr
