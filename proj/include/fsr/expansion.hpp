#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsr/cell_complex.hpp"
#include "fsr/rules.hpp"
#include "fsr/subdivide.hpp"

namespace fsr {

/// A single-tile seed: tile type t together with a level k >= 1 and the
/// genealogy path of a subtile of type t inside R^k(t). The expansion
/// complex is the direct limit of R^{km}(t) glued along that subtile.
struct Seed {
  int type = -1;
  int level = 0;
  std::vector<int> path;  // sub_index per subdivision step, length == level
  int alignment = 0;      // corner rotation type -> subtile; 0 throughout
  bool interior = false;  // subtile misses the boundary of R^level(t)

  friend bool operator==(const Seed&, const Seed&) = default;
};

/// All single-tile seeds with level <= max_level. A type whose iterated
/// subdivision never contains a copy of itself (notably an identity rule)
/// yields no entries.
inline std::vector<Seed> find_seeds(const SubdivisionRule& rule, int max_level,
                                    std::int64_t tile_budget = kDefaultTileBudget) {
  std::vector<Seed> seeds;
  for (int ty = 0; ty < static_cast<int>(rule.types.size()); ++ty) {
    CellComplex k = make_single_tile(rule, ty);
    // genealogy paths back to the level-0 tile
    std::vector<std::vector<int>> paths{{}};
    for (int level = 1; level <= max_level; ++level) {
      k = subdivide(rule, k, tile_budget).complex;
      std::vector<std::vector<int>> next(k.tiles.size());
      for (int t = 0; t < static_cast<int>(k.tiles.size()); ++t) {
        next[t] = paths[k.tiles[t].parent];
        next[t].push_back(k.tiles[t].sub_index);
      }
      paths = std::move(next);
      if (k.tiles.size() <= 1) continue;  // no expansion at this level
      std::vector<char> on_boundary(k.num_vertices, 0);
      for (int v : boundary_vertices(k)) on_boundary[v] = 1;
      for (int t = 0; t < static_cast<int>(k.tiles.size()); ++t) {
        if (k.tiles[t].type != ty) continue;
        bool interior = true;
        for (int v : tile_vertices(k, t))
          if (on_boundary[v]) interior = false;
        seeds.push_back(Seed{ty, level, paths[t], 0, interior});
      }
    }
  }
  return seeds;
}

/// Preferred seed for growth computations: interior if possible, lowest
/// level, then lowest type index and genealogy path.
inline std::optional<Seed> canonical_seed(const SubdivisionRule& rule, int max_level = 3) {
  auto all = find_seeds(rule, max_level);
  std::stable_sort(all.begin(), all.end(), [](const Seed& a, const Seed& b) {
    if (a.interior != b.interior) return a.interior;
    if (a.level != b.level) return a.level < b.level;
    if (a.type != b.type) return a.type < b.type;
    return a.path < b.path;
  });
  if (all.empty()) return std::nullopt;
  return all.front();
}

namespace detail {

// genealogy of one subdivide application
struct TowerStep {
  std::vector<int> parent;
  std::vector<int> sub_index;
  std::vector<std::vector<int>> children;
};

inline TowerStep make_step(const CellComplex& child, int parent_tiles) {
  TowerStep st;
  st.parent.resize(child.tiles.size());
  st.sub_index.resize(child.tiles.size());
  for (int t = 0; t < static_cast<int>(child.tiles.size()); ++t) {
    st.parent[t] = child.tiles[t].parent;
    st.sub_index[t] = child.tiles[t].sub_index;
  }
  st.children = children_index(child, parent_tiles);
  return st;
}

} // namespace detail

/// The chain S = phi^0(S) in phi^1(S) in ... realized as nested subdivided
/// complexes. stages[m] is R^{level*m}(t); incl[m] embeds stage m in stage
/// m+1 tile-by-tile (the seed identification applied m times).
struct ExpansionTower {
  SubdivisionRule rule;
  Seed seed;
  std::vector<CellComplex> stages;
  std::vector<std::vector<detail::TowerStep>> steps;  // steps[m]: stage m -> m+1
  std::vector<std::vector<int>> incl;                 // incl[m]: stage m -> m+1
  std::vector<int> seed_tile;                         // image of the level-0 tile per stage
  std::vector<std::string> warnings;

  int num_stages() const { return static_cast<int>(stages.size()) - 1; }
};

/// Adds one stage (one application of R^level).
inline void extend_tower(ExpansionTower& tw, std::int64_t tile_budget = kDefaultTileBudget) {
  const int m = static_cast<int>(tw.stages.size()) - 1;
  std::vector<detail::TowerStep> steps;
  CellComplex cur = tw.stages.back();
  for (int i = 0; i < tw.seed.level; ++i) {
    int parents = static_cast<int>(cur.tiles.size());
    cur = subdivide(tw.rule, cur, tile_budget).complex;
    steps.push_back(detail::make_step(cur, parents));
  }
  tw.stages.push_back(std::move(cur));
  tw.steps.push_back(std::move(steps));

  // inclusion stage m -> m+1
  std::vector<int> inc(tw.stages[m].tiles.size(), -1);
  if (m == 0) {
    int tile = 0;
    for (int i = 0; i < tw.seed.level; ++i) tile = tw.steps[0][i].children[tile][tw.seed.path[i]];
    inc[0] = tile;
  } else {
    const auto& up = tw.steps[m - 1];   // ancestry within stage m
    const auto& down = tw.steps[m];     // descent into stage m+1
    const int k = tw.seed.level;
    std::vector<int> path(k);
    for (int t = 0; t < static_cast<int>(inc.size()); ++t) {
      int a = t;
      for (int i = k - 1; i >= 0; --i) {
        path[i] = up[i].sub_index[a];
        a = up[i].parent[a];
      }
      int img = tw.incl[m - 1][a];
      for (int i = 0; i < k; ++i) img = down[i].children[img][path[i]];
      inc[t] = img;
    }
  }
  for (int t = 0; t < static_cast<int>(inc.size()); ++t)
    if (tw.stages[m].tiles[t].type != tw.stages[m + 1].tiles[inc[t]].type)
      throw std::logic_error("tower inclusion does not preserve tile types");
  tw.incl.push_back(std::move(inc));
  tw.seed_tile.push_back(tw.incl.back()[tw.seed_tile.back()]);
}

inline ExpansionTower build_tower(const SubdivisionRule& rule, const Seed& seed, int stages,
                                  std::int64_t tile_budget = kDefaultTileBudget) {
  if (seed.level < 1 || static_cast<int>(seed.path.size()) != seed.level)
    throw std::invalid_argument("build_tower: malformed seed");
  ExpansionTower tw;
  tw.rule = rule;
  tw.seed = seed;
  tw.stages.push_back(make_single_tile(rule, seed.type));
  tw.seed_tile.push_back(0);
  if (!seed.interior)
    tw.warnings.push_back(
        "seed subtile touches the boundary of its template; "
        "ball stabilization is certified per stage rather than assumed");
  for (int m = 0; m < stages; ++m) extend_tower(tw, tile_budget);
  return tw;
}

/// Image of every tile of stage `from` inside stage `to`.
inline std::vector<int> stage_image(const ExpansionTower& tw, int from, int to) {
  if (from > to) throw std::invalid_argument("stage_image: from > to");
  std::vector<int> img(tw.stages[from].tiles.size());
  for (size_t i = 0; i < img.size(); ++i) img[i] = static_cast<int>(i);
  for (int m = from; m < to; ++m)
    for (auto& t : img) t = tw.incl[m][t];
  return img;
}

namespace detail {

inline std::vector<int> bfs_norms(const CellComplex& c, int source_tile, AdjacencyMode mode) {
  auto adj = tile_adjacency(c, mode);
  std::vector<int> norm(c.tiles.size(), -1);
  std::queue<int> q;
  norm[source_tile] = 0;
  q.push(source_tile);
  while (!q.empty()) {
    int t = q.front();
    q.pop();
    for (int u : adj[t])
      if (norm[u] == -1) {
        norm[u] = norm[t] + 1;
        q.push(u);
      }
  }
  return norm;
}

// min skinny norm among tiles touching the stage boundary
inline int boundary_distance(const CellComplex& c, const std::vector<int>& skinny_norm) {
  std::vector<char> on_boundary(c.num_vertices, 0);
  for (int v : boundary_vertices(c)) on_boundary[v] = 1;
  int best = -1;
  for (int t = 0; t < static_cast<int>(c.tiles.size()); ++t) {
    bool touches = false;
    for (int v : tile_vertices(c, t))
      if (on_boundary[v]) {
        touches = true;
        break;
      }
    if (!touches) continue;
    if (skinny_norm[t] < 0) continue;  // unreachable: treat as infinitely far
    if (best < 0 || skinny_norm[t] < best) best = skinny_norm[t];
  }
  return best < 0 ? std::numeric_limits<int>::max() : best;
}

} // namespace detail

/// Exact ball of the expansion complex: all tiles with norm <= radius
/// together with their norms, realized inside the first tower stage whose
/// boundary is skinny-farther than `radius` from the seed. Extends the
/// tower as needed; throws BudgetError if the budget runs out first.
struct BallResult {
  int stage = 0;               // stage the ball was read from
  int radius = 0;
  std::vector<int> norm;       // per tile of that stage (full BFS; exact for norm <= radius)
  int boundary_distance = 0;   // certified skinny distance seed -> stage boundary
};

inline BallResult ball(ExpansionTower& tw, int radius, AdjacencyMode mode,
                       std::int64_t tile_budget = kDefaultTileBudget) {
  if (radius < 0) throw std::invalid_argument("ball: negative radius");
  for (;;) {
    if (tw.num_stages() >= 1) {
      const int m = tw.num_stages();
      auto skinny = detail::bfs_norms(tw.stages[m], tw.seed_tile[m], AdjacencyMode::Skinny);
      int dist = detail::boundary_distance(tw.stages[m], skinny);
      if (dist > radius) {
        BallResult res;
        res.stage = m;
        res.radius = radius;
        res.boundary_distance = dist;
        res.norm = mode == AdjacencyMode::Skinny
                       ? std::move(skinny)
                       : detail::bfs_norms(tw.stages[m], tw.seed_tile[m], AdjacencyMode::Fat);
        return res;
      }
    }
    try {
      extend_tower(tw, tile_budget);
    } catch (const BudgetError& e) {
      throw BudgetError(std::string(e.what()) + " (ball stabilization reached stage " +
                        std::to_string(tw.num_stages()) + ")");
    }
  }
}

/// The annulus R_n = phi^n(S) \ int(S), realized in stage n. Layer k
/// holds the tiles of phi^k(S) \ int(phi^{k-1}(S)); the seed tile itself
/// is layer 0 and not part of the annulus.
struct Annulus {
  CellComplex complex;  // stage n
  int n = 0;
  int seed_tile = 0;
  std::vector<int> layer;   // per tile: 0 for the seed, 1..n otherwise
  std::vector<char> inner;  // annulus tile meeting the seed boundary
  std::vector<char> outer;  // annulus tile meeting the stage boundary
};

inline Annulus annulus(const ExpansionTower& tw, int n) {
  if (n < 1 || n > tw.num_stages())
    throw std::invalid_argument("annulus: tower has " + std::to_string(tw.num_stages()) +
                                " stages, requested n=" + std::to_string(n));
  Annulus a;
  a.complex = tw.stages[n];
  a.n = n;
  a.seed_tile = tw.seed_tile[n];
  a.layer.assign(a.complex.tiles.size(), n);
  for (int k = n - 1; k >= 0; --k)
    for (int img : stage_image(tw, k, n)) a.layer[img] = std::min(a.layer[img], k);

  std::vector<char> seed_vertex(a.complex.num_vertices, 0);
  for (int v : tile_vertices(a.complex, a.seed_tile)) seed_vertex[v] = 1;
  std::vector<char> bdry_vertex(a.complex.num_vertices, 0);
  for (int v : boundary_vertices(a.complex)) bdry_vertex[v] = 1;
  a.inner.assign(a.complex.tiles.size(), 0);
  a.outer.assign(a.complex.tiles.size(), 0);
  for (int t = 0; t < static_cast<int>(a.complex.tiles.size()); ++t) {
    if (a.layer[t] == 0) continue;
    for (int v : tile_vertices(a.complex, t)) {
      if (seed_vertex[v]) a.inner[t] = 1;
      if (bdry_vertex[v]) a.outer[t] = 1;
    }
  }
  return a;
}

} // namespace fsr
