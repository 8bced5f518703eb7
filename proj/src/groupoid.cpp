#include "endspace/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

namespace endspace {

int position_at(const EndPoint& x, std::size_t i) {
  if (i < x.pre.size()) return x.pre[i];
  if (x.cyc.empty()) throw domain_error("endpoint has an empty repeating part");
  return x.cyc[(i - x.pre.size()) % x.cyc.size()];
}

void require_endpoint(const TreeSystem& ts, const EndPoint& x) {
  if (x.cyc.empty()) throw domain_error("endpoint has an empty repeating part");
  int cls = 0;
  std::set<std::tuple<std::size_t, int, std::size_t>> seen;
  for (std::size_t i = 0;; ++i) {
    if (i >= x.pre.size()) {
      const auto state =
          std::make_tuple(slot_of_level(ts, i), cls, (i - x.pre.size()) % x.cyc.size());
      if (!seen.insert(state).second) return;  // the walk has closed a loop
    }
    const auto& kids = level_desc(ts, i).classes[static_cast<std::size_t>(cls)].children;
    const int pos = position_at(x, i);
    if (pos < 0 || static_cast<std::size_t>(pos) >= kids.size())
      throw domain_error("endpoint position out of range at level " + std::to_string(i));
    cls = kids[static_cast<std::size_t>(pos)];
  }
}

Vertex vertex_at(const EndPoint& x, std::size_t level) {
  Vertex v;
  v.positions.reserve(level);
  for (std::size_t i = 0; i < level; ++i) v.positions.push_back(position_at(x, i));
  return v;
}

EndDistance end_distance(const TreeSystem& ts, const EndPoint& x, const EndPoint& y) {
  require_endpoint(ts, x);
  require_endpoint(ts, y);
  const std::size_t start = std::max(x.pre.size(), y.pre.size());
  const std::size_t window = start + std::lcm(x.cyc.size(), y.cyc.size());
  for (std::size_t i = 0; i < window; ++i)
    if (position_at(x, i) != position_at(y, i)) return {false, i};
  return {true, 0};
}

bool germ_exists(const TreeSystem& ts, const Vertex& a, const Vertex& b) {
  const int ca = class_at(ts, a.positions);
  const int cb = class_at(ts, b.positions);
  const auto col = collapse(ts);
  return col.colors[slot_of_level(ts, a.level())][static_cast<std::size_t>(ca)] ==
         col.colors[slot_of_level(ts, b.level())][static_cast<std::size_t>(cb)];
}

GermContext make_germ_context(const TreeSystem& ts) {
  const auto verdict = is_locally_rigid(ts);
  if (verdict.status != RigidityStatus::LocallyRigid)
    throw domain_error("germ calculus needs a locally rigid system");
  GermContext ctx;
  ctx.tree = collapse(ts).tree;
  ctx.collapsed = collapse(ctx.tree);  // canonical colors of the canonical tree
  ctx.epsilon_level = verdict.epsilon_level;
  return ctx;
}

namespace {

int color_of(const GermContext& ctx, std::size_t level, int cls) {
  return ctx.collapsed.colors[slot_of_level(ctx.tree, level)][static_cast<std::size_t>(cls)];
}

void require_germ_vertex(const GermContext& ctx, const Vertex& v) {
  if (v.level() < ctx.epsilon_level)
    throw domain_error("germ vertex above the rigidity level epsilon");
}

// The unique ball isometry source -> target carries the child of class c
// under a source-side vertex to the equally classed child on the target
// side; above epsilon that child is unique.
int mirror_position(const GermContext& ctx, std::size_t level, int target_cls, int wanted_color) {
  const auto& kids =
      level_desc(ctx.tree, level).classes[static_cast<std::size_t>(target_cls)].children;
  int found = -1;
  for (std::size_t pos = 0; pos < kids.size(); ++pos)
    if (color_of(ctx, level + 1, kids[pos]) == wanted_color) {
      if (found >= 0) throw domain_error("ambiguous descent: system not rigid at this level");
      found = static_cast<int>(pos);
    }
  if (found < 0) throw domain_error("descent class missing under the mirrored vertex");
  return found;
}

// Extends `base` (a vertex of the same class as `from`) by mirroring the
// descent from `from` down to `to`; `from` must be an ancestor of `to`.
Vertex mirror_descend(const GermContext& ctx, const Vertex& from, const Vertex& to,
                      const Vertex& base) {
  Vertex out = base;
  int walk_cls = class_at(ctx.tree, from.positions);
  int out_cls = class_at(ctx.tree, base.positions);
  for (std::size_t lv = from.level(); lv < to.level(); ++lv) {
    const auto& kids =
        level_desc(ctx.tree, lv).classes[static_cast<std::size_t>(walk_cls)].children;
    const int step = to.positions[lv];
    walk_cls = kids[static_cast<std::size_t>(step)];
    const int pos = mirror_position(ctx, out.level(), out_cls,
                                    color_of(ctx, lv + 1, walk_cls));
    out_cls = level_desc(ctx.tree, out.level())
                  .classes[static_cast<std::size_t>(out_cls)]
                  .children[static_cast<std::size_t>(pos)];
    out.positions.push_back(pos);
  }
  return out;
}

bool is_prefix(const Vertex& a, const Vertex& b) {  // a an ancestor of or equal to b
  return a.level() <= b.level() &&
         std::equal(a.positions.begin(), a.positions.end(), b.positions.begin());
}

}  // namespace

Germ make_germ(const GermContext& ctx, Vertex source, Vertex target) {
  require_germ_vertex(ctx, source);
  require_germ_vertex(ctx, target);
  const int cs = class_at(ctx.tree, source.positions);
  const int ct = class_at(ctx.tree, target.positions);
  if (color_of(ctx, source.level(), cs) != color_of(ctx, target.level(), ct))
    throw domain_error("germ endpoints have non-isometric subtrees");
  return {std::move(source), std::move(target)};
}

Germ inverse(const Germ& g) { return {g.target, g.source}; }

Germ compose(const GermContext& ctx, const Germ& g2, const Germ& g1) {
  if (g1.target == g2.source) return make_germ(ctx, g1.source, g2.target);
  if (is_prefix(g1.target, g2.source)) {
    // restrict g1: pull g2.source back through g1
    const Vertex src = mirror_descend(ctx, g1.target, g2.source, g1.source);
    return make_germ(ctx, src, g2.target);
  }
  if (is_prefix(g2.source, g1.target)) {
    // restrict g2: push g1.target forward through g2
    const Vertex tgt = mirror_descend(ctx, g2.source, g1.target, g2.target);
    return make_germ(ctx, g1.source, tgt);
  }
  throw domain_error("germs act on disjoint balls");
}

std::vector<Germ> enumerate_germs(const GermContext& ctx, std::size_t level) {
  if (level < ctx.epsilon_level)
    throw domain_error("germ enumeration below the rigidity level epsilon");
  // vertices at the level, grouped by class
  std::vector<std::vector<Vertex>> by_class(level_desc(ctx.tree, level).classes.size());
  struct Frame {
    Vertex v;
    int cls;
  };
  std::vector<Frame> stack{{Vertex{}, 0}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.v.level() == level) {
      by_class[static_cast<std::size_t>(f.cls)].push_back(std::move(f.v));
      continue;
    }
    const auto& kids =
        level_desc(ctx.tree, f.v.level()).classes[static_cast<std::size_t>(f.cls)].children;
    for (std::size_t pos = kids.size(); pos-- > 0;) {
      Frame next{f.v, kids[pos]};
      next.v.positions.push_back(static_cast<int>(pos));
      stack.push_back(std::move(next));
    }
  }
  std::vector<Germ> out;
  for (const auto& verts : by_class)
    for (const Vertex& s : verts)
      for (const Vertex& t : verts) out.push_back({s, t});
  std::sort(out.begin(), out.end(), [](const Germ& a, const Germ& b) {
    if (!(a.source == b.source)) return a.source < b.source;
    return a.target < b.target;
  });
  return out;
}

namespace {

DiagramPath path_of(const GermContext& ctx, const Vertex& v) {
  DiagramPath path;
  int cls = 0;
  for (std::size_t lv = 0; lv < v.level(); ++lv) {
    const auto& kids = level_desc(ctx.tree, lv).classes[static_cast<std::size_t>(cls)].children;
    const int pos = v.positions[lv];
    const int to = kids[static_cast<std::size_t>(pos)];
    int occurrence = 0;
    for (int i = 0; i < pos; ++i)
      if (kids[static_cast<std::size_t>(i)] == to) ++occurrence;
    path.push_back({cls, to, occurrence});
    cls = to;
  }
  return path;
}

Vertex vertex_of(const GermContext& ctx, const DiagramPath& path) {
  Vertex v;
  int cls = 0;
  for (std::size_t lv = 0; lv < path.size(); ++lv) {
    const DiagramEdge& e = path[lv];
    if (e.from_class != cls) throw domain_error("diagram path does not chain");
    const auto& kids = level_desc(ctx.tree, lv).classes[static_cast<std::size_t>(cls)].children;
    int remaining = e.occurrence;
    int pos = -1;
    for (std::size_t i = 0; i < kids.size(); ++i)
      if (kids[i] == e.to_class && remaining-- == 0) {
        pos = static_cast<int>(i);
        break;
      }
    if (pos < 0) throw domain_error("diagram edge occurrence out of range");
    v.positions.push_back(pos);
    cls = e.to_class;
  }
  return v;
}

}  // namespace

PathPair kappa_star(const GermContext& ctx, const Germ& g) {
  return {path_of(ctx, g.source), path_of(ctx, g.target)};
}

Germ kappa_star_inv(const GermContext& ctx, const PathPair& pp) {
  return make_germ(ctx, vertex_of(ctx, pp.p), vertex_of(ctx, pp.q));
}

PathPair pp_compose(const PathPair& b, const PathPair& a) {
  auto prefix = [](const DiagramPath& s, const DiagramPath& l) {
    return s.size() <= l.size() && std::equal(s.begin(), s.end(), l.begin());
  };
  if (prefix(a.q, b.p)) {
    PathPair out{a.p, b.q};
    out.p.insert(out.p.end(), b.p.begin() + static_cast<long>(a.q.size()), b.p.end());
    return out;
  }
  if (prefix(b.p, a.q)) {
    PathPair out{a.p, b.q};
    out.q.insert(out.q.end(), a.q.begin() + static_cast<long>(b.p.size()), a.q.end());
    return out;
  }
  throw domain_error("path pairs act on disjoint balls");
}

PathPair pp_inverse(const PathPair& pp) { return {pp.q, pp.p}; }

std::optional<std::size_t> tail_equivalent(const TreeSystem& ts, const EndPoint& x,
                                           const EndPoint& y) {
  require_endpoint(ts, x);
  require_endpoint(ts, y);
  const std::size_t start = std::max(x.pre.size(), y.pre.size());
  const std::size_t period = std::lcm(x.cyc.size(), y.cyc.size());
  for (std::size_t i = start; i < start + period; ++i)
    if (position_at(x, i) != position_at(y, i)) return std::nullopt;
  std::size_t n = start;
  while (n > 0 && position_at(x, n - 1) == position_at(y, n - 1)) --n;
  return n;
}

BallIsometryWitness isometry_witness(const TreeSystem& ts, const EndPoint& x, const EndPoint& y) {
  const auto merge = tail_equivalent(ts, x, y);
  if (!merge) throw domain_error("the rays are not tail equivalent");
  const auto col = collapse(ts);
  auto class_walk = [&](const EndPoint& e, std::size_t level) {
    int cls = 0;
    for (std::size_t i = 0; i < level; ++i)
      cls = level_desc(ts, i)
                .classes[static_cast<std::size_t>(cls)]
                .children[static_cast<std::size_t>(position_at(e, i))];
    return cls;
  };
  std::size_t n = *merge;
  int cx = class_walk(x, n), cy = class_walk(y, n);
  // beyond this level the walk is a finite-state system: same positions on
  // both rays, periodic positions, periodic level descriptors
  const std::size_t base =
      std::max({n, x.pre.size(), y.pre.size(), ts.prefix.size()});
  const std::size_t period =
      ts.eventually_periodic()
          ? std::lcm(std::lcm(x.cyc.size(), y.cyc.size()), ts.cycle.size())
          : 1;
  std::set<std::tuple<std::size_t, int, int>> seen;
  for (;;) {
    const std::size_t slot = slot_of_level(ts, n);
    if (col.ordered_colors[slot][static_cast<std::size_t>(cx)] ==
        col.ordered_colors[slot][static_cast<std::size_t>(cy)])
      return {n, vertex_at(x, n), vertex_at(y, n)};
    if (n >= base) {
      const auto state = std::make_tuple((n - base) % period, cx, cy);
      if (!seen.insert(state).second)
        throw domain_error("the subtrees along the shared tail never take the same shape");
    }
    const auto& ld = level_desc(ts, n);
    cx = ld.classes[static_cast<std::size_t>(cx)]
             .children[static_cast<std::size_t>(position_at(x, n))];
    cy = ld.classes[static_cast<std::size_t>(cy)]
             .children[static_cast<std::size_t>(position_at(y, n))];
    ++n;
  }
}

}  // namespace endspace
