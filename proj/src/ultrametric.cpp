#include "endspace/ultrametric.hpp"

#include <algorithm>
#include <set>

namespace endspace {

// Structural requirements shared by every operation: square symmetric
// matrix, zero diagonal, positive off-diagonal entries.
static void require_shape(const FiniteUltrametricSpace& s) {
  const std::size_t n = s.points.size();
  if (s.dist.size() != n) throw domain_error("distance matrix rows do not match point count");
  for (std::size_t i = 0; i < n; ++i)
    if (s.dist[i].size() != n)
      throw domain_error("distance matrix row " + std::to_string(i) + " has wrong length");
  for (std::size_t i = 0; i < n; ++i)
    if (s.dist[i][i] != 0) throw domain_error("nonzero diagonal distance at " + s.points[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s.dist[i][j] != s.dist[j][i])
        throw domain_error("asymmetric distances between " + s.points[i] + " and " + s.points[j]);
      if (s.dist[i][j] < 0)
        throw domain_error("negative distance between " + s.points[i] + " and " + s.points[j]);
      if (s.dist[i][j] == 0)
        throw domain_error("distinct points " + s.points[i] + " and " + s.points[j] +
                           " at distance zero");
    }
}

UltrametricReport validate_ultrametric(const FiniteUltrametricSpace& s) {
  require_shape(s);
  UltrametricReport rep;
  const std::size_t n = s.points.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        if (s.dist[x][y] > std::max(s.dist[x][z], s.dist[z][y])) {
          rep.ok = false;
          rep.violating_triples.push_back({x, y, z});
        }
      }
  return rep;
}

void require_ultrametric(const FiniteUltrametricSpace& s) {
  const auto rep = validate_ultrametric(s);
  if (!rep.ok) {
    const auto& t = rep.violating_triples.front();
    throw domain_error("strong triangle inequality fails on (" + s.points[t[0]] + ", " +
                       s.points[t[1]] + ", " + s.points[t[2]] + ")");
  }
}

std::vector<std::size_t> closed_ball(const FiniteUltrametricSpace& s, std::size_t center,
                                     const Rat& radius) {
  if (center >= s.points.size()) throw domain_error("ball center out of range");
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < s.points.size(); ++j)
    if (s.dist[center][j] <= radius) out.push_back(j);
  return out;
}

std::size_t isb_apex(const FiniteUltrametricSpace& s, std::size_t x, std::size_t y,
                     std::size_t z) {
  const std::size_t n = s.points.size();
  if (x >= n || y >= n || z >= n || x == y || y == z || x == z)
    throw domain_error("isb_apex needs three distinct points");
  const Rat& dyz = s.dist[y][z];  // side opposite x
  const Rat& dxz = s.dist[x][z];  // side opposite y
  const Rat& dxy = s.dist[x][y];  // side opposite z
  if (dxy == dxz && dxz == dyz) return std::min({x, y, z});
  // isosceles with short base: the strictly smallest side is opposite the
  // apex and the two other sides tie
  if (dyz < dxz && dxz == dxy) return x;
  if (dxz < dyz && dyz == dxy) return y;
  if (dxy < dyz && dyz == dxz) return z;
  throw domain_error("triangle is not isosceles with short base");
}

std::vector<std::size_t> extend_ball_isometry(const FiniteUltrametricSpace& s,
                                              const BallIsometry& iso) {
  const auto ball = closed_ball(s, iso.center, iso.radius);
  std::vector<std::size_t> domain, range;
  for (const auto& [p, q] : iso.mapping) {
    domain.push_back(p);
    range.push_back(q);
  }
  std::sort(domain.begin(), domain.end());
  std::sort(range.begin(), range.end());
  if (domain != ball || range != ball)
    throw domain_error("mapping is not a bijection of the stated ball onto itself");
  for (std::size_t i = 0; i < iso.mapping.size(); ++i)
    for (std::size_t j = i + 1; j < iso.mapping.size(); ++j)
      if (s.dist[iso.mapping[i].second][iso.mapping[j].second] !=
          s.dist[iso.mapping[i].first][iso.mapping[j].first])
        throw domain_error("mapping is not an isometry of the ball");

  std::vector<std::size_t> perm(s.points.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  for (const auto& [p, q] : iso.mapping) perm[p] = q;
  // Lemma: points outside the ball are equidistant from all of it, so the
  // identity extension is automatically global. Verified nonetheless.
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = 0; j < perm.size(); ++j)
      if (s.dist[perm[i]][perm[j]] != s.dist[i][j])
        throw domain_error("ball isometry failed to extend globally");
  return perm;
}

static void isometry_backtrack(const FiniteUltrametricSpace& s, std::vector<std::size_t>& partial,
                               std::vector<char>& used,
                               std::vector<std::vector<std::size_t>>& out) {
  const std::size_t n = s.points.size();
  const std::size_t i = partial.size();
  if (i == n) {
    out.push_back(partial);
    return;
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (used[c]) continue;
    bool ok = true;
    for (std::size_t j = 0; j < i && ok; ++j) ok = s.dist[c][partial[j]] == s.dist[i][j];
    if (!ok) continue;
    used[c] = 1;
    partial.push_back(c);
    isometry_backtrack(s, partial, used, out);
    partial.pop_back();
    used[c] = 0;
  }
}

std::vector<std::vector<std::size_t>> isometry_group(const FiniteUltrametricSpace& s) {
  require_shape(s);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> partial;
  std::vector<char> used(s.points.size(), 0);
  isometry_backtrack(s, partial, used, out);  // candidates ascend, so output is lex ordered
  return out;
}

}  // namespace endspace
