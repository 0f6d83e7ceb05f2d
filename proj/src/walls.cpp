#include "cocyclelab/walls.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

namespace {

// Bipartition key independent of which class was designated: flip so the
// first point is inside, remember whether we flipped.
std::pair<std::vector<char>, bool> canonical_side(std::vector<char> side) {
  bool flipped = false;
  if (!side.empty() && side[0] == 0) {
    for (char& c : side) c = c ? 0 : 1;
    flipped = true;
  }
  return {std::move(side), flipped};
}

std::vector<std::string> split_ids(const std::string& rest) {
  std::string cleaned = rest;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

int WallSpace::point_index(const std::string& id) const {
  auto it = point_index_.find(id);
  if (it == point_index_.end()) throw PreconditionError("unknown point id: " + id);
  return it->second;
}

int WallSpace::act_point(const Letter& l, int x) const {
  if (l.gen < 1 || l.gen > rank()) throw PreconditionError("generator out of range");
  if (x < 0 || x >= point_count()) throw PreconditionError("point index out of range");
  const auto& perm = l.exp > 0 ? point_perms_[l.gen - 1] : point_perms_inv_[l.gen - 1];
  return perm[static_cast<std::size_t>(x)];
}

int WallSpace::act_point(const ReducedWord& g, int x) const {
  const auto& ls = g.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) x = act_point(*it, x);
  return x;
}

std::pair<int, int> WallSpace::act_wall(const Letter& l, int w) const {
  if (l.gen < 1 || l.gen > rank()) throw PreconditionError("generator out of range");
  if (w < 0 || w >= wall_count()) throw PreconditionError("wall index out of range");
  const auto& perm = l.exp > 0 ? wall_perms_[l.gen - 1] : wall_perms_inv_[l.gen - 1];
  return perm[static_cast<std::size_t>(w)];
}

void WallSpace::finish_action_tables() {
  const int n = point_count();
  const int nw = wall_count();

  std::map<std::vector<char>, std::pair<int, bool>> lookup;
  for (int w = 0; w < nw; ++w) {
    auto [key, flipped] = canonical_side(walls_[w].side);
    lookup.emplace(std::move(key), std::make_pair(w, flipped));
  }

  point_perms_inv_.clear();
  wall_perms_.clear();
  wall_perms_inv_.clear();
  for (const auto& perm : point_perms_) {
    std::vector<int> inv(static_cast<std::size_t>(n), -1);
    for (int x = 0; x < n; ++x) inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(x)])] = x;
    point_perms_inv_.push_back(std::move(inv));

    std::vector<std::pair<int, int>> wperm(static_cast<std::size_t>(nw));
    std::vector<std::pair<int, int>> wperm_inv(static_cast<std::size_t>(nw), {-1, 0});
    for (int w = 0; w < nw; ++w) {
      std::vector<char> image(static_cast<std::size_t>(n), 0);
      for (int x = 0; x < n; ++x)
        if (walls_[w].side[static_cast<std::size_t>(x)])
          image[static_cast<std::size_t>(perm[static_cast<std::size_t>(x)])] = 1;
      auto [key, flipped] = canonical_side(std::move(image));
      auto it = lookup.find(key);
      if (it == lookup.end())
        throw PreconditionError("action does not preserve walls");
      const int target = it->second.first;
      const int sign = flipped == it->second.second ? 1 : -1;
      if (walls_[w].weight != walls_[static_cast<std::size_t>(target)].weight)
        throw PreconditionError("action does not preserve wall weights");
      wperm[static_cast<std::size_t>(w)] = {target, sign};
      wperm_inv[static_cast<std::size_t>(target)] = {w, sign};
    }
    wall_perms_.push_back(std::move(wperm));
    wall_perms_inv_.push_back(std::move(wperm_inv));
  }
}

WallSpace WallSpace::parse_text(const std::string& text) {
  WallSpace ws;
  std::vector<std::string> gen_names;
  std::set<std::vector<char>> seen_walls;

  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream in(line);
    std::string directive;
    if (!(in >> directive)) continue;

    if (directive == "point") {
      if (!ws.walls_.empty() || !ws.point_perms_.empty())
        throw PreconditionError("points must be declared before walls and actions");
      std::string id;
      if (!(in >> id)) throw PreconditionError("point line needs an id");
      if (!ws.point_index_.emplace(id, ws.point_count()).second)
        throw PreconditionError("duplicate point id: " + id);
      ws.point_ids_.push_back(id);
    } else if (directive == "wall") {
      double weight = 0.0;
      if (!(in >> weight) || !(weight > 0.0))
        throw PreconditionError("wall line needs a positive weight");
      std::string rest;
      std::getline(in, rest);
      Wall wall;
      wall.weight = weight;
      wall.side.assign(static_cast<std::size_t>(ws.point_count()), 0);
      int members = 0;
      for (const std::string& id : split_ids(rest)) {
        char& slot = wall.side[static_cast<std::size_t>(ws.point_index(id))];
        if (slot) throw PreconditionError("point repeated in wall class: " + id);
        slot = 1;
        ++members;
      }
      if (members == 0 || members == ws.point_count())
        throw PreconditionError("wall class must be a proper nonempty subset");
      if (!seen_walls.insert(canonical_side(wall.side).first).second)
        throw PreconditionError("duplicate wall bipartition");
      ws.walls_.push_back(std::move(wall));
    } else if (directive == "gen") {
      std::string name;
      if (!(in >> name)) throw PreconditionError("gen line needs a name");
      gen_names.push_back(name);
      std::string rest;
      std::getline(in, rest);
      const auto ids = split_ids(rest);
      if (static_cast<int>(ids.size()) != ws.point_count())
        throw PreconditionError("gen line needs one image per point");
      std::vector<int> perm;
      std::vector<char> seen(static_cast<std::size_t>(ws.point_count()), 0);
      for (const std::string& id : ids) {
        const int img = ws.point_index(id);
        if (seen[static_cast<std::size_t>(img)])
          throw PreconditionError("gen images must form a permutation");
        seen[static_cast<std::size_t>(img)] = 1;
        perm.push_back(img);
      }
      ws.point_perms_.push_back(std::move(perm));
    } else {
      throw PreconditionError("unknown wall-space directive: " + directive);
    }
  }

  if (ws.point_count() == 0) throw PreconditionError("wall space needs at least one point");
  const int rank = static_cast<int>(gen_names.size());
  for (int i = 0; i < rank; ++i) {
    const std::string expected = ReducedWord::generator(rank, i + 1).str();
    if (gen_names[static_cast<std::size_t>(i)] != expected)
      throw PreconditionError("generator must be named " + expected + ", got " +
                              gen_names[static_cast<std::size_t>(i)]);
  }
  ws.finish_action_tables();
  return ws;
}

WallSpace WallSpace::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read wall-space file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

HalfSpaceVector wall_cocycle(const WallSpace& ws, int x, int y) {
  if (x < 0 || x >= ws.point_count() || y < 0 || y >= ws.point_count())
    throw PreconditionError("point index out of range");
  HalfSpaceVector v = HalfSpaceVector::Zero(ws.wall_count());
  for (int w = 0; w < ws.wall_count(); ++w)
    v[w] = static_cast<double>(ws.side(w, x)) - static_cast<double>(ws.side(w, y));
  return v;
}

double wall_vector_norm_pp(const WallSpace& ws, const HalfSpaceVector& v, double p) {
  if (!(p >= 1.0)) throw PreconditionError("norm exponent must be at least 1");
  if (v.size() != ws.wall_count()) throw PreconditionError("vector size does not match wall count");
  double acc = 0.0;
  for (int w = 0; w < ws.wall_count(); ++w) {
    const double a = std::abs(v[w]);
    if (a != 0.0) acc += ws.wall_weight(w) * std::pow(a, p);
  }
  return acc;
}

double wall_norm(const WallSpace& ws, int x, int y, double p) {
  return wall_vector_norm_pp(ws, wall_cocycle(ws, x, y), p);
}

double wall_distance(const WallSpace& ws, int x, int y) {
  if (x < 0 || x >= ws.point_count() || y < 0 || y >= ws.point_count())
    throw PreconditionError("point index out of range");
  double acc = 0.0;
  for (int w = 0; w < ws.wall_count(); ++w)
    if (ws.side(w, x) != ws.side(w, y)) acc += ws.wall_weight(w);
  return acc;
}

WallCocycleModel::WallCocycleModel(WallSpace space, int base_point, double p)
    : space_(std::move(space)), base_(base_point), p_(p) {
  if (space_.rank() < 1) throw PreconditionError("wall space carries no group action");
  if (base_ < 0 || base_ >= space_.point_count())
    throw PreconditionError("base point index out of range");
  if (!(p_ >= 1.0)) throw PreconditionError("norm exponent must be at least 1");
}

WallCocycleModel::Vector WallCocycleModel::generator_value(int gen) const {
  return wall_cocycle(space_, space_.act_point(Letter{gen, 1}, base_), base_);
}

WallCocycleModel::Vector WallCocycleModel::act(const Letter& l, const Vector& v) const {
  Vector out = zero();
  for (int w = 0; w < space_.wall_count(); ++w) {
    const auto [target, sign] = space_.act_wall(l, w);
    out[target] = sign * v[w];
  }
  return out;
}

double WallCocycleModel::norm(const Vector& v) const {
  return std::pow(norm_pp(v), 1.0 / p_);
}

TreeCocycleModel::TreeCocycleModel(int rank, double p) : rank_(rank), p_(p) {
  if (rank_ < 1) throw PreconditionError("tree model needs rank at least 1");
  if (!(p_ >= 1.0)) throw PreconditionError("norm exponent must be at least 1");
}

TreeCocycleModel::Vector TreeCocycleModel::generator_value(int gen) const {
  if (gen < 1 || gen > rank_) throw PreconditionError("generator out of range");
  Vector v;
  v.emplace(TreeEdge{ReducedWord::identity(rank_), gen}, 1.0);
  return v;
}

TreeCocycleModel::Vector TreeCocycleModel::act(const Letter& l, const Vector& v) const {
  const ReducedWord lw = ReducedWord::generator(rank_, l.gen, l.exp);
  Vector out;
  for (const auto& [edge, c] : v) out.emplace(TreeEdge{lw * edge.base, edge.gen}, c);
  return out;
}

TreeCocycleModel::Vector TreeCocycleModel::add(const Vector& a, const Vector& b) const {
  Vector out = a;
  for (const auto& [edge, c] : b) {
    auto [it, inserted] = out.try_emplace(edge, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0.0) out.erase(it);
    }
  }
  return out;
}

TreeCocycleModel::Vector TreeCocycleModel::negate(Vector v) const {
  for (auto& [edge, c] : v) c = -c;
  return v;
}

double TreeCocycleModel::norm_pp(const Vector& v) const {
  double acc = 0.0;
  for (const auto& [edge, c] : v) acc += std::pow(std::abs(c), p_);
  return acc;
}

double TreeCocycleModel::norm(const Vector& v) const {
  return std::pow(norm_pp(v), 1.0 / p_);
}

GrowthProfile tree_cocycle_growth(int rank, int radius, double p,
                                  std::span<const ReducedWord> elements) {
  TreeCocycleModel model(rank, p);
  for (const ReducedWord& g : elements)
    if (static_cast<int>(g.length()) > radius)
      throw PreconditionError("element outside the stated ball radius");
  return growth_profile(model, elements);
}

GradientCheck gradient_cocycle(int rank, const std::map<ReducedWord, double>& f,
                               const ReducedWord& g, double p, int radius) {
  if (rank < 1) throw PreconditionError("gradient check needs rank at least 1");
  if (!(p >= 1.0)) throw PreconditionError("norm exponent must be at least 1");
  if (g.rank() != rank) throw PreconditionError("rank mismatch in gradient check");
  std::size_t max_len = 0;
  for (const auto& [u, c] : f) {
    if (u.rank() != rank) throw PreconditionError("rank mismatch in gradient check");
    max_len = std::max(max_len, u.length());
  }
  if (static_cast<int>(max_len + g.length()) + 1 > radius)
    throw PreconditionError("support too close to ball boundary");

  // f - rho(g) f with (rho(g) f)(x) = f(x g): mass c at u moves to u g^-1.
  const ReducedWord ginv = g.inverse();
  std::map<ReducedWord, double> diff;
  for (const auto& [u, c] : f) {
    diff[u] += c;
    diff[u * ginv] -= c;
  }
  double lhs_pp = 0.0;
  for (const auto& [u, c] : diff)
    if (c != 0.0) lhs_pp += std::pow(std::abs(c), p);
  const double lhs = std::pow(lhs_pp, 1.0 / p);

  std::set<TreeEdge> edges;
  for (const auto& [u, c] : f) {
    for (int i = 1; i <= rank; ++i) {
      edges.insert(TreeEdge{u, i});
      edges.insert(TreeEdge{u * ReducedWord::generator(rank, i, -1), i});
    }
  }
  auto value = [&f](const ReducedWord& u) {
    auto it = f.find(u);
    return it == f.end() ? 0.0 : it->second;
  };
  double grad_pp = 0.0;
  for (const TreeEdge& e : edges) {
    const double d = value(e.base * ReducedWord::generator(rank, e.gen)) - value(e.base);
    if (d != 0.0) grad_pp += std::pow(std::abs(d), p);
  }
  const double rhs = static_cast<double>(g.length()) * std::pow(grad_pp, 1.0 / p);

  return GradientCheck{lhs, rhs, lhs <= rhs};
}

}  // namespace cocyclelab
