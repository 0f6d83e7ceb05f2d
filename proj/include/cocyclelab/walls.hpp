#pragma once

#include <Eigen/Dense>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cocyclelab/cocycle.hpp"
#include "cocyclelab/freegroup.hpp"

namespace cocyclelab {

// Finite space with measured walls. Each wall is a weighted bipartition of
// the point set, stored through one designated class; the complement is the
// other class. An optional action of F_k is given by one point permutation
// per generator, validated to permute walls with matching weights.
//
// Text format, one directive per line ('#' starts a comment):
//   point <id>
//   wall <weight> <id,id,...>       (the designated class)
//   gen <name> <images...>          (image of each point, in declaration order)
// Points must be declared before any wall or gen line uses them. Generator
// names must be the canonical letter names for the resulting rank, in order.
class WallSpace {
 public:
  struct Wall {
    double weight;
    std::vector<char> side;  // designated-class indicator, one per point
  };

  static WallSpace parse_text(const std::string& text);
  static WallSpace load(const std::string& path);

  int point_count() const { return static_cast<int>(point_ids_.size()); }
  int wall_count() const { return static_cast<int>(walls_.size()); }
  int rank() const { return static_cast<int>(point_perms_.size()); }

  int point_index(const std::string& id) const;
  const std::string& point_id(int x) const { return point_ids_.at(x); }
  double wall_weight(int w) const { return walls_.at(w).weight; }
  bool side(int w, int x) const { return walls_.at(w).side.at(x) != 0; }

  int act_point(const Letter& l, int x) const;
  int act_point(const ReducedWord& g, int x) const;

  // Image of wall w under a single letter: target wall index and +1 when the
  // designated class maps to the target's designated class, -1 when it maps
  // to the complement.
  std::pair<int, int> act_wall(const Letter& l, int w) const;

 private:
  WallSpace() = default;
  void finish_action_tables();

  std::vector<std::string> point_ids_;
  std::map<std::string, int> point_index_;
  std::vector<Wall> walls_;
  std::vector<std::vector<int>> point_perms_;      // per generator
  std::vector<std::vector<int>> point_perms_inv_;
  std::vector<std::vector<std::pair<int, int>>> wall_perms_;      // (target, sign)
  std::vector<std::vector<std::pair<int, int>>> wall_perms_inv_;
};

// Signed per-wall coordinates; entry w of wall_cocycle(x, y) is
// chi_w(x) - chi_w(y) with chi_w the designated-class indicator.
using HalfSpaceVector = Eigen::VectorXd;

HalfSpaceVector wall_cocycle(const WallSpace& ws, int x, int y);

// Weighted p-th power norm sum_w weight_w |v_w|^p, accumulated in wall order.
double wall_vector_norm_pp(const WallSpace& ws, const HalfSpaceVector& v, double p);

// ||c(x,y)||_p^p; equals wall_distance(ws, x, y) exactly.
double wall_norm(const WallSpace& ws, int x, int y, double p);

// Sum of weights of walls separating x from y, accumulated in wall order.
double wall_distance(const WallSpace& ws, int x, int y);

// Cocycle of the F_k action on the wall space, valued in the weighted l^p
// space over walls: b(g) = c(g x0, x0), letters acting by the signed wall
// permutation.
class WallCocycleModel {
 public:
  using Vector = HalfSpaceVector;

  WallCocycleModel(WallSpace space, int base_point, double p);

  int rank() const { return space_.rank(); }
  Vector generator_value(int gen) const;
  Vector act(const Letter& l, const Vector& v) const;
  Vector add(const Vector& a, const Vector& b) const { return a + b; }
  Vector negate(const Vector& v) const { return -v; }
  Vector zero() const { return Vector::Zero(space_.wall_count()); }
  double norm(const Vector& v) const;
  double norm_pp(const Vector& v) const { return wall_vector_norm_pp(space_, v, p_); }

  const WallSpace& space() const { return space_; }
  int base_point() const { return base_; }

 private:
  WallSpace space_;
  int base_;
  double p_;
};

// Oriented edge of the Cayley tree of F_k: from base to base * x_gen.
struct TreeEdge {
  ReducedWord base;
  int gen;

  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
  auto operator<=>(const TreeEdge&) const = default;
};

// Cocycle of F_k on its Cayley tree in the edge picture: b(g) is the signed
// indicator of edges crossed by the geodesic from the base vertex e to g.
// Coefficients stay integral, so p-th power norms are exact.
class TreeCocycleModel {
 public:
  using Vector = std::map<TreeEdge, double>;

  TreeCocycleModel(int rank, double p);

  int rank() const { return rank_; }
  Vector generator_value(int gen) const;
  Vector act(const Letter& l, const Vector& v) const;
  Vector add(const Vector& a, const Vector& b) const;
  Vector negate(Vector v) const;
  Vector zero() const { return {}; }
  double norm(const Vector& v) const;
  double norm_pp(const Vector& v) const;

 private:
  int rank_;
  double p_;
};

// ||b(g)||_p for each element; elements must lie within the stated radius.
GrowthProfile tree_cocycle_growth(int rank, int radius, double p,
                                  std::span<const ReducedWord> elements);

// Both sides of the discrete gradient inequality
// ||f - rho(g) f||_p <= d(e, g) ||grad f||_p with (rho(g) f)(x) = f(x g) and
// the gradient taken over Cayley-tree edges meeting the support of f.
struct GradientCheck {
  double lhs;
  double rhs;
  bool holds;
};

GradientCheck gradient_cocycle(int rank, const std::map<ReducedWord, double>& f,
                               const ReducedWord& g, double p, int radius);

}  // namespace cocyclelab
