#ifndef NKOSZUL_QUIVER_HPP
#define NKOSZUL_QUIVER_HPP

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nkoszul/field.hpp"

namespace nkoszul {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

class Quiver {
 public:
  Quiver() = default;
  Quiver(int vertex_count, std::vector<Arrow> arrows);

  int vertex_count() const { return vertex_count_; }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(int i) const { return arrows_.at(static_cast<std::size_t>(i)); }
  int find_arrow(std::string_view name) const;  // -1 when absent

  /// Same arrow names and indices with swapped endpoints.
  Quiver opposite() const;

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  int vertex_count_ = 0;
  std::vector<Arrow> arrows_;
};

/// A path read left to right: `arrows[0]` first. Trivial paths carry their vertex.
struct Path {
  int vertex = 0;
  std::vector<int> arrows;

  static Path trivial(int v) { return Path{v, {}}; }
  int length() const { return static_cast<int>(arrows.size()); }
  int source(const Quiver& q) const { return arrows.empty() ? vertex : q.arrow(arrows.front()).source; }
  int target(const Quiver& q) const { return arrows.empty() ? vertex : q.arrow(arrows.back()).target; }

  // The vertex only distinguishes trivial paths.
  friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
    if (auto c = a.arrows <=> b.arrows; c != 0) return c;
    return a.arrows.empty() ? a.vertex <=> b.vertex : std::strong_ordering::equal;
  }
  friend bool operator==(const Path& a, const Path& b) { return (a <=> b) == 0; }
};

/// All paths of length k in lexicographic order of arrow indices; vertex order for k = 0.
std::vector<Path> enumerate_paths(const Quiver& q, int k);

/// The path of the opposite quiver traversing the same arrows backwards.
Path opposite(const Path& p);

/// Concatenation p then q; throws if endpoints do not match.
Path concat(const Quiver& quiver, const Path& p, const Path& q);
bool composable(const Quiver& quiver, const Path& p, const Path& q);

/// "x.y.x" notation; "e<v>" for trivial paths.
std::string to_string(const Quiver& q, const Path& p);
Path parse_path(const Quiver& q, std::string_view text);

/// A homogeneous linear combination of paths of one length.
struct PathCombination {
  int degree = 0;
  std::map<Path, Scalar> terms;  // zero coefficients are never stored

  void add(const Path& p, Scalar c, const PrimeField& f);
  bool is_zero() const { return terms.empty(); }
};

/// KQ_0-valued pairing of u in KQ_k^op with v in KQ_k (quiver q is the
/// quiver of v): <p^o, q> = delta_{p,q} e_{t(p)}. Returns one scalar per vertex.
std::vector<Scalar> pairing(const Quiver& q, const PathCombination& u_op, const PathCombination& v,
                            const PrimeField& f);

/// Number of paths of length k, computed from powers of the adjacency count matrix.
Scalar count_paths(const Quiver& q, int k);

}  // namespace nkoszul

#endif  // NKOSZUL_QUIVER_HPP
