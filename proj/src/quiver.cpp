#include "nkoszul/quiver.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "nkoszul/linalg.hpp"

namespace nkoszul {

Quiver::Quiver(int vertex_count, std::vector<Arrow> arrows)
    : vertex_count_(vertex_count), arrows_(std::move(arrows)) {
  if (vertex_count_ < 1) throw std::invalid_argument("quiver needs at least one vertex");
  std::set<std::string> names;
  for (const auto& a : arrows_) {
    if (a.source < 0 || a.source >= vertex_count_ || a.target < 0 || a.target >= vertex_count_) {
      throw std::invalid_argument("arrow '" + a.name + "' has an endpoint outside the vertex set");
    }
    if (a.name.empty() || a.name.find('.') != std::string::npos) {
      throw std::invalid_argument("arrow names must be nonempty and must not contain '.'");
    }
    if (!names.insert(a.name).second) throw std::invalid_argument("duplicate arrow name '" + a.name + "'");
  }
}

int Quiver::find_arrow(std::string_view name) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    if (arrows_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

Quiver Quiver::opposite() const {
  std::vector<Arrow> rev;
  rev.reserve(arrows_.size());
  for (const auto& a : arrows_) rev.push_back({a.name, a.target, a.source});
  return Quiver(vertex_count_, std::move(rev));
}

std::vector<Path> enumerate_paths(const Quiver& q, int k) {
  if (k < 0) throw std::invalid_argument("enumerate_paths: negative length");
  std::vector<Path> out;
  if (k == 0) {
    for (int v = 0; v < q.vertex_count(); ++v) out.push_back(Path::trivial(v));
    return out;
  }
  // Depth-first in arrow-index order yields lexicographic order directly.
  Path cur;
  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int a = 0; a < q.arrow_count(); ++a) {
      if (!cur.arrows.empty() && q.arrow(cur.arrows.back()).target != q.arrow(a).source) continue;
      cur.arrows.push_back(a);
      self(self, remaining - 1);
      cur.arrows.pop_back();
    }
  };
  rec(rec, k);
  for (auto& p : out) p.vertex = p.source(q);
  return out;
}

Path opposite(const Path& p) {
  Path r = p;
  std::reverse(r.arrows.begin(), r.arrows.end());
  return r;
}

bool composable(const Quiver& quiver, const Path& p, const Path& q) {
  return p.target(quiver) == q.source(quiver);
}

Path concat(const Quiver& quiver, const Path& p, const Path& q) {
  if (!composable(quiver, p, q)) throw std::invalid_argument("concat: paths do not compose");
  Path r{p.source(quiver), p.arrows};
  r.arrows.insert(r.arrows.end(), q.arrows.begin(), q.arrows.end());
  return r;
}

std::string to_string(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "e" + std::to_string(p.vertex);
  std::string s;
  for (std::size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) s += '.';
    s += q.arrow(p.arrows[i]).name;
  }
  return s;
}

Path parse_path(const Quiver& q, std::string_view text) {
  if (text.size() > 1 && text[0] == 'e' && q.find_arrow(text) < 0) {
    const std::string digits(text.substr(1));
    if (std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      const int v = std::stoi(digits);
      if (v < 0 || v >= q.vertex_count()) throw std::invalid_argument("trivial path vertex out of range");
      return Path::trivial(v);
    }
  }
  Path p;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t dot = text.find('.', start);
    const std::string_view tok = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    const int a = q.find_arrow(tok);
    if (a < 0) throw std::invalid_argument("unknown arrow '" + std::string(tok) + "' in path '" + std::string(text) + "'");
    if (!p.arrows.empty() && q.arrow(p.arrows.back()).target != q.arrow(a).source) {
      throw std::invalid_argument("path '" + std::string(text) + "' does not compose");
    }
    p.arrows.push_back(a);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  p.vertex = p.source(q);
  return p;
}

void PathCombination::add(const Path& p, Scalar c, const PrimeField& f) {
  if (p.length() != degree) throw std::invalid_argument("PathCombination: path length differs from degree");
  c = f.reduce(c);
  if (c == 0) return;
  auto [it, inserted] = terms.emplace(p, c);
  if (!inserted) {
    it->second = f.add(it->second, c);
    if (it->second == 0) terms.erase(it);
  }
}

std::vector<Scalar> pairing(const Quiver& q, const PathCombination& u_op, const PathCombination& v,
                            const PrimeField& f) {
  if (u_op.degree != v.degree) throw std::invalid_argument("pairing: degree mismatch");
  std::vector<Scalar> value(static_cast<std::size_t>(q.vertex_count()), 0);
  for (const auto& [path_op, cu] : u_op.terms) {
    const Path p = opposite(path_op);
    auto it = v.terms.find(p);
    if (it == v.terms.end()) continue;
    auto& slot = value[static_cast<std::size_t>(p.target(q))];
    slot = f.add(slot, f.mul(cu, it->second));
  }
  return value;
}

Scalar count_paths(const Quiver& q, int k) {
  const int n = q.vertex_count();
  Matrix adj = Matrix::Zero(n, n);
  for (const auto& a : q.arrows()) adj(a.source, a.target) += 1;
  Matrix power = Matrix::Identity(n, n);
  for (int i = 0; i < k; ++i) power = power * adj;
  return power.sum();
}

}  // namespace nkoszul
