#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "latdeck/errors.hpp"

namespace latdeck {

/// A bijection on candidate targets 1..N, stored as the image vector.
/// The identity mapping models a correctly configured machine; every
/// non-identity bijection is a candidate<->target misconfiguration.
class Swap {
 public:
  // image[i-1] is the target read for candidate i.
  explicit Swap(std::vector<int> image) : image_(std::move(image)) {
    const int n = static_cast<int>(image_.size());
    if (n == 0) throw InvalidSwapError("swap over zero candidates");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : image_) {
      if (v < 1 || v > n) throw InvalidSwapError("swap image out of range");
      if (seen[static_cast<std::size_t>(v - 1)])
        throw InvalidSwapError("swap image repeats a target; not a bijection");
      seen[static_cast<std::size_t>(v - 1)] = 1;
    }
  }

  static Swap identity(int n) {
    std::vector<int> image(static_cast<std::size_t>(n));
    std::iota(image.begin(), image.end(), 1);
    return Swap(std::move(image));
  }

  /// The bijection exchanging targets a and b, fixing everything else.
  static Swap transposition(int n, int a, int b) {
    if (a < 1 || b < 1 || a > n || b > n || a == b)
      throw InvalidSwapError("invalid transposition");
    std::vector<int> image(static_cast<std::size_t>(n));
    std::iota(image.begin(), image.end(), 1);
    image[static_cast<std::size_t>(a - 1)] = b;
    image[static_cast<std::size_t>(b - 1)] = a;
    return Swap(std::move(image));
  }

  int size() const { return static_cast<int>(image_.size()); }

  /// sigma(i) for a 1-based candidate index.
  int image(int i) const {
    if (i < 1 || i > size()) throw InvalidInputError("candidate index out of range");
    return image_[static_cast<std::size_t>(i - 1)];
  }

  const std::vector<int>& image_vector() const { return image_; }

  bool is_identity() const {
    for (int i = 1; i <= size(); ++i)
      if (image(i) != i) return false;
    return true;
  }

  int moved_count() const {
    int moved = 0;
    for (int i = 1; i <= size(); ++i)
      if (image(i) != i) ++moved;
    return moved;
  }

  /// Candidates i with sigma(i) != i, ascending.
  std::vector<int> moved_points() const {
    std::vector<int> out;
    for (int i = 1; i <= size(); ++i)
      if (image(i) != i) out.push_back(i);
    return out;
  }

  /// Composition (a after b): result(i) = a(b(i)).
  static Swap compose(const Swap& a, const Swap& b) {
    if (a.size() != b.size()) throw InvalidSwapError("composing swaps of different sizes");
    std::vector<int> image(static_cast<std::size_t>(a.size()));
    for (int i = 1; i <= a.size(); ++i)
      image[static_cast<std::size_t>(i - 1)] = a.image(b.image(i));
    return Swap(std::move(image));
  }

  friend bool operator==(const Swap& x, const Swap& y) { return x.image_ == y.image_; }
  friend bool operator!=(const Swap& x, const Swap& y) { return !(x == y); }
  friend bool operator<(const Swap& x, const Swap& y) { return x.image_ < y.image_; }

 private:
  std::vector<int> image_;
};

/// Disjoint cycles covering 1..N, including singletons. Cycles are listed in
/// order of their smallest member, and each starts at that member.
inline std::vector<std::vector<int>> cycle_decomposition(const Swap& sigma) {
  const int n = sigma.size();
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> cycles;
  for (int start = 1; start <= n; ++start) {
    if (visited[static_cast<std::size_t>(start - 1)]) continue;
    std::vector<int> cycle;
    int cur = start;
    do {
      visited[static_cast<std::size_t>(cur - 1)] = 1;
      cycle.push_back(cur);
      cur = sigma.image(cur);
    } while (cur != start);
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

}  // namespace latdeck
