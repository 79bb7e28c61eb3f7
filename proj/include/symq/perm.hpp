#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symq/error.hpp"

namespace symq {

// A permutation of {0, ..., n-1}, stored as its image array. External formats
// (JSON, CLI) are 1-indexed; everything in memory is 0-indexed.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n) {
    Permutation p;
    p.img_.resize(n);
    for (int i = 0; i < n; ++i) p.img_[i] = i;
    return p;
  }

  // Validates that images is a bijection on {0..n-1}.
  static Permutation from_images(std::vector<int> images) {
    const int n = static_cast<int>(images.size());
    std::vector<char> seen(n, 0);
    for (int v : images) {
      if (v < 0 || v >= n || seen[v])
        fail(ErrorKind::BadShape, "image array is not a permutation");
      seen[v] = 1;
    }
    Permutation p;
    p.img_ = std::move(images);
    return p;
  }

  static Permutation from_one_indexed(const std::vector<int>& images) {
    std::vector<int> shifted(images.size());
    for (size_t i = 0; i < images.size(); ++i) shifted[i] = images[i] - 1;
    return from_images(std::move(shifted));
  }

  // Cycle on the listed points (0-indexed), e.g. cycle(3, {0,1}) = (1 2).
  static Permutation cycle(int n, const std::vector<int>& points) {
    Permutation p = identity(n);
    for (size_t t = 0; t < points.size(); ++t) {
      int from = points[t];
      int to = points[(t + 1) % points.size()];
      if (from < 0 || from >= n) fail(ErrorKind::PointOutOfRange, "cycle point out of range");
      p.img_[from] = to;
    }
    return from_images(std::move(p.img_));
  }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& images() const { return img_; }

  std::vector<int> one_indexed_images() const {
    std::vector<int> out(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) out[i] = img_[i] + 1;
    return out;
  }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  std::optional<int> first_moved() const {
    for (int i = 0; i < degree(); ++i)
      if (img_[i] != i) return i;
    return std::nullopt;
  }

  // Function composition: (a.after(b))(i) = a(b(i)), i.e. b acts first.
  Permutation after(const Permutation& b) const {
    if (degree() != b.degree()) fail(ErrorKind::DegreeMismatch, "composing permutations of unequal degree");
    Permutation r;
    r.img_.resize(img_.size());
    for (int i = 0; i < degree(); ++i) r.img_[i] = img_[b.img_[i]];
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.img_.resize(img_.size());
    for (int i = 0; i < degree(); ++i) r.img_[img_[i]] = i;
    return r;
  }

  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  auto operator<=>(const Permutation& o) const { return img_ <=> o.img_; }

 private:
  std::vector<int> img_;
};

struct PermutationHash {
  size_t operator()(const Permutation& p) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int v : p.images()) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 0x100000001b3ULL;
    }
    return static_cast<size_t>(h);
  }
};

inline Permutation compose(const Permutation& a, const Permutation& b) { return a.after(b); }

}  // namespace symq
