// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STALLINGS_CORE_PARTIAL_INJECTION_HPP
#define STALLINGS_CORE_PARTIAL_INJECTION_HPP

#include <cstdint>
#include <vector>

namespace stallings {

/// Vertices are 0-based internally; serializers present them 1-based.
using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

/// An injective partial map u -> image(u) on {0..n-1}. Its functional
/// graph decomposes into disjoint simple cycles and simple paths
/// ("sequences"); injectivity alone guarantees that shape.
class PartialInjection {
 public:
  PartialInjection() = default;
  explicit PartialInjection(std::vector<Vertex> image)
      : image_(std::move(image)) {}
  static PartialInjection empty(std::uint32_t n) {
    return PartialInjection(std::vector<Vertex>(n, kNoVertex));
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>(image_.size()); }
  Vertex image(Vertex u) const { return image_[u]; }
  bool defined(Vertex u) const { return image_[u] != kNoVertex; }
  const std::vector<Vertex>& raw() const { return image_; }
  std::vector<Vertex>& raw() { return image_; }

  /// Number of defined pairs (= edges labeled by this letter).
  std::uint32_t defined_count() const;

  /// True iff this letter is a full permutation.
  bool total() const { return defined_count() == size(); }

  /// Injectivity check; quadratic structure is implied by it.
  bool valid() const;

  bool operator==(const PartialInjection&) const = default;

 private:
  std::vector<Vertex> image_;
};

/// A bijection on {0..n-1}.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Vertex> image) : image_(std::move(image)) {}
  static Permutation identity(std::uint32_t n);

  std::uint32_t size() const { return static_cast<std::uint32_t>(image_.size()); }
  Vertex image(Vertex u) const { return image_[u]; }
  const std::vector<Vertex>& raw() const { return image_; }
  std::vector<Vertex>& raw() { return image_; }
  bool valid() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<Vertex> image_;
};

enum class ComponentKind : std::uint8_t { Sequence, Cycle };

struct ComponentShape {
  ComponentKind kind;
  std::uint32_t size;
  auto operator<=>(const ComponentShape&) const = default;
};

/// Ordered component shapes produced by the recursive sampler before
/// labeling; sizes sum to `total`.
struct ShapeSequence {
  std::vector<ComponentShape> shapes;
  std::uint32_t total = 0;
};

/// The component multiset of the functional graph, sorted
/// (sequences first, then cycles, each by size).
std::vector<ComponentShape> decompose(const PartialInjection& inj);

/// Number of sequence (path) components; the X_n statistic.
std::uint32_t count_sequences(const PartialInjection& inj);

}  // namespace stallings

#endif
