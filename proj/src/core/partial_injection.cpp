// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/partial_injection.hpp"

#include <algorithm>

#include "core/rng.hpp"

namespace stallings {

std::uint32_t PartialInjection::defined_count() const {
  std::uint32_t c = 0;
  for (Vertex v : image_) c += (v != kNoVertex);
  return c;
}

bool PartialInjection::valid() const {
  std::vector<bool> seen(image_.size(), false);
  for (Vertex v : image_) {
    if (v == kNoVertex) continue;
    if (v >= image_.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation Permutation::identity(std::uint32_t n) {
  std::vector<Vertex> img(n);
  for (std::uint32_t i = 0; i < n; ++i) img[i] = i;
  return Permutation(std::move(img));
}

bool Permutation::valid() const {
  std::vector<bool> seen(image_.size(), false);
  for (Vertex v : image_) {
    if (v >= image_.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::vector<ComponentShape> decompose(const PartialInjection& inj) {
  if (!inj.valid()) throw UsageError("decompose: not a partial injection");
  const std::uint32_t n = inj.size();
  std::vector<bool> has_preimage(n, false);
  for (Vertex u = 0; u < n; ++u)
    if (inj.defined(u)) has_preimage[inj.image(u)] = true;

  std::vector<ComponentShape> out;
  std::vector<bool> visited(n, false);
  // Sequences: walk forward from each vertex with no preimage.
  for (Vertex u = 0; u < n; ++u) {
    if (has_preimage[u]) continue;
    std::uint32_t len = 0;
    Vertex v = u;
    for (;;) {
      visited[v] = true;
      ++len;
      if (!inj.defined(v)) break;
      v = inj.image(v);
    }
    out.push_back({ComponentKind::Sequence, len});
  }
  // Whatever remains lies on cycles.
  for (Vertex u = 0; u < n; ++u) {
    if (visited[u]) continue;
    std::uint32_t len = 0;
    Vertex v = u;
    do {
      visited[v] = true;
      ++len;
      v = inj.image(v);
    } while (v != u);
    out.push_back({ComponentKind::Cycle, len});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint32_t count_sequences(const PartialInjection& inj) {
  // A sequence start is a vertex that is nobody's image; counting those
  // avoids the full decomposition.
  const std::uint32_t n = inj.size();
  std::vector<bool> has_preimage(n, false);
  for (Vertex u = 0; u < n; ++u)
    if (inj.defined(u)) has_preimage[inj.image(u)] = true;
  std::uint32_t starts = 0;
  for (Vertex u = 0; u < n; ++u) starts += !has_preimage[u];
  return starts;
}

}  // namespace stallings
