#pragma once

#include <span>
#include <vector>

#include "tagnav/core/tag.hpp"

namespace tagnav {

/// Sorted, duplicate-free list of resource keys. Key order is insertion
/// order, so a ResourceSet enumerates resources the way visit_all reports them.
using ResourceSet = std::vector<ResourceKey>;

bool is_canonical(std::span<const ResourceKey> set) noexcept;

/// Intersection of two sorted sets. Gallops through the larger input when the
/// sizes are lopsided.
ResourceSet intersect(std::span<const ResourceKey> a, std::span<const ResourceKey> b);

/// Intersects `b` into `acc` in place.
void intersect_into(ResourceSet& acc, std::span<const ResourceKey> b);

/// Merges disjoint sorted sets into one sorted set.
ResourceSet merge_disjoint(std::span<const std::span<const ResourceKey>> parts);

}  // namespace tagnav
