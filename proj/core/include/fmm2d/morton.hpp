#pragma once

#include <array>
#include <cstdint>
#include <compare>
#include <utility>
#include <vector>

namespace fmm2d {

// Z-order key for a cell of the uniform quadtree. Bit 2k of `index` is bit k
// of the cell's x coordinate, bit 2k+1 is bit k of the y coordinate, so the
// induced linear order is the space-filling curve used throughout.
struct MortonKey {
    int level = 0;
    std::uint64_t index = 0;

    friend auto operator<=>(const MortonKey&, const MortonKey&) = default;
};

// Maximum tree level such that 4^level still fits in the 64-bit index with
// room for coordinate arithmetic.
inline constexpr int kMaxLevel = 16;

MortonKey morton_encode(int level, std::uint64_t ix, std::uint64_t iy);

// Inverse of morton_encode: (ix, iy) grid coordinates of the cell.
std::pair<std::uint64_t, std::uint64_t> morton_decode(const MortonKey& key);

bool is_valid(const MortonKey& key);

MortonKey parent(const MortonKey& key);
std::array<MortonKey, 4> children(const MortonKey& key);

// Same-level cells within Chebyshev distance 1, clipped at the domain
// boundary, excluding the cell itself. Sorted by index; at most 8 entries.
std::vector<MortonKey> neighbor_list(const MortonKey& key);

// Children of the parent's neighbors that are not adjacent to the cell —
// i.e. the well-separated same-level cells whose contribution is handled by
// M2L. Sorted by index; at most 27 entries; empty for levels < 2.
std::vector<MortonKey> interaction_list(const MortonKey& key);

}  // namespace fmm2d
