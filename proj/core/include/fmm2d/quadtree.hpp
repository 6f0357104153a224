#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "fmm2d/morton.hpp"

namespace fmm2d {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

// Source particle: position plus a real strength (charge for potentials,
// circulation for vortices).
struct Particle {
    double x = 0.0;
    double y = 0.0;
    double strength = 0.0;
};

// Square computational domain. Built as the tight bounding square of the
// input, expanded by a relative margin of 1e-9 (absolute floor 1e-12) so
// boundary-sitting particles are strictly interior.
struct RootBox {
    Point2 center;
    double half_width = 0.0;
};

// Particle span of one cell: [first, first + count) into the tree's
// SFC-sorted particle array. Empty spans have count == 0.
struct Cell {
    std::uint32_t first = 0;
    std::uint32_t count = 0;
};

constexpr int kDefaultLeafTarget = 30;

// Uniform complete quadtree over a square root box. Every cell of every
// level 0..depth is present and addressable by Morton key; particles are
// stably sorted by leaf Morton index. Immutable after construction, so all
// queries are safe for concurrent callers.
class Quadtree {
public:
    // depth == kAutoDepth picks max(2, round(log4(N / leaf_target))).
    static constexpr int kAutoDepth = -1;

    static Quadtree build(std::span<const Particle> particles, int depth = kAutoDepth,
                          int leaf_target = kDefaultLeafTarget);

    const RootBox& root_box() const { return box_; }
    int depth() const { return depth_; }
    std::size_t size() const { return particles_.size(); }

    // Particles in SFC order; original_index maps SFC position -> input position.
    std::span<const Particle> particles() const { return particles_; }
    std::uint32_t original_index(std::size_t sfc_pos) const { return original_index_[sfc_pos]; }

    std::uint64_t cells_per_level(int level) const { return 1ull << (2 * level); }
    const Cell& cell(int level, std::uint64_t index) const { return cells_[level][index]; }
    const Cell& cell(const MortonKey& key) const { return cells_[key.level][key.index]; }
    bool non_empty(int level, std::uint64_t index) const { return cells_[level][index].count > 0; }
    bool non_empty(const MortonKey& key) const { return cell(key).count > 0; }

    // Morton-ordered indices of the non-empty cells at a level.
    std::span<const std::uint64_t> non_empty_indices(int level) const {
        return non_empty_[level];
    }
    std::size_t non_empty_cell_count() const;

    std::span<const Particle> cell_particles(const MortonKey& key) const {
        const Cell& c = cell(key);
        return {particles_.data() + c.first, c.count};
    }

    double cell_width(int level) const { return 2.0 * box_.half_width / static_cast<double>(1ull << level); }
    Point2 cell_center(const MortonKey& key) const;
    std::complex<double> cell_center_z(const MortonKey& key) const;

    // Leaf containing a point; coordinates clamped into the grid so the
    // maximal-coordinate particle lands in the last cell.
    MortonKey leaf_key_for(const Point2& p) const;

private:
    RootBox box_;
    int depth_ = 0;
    std::vector<Particle> particles_;
    std::vector<std::uint32_t> original_index_;
    std::vector<std::vector<Cell>> cells_;                // [level][morton index]
    std::vector<std::vector<std::uint64_t>> non_empty_;   // [level] -> sorted indices
};

int auto_depth(std::size_t n, int leaf_target = kDefaultLeafTarget);

}  // namespace fmm2d
