#include "fmm2d/quadtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fmm2d {

int auto_depth(std::size_t n, int leaf_target) {
    if (leaf_target < 1) {
        throw std::domain_error("auto_depth: leaf_target must be >= 1");
    }
    const double ratio = static_cast<double>(n) / static_cast<double>(leaf_target);
    int depth = 2;
    if (ratio > 1.0) {
        depth = std::max(2, static_cast<int>(std::lround(std::log(ratio) / std::log(4.0))));
    }
    return std::min(depth, kMaxLevel);
}

Quadtree Quadtree::build(std::span<const Particle> particles, int depth, int leaf_target) {
    if (particles.empty()) {
        throw std::domain_error("build_tree: need at least one particle");
    }
    for (const Particle& p : particles) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.strength)) {
            throw std::domain_error("build_tree: non-finite particle data");
        }
    }
    if (depth == kAutoDepth) {
        depth = auto_depth(particles.size(), leaf_target);
    }
    if (depth < 1 || depth > kMaxLevel) {
        throw std::domain_error("build_tree: depth " + std::to_string(depth) +
                                " outside [1, " + std::to_string(kMaxLevel) + "]");
    }

    Quadtree tree;
    tree.depth_ = depth;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const Particle& p : particles) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    double half = 0.5 * std::max(xmax - xmin, ymax - ymin);
    half += std::max(half * 1e-9, 1e-12);
    tree.box_ = {{0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}, half};

    tree.particles_.assign(particles.begin(), particles.end());
    tree.original_index_.resize(particles.size());
    std::iota(tree.original_index_.begin(), tree.original_index_.end(), 0u);

    std::vector<std::uint64_t> leaf_of(particles.size());
    for (std::size_t i = 0; i < particles.size(); ++i) {
        leaf_of[i] = tree.leaf_key_for({particles[i].x, particles[i].y}).index;
    }
    // Stable sort: equal-key particles keep input order, for determinism.
    std::stable_sort(tree.original_index_.begin(), tree.original_index_.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return leaf_of[a] < leaf_of[b]; });
    for (std::size_t i = 0; i < particles.size(); ++i) {
        tree.particles_[i] = particles[tree.original_index_[i]];
    }

    tree.cells_.resize(depth + 1);
    tree.non_empty_.resize(depth + 1);
    for (int l = 0; l <= depth; ++l) {
        tree.cells_[l].assign(tree.cells_per_level(l), Cell{});
    }

    // Leaf spans from the sorted order, then aggregate upward. Children of a
    // cell are contiguous in Morton order, so parent spans stay contiguous.
    std::vector<Cell>& leaves = tree.cells_[depth];
    for (std::size_t i = 0; i < particles.size(); ++i) {
        const std::uint64_t leaf = leaf_of[tree.original_index_[i]];
        Cell& c = leaves[leaf];
        if (c.count == 0) c.first = static_cast<std::uint32_t>(i);
        ++c.count;
    }
    for (int l = depth - 1; l >= 0; --l) {
        for (std::uint64_t idx = 0; idx < tree.cells_per_level(l); ++idx) {
            Cell& c = tree.cells_[l][idx];
            for (std::uint64_t k = 0; k < 4; ++k) {
                const Cell& child = tree.cells_[l + 1][4 * idx + k];
                if (child.count == 0) continue;
                if (c.count == 0) c.first = child.first;
                c.count += child.count;
            }
        }
    }
    for (int l = 0; l <= depth; ++l) {
        for (std::uint64_t idx = 0; idx < tree.cells_per_level(l); ++idx) {
            if (tree.cells_[l][idx].count > 0) tree.non_empty_[l].push_back(idx);
        }
    }
    return tree;
}

std::size_t Quadtree::non_empty_cell_count() const {
    std::size_t n = 0;
    for (const auto& level : non_empty_) n += level.size();
    return n;
}

Point2 Quadtree::cell_center(const MortonKey& key) const {
    const auto [ix, iy] = morton_decode(key);
    const double w = cell_width(key.level);
    return {box_.center.x - box_.half_width + (static_cast<double>(ix) + 0.5) * w,
            box_.center.y - box_.half_width + (static_cast<double>(iy) + 0.5) * w};
}

std::complex<double> Quadtree::cell_center_z(const MortonKey& key) const {
    const Point2 c = cell_center(key);
    return {c.x, c.y};
}

MortonKey Quadtree::leaf_key_for(const Point2& p) const {
    const std::uint64_t side = 1ull << depth_;
    const double w = cell_width(depth_);
    const auto clamp_coord = [&](double v, double lo) {
        const double r = std::floor((v - lo) / w);
        if (r < 0.0) return std::uint64_t{0};
        if (r >= static_cast<double>(side)) return side - 1;
        return static_cast<std::uint64_t>(r);
    };
    return morton_encode(depth_, clamp_coord(p.x, box_.center.x - box_.half_width),
                         clamp_coord(p.y, box_.center.y - box_.half_width));
}

}  // namespace fmm2d
