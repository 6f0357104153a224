#include "fmm2d/morton.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fmm2d {

namespace {

// Spreads the low 32 bits of v into the even bit positions.
std::uint64_t interleave_zeros(std::uint64_t v) {
    v &= 0xFFFFFFFFull;
    v = (v | (v << 16)) & 0x0000FFFF0000FFFFull;
    v = (v | (v << 8)) & 0x00FF00FF00FF00FFull;
    v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0Full;
    v = (v | (v << 2)) & 0x3333333333333333ull;
    v = (v | (v << 1)) & 0x5555555555555555ull;
    return v;
}

std::uint64_t compact_even_bits(std::uint64_t v) {
    v &= 0x5555555555555555ull;
    v = (v | (v >> 1)) & 0x3333333333333333ull;
    v = (v | (v >> 2)) & 0x0F0F0F0F0F0F0F0Full;
    v = (v | (v >> 4)) & 0x00FF00FF00FF00FFull;
    v = (v | (v >> 8)) & 0x0000FFFF0000FFFFull;
    v = (v | (v >> 16)) & 0x00000000FFFFFFFFull;
    return v;
}

void check_level(int level) {
    if (level < 0 || level > kMaxLevel) {
        throw std::domain_error("morton: level " + std::to_string(level) +
                                " outside [0, " + std::to_string(kMaxLevel) + "]");
    }
}

}  // namespace

MortonKey morton_encode(int level, std::uint64_t ix, std::uint64_t iy) {
    check_level(level);
    const std::uint64_t side = 1ull << level;
    if (ix >= side || iy >= side) {
        throw std::domain_error("morton_encode: grid coordinates out of range for level " +
                                std::to_string(level));
    }
    return {level, interleave_zeros(ix) | (interleave_zeros(iy) << 1)};
}

std::pair<std::uint64_t, std::uint64_t> morton_decode(const MortonKey& key) {
    if (!is_valid(key)) {
        throw std::domain_error("morton_decode: invalid key");
    }
    return {compact_even_bits(key.index), compact_even_bits(key.index >> 1)};
}

bool is_valid(const MortonKey& key) {
    return key.level >= 0 && key.level <= kMaxLevel &&
           key.index < (1ull << (2 * key.level));
}

MortonKey parent(const MortonKey& key) {
    if (!is_valid(key)) {
        throw std::domain_error("parent: invalid key");
    }
    if (key.level == 0) {
        throw std::domain_error("parent: root cell has no parent");
    }
    return {key.level - 1, key.index >> 2};
}

std::array<MortonKey, 4> children(const MortonKey& key) {
    if (!is_valid(key)) {
        throw std::domain_error("children: invalid key");
    }
    if (key.level >= kMaxLevel) {
        throw std::domain_error("children: level exceeds kMaxLevel");
    }
    std::array<MortonKey, 4> out;
    for (std::uint64_t c = 0; c < 4; ++c) {
        out[c] = {key.level + 1, 4 * key.index + c};
    }
    return out;
}

std::vector<MortonKey> neighbor_list(const MortonKey& key) {
    const auto [ix, iy] = morton_decode(key);
    const std::int64_t side = std::int64_t{1} << key.level;
    std::vector<MortonKey> out;
    out.reserve(8);
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const std::int64_t nx = static_cast<std::int64_t>(ix) + dx;
            const std::int64_t ny = static_cast<std::int64_t>(iy) + dy;
            if (nx < 0 || nx >= side || ny < 0 || ny >= side) continue;
            out.push_back(morton_encode(key.level, static_cast<std::uint64_t>(nx),
                                        static_cast<std::uint64_t>(ny)));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MortonKey> interaction_list(const MortonKey& key) {
    if (!is_valid(key)) {
        throw std::domain_error("interaction_list: invalid key");
    }
    if (key.level < 2) {
        return {};
    }
    const auto [ix, iy] = morton_decode(key);
    std::vector<MortonKey> out;
    out.reserve(27);
    for (const MortonKey& pn : neighbor_list(parent(key))) {
        for (const MortonKey& cand : children(pn)) {
            if (cand == key) continue;
            const auto [cx, cy] = morton_decode(cand);
            const std::uint64_t dx = cx > ix ? cx - ix : ix - cx;
            const std::uint64_t dy = cy > iy ? cy - iy : iy - cy;
            if (dx <= 1 && dy <= 1) continue;  // adjacent, handled by P2P
            out.push_back(cand);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace fmm2d
