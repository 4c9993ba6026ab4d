#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "modulus/eisenstein.hpp"

namespace modulus::grid {

enum class Region { FundamentalDomain, Strip, QDisk };
enum class Quantity { AbsJ, ReJ, ImJ, TileIndex };

Region parse_region(const std::string& name);
Quantity parse_quantity(const std::string& name);
std::string region_name(Region r);
std::string quantity_name(Quantity q);

// Sampling box of a region: x in [x_min, x_max], y in [y_min, y_max].
//   fundamental-domain: tau with |x| <= 1/2, sqrt(3)/2 <= y <= 5/2
//   strip:              tau with |x| <= 1/2, 1/4 <= y <= 5/4
//   q-disk:             q = x + iy in the square of half-width exp(-2 pi / 3)
struct Box {
    double x_min, x_max, y_min, y_max;
};
Box region_box(Region r);

inline constexpr std::size_t kMaxSide = 4096;

// Parses "WxH"; each side must lie in [1, 4096].
std::pair<std::size_t, std::size_t> parse_resolution(const std::string& text);

struct GridPoint {
    double x;
    double y;
    std::optional<double> value; // numeric quantities; empty where evaluation failed
    std::string label;           // tile-index only: F, S, ST, STinv or none
};

struct Grid {
    Region region;
    Quantity quantity;
    std::size_t width;
    std::size_t height;
    std::vector<GridPoint> points; // row-major, y outer
};

Grid compute_grid(Region region, Quantity quantity, std::size_t width, std::size_t height,
                  const eisenstein::SeriesBank& bank = eisenstein::SeriesBank::standard());

// CSV header "x,y,value"; failed points are written as nan.
void write_csv(const Grid& g, std::ostream& out);
// {region, quantity, width, height, points: [[x, y, value], ...]}; failed points are null.
void write_json(const Grid& g, std::ostream& out);

} // namespace modulus::grid
