#include "modulus/grid.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "modulus/errors.hpp"
#include "modulus/modular_group.hpp"
#include "modulus/modular_j.hpp"
#include "modulus/q_transform.hpp"

namespace modulus::grid {

namespace {

double axis(double lo, double hi, std::size_t i, std::size_t n)
{
    if (n == 1) return 0.5 * (lo + hi);
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

Region parse_region(const std::string& name)
{
    if (name == "fundamental-domain") return Region::FundamentalDomain;
    if (name == "strip") return Region::Strip;
    if (name == "q-disk") return Region::QDisk;
    throw UsageError("unknown region '" + name + "' (expected fundamental-domain, strip or q-disk)");
}

Quantity parse_quantity(const std::string& name)
{
    if (name == "absJ") return Quantity::AbsJ;
    if (name == "reJ") return Quantity::ReJ;
    if (name == "imJ") return Quantity::ImJ;
    if (name == "tile-index") return Quantity::TileIndex;
    throw UsageError("unknown quantity '" + name + "' (expected absJ, reJ, imJ or tile-index)");
}

std::string region_name(Region r)
{
    switch (r) {
    case Region::FundamentalDomain: return "fundamental-domain";
    case Region::Strip: return "strip";
    case Region::QDisk: return "q-disk";
    }
    return {};
}

std::string quantity_name(Quantity q)
{
    switch (q) {
    case Quantity::AbsJ: return "absJ";
    case Quantity::ReJ: return "reJ";
    case Quantity::ImJ: return "imJ";
    case Quantity::TileIndex: return "tile-index";
    }
    return {};
}

Box region_box(Region r)
{
    switch (r) {
    case Region::FundamentalDomain: return {-0.5, 0.5, std::sqrt(3.0) / 2.0, 2.5};
    case Region::Strip: return {-0.5, 0.5, 0.25, 1.25};
    case Region::QDisk: {
        const double radius = q_transform::strip_image_radius(1.0 / 3.0);
        return {-radius, radius, -radius, radius};
    }
    }
    return {};
}

std::pair<std::size_t, std::size_t> parse_resolution(const std::string& text)
{
    std::size_t w = 0;
    std::size_t h = 0;
    char sep = 0;
    int consumed = 0;
    if (std::sscanf(text.c_str(), "%zu%c%zu%n", &w, &sep, &h, &consumed) != 3 || (sep != 'x' && sep != 'X') ||
        static_cast<std::size_t>(consumed) != text.size()) {
        throw UsageError("resolution must have the form WxH, got '" + text + "'");
    }
    if (w < 1 || h < 1 || w > kMaxSide || h > kMaxSide) {
        throw UsageError("resolution sides must lie in [1, 4096], got '" + text + "'");
    }
    return {w, h};
}

Grid compute_grid(Region region, Quantity quantity, std::size_t width, std::size_t height,
                  const eisenstein::SeriesBank& bank)
{
    if (width < 1 || height < 1 || width > kMaxSide || height > kMaxSide) {
        throw UsageError("resolution sides must lie in [1, 4096]");
    }
    const Box box = region_box(region);
    Grid g{region, quantity, width, height, {}};
    g.points.reserve(width * height);
    for (std::size_t r = 0; r < height; ++r) {
        const double y = axis(box.y_min, box.y_max, r, height);
        for (std::size_t c = 0; c < width; ++c) {
            GridPoint p{axis(box.x_min, box.x_max, c, width), y, std::nullopt, {}};
            try {
                if (quantity == Quantity::TileIndex) {
                    const HalfPlanePoint tau = region == Region::QDisk
                                                   ? q_transform::tau_from_q(PuncturedDiskPoint{p.x, p.y})
                                                   : HalfPlanePoint{p.x, p.y};
                    p.label = std::string(modular_group::region_name(modular_group::classify(tau)));
                } else {
                    const Complex j = region == Region::QDisk
                                          ? modular_j::jtilde_eval(PuncturedDiskPoint{p.x, p.y}, bank)
                                          : modular_j::j_eval(HalfPlanePoint{p.x, p.y}, bank);
                    const double v = quantity == Quantity::AbsJ ? std::abs(j)
                                     : quantity == Quantity::ReJ ? j.real()
                                                                 : j.imag();
                    if (std::isfinite(v)) p.value = v;
                }
            } catch (const std::exception&) {
                if (quantity == Quantity::TileIndex) p.label = "none";
            }
            g.points.push_back(std::move(p));
        }
    }
    return g;
}

void write_csv(const Grid& g, std::ostream& out)
{
    out << "x,y,value\n";
    for (const auto& p : g.points) {
        out << format_double(p.x) << ',' << format_double(p.y) << ',';
        if (g.quantity == Quantity::TileIndex) {
            out << p.label;
        } else {
            out << (p.value ? format_double(*p.value) : "nan");
        }
        out << '\n';
    }
}

void write_json(const Grid& g, std::ostream& out)
{
    nlohmann::ordered_json doc;
    doc["region"] = region_name(g.region);
    doc["quantity"] = quantity_name(g.quantity);
    doc["width"] = g.width;
    doc["height"] = g.height;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& p : g.points) {
        nlohmann::ordered_json v;
        if (g.quantity == Quantity::TileIndex) {
            v = p.label;
        } else if (p.value) {
            v = *p.value;
        }
        rows.push_back(nlohmann::ordered_json::array({p.x, p.y, v}));
    }
    doc["points"] = std::move(rows);
    out << doc.dump() << '\n';
}

} // namespace modulus::grid
