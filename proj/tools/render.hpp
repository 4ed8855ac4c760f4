#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "inhomog/constructions.hpp"

namespace inhomog::tool {

struct RenderOptions {
    int width = 800;
    int height = 800;
    int depth = -1; // construction-dependent default when negative
};

// Renders a construction (orbital pieces for IFS families, disk orbit for
// kleinian-ce) to PNG or SVG depending on the output extension.
void render_construction(const ConstructionRef& ref, const RenderOptions& opt,
                         const std::string& out_path);

// Small fixed-palette raster with a byte-deterministic PNG encoding
// (stored-deflate zlib stream, no ancillary chunks).
class Raster {
public:
    Raster(int width, int height);

    void fill_rect(double x0, double y0, double x1, double y1, std::uint32_t rgb);
    void draw_line(double x0, double y0, double x1, double y1, std::uint32_t rgb);
    void draw_dot(double x, double y, std::uint32_t rgb);
    void draw_circle(double cx, double cy, double r, std::uint32_t rgb);

    std::string encode_png() const;

    int width() const { return w_; }
    int height() const { return h_; }

private:
    void set(int x, int y, std::uint32_t rgb);
    int w_, h_;
    std::vector<std::uint8_t> pix_; // RGB8
};

// Depth-indexed piece colors shared by PNG and SVG output.
std::uint32_t depth_color(std::size_t depth);

} // namespace inhomog::tool
