#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "inhomog/errors.hpp"
#include "inhomog/io.hpp"
#include "inhomog/orbital.hpp"

namespace inhomog::tool {

namespace {

const std::uint32_t kPalette[10] = {
    0x1f77b4, 0xff7f0e, 0x2ca02c, 0xd62728, 0x9467bd,
    0x8c564b, 0xe377c2, 0x7f7f7f, 0xbcbd22, 0x17becf,
};

std::uint32_t crc32_of(const std::uint8_t* data, std::size_t len, std::uint32_t seed) {
    static std::uint32_t table[256];
    static bool ready = false;
    if (!ready) {
        for (std::uint32_t n = 0; n < 256; ++n) {
            std::uint32_t c = n;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
            table[n] = c;
        }
        ready = true;
    }
    std::uint32_t c = seed ^ 0xffffffffu;
    for (std::size_t i = 0; i < len; ++i) c = table[(c ^ data[i]) & 0xffu] ^ (c >> 8);
    return c ^ 0xffffffffu;
}

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v >> 24));
    out.push_back(static_cast<char>(v >> 16));
    out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v));
}

void put_chunk(std::string& out, const char type[4], const std::string& payload) {
    put_u32(out, static_cast<std::uint32_t>(payload.size()));
    std::string body(type, 4);
    body += payload;
    out += body;
    put_u32(out, crc32_of(reinterpret_cast<const std::uint8_t*>(body.data()),
                          body.size(), 0));
}

} // namespace

Raster::Raster(int width, int height) : w_(width), h_(height) {
    if (width < 1 || height < 1 || width > 8192 || height > 8192)
        throw domain_error("image dimensions must lie in 1..8192");
    pix_.assign(static_cast<std::size_t>(w_) * h_ * 3, 0xff); // white
}

void Raster::set(int x, int y, std::uint32_t rgb) {
    if (x < 0 || y < 0 || x >= w_ || y >= h_) return;
    // raster rows top-down, math coordinates bottom-up
    const std::size_t i = (static_cast<std::size_t>(h_ - 1 - y) * w_ + x) * 3;
    pix_[i] = static_cast<std::uint8_t>(rgb >> 16);
    pix_[i + 1] = static_cast<std::uint8_t>(rgb >> 8);
    pix_[i + 2] = static_cast<std::uint8_t>(rgb);
}

void Raster::fill_rect(double x0, double y0, double x1, double y1, std::uint32_t rgb) {
    const int ax = static_cast<int>(std::floor(std::min(x0, x1)));
    const int bx = static_cast<int>(std::ceil(std::max(x0, x1)));
    const int ay = static_cast<int>(std::floor(std::min(y0, y1)));
    const int by = static_cast<int>(std::ceil(std::max(y0, y1)));
    for (int y = ay; y < std::max(by, ay + 1); ++y)
        for (int x = ax; x < std::max(bx, ax + 1); ++x) set(x, y, rgb);
}

void Raster::draw_line(double x0, double y0, double x1, double y1, std::uint32_t rgb) {
    const double steps = std::max({std::abs(x1 - x0), std::abs(y1 - y0), 1.0});
    const int n = static_cast<int>(std::ceil(steps));
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        set(static_cast<int>(std::lround(x0 + t * (x1 - x0))),
            static_cast<int>(std::lround(y0 + t * (y1 - y0))), rgb);
    }
}

void Raster::draw_dot(double x, double y, std::uint32_t rgb) {
    const int cx = static_cast<int>(std::lround(x));
    const int cy = static_cast<int>(std::lround(y));
    for (int dy = 0; dy < 2; ++dy)
        for (int dx = 0; dx < 2; ++dx) set(cx + dx, cy + dy, rgb);
}

void Raster::draw_circle(double cx, double cy, double r, std::uint32_t rgb) {
    const int n = std::max(64, static_cast<int>(r * 8));
    for (int i = 0; i <= n; ++i) {
        const double t = 2.0 * 3.14159265358979323846 * i / n;
        set(static_cast<int>(std::lround(cx + r * std::cos(t))),
            static_cast<int>(std::lround(cy + r * std::sin(t))), rgb);
    }
}

std::string Raster::encode_png() const {
    std::string png("\x89PNG\r\n\x1a\n", 8);

    std::string ihdr;
    put_u32(ihdr, static_cast<std::uint32_t>(w_));
    put_u32(ihdr, static_cast<std::uint32_t>(h_));
    ihdr += std::string("\x08\x02\x00\x00\x00", 5); // 8-bit RGB
    put_chunk(png, "IHDR", ihdr);

    // raw scanlines with filter byte 0
    std::string raw;
    raw.reserve(static_cast<std::size_t>(h_) * (static_cast<std::size_t>(w_) * 3 + 1));
    for (int y = 0; y < h_; ++y) {
        raw.push_back('\0');
        raw.append(reinterpret_cast<const char*>(&pix_[static_cast<std::size_t>(y) * w_ * 3]),
                   static_cast<std::size_t>(w_) * 3);
    }

    // zlib stream with stored deflate blocks
    std::string z("\x78\x01", 2);
    std::size_t pos = 0;
    while (pos < raw.size()) {
        const std::size_t n = std::min<std::size_t>(raw.size() - pos, 65535);
        const bool last = pos + n == raw.size();
        z.push_back(last ? '\x01' : '\x00');
        z.push_back(static_cast<char>(n & 0xff));
        z.push_back(static_cast<char>(n >> 8));
        z.push_back(static_cast<char>(~n & 0xff));
        z.push_back(static_cast<char>((~n >> 8) & 0xff));
        z.append(raw, pos, n);
        pos += n;
    }
    std::uint32_t a = 1, b = 0;
    for (unsigned char ch : raw) {
        a = (a + ch) % 65521;
        b = (b + a) % 65521;
    }
    put_u32(z, (b << 16) | a);
    put_chunk(png, "IDAT", z);
    put_chunk(png, "IEND", "");
    return png;
}

std::uint32_t depth_color(std::size_t depth) { return kPalette[depth % 10]; }

namespace {

int default_depth(const ConstructionRef& ref) {
    switch (ref.family) {
    case ConstructionFamily::sierpinski: return 7;
    case ConstructionFamily::bernoulli: return 11;
    case ConstructionFamily::comb: return ref.comb.n >= 6 ? 4 : 6;
    case ConstructionFamily::kleinian: return 0; // unused
    }
    return 6;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

char svg_buf[256];

std::string svg_header(int w, int h) {
    std::snprintf(svg_buf, sizeof svg_buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
                  "height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                  w, h, w, h);
    std::string s = svg_buf;
    std::snprintf(svg_buf, sizeof svg_buf,
                  "<rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" fill=\"#ffffff\"/>\n",
                  w, h);
    return s + svg_buf;
}

std::string rgb_hex(std::uint32_t rgb) {
    std::snprintf(svg_buf, sizeof svg_buf, "#%06x", rgb);
    return svg_buf;
}

// Orbital pieces for the IFS families; kleinian handled separately.
OrbitalApprox pieces_for(const ConstructionRef& ref, int depth) {
    System sys = build_system(ref);
    if (sys.condensation.empty()) {
        // homogeneous attractor: render stopped cylinders as the piece set
        OrbitalApprox approx;
        approx.truncation = "homogeneous";
        const double delta = std::pow(sys.ifs.lip_max(), depth);
        for (const auto& r : homogeneous_cover(sys.ifs, delta))
            approx.pieces.push_back({Word{}, r, delta});
        return approx;
    }
    return orbital_to_depth(sys.ifs, sys.condensation, depth);
}

} // namespace

void render_construction(const ConstructionRef& ref, const RenderOptions& opt,
                         const std::string& out_path) {
    const bool svg = ends_with(out_path, ".svg");
    if (!svg && !ends_with(out_path, ".png"))
        throw io_error("unsupported output extension (use .png or .svg): " + out_path);
    const int depth = opt.depth >= 0 ? opt.depth : default_depth(ref);
    const double w = opt.width, h = opt.height;

    if (ref.family == ConstructionFamily::kleinian) {
        auto orbit = kleinian_ce(ref.kleinian_m, ref.kleinian_n);
        // points accumulating on the boundary project radially onto it
        for (auto& p : orbit.points.points) {
            const double rr = std::abs(p);
            if (rr > 1.0 - 1e-3) p /= rr;
        }
        const double cx = w / 2.0, cy = h / 2.0, r = std::min(w, h) / 2.0 - 4.0;
        if (svg) {
            std::string out = svg_header(opt.width, opt.height);
            std::snprintf(svg_buf, sizeof svg_buf,
                          "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"none\" "
                          "stroke=\"#000000\"/>\n",
                          cx, cy, r);
            out += svg_buf;
            for (const auto& p : orbit.points.points) {
                std::snprintf(svg_buf, sizeof svg_buf,
                              "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"1.5\" fill=\"%s\"/>\n",
                              cx + p.real() * r, cy - p.imag() * r,
                              rgb_hex(kPalette[0]).c_str());
                out += svg_buf;
            }
            out += "</svg>\n";
            write_text_file(out_path, out);
        } else {
            Raster img(opt.width, opt.height);
            img.draw_circle(cx, cy, r, 0x000000);
            for (const auto& p : orbit.points.points)
                img.draw_dot(cx + p.real() * r, cy + p.imag() * r, kPalette[0]);
            write_text_file(out_path, img.encode_png());
        }
        return;
    }

    const auto approx = pieces_for(ref, depth);
    const auto px = [&](double x) { return x * (w - 1); };
    const auto py = [&](double y) { return y * (h - 1); };

    if (svg) {
        std::string out = svg_header(opt.width, opt.height);
        for (const auto& piece : approx.pieces) {
            const std::string color = rgb_hex(depth_color(piece.word.length()));
            const auto& s = piece.shape;
            switch (s.kind) {
            case PrimitiveKind::point:
                std::snprintf(svg_buf, sizeof svg_buf,
                              "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"1.2\" fill=\"%s\"/>\n",
                              px(s.a.x), h - py(s.a.y), color.c_str());
                break;
            case PrimitiveKind::segment:
                std::snprintf(svg_buf, sizeof svg_buf,
                              "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" "
                              "stroke=\"%s\" stroke-width=\"1\"/>\n",
                              px(s.a.x), h - py(s.a.y), px(s.b.x), h - py(s.b.y),
                              color.c_str());
                break;
            case PrimitiveKind::rect:
                std::snprintf(svg_buf, sizeof svg_buf,
                              "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" "
                              "height=\"%.3f\" fill=\"%s\"/>\n",
                              px(s.a.x), h - py(s.b.y), px(s.b.x) - px(s.a.x),
                              py(s.b.y) - py(s.a.y), color.c_str());
                break;
            }
            out += svg_buf;
        }
        out += "</svg>\n";
        write_text_file(out_path, out);
        return;
    }

    Raster img(opt.width, opt.height);
    for (const auto& piece : approx.pieces) {
        const std::uint32_t color = depth_color(piece.word.length());
        const auto& s = piece.shape;
        switch (s.kind) {
        case PrimitiveKind::point:
            img.draw_dot(px(s.a.x), py(s.a.y), color);
            break;
        case PrimitiveKind::segment:
            img.draw_line(px(s.a.x), py(s.a.y), px(s.b.x), py(s.b.y), color);
            break;
        case PrimitiveKind::rect:
            img.fill_rect(px(s.a.x), py(s.a.y), px(s.b.x), py(s.b.y), color);
            break;
        }
    }
    write_text_file(out_path, img.encode_png());
}

} // namespace inhomog::tool
