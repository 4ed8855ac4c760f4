#include "inhomog/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "inhomog/errors.hpp"

namespace inhomog {

namespace {

using json = nlohmann::ordered_json;

Vec2 to_vec2(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw io_error(std::string(what) + " must be a [x,y] pair");
    return Vec2{j[0].get<double>(), j[1].get<double>()};
}

Complex to_complex(const json& j, const char* what) {
    const Vec2 v = to_vec2(j, what);
    return Complex{v.x, v.y};
}

json from_vec2(Vec2 v) { return json::array({v.x, v.y}); }

ContractionMap parse_map(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "similarity") {
        SimilarityMap m;
        m.scale = j.at("scale").get<double>();
        m.angle = j.value("angle", 0.0);
        m.reflect = j.value("reflect", false);
        m.t = to_vec2(j.at("t"), "t");
        return m;
    }
    if (kind == "diag") {
        DiagonalAffineMap m;
        m.sx = j.at("sx").get<double>();
        m.sy = j.at("sy").get<double>();
        m.t = to_vec2(j.at("t"), "t");
        return m;
    }
    throw io_error("map kind must be \"similarity\" or \"diag\"");
}

Primitive parse_primitive(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "point") return Primitive::point(to_vec2(j.at("p"), "p"));
    if (kind == "segment")
        return Primitive::segment(to_vec2(j.at("a"), "a"), to_vec2(j.at("b"), "b"));
    if (kind == "rect")
        return Primitive::rect(to_vec2(j.at("a"), "a"), to_vec2(j.at("b"), "b"));
    throw io_error("condensation kind must be \"point\", \"segment\" or \"rect\"");
}

json dump_map(const ContractionMap& m) {
    json j;
    if (const auto* s = std::get_if<SimilarityMap>(&m)) {
        j["kind"] = "similarity";
        j["scale"] = s->scale;
        j["angle"] = s->angle;
        j["reflect"] = s->reflect;
        j["t"] = from_vec2(s->t);
    } else {
        const auto& d = std::get<DiagonalAffineMap>(m);
        j["kind"] = "diag";
        j["sx"] = d.sx;
        j["sy"] = d.sy;
        j["t"] = from_vec2(d.t);
    }
    return j;
}

json dump_primitive(const Primitive& p) {
    json j;
    switch (p.kind) {
    case PrimitiveKind::point:
        j["kind"] = "point";
        j["p"] = from_vec2(p.a);
        break;
    case PrimitiveKind::segment:
        j["kind"] = "segment";
        j["a"] = from_vec2(p.a);
        j["b"] = from_vec2(p.b);
        break;
    case PrimitiveKind::rect:
        j["kind"] = "rect";
        j["a"] = from_vec2(p.a);
        j["b"] = from_vec2(p.b);
        break;
    }
    return j;
}

json parse_or_throw(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw io_error("malformed JSON");
    return j;
}

} // namespace

System parse_ifs_json(const std::string& text) {
    const json j = parse_or_throw(text);
    if (!j.contains("maps") || !j["maps"].is_array() || j["maps"].empty())
        throw io_error("an IFS file needs a non-empty \"maps\" array");
    std::vector<ContractionMap> maps;
    for (const auto& jm : j["maps"]) maps.push_back(parse_map(jm));
    std::vector<Primitive> prims;
    if (j.contains("condensation")) {
        if (!j["condensation"].is_array())
            throw io_error("\"condensation\" must be an array");
        for (const auto& jp : j["condensation"]) prims.push_back(parse_primitive(jp));
    }
    try {
        return System{IfsSystem{std::move(maps)}, CondensationSet{std::move(prims)}};
    } catch (const domain_error& e) {
        throw io_error(std::string("invalid system: ") + e.what());
    }
}

System load_ifs_file(const std::string& path) {
    return parse_ifs_json(read_text_file(path));
}

std::string ifs_to_json(const System& sys) {
    json j;
    j["maps"] = json::array();
    for (const auto& m : sys.ifs.maps()) j["maps"].push_back(dump_map(m));
    j["condensation"] = json::array();
    for (const auto& p : sys.condensation.primitives)
        j["condensation"].push_back(dump_primitive(p));
    return j.dump(2) + "\n";
}

GroupPresentation parse_group_json(const std::string& text) {
    const json j = parse_or_throw(text);
    if (!j.contains("maps") || !j["maps"].is_array() || j["maps"].empty())
        throw io_error("a group file needs a non-empty \"maps\" array");
    std::vector<MoebiusMap> gens;
    for (const auto& jm : j["maps"]) {
        if (jm.value("kind", "") != "moebius")
            throw io_error("group map kind must be \"moebius\"");
        try {
            gens.push_back(
                moebius(to_complex(jm.at("a"), "a"), to_complex(jm.at("b"), "b")));
        } catch (const domain_error& e) {
            throw io_error(std::string("invalid generator: ") + e.what());
        }
    }
    std::string kind = j.value("group", gens.size() == 1 ? "cyclic" : "free");
    try {
        if (kind == "cyclic") {
            if (gens.size() != 1)
                throw io_error("a cyclic group file needs exactly one generator");
            return cyclic_group(gens[0]);
        }
        if (kind == "free") return free_group(std::move(gens));
    } catch (const domain_error& e) {
        throw io_error(std::string("invalid group: ") + e.what());
    }
    throw io_error("\"group\" must be \"cyclic\" or \"free\"");
}

GroupPresentation load_group_file(const std::string& path) {
    return parse_group_json(read_text_file(path));
}

std::string group_to_json(const GroupPresentation& g) {
    json j;
    j["group"] = g.kind == GroupKind::cyclic ? "cyclic" : "free";
    j["maps"] = json::array();
    for (const auto& m : g.generators) {
        json jm;
        jm["kind"] = "moebius";
        jm["a"] = json::array({m.a.real(), m.a.imag()});
        jm["b"] = json::array({m.b.real(), m.b.imag()});
        j["maps"].push_back(jm);
    }
    return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw io_error("failed writing " + path);
}

} // namespace inhomog
