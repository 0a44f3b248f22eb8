#include "inspsim/ply.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "inspsim/common.hpp"

namespace inspsim {

namespace {

enum class ScalarType { I8, U8, I16, U16, I32, U32, F32, F64 };

std::size_t type_size(ScalarType t) {
    switch (t) {
        case ScalarType::I8:
        case ScalarType::U8: return 1;
        case ScalarType::I16:
        case ScalarType::U16: return 2;
        case ScalarType::I32:
        case ScalarType::U32:
        case ScalarType::F32: return 4;
        case ScalarType::F64: return 8;
    }
    return 0;
}

bool parse_type(const std::string& s, ScalarType& out) {
    if (s == "char" || s == "int8") out = ScalarType::I8;
    else if (s == "uchar" || s == "uint8") out = ScalarType::U8;
    else if (s == "short" || s == "int16") out = ScalarType::I16;
    else if (s == "ushort" || s == "uint16") out = ScalarType::U16;
    else if (s == "int" || s == "int32") out = ScalarType::I32;
    else if (s == "uint" || s == "uint32") out = ScalarType::U32;
    else if (s == "float" || s == "float32") out = ScalarType::F32;
    else if (s == "double" || s == "float64") out = ScalarType::F64;
    else return false;
    return true;
}

struct Property {
    std::string name;
    ScalarType type = ScalarType::F32;
    bool is_list = false;
    ScalarType count_type = ScalarType::U8;
};

struct Element {
    std::string name;
    std::size_t count = 0;
    std::vector<Property> props;
};

struct Header {
    bool binary = false;
    std::vector<Element> elements;
    std::size_t end_line = 0;  // line count of the header
};

Header parse_header(std::istream& in) {
    Header h;
    std::string line;
    std::size_t lineno = 0;

    auto next_line = [&]() -> std::string& {
        if (!std::getline(in, line)) throw PlyParseError("unexpected end of header", lineno);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++lineno;
        return line;
    };

    if (next_line() != "ply") throw PlyParseError("missing 'ply' magic", lineno);
    bool have_format = false;
    bool done = false;
    while (!done) {
        std::istringstream ls(next_line());
        std::string kw;
        ls >> kw;
        if (kw == "comment" || kw == "obj_info" || kw.empty()) continue;
        if (kw == "format") {
            std::string fmt, ver;
            ls >> fmt >> ver;
            if (ver != "1.0") throw PlyParseError("unsupported PLY version '" + ver + "'", lineno);
            if (fmt == "ascii") h.binary = false;
            else if (fmt == "binary_little_endian") h.binary = true;
            else throw PlyParseError("unsupported PLY format '" + fmt + "'", lineno);
            have_format = true;
        } else if (kw == "element") {
            Element e;
            long long n = -1;
            ls >> e.name >> n;
            if (e.name.empty() || n < 0 || ls.fail()) {
                throw PlyParseError("malformed element declaration", lineno);
            }
            e.count = std::size_t(n);
            h.elements.push_back(std::move(e));
        } else if (kw == "property") {
            if (h.elements.empty()) throw PlyParseError("property before any element", lineno);
            Property p;
            std::string t1;
            ls >> t1;
            if (t1 == "list") {
                p.is_list = true;
                std::string ct, vt;
                ls >> ct >> vt >> p.name;
                if (!parse_type(ct, p.count_type) || !parse_type(vt, p.type)) {
                    throw PlyParseError("unsupported list property types", lineno);
                }
            } else {
                ls >> p.name;
                if (!parse_type(t1, p.type)) {
                    throw PlyParseError("unsupported property type '" + t1 + "'", lineno);
                }
            }
            if (p.name.empty() || ls.fail()) throw PlyParseError("malformed property", lineno);
            h.elements.back().props.push_back(std::move(p));
        } else if (kw == "end_header") {
            done = true;
        } else {
            throw PlyParseError("unknown header keyword '" + kw + "'", lineno);
        }
    }
    if (!have_format) throw PlyParseError("missing format declaration", lineno);
    h.end_line = lineno;
    return h;
}

double read_binary_scalar(std::istream& in, ScalarType t, std::size_t& offset) {
    unsigned char buf[8];
    const std::size_t n = type_size(t);
    if (!in.read(reinterpret_cast<char*>(buf), std::streamsize(n))) {
        throw PlyParseError("truncated binary payload", offset);
    }
    offset += n;
    // host is little-endian on every supported platform here
    switch (t) {
        case ScalarType::I8: return double(*reinterpret_cast<int8_t*>(buf));
        case ScalarType::U8: return double(buf[0]);
        case ScalarType::I16: { int16_t v; std::memcpy(&v, buf, 2); return v; }
        case ScalarType::U16: { uint16_t v; std::memcpy(&v, buf, 2); return v; }
        case ScalarType::I32: { int32_t v; std::memcpy(&v, buf, 4); return v; }
        case ScalarType::U32: { uint32_t v; std::memcpy(&v, buf, 4); return v; }
        case ScalarType::F32: { float v; std::memcpy(&v, buf, 4); return v; }
        case ScalarType::F64: { double v; std::memcpy(&v, buf, 8); return v; }
    }
    return 0.0;
}

}  // namespace

PoiCloud load_ply(std::istream& in, std::vector<std::string>* warnings) {
    const Header h = parse_header(in);

    std::vector<Vec3> points;
    std::vector<Vec3> normals;
    bool have_normals = false;
    std::size_t lineno = h.end_line;
    std::size_t offset = 0;

    for (const auto& elem : h.elements) {
        const bool is_vertex = (elem.name == "vertex");
        if (!is_vertex && warnings) {
            warnings->push_back("ignoring element '" + elem.name + "'");
        }

        int ix = -1, iy = -1, iz = -1, inx = -1, iny = -1, inz = -1;
        if (is_vertex) {
            for (std::size_t p = 0; p < elem.props.size(); ++p) {
                const auto& name = elem.props[p].name;
                if (elem.props[p].is_list) continue;
                if (name == "x") ix = int(p);
                else if (name == "y") iy = int(p);
                else if (name == "z") iz = int(p);
                else if (name == "nx") inx = int(p);
                else if (name == "ny") iny = int(p);
                else if (name == "nz") inz = int(p);
            }
            if (ix < 0 || iy < 0 || iz < 0) {
                throw PlyParseError("vertex element lacks x/y/z properties", lineno);
            }
            have_normals = (inx >= 0 && iny >= 0 && inz >= 0);
            points.reserve(elem.count);
        }

        for (std::size_t row = 0; row < elem.count; ++row) {
            std::vector<double> values(elem.props.size(), 0.0);
            if (h.binary) {
                for (std::size_t p = 0; p < elem.props.size(); ++p) {
                    const auto& prop = elem.props[p];
                    if (prop.is_list) {
                        const double cnt = read_binary_scalar(in, prop.count_type, offset);
                        for (long k = 0; k < long(cnt); ++k) {
                            read_binary_scalar(in, prop.type, offset);
                        }
                    } else {
                        values[p] = read_binary_scalar(in, prop.type, offset);
                    }
                }
            } else {
                std::string line;
                do {
                    if (!std::getline(in, line)) {
                        throw PlyParseError("truncated element '" + elem.name + "': expected " +
                                                std::to_string(elem.count) + " rows, got " +
                                                std::to_string(row),
                                            lineno);
                    }
                    ++lineno;
                } while (line.find_first_not_of(" \t\r\n") == std::string::npos);
                std::istringstream ls(line);
                for (std::size_t p = 0; p < elem.props.size(); ++p) {
                    const auto& prop = elem.props[p];
                    if (prop.is_list) {
                        long cnt = 0;
                        ls >> cnt;
                        double dump;
                        for (long k = 0; k < cnt; ++k) ls >> dump;
                    } else {
                        ls >> values[p];
                    }
                    if (ls.fail()) throw PlyParseError("malformed data row", lineno);
                }
            }

            if (is_vertex) {
                const Vec3 pt(values[std::size_t(ix)], values[std::size_t(iy)], values[std::size_t(iz)]);
                if (!pt.allFinite()) {
                    throw PlyParseError("non-finite vertex coordinate", h.binary ? offset : lineno);
                }
                points.push_back(pt);
                if (have_normals) {
                    normals.emplace_back(values[std::size_t(inx)], values[std::size_t(iny)],
                                         values[std::size_t(inz)]);
                }
            }
        }
    }

    if (points.empty()) throw PlyParseError("no vertex element found", lineno);

    PoiCloud cloud;
    cloud.points = std::move(points);
    if (have_normals) {
        for (auto& n : normals) {
            const double len = n.norm();
            if (len > 0.0) n /= len;
        }
        cloud.normals = std::move(normals);
    } else {
        Vec3 centroid = Vec3::Zero();
        for (const auto& p : cloud.points) centroid += p;
        centroid /= double(cloud.points.size());
        cloud.normals.reserve(cloud.points.size());
        for (const auto& p : cloud.points) {
            Vec3 d = p - centroid;
            const double len = d.norm();
            cloud.normals.push_back(len > 0.0 ? Vec3(d / len) : Vec3::UnitX());
        }
    }
    return cloud;
}

PoiCloud load_ply(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw PlyParseError("cannot open '" + path + "'", 0);
    return load_ply(f, warnings);
}

void write_ply(const PoiCloud& cloud, const std::string& path, bool binary) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_ply: cannot open '" + path + "'");
    f << "ply\nformat " << (binary ? "binary_little_endian" : "ascii") << " 1.0\n"
      << "element vertex " << cloud.size() << "\n"
      << "property double x\nproperty double y\nproperty double z\n"
      << "property double nx\nproperty double ny\nproperty double nz\n"
      << "end_header\n";
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Vec3& p = cloud.points[i];
        const Vec3& n = cloud.normals[i];
        if (binary) {
            const double row[6] = {p.x(), p.y(), p.z(), n.x(), n.y(), n.z()};
            f.write(reinterpret_cast<const char*>(row), sizeof(row));
        } else {
            char buf[256];
            std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %.17g %.17g %.17g\n",
                          p.x(), p.y(), p.z(), n.x(), n.y(), n.z());
            f << buf;
        }
    }
}

}  // namespace inspsim
