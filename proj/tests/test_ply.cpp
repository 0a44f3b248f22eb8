#include <doctest.h>

#include <cstdio>
#include <sstream>

#include "inspsim/ply.hpp"

using namespace inspsim;

namespace {

const char* kAsciiWithNormals =
    "ply\n"
    "format ascii 1.0\n"
    "comment test fixture\n"
    "element vertex 3\n"
    "property float x\n"
    "property float y\n"
    "property float z\n"
    "property float nx\n"
    "property float ny\n"
    "property float nz\n"
    "end_header\n"
    "1 0 0 1 0 0\n"
    "0 2 0 0 1 0\n"
    "0 0 3 0 0 1\n";

}  // namespace

TEST_CASE("ascii PLY with normals parses verbatim") {
    std::istringstream in(kAsciiWithNormals);
    const PoiCloud c = load_ply(in);
    REQUIRE(c.size() == 3);
    CHECK((c.points[1] - Vec3(0, 2, 0)).norm() == 0.0);
    CHECK((c.normals[2] - Vec3(0, 0, 1)).norm() == 0.0);
}

TEST_CASE("missing normals fall back to centroid directions") {
    std::istringstream in(
        "ply\nformat ascii 1.0\n"
        "element vertex 2\n"
        "property double x\nproperty double y\nproperty double z\n"
        "end_header\n"
        "-1 0 0\n"
        "1 0 0\n");
    const PoiCloud c = load_ply(in);
    REQUIRE(c.size() == 2);
    CHECK((c.normals[0] - Vec3(-1, 0, 0)).norm() < 1e-12);
    CHECK((c.normals[1] - Vec3(1, 0, 0)).norm() < 1e-12);
}

TEST_CASE("non-vertex elements are skipped with a warning") {
    std::istringstream in(
        "ply\nformat ascii 1.0\n"
        "element vertex 1\n"
        "property float x\nproperty float y\nproperty float z\n"
        "element face 2\n"
        "property list uchar int vertex_indices\n"
        "end_header\n"
        "1 2 3\n"
        "3 0 1 2\n"
        "3 2 1 0\n");
    std::vector<std::string> warnings;
    const PoiCloud c = load_ply(in, &warnings);
    CHECK(c.size() == 1);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("face") != std::string::npos);
}

TEST_CASE("malformed headers and truncated bodies raise PlyParseError") {
    auto expect_throw = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(load_ply(in), PlyParseError);
    };
    expect_throw("not_a_ply\n");
    expect_throw("ply\nformat ascii 2.0\nend_header\n");
    expect_throw(
        "ply\nformat ascii 1.0\nelement vertex 1\n"
        "property float x\nproperty float y\nproperty float z\nend_header\n");  // no rows
    expect_throw(
        "ply\nformat ascii 1.0\nelement vertex 1\n"
        "property float y\nproperty float z\nend_header\n0 0\n");  // no x column
    expect_throw(
        "ply\nformat ascii 1.0\nelement vertex 1\n"
        "property float x\nproperty float y\nproperty float z\nend_header\n1 nan 0\n");
}

TEST_CASE("binary and ascii round trips preserve points and normals") {
    const PoiCloud c = sphere_cloud(37, 4.0);
    for (const bool binary : {false, true}) {
        const std::string path = std::string("/tmp/inspsim_roundtrip_") +
                                 (binary ? "bin" : "asc") + ".ply";
        write_ply(c, path, binary);
        const PoiCloud back = load_ply(path);
        REQUIRE(back.size() == c.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK((back.points[i] - c.points[i]).norm() < 1e-12);
            CHECK((back.normals[i] - c.normals[i]).norm() < 1e-12);
        }
        std::remove(path.c_str());
    }
}

TEST_CASE("missing file raises PlyParseError with the path") {
    CHECK_THROWS_AS(load_ply("/nonexistent/mesh.ply"), PlyParseError);
}
