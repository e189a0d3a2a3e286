#include <doctest.h>

#include <cmath>
#include <fstream>

#include "inkline/mesh.hpp"
#include "inkline/meshgen.hpp"
#include "support/oracles.hpp"

using namespace ink;

namespace {

std::string write_temp_obj(const std::string& content) {
    std::string path = oracle::temp_path("mesh.obj");
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("load_mesh: minimal one-triangle OBJ") {
    std::string path = write_temp_obj(
        "# smallest valid input\n"
        "v 0 0 0\n"
        "v 1 0 0\n"
        "v 0 1 0\n"
        "f 1 2 3\n");
    Mesh m = load_mesh(path);
    CHECK(m.vertices.size() == 3);
    CHECK(m.faces.size() == 1);
    CHECK(m.has_normals());
    CHECK(m.normals[0].z == doctest::Approx(1.0));
}

TEST_CASE("load_mesh: quad face fan-triangulates to 2 triangles") {
    std::string path = write_temp_obj(
        "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\n"
        "f 1 2 3 4\n");
    Mesh m = load_mesh(path);
    CHECK(m.vertices.size() == 4);
    CHECK(m.faces.size() == 2);
    CHECK(m.faces[0] == std::array<int, 3>{0, 1, 2});
    CHECK(m.faces[1] == std::array<int, 3>{0, 2, 3});
}

TEST_CASE("load_mesh: icosphere subdivision 4 counts") {
    // counts fixed by the icosahedron subdivision recurrence:
    // V_k = 2 + 10*4^k, F_k = 20*4^k
    Mesh gen = make_icosphere(4);
    CHECK(gen.vertices.size() == 2562);
    CHECK(gen.faces.size() == 5120);

    std::string path = oracle::temp_path("icosphere4.obj");
    save_mesh_obj(path, gen);
    Mesh loaded = load_mesh(path);
    CHECK(loaded.vertices.size() == 2562);
    CHECK(loaded.faces.size() == 5120);
    CHECK(loaded.edge_manifold);
}

TEST_CASE("load_mesh: errors") {
    SUBCASE("parse error carries the line number") {
        std::string path = write_temp_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 zzz\n");
        CHECK_THROWS_WITH_AS(load_mesh(path), doctest::Contains("line 4"), Error);
    }
    SUBCASE("degenerate face is rejected with its index") {
        std::string path = write_temp_obj("v 0 0 0\nv 1 0 0\nv 2 0 0\nf 1 2 3\n");
        CHECK_THROWS_WITH_AS(load_mesh(path), doctest::Contains("degenerate"), Error);
        CHECK_THROWS_WITH_AS(load_mesh(path), doctest::Contains("face 0"), Error);
    }
    SUBCASE("empty mesh") {
        std::string path = write_temp_obj("# nothing here\nv 1 2 3\n");
        CHECK_THROWS_WITH_AS(load_mesh(path), doctest::Contains("empty"), Error);
    }
    SUBCASE("face index out of range") {
        std::string path = write_temp_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 9\n");
        CHECK_THROWS_AS(load_mesh(path), Error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_mesh("/nonexistent/x.obj"), Error);
    }
}

TEST_CASE("load_mesh: ignored directives are counted, file normals used") {
    std::string path = write_temp_obj(
        "mtllib foo.mtl\nusemtl bar\no thing\n"
        "v 0 0 0\nv 1 0 0\nv 0 1 0\n"
        "vn 0 0 1\nvn 0 0 1\nvn 0 0 1\n"
        "f 1//1 2//2 3//3\n");
    Mesh m = load_mesh(path);
    CHECK(m.ignored_directives == 3);
    CHECK(m.normals[2].z == doctest::Approx(1.0));
}

TEST_CASE("compute_normals: flat square is +z everywhere") {
    Mesh m = make_quad(1.0);
    for (const Vec3& n : m.normals) {
        CHECK(n.x == doctest::Approx(0.0));
        CHECK(n.y == doctest::Approx(0.0));
        CHECK(n.z == doctest::Approx(1.0));
    }
}

TEST_CASE("compute_normals: icosphere normals match the analytic sphere normal") {
    // analytic: n(p) = p on the unit sphere
    Mesh m = make_icosphere(3);
    m.normals.clear();
    m = compute_normals(std::move(m));
    double max_angle = 0.0;
    for (size_t v = 0; v < m.vertices.size(); ++v) {
        double c = dot(m.normals[v], normalized(m.vertices[v]));
        max_angle = std::max(max_angle, rad2deg(std::acos(std::min(1.0, c))));
    }
    CHECK(max_angle <= 2.0);
}

TEST_CASE("compute_normals: reversed winding flips the normal") {
    Mesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    m.faces = {{0, 2, 1}}; // clockwise in the xy plane
    m = compute_normals(std::move(m));
    CHECK(m.normals[0].z == doctest::Approx(-1.0));
}

TEST_CASE("compute_normals: isolated vertex flagged, +z fallback") {
    Mesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 5, 5}};
    m.faces = {{0, 1, 2}};
    m = compute_normals(std::move(m));
    CHECK(m.isolated_vertices == 1);
    CHECK(m.normals[3].z == doctest::Approx(1.0));
}

TEST_CASE("normals are unit length after load") {
    Mesh m = make_torus(1.0, 0.35, 24, 12);
    std::string path = oracle::temp_path("torus.obj");
    save_mesh_obj(path, m);
    Mesh loaded = load_mesh(path);
    for (const Vec3& n : loaded.normals) CHECK(std::fabs(n.length() - 1.0) <= 1e-6);
}

TEST_CASE("edge manifold flag") {
    Mesh torus = make_torus(1.0, 0.35, 16, 8);
    CHECK(torus.edge_manifold);

    // three faces sharing one edge
    Mesh bad;
    bad.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, -1, 0}};
    bad.faces = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}};
    bad = compute_normals(std::move(bad));
    bad.update_manifold_flag();
    CHECK_FALSE(bad.edge_manifold);
    CHECK(bad.non_manifold_edges == 1);
}
