#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "inkline/contours.hpp"
#include "inkline/meshgen.hpp"
#include "inkline/render.hpp"
#include "support/oracles.hpp"

using namespace ink;

namespace {

Mesh merge(const Mesh& a, const Mesh& b) {
    Mesh m = a;
    int base = static_cast<int>(m.vertices.size());
    m.vertices.insert(m.vertices.end(), b.vertices.begin(), b.vertices.end());
    m.normals.insert(m.normals.end(), b.normals.begin(), b.normals.end());
    for (const auto& f : b.faces) m.faces.push_back({f[0] + base, f[1] + base, f[2] + base});
    m.update_bbox();
    m.update_manifold_flag();
    return m;
}

Mesh translated(Mesh m, const Vec3& d) {
    for (Vec3& v : m.vertices) v += d;
    m.update_bbox();
    return m;
}

} // namespace

TEST_CASE("g_field: direct substitution on sphere points") {
    Mesh m;
    m.vertices = {{0, 0, 1}, {0, 0, -1}};
    m.normals = {{0, 0, 1}, {0, 0, -1}};
    Camera cam = oracle::look_at_camera({0, 0, 5});
    std::vector<double> g = g_field(m, cam);
    CHECK(g[0] == doctest::Approx(4.0));   // front-facing
    CHECK(g[1] == doctest::Approx(-6.0));  // back-facing
}

TEST_CASE("g_field zero circle: unit sphere contour generator lies at z = 1/5") {
    // analytic: p.c = |p|^2 = 1 with c = (0,0,5) -> 5 z = 1 -> z = 0.2
    Mesh sphere = make_icosphere(4);
    Camera cam = oracle::look_at_camera({0, 0, 5});
    ContourSet contours = extract_smooth_contours(sphere, cam);
    REQUIRE(!contours.polylines.empty());
    double zsum = 0.0;
    size_t n = 0;
    for (const auto& poly : contours.polylines)
        for (const Vec3& p : poly.points) {
            zsum += p.z;
            ++n;
        }
    CHECK(zsum / n == doctest::Approx(0.2).epsilon(0.01));
}

TEST_CASE("extract_smooth_contours: symmetric edge crosses at the midpoint") {
    Mesh m;
    m.vertices = {{0, 0, 0}, {10, 0, 0}, {5, 5, 0}, {5, -5, 0}};
    m.normals = {{1, 0, 0}, {1, 0, 0}, {1, 0, 0}, {1, 0, 0}};
    m.faces = {{0, 1, 2}, {1, 0, 3}};
    m.update_bbox();
    m.update_manifold_flag();
    Camera cam;
    cam.center = {5, 0, 0};   // g(v0) = +5, g(v1) = -5
    cam.look_at = {5, 1, 0};
    cam.up = {0, 0, 1};
    ContourSet contours = extract_smooth_contours(m, cam);
    bool found_midpoint = false;
    for (const auto& poly : contours.polylines)
        for (const Vec3& p : poly.points)
            if ((p - Vec3{5, 0, 0}).length() < 1e-9) found_midpoint = true;
    CHECK(found_midpoint);
}

TEST_CASE("icosphere contour oracle: closed loop, |g| bound, analytic radius") {
    Mesh sphere = make_icosphere(4);
    Camera cam = oracle::look_at_camera({0, 0, 5});
    ContourSet contours = extract_smooth_contours(sphere, cam);

    SUBCASE("single closed polyline") {
        CHECK(contours.polylines.size() == 1);
        CHECK(contours.polylines[0].closed);
    }

    SUBCASE("every point satisfies |n(p).(c - p)| <= eps_g (renormalized)") {
        double eps_g = 1e-5 * sphere.bbox_diag_length();
        CHECK(contours.eps_g == doctest::Approx(eps_g));
        for (const auto& poly : contours.polylines) {
            REQUIRE(poly.normals.size() == poly.points.size());
            for (size_t i = 0; i < poly.points.size(); ++i) {
                CHECK(std::fabs(poly.normals[i].length() - 1.0) <= 1e-12);
                double g = dot(poly.normals[i], cam.center - poly.points[i]);
                CHECK(std::fabs(g) <= eps_g);
            }
        }
    }

    SUBCASE("projected contour matches the analytic circle within 1%") {
        double r_circle = std::sqrt(24.0) / 5.0;
        double depth = 5.0 - 0.2;
        double r_proj = cam.focal_px() * r_circle / depth;
        Vec2 center{cam.width * 0.5, cam.height * 0.5};
        double err_sum = 0.0;
        size_t n = 0;
        for (const auto& poly : contours.polylines)
            for (const Vec3& p : poly.points) {
                Vec2 px;
                REQUIRE(cam.project(p, &px));
                err_sum += std::fabs((px - center).length() - r_proj) / r_proj;
                ++n;
            }
        CHECK(err_sum / n <= 0.01);
    }
}

TEST_CASE("cube with face-constant normals has zero smooth crossings") {
    Mesh cube = make_cube(1.0, /*shared_vertices=*/false);
    Camera cam = oracle::look_at_camera({0, 0, 4});
    ContourSet contours = extract_smooth_contours(cube, cam);
    CHECK(contours.polylines.empty());
}

TEST_CASE("smooth contours of closed manifolds form closed loops") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const Mesh& mesh : {make_icosphere(3), make_torus(1.0, 0.35, 48, 24)}) {
        for (int trial = 0; trial < 3; ++trial) {
            Vec3 dir = normalized(Vec3{u(rng), u(rng), u(rng) + 1.5});
            Camera cam = oracle::look_at_camera(dir * 4.0);
            ContourSet contours = extract_smooth_contours(mesh, cam);
            REQUIRE(!contours.polylines.empty());
            for (const auto& poly : contours.polylines) CHECK(poly.closed);
        }
    }
}

TEST_CASE("antipodal camera mirrors the sphere contour circle") {
    Mesh sphere = make_icosphere(3);
    auto mean_z = [&](const Vec3& cam_pos) {
        Camera cam = oracle::look_at_camera(cam_pos);
        ContourSet contours = extract_smooth_contours(sphere, cam);
        double zsum = 0.0;
        size_t n = 0;
        for (const auto& poly : contours.polylines)
            for (const Vec3& p : poly.points) {
                zsum += p.z;
                ++n;
            }
        return zsum / n;
    };
    double z_front = mean_z({0, 0, 5});
    double z_back = mean_z({0, 0, -5});
    CHECK(z_front == doctest::Approx(0.2).epsilon(0.02));
    CHECK(z_back == doctest::Approx(-z_front).epsilon(1e-6));
}

// --- feature edges -----------------------------------------------------------

namespace {

// independent brute-force classification: enumerate undirected edges with
// their adjacent faces from scratch, classify by face-plane front/back
struct BruteEdge {
    int v0, v1;
    bool silhouette, crease;
};

std::vector<BruteEdge> brute_force_edges(const Mesh& mesh, const Vec3& cam, double crease_deg) {
    std::map<std::pair<int, int>, std::vector<int>> edge_faces;
    for (size_t f = 0; f < mesh.faces.size(); ++f)
        for (int k = 0; k < 3; ++k) {
            int a = mesh.faces[f][k], b = mesh.faces[f][(k + 1) % 3];
            edge_faces[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(f));
        }
    std::vector<BruteEdge> out;
    for (const auto& [key, faces] : edge_faces) {
        BruteEdge e{key.first, key.second, false, false};
        if (faces.size() == 1) {
            e.silhouette = true;
        } else if (faces.size() == 2) {
            auto facing = [&](int f) {
                const auto& t = mesh.faces[f];
                Vec3 n = cross(mesh.vertices[t[1]] - mesh.vertices[t[0]],
                               mesh.vertices[t[2]] - mesh.vertices[t[0]]);
                return dot(n, cam - mesh.vertices[t[0]]) > 0.0;
            };
            e.silhouette = facing(faces[0]) != facing(faces[1]);
            auto unit_normal = [&](int f) {
                const auto& t = mesh.faces[f];
                return normalized(cross(mesh.vertices[t[1]] - mesh.vertices[t[0]],
                                        mesh.vertices[t[2]] - mesh.vertices[t[0]]));
            };
            double angle = rad2deg(std::acos(std::clamp(
                dot(unit_normal(faces[0]), unit_normal(faces[1])), -1.0, 1.0)));
            e.crease = angle > crease_deg;
        }
        out.push_back(e);
    }
    return out;
}

} // namespace

TEST_CASE("feature edges of the cube match brute-force enumeration") {
    Mesh cube = make_cube(1.0, /*shared_vertices=*/true);
    Camera cam = oracle::look_at_camera({0, 0, 4});
    std::vector<FeatureEdge> got = classify_feature_edges(cube, cam, 30.0);
    std::vector<BruteEdge> want = brute_force_edges(cube, cam.center, 30.0);
    REQUIRE(got.size() == 18); // 12 cube edges + 6 face diagonals
    REQUIRE(want.size() == got.size());

    auto find_want = [&](int v0, int v1) {
        for (const BruteEdge& e : want)
            if (e.v0 == v0 && e.v1 == v1) return e;
        FAIL("edge not found");
        return BruteEdge{};
    };
    int n_sil = 0, n_crease = 0;
    for (const FeatureEdge& e : got) {
        BruteEdge w = find_want(e.v0, e.v1);
        CHECK(e.silhouette == w.silhouette);
        CHECK(e.crease == w.crease);
        n_sil += e.silhouette;
        n_crease += e.crease;
    }
    CHECK(n_sil == 4);     // +z face border seen from +z
    CHECK(n_crease == 12); // every topological cube edge (dihedral 90 > 30)
}

TEST_CASE("flat square has no creases") {
    Mesh quad = make_quad(1.0);
    Camera cam = oracle::look_at_camera({0, 0, 4});
    for (const FeatureEdge& e : classify_feature_edges(quad, cam, 30.0)) CHECK_FALSE(e.crease);
}

TEST_CASE("boundary edges are always silhouettes") {
    Mesh quad = make_quad(1.0);
    Camera cam = oracle::look_at_camera({0, 0, 4});
    int boundary = 0;
    for (const FeatureEdge& e : classify_feature_edges(quad, cam, 30.0))
        if (e.boundary) {
            CHECK(e.silhouette);
            ++boundary;
        }
    CHECK(boundary == 4);
}

TEST_CASE("feature classification is similarity invariant") {
    Mesh cube = make_cube(1.0, true);
    Camera cam = oracle::look_at_camera({2.2, 1.4, 3.1});
    std::vector<FeatureEdge> base = classify_feature_edges(cube, cam, 30.0);
    for (double s : {0.5, 2.0, 7.3}) {
        Mesh scaled = cube;
        for (Vec3& v : scaled.vertices) v *= s; // about the look-at point (origin)
        scaled = compute_normals(std::move(scaled));
        Camera cam_s = cam;
        cam_s.center = cam.center * s;
        std::vector<FeatureEdge> got = classify_feature_edges(scaled, cam_s, 30.0);
        REQUIRE(got.size() == base.size());
        for (size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].silhouette == base[i].silhouette);
            CHECK(got[i].crease == base[i].crease);
        }
    }
}

// --- visibility ---------------------------------------------------------------

TEST_CASE("clip_visible: convex sphere contour is fully visible") {
    Mesh sphere = make_icosphere(3);
    Camera cam = oracle::look_at_camera({0, 0, 5}, 256);
    ContourSet contours = extract_smooth_contours(sphere, cam);
    ScalarImage depth = render_depth_only(sphere, cam);
    ClipOptions opt;
    opt.keep_hidden = true;
    ContourSet clipped = clip_visible(contours, depth, cam, opt);
    REQUIRE(!clipped.polylines.empty());
    for (const auto& poly : clipped.polylines) CHECK_FALSE(poly.hidden);
}

TEST_CASE("clip_visible: fully occluded back sphere is hidden") {
    Mesh front = make_icosphere(3);
    Mesh back;
    {
        Mesh s = make_icosphere(2);
        for (Vec3& v : s.vertices) v *= 0.4;
        s.update_bbox();
        back = translated(std::move(s), {0, 0, -3});
    }
    Camera cam = oracle::look_at_camera({0, 0, 5}, 256);
    ContourSet back_contours = extract_smooth_contours(back, cam);
    REQUIRE(!back_contours.polylines.empty());
    Mesh scene = merge(front, back);
    ScalarImage depth = render_depth_only(scene, cam);
    ContourSet clipped = clip_visible(back_contours, depth, cam);
    CHECK(clipped.polylines.empty()); // dropped: nothing visible
}

TEST_CASE("clip_visible matches the brute-force ray-cast oracle on the torus") {
    Mesh torus = make_torus(1.0, 0.35, 48, 24);
    Camera cam = oracle::look_at_camera({3.2, 0.4, 1.1}, 512);
    ContourSet contours = extract_smooth_contours(torus, cam);
    ScalarImage depth = render_depth_only(torus, cam);
    ClipOptions opt;
    opt.keep_hidden = true;
    ContourSet clipped = clip_visible(contours, depth, cam, opt);

    // sample points uniformly from the clipped polylines
    std::vector<std::pair<Vec3, bool>> samples; // (point, clip verdict)
    for (const auto& poly : clipped.polylines)
        for (const Vec3& p : poly.points) samples.emplace_back(p, !poly.hidden);
    REQUIRE(samples.size() > 1000);
    std::mt19937 rng(42);
    std::shuffle(samples.begin(), samples.end(), rng);
    samples.resize(1000);

    int agree = 0;
    for (const auto& [p, visible] : samples)
        if (oracle::bruteforce_visible(torus, cam.center, p) == visible) ++agree;
    CHECK(agree >= 990);
}

TEST_CASE("clip_visible: samples projecting outside the image are hidden") {
    Mesh sphere = make_icosphere(2);
    Camera cam = oracle::look_at_camera({0, 0, 5}, 64);
    cam.look_at = {8, 0, 0}; // sphere far off-frame
    ContourSet contours = extract_smooth_contours(sphere, cam);
    ScalarImage depth = render_depth_only(sphere, cam);
    ContourSet clipped = clip_visible(contours, depth, cam);
    CHECK(clipped.polylines.empty());
}

TEST_CASE("contour text round-trip") {
    Mesh sphere = make_icosphere(2);
    Camera cam = oracle::look_at_camera({0, 0, 5});
    ContourSet contours = extract_smooth_contours(sphere, cam);
    std::string path = oracle::temp_path("contours.txt");
    write_contours_text(path, contours);
    ContourSet loaded = read_contours_text(path);
    REQUIRE(loaded.polylines.size() == contours.polylines.size());
    CHECK(loaded.total_points() == contours.total_points());
    CHECK(loaded.polylines[0].tag == CurveTag::SmoothContour);
}
