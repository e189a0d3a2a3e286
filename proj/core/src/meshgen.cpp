#include "inkline/meshgen.hpp"

#include <cmath>
#include <map>

namespace ink {

Mesh make_icosphere(int subdivisions) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> verts = {
        {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
        {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
        {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1},
    };
    for (Vec3& v : verts) v = normalized(v);
    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1},
    };

    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            int id = static_cast<int>(verts.size());
            verts.push_back(normalized((verts[a] + verts[b]) * 0.5));
            midpoint.emplace(key, id);
            return id;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& f : faces) {
            int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }

    Mesh mesh;
    mesh.vertices = std::move(verts);
    mesh.faces = std::move(faces);
    mesh.normals = mesh.vertices; // unit sphere: n = p
    mesh.update_bbox();
    mesh.update_manifold_flag();
    return mesh;
}

Mesh make_torus(double R, double r, int segments_u, int segments_v) {
    Mesh mesh;
    for (int i = 0; i < segments_u; ++i) {
        double u = 2.0 * M_PI * i / segments_u;
        double cu = std::cos(u), su = std::sin(u);
        for (int j = 0; j < segments_v; ++j) {
            double v = 2.0 * M_PI * j / segments_v;
            double cv = std::cos(v), sv = std::sin(v);
            mesh.vertices.push_back({(R + r * cv) * cu, (R + r * cv) * su, r * sv});
            mesh.normals.push_back({cv * cu, cv * su, sv});
        }
    }
    auto id = [&](int i, int j) { return (i % segments_u) * segments_v + (j % segments_v); };
    for (int i = 0; i < segments_u; ++i) {
        for (int j = 0; j < segments_v; ++j) {
            int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
            mesh.faces.push_back({a, b, c});
            mesh.faces.push_back({a, c, d});
        }
    }
    mesh.update_bbox();
    mesh.update_manifold_flag();
    return mesh;
}

Mesh make_cylinder(double radius, double half_height, int segments, int rings) {
    Mesh mesh;
    for (int j = 0; j <= rings; ++j) {
        double z = -half_height + 2.0 * half_height * j / rings;
        for (int i = 0; i < segments; ++i) {
            double u = 2.0 * M_PI * i / segments;
            double cu = std::cos(u), su = std::sin(u);
            mesh.vertices.push_back({radius * cu, radius * su, z});
            mesh.normals.push_back({cu, su, 0.0});
        }
    }
    auto id = [&](int j, int i) { return j * segments + (i % segments); };
    for (int j = 0; j < rings; ++j) {
        for (int i = 0; i < segments; ++i) {
            int a = id(j, i), b = id(j, i + 1), c = id(j + 1, i + 1), d = id(j + 1, i);
            mesh.faces.push_back({a, b, c});
            mesh.faces.push_back({a, c, d});
        }
    }
    mesh.update_bbox();
    mesh.update_manifold_flag();
    return mesh;
}

Mesh make_cube(double size, bool shared_vertices) {
    double s = size * 0.5;
    Mesh mesh;
    if (shared_vertices) {
        mesh.vertices = {
            {-s, -s, -s}, {s, -s, -s}, {s, s, -s}, {-s, s, -s},
            {-s, -s, s}, {s, -s, s}, {s, s, s}, {-s, s, s},
        };
        // CCW from outside
        std::vector<std::array<int, 4>> quads = {
            {4, 5, 6, 7}, // +z
            {1, 0, 3, 2}, // -z
            {5, 1, 2, 6}, // +x
            {0, 4, 7, 3}, // -x
            {7, 6, 2, 3}, // +y
            {0, 1, 5, 4}, // -y
        };
        for (const auto& q : quads) {
            mesh.faces.push_back({q[0], q[1], q[2]});
            mesh.faces.push_back({q[0], q[2], q[3]});
        }
        mesh = compute_normals(std::move(mesh));
    } else {
        struct Face {
            Vec3 n, a, b, c, d;
        };
        auto add_face = [&](Vec3 n, Vec3 a, Vec3 b, Vec3 c, Vec3 d) {
            int base = static_cast<int>(mesh.vertices.size());
            for (const Vec3& p : {a, b, c, d}) {
                mesh.vertices.push_back(p);
                mesh.normals.push_back(n);
            }
            mesh.faces.push_back({base, base + 1, base + 2});
            mesh.faces.push_back({base, base + 2, base + 3});
        };
        add_face({0, 0, 1}, {-s, -s, s}, {s, -s, s}, {s, s, s}, {-s, s, s});
        add_face({0, 0, -1}, {s, -s, -s}, {-s, -s, -s}, {-s, s, -s}, {s, s, -s});
        add_face({1, 0, 0}, {s, -s, s}, {s, -s, -s}, {s, s, -s}, {s, s, s});
        add_face({-1, 0, 0}, {-s, -s, -s}, {-s, -s, s}, {-s, s, s}, {-s, s, -s});
        add_face({0, 1, 0}, {-s, s, s}, {s, s, s}, {s, s, -s}, {-s, s, -s});
        add_face({0, -1, 0}, {-s, -s, -s}, {s, -s, -s}, {s, -s, s}, {-s, -s, s});
    }
    mesh.update_bbox();
    mesh.update_manifold_flag();
    return mesh;
}

Mesh make_quad(double s) {
    Mesh mesh;
    mesh.vertices = {{-s, -s, 0}, {s, -s, 0}, {s, s, 0}, {-s, s, 0}};
    mesh.faces = {{0, 1, 2}, {0, 2, 3}};
    mesh = compute_normals(std::move(mesh));
    mesh.update_manifold_flag();
    return mesh;
}

Mesh make_plane(double s, int n) {
    Mesh mesh;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            mesh.vertices.push_back({-s + 2.0 * s * i / n, -s + 2.0 * s * j / n, 0.0});
            mesh.normals.push_back({0, 0, 1});
        }
    auto id = [&](int j, int i) { return j * (n + 1) + i; };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            mesh.faces.push_back({id(j, i), id(j, i + 1), id(j + 1, i + 1)});
            mesh.faces.push_back({id(j, i), id(j + 1, i + 1), id(j + 1, i)});
        }
    mesh.update_bbox();
    mesh.update_manifold_flag();
    return mesh;
}

} // namespace ink
