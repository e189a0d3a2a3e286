#include "inkline/render.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "inkline/raycast.hpp"

namespace ink {

namespace {

struct ClipVertex {
    Vec3 cam;  // camera-space position
    Vec3 bary; // barycentric w.r.t. the original face
};

// Sutherland-Hodgman against the near plane z = near; yields 0, 3 or 4 verts.
int clip_near(const ClipVertex in[3], double near_z, ClipVertex out[4]) {
    int n = 0;
    for (int i = 0; i < 3; ++i) {
        const ClipVertex& a = in[i];
        const ClipVertex& b = in[(i + 1) % 3];
        bool ia = a.cam.z >= near_z;
        bool ib = b.cam.z >= near_z;
        if (ia) out[n++] = a;
        if (ia != ib) {
            double t = (near_z - a.cam.z) / (b.cam.z - a.cam.z);
            ClipVertex v;
            v.cam = a.cam + (b.cam - a.cam) * t;
            v.bary = a.bary + (b.bary - a.bary) * t;
            out[n++] = v;
        }
    }
    return n;
}

} // namespace

FragmentBuffer rasterize(const Mesh& mesh, const Camera& camera) {
    camera.validate();
    const int W = camera.width, H = camera.height;
    FragmentBuffer fb;
    fb.width = W;
    fb.height = H;
    fb.depth = ScalarImage(W, H, depth_infinity());
    fb.face.assign(static_cast<size_t>(W) * H, -1);
    fb.bary.assign(static_cast<size_t>(W) * H * 3, 0.0);

    const double focal = camera.focal_px();
    const Vec3 r = camera.right(), u = camera.true_up(), f = camera.forward();
    const Vec3 c = camera.center;
    auto to_cam = [&](const Vec3& p) {
        Vec3 d = p - c;
        return Vec3{dot(d, r), dot(d, u), dot(d, f)};
    };
    auto to_screen = [&](const Vec3& q) {
        return Vec2{0.5 * W + focal * q.x / q.z, 0.5 * H - focal * q.y / q.z};
    };

    const Vec3 corner_bary[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    for (size_t face = 0; face < mesh.faces.size(); ++face) {
        const auto& tri = mesh.faces[face];
        ClipVertex cv[3];
        for (int k = 0; k < 3; ++k) {
            cv[k].cam = to_cam(mesh.vertices[tri[k]]);
            cv[k].bary = corner_bary[k];
        }
        ClipVertex clipped[4];
        int nclip = clip_near(cv, camera.near_clip, clipped);
        if (nclip < 3) continue;

        for (int sub = 0; sub <= nclip - 3; ++sub) { // fan over the clipped polygon
            const ClipVertex* v0 = &clipped[0];
            const ClipVertex* v1 = &clipped[sub + 1];
            const ClipVertex* v2 = &clipped[sub + 2];

            Vec2 s0 = to_screen(v0->cam), s1 = to_screen(v1->cam), s2 = to_screen(v2->cam);
            double area = cross(s1 - s0, s2 - s0);
            if (std::fabs(area) < 1e-12) continue; // zero-area screen triangle

            double min_x = std::min({s0.x, s1.x, s2.x});
            double max_x = std::max({s0.x, s1.x, s2.x});
            double min_y = std::min({s0.y, s1.y, s2.y});
            double max_y = std::max({s0.y, s1.y, s2.y});
            int x0 = std::max(0, static_cast<int>(std::floor(min_x - 0.5)));
            int x1 = std::min(W - 1, static_cast<int>(std::ceil(max_x - 0.5)));
            int y0 = std::max(0, static_cast<int>(std::floor(min_y - 0.5)));
            int y1 = std::min(H - 1, static_cast<int>(std::ceil(max_y - 0.5)));
            if (x0 > x1 || y0 > y1) continue;

            double iz0 = 1.0 / v0->cam.z, iz1 = 1.0 / v1->cam.z, iz2 = 1.0 / v2->cam.z;

            for (int py = y0; py <= y1; ++py) {
                for (int px = x0; px <= x1; ++px) {
                    Vec2 pc{px + 0.5, py + 0.5};
                    double w0 = cross(s1 - pc, s2 - pc) / area;
                    double w1 = cross(s2 - pc, s0 - pc) / area;
                    double w2 = 1.0 - w0 - w1;
                    if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0) continue;

                    double iz = w0 * iz0 + w1 * iz1 + w2 * iz2;
                    double z = 1.0 / iz;
                    size_t idx = static_cast<size_t>(py) * W + px;
                    if (z >= fb.depth.data[idx]) continue;

                    // perspective-correct barycentrics w.r.t. the original face
                    Vec3 b = (v0->bary * (w0 * iz0) + v1->bary * (w1 * iz1) +
                              v2->bary * (w2 * iz2)) * z;
                    fb.depth.data[idx] = z;
                    fb.face[idx] = static_cast<int>(face);
                    fb.bary[idx * 3 + 0] = b.x;
                    fb.bary[idx * 3 + 1] = b.y;
                    fb.bary[idx * 3 + 2] = b.z;
                }
            }
        }
    }
    return fb;
}

namespace {

struct Shader {
    const Mesh& mesh;
    const Camera& camera;
    const MaterialConfig& mat;
    const LightingConfig& light;
    const MeshBVH* bvh = nullptr; // only when shadows are on
    std::vector<Vec3> ring_lights;
    double shadow_eps = 0.0;

    double light_term(const Vec3& p, const Vec3& n, const Vec3& view_dir,
                      const Vec3& light_pos) const {
        Vec3 l = light_pos - p;
        double dist = l.length();
        if (dist < 1e-12) return 0.0;
        l = l / dist;
        double lambert = std::max(0.0, dot(n, l));
        if (lambert <= 0.0) return 0.0;
        if (bvh && bvh->occluded(p, l, shadow_eps, dist - shadow_eps)) return 0.0;
        double term = mat.diffuse_albedo * lambert;
        if (mat.specular_strength > 0.0) {
            Vec3 h = normalized(l + view_dir);
            term += mat.specular_strength *
                    std::pow(std::max(0.0, dot(n, h)), mat.specular_exponent);
        }
        return term;
    }

    double shade(const Vec3& p, const Vec3& n) const {
        Vec3 v = camera.center - p;
        double dist = v.length();
        if (dist < 1e-12) return 0.0;
        v = v / dist;
        double value = 0.0;
        switch (light.mode) {
            case LightMode::Headlight: {
                // light at c: half vector equals the view direction
                double lambert = std::max(0.0, dot(n, v));
                value = mat.diffuse_albedo * lambert;
                if (mat.specular_strength > 0.0)
                    value += mat.specular_strength *
                             std::pow(lambert, mat.specular_exponent);
                break;
            }
            case LightMode::Point:
                value = light_term(p, n, v, light.point_position);
                break;
            case LightMode::Ring: {
                double sum = 0.0;
                for (const Vec3& lp : ring_lights) sum += light_term(p, n, v, lp);
                value = sum / static_cast<double>(ring_lights.size());
                break;
            }
        }
        return clamp01(value);
    }
};

} // namespace

RenderResult render(const Mesh& mesh, const Camera& camera, const MaterialConfig& material,
                    const LightingConfig& lighting) {
    if (!mesh.has_normals()) throw Error("render: mesh has no normals");
    if (material.diffuse_albedo <= 0.0 || material.diffuse_albedo > 1.0)
        throw Error("render: diffuse_albedo must be in (0, 1]");
    if (material.specular_strength < 0.0 || material.specular_exponent < 1.0)
        throw Error("render: bad specular parameters");
    if (lighting.mode == LightMode::Ring && lighting.ring_count < 3)
        throw Error("render: ring_count must be >= 3");

    FragmentBuffer fb = rasterize(mesh, camera);

    Shader shader{mesh, camera, material, lighting};
    std::optional<MeshBVH> bvh;
    if (lighting.shadows && lighting.mode != LightMode::Headlight) {
        bvh.emplace(mesh);
        shader.bvh = &*bvh;
        shader.shadow_eps = 1e-4 * mesh.bbox_diag_length();
    }
    if (lighting.mode == LightMode::Ring) {
        double radius = lighting.ring_radius > 0.0 ? lighting.ring_radius
                                                   : 10.0 * mesh.bbox_diag_length();
        Vec3 center = mesh.bbox_center();
        Vec3 r = camera.right(), u = camera.true_up();
        for (int k = 0; k < lighting.ring_count; ++k) {
            double a = 2.0 * M_PI * k / lighting.ring_count;
            shader.ring_lights.push_back(center + r * (radius * std::cos(a)) +
                                         u * (radius * std::sin(a)));
        }
    }

    RenderResult result;
    result.depth = fb.depth;
    result.luminance = ScalarImage(fb.width, fb.height, 1.0); // white page
    for (int y = 0; y < fb.height; ++y) {
        for (int x = 0; x < fb.width; ++x) {
            size_t idx = static_cast<size_t>(y) * fb.width + x;
            int face = fb.face[idx];
            if (face < 0) continue;
            const auto& tri = mesh.faces[face];
            double b0 = fb.bary[idx * 3], b1 = fb.bary[idx * 3 + 1], b2 = fb.bary[idx * 3 + 2];
            Vec3 p = mesh.vertices[tri[0]] * b0 + mesh.vertices[tri[1]] * b1 +
                     mesh.vertices[tri[2]] * b2;
            Vec3 n = normalized(mesh.normals[tri[0]] * b0 + mesh.normals[tri[1]] * b1 +
                                mesh.normals[tri[2]] * b2);
            result.luminance.data[idx] = shader.shade(p, n);
        }
    }
    return result;
}

ScalarImage render_depth_only(const Mesh& mesh, const Camera& camera) {
    return rasterize(mesh, camera).depth;
}

} // namespace ink
