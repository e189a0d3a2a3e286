// Test-only oracles, independent of the library implementation paths they
// check: analytic sphere geometry/shading, brute-force ray casting over all
// triangles, synthetic ramp images.
#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "inkline/camera.hpp"
#include "inkline/image.hpp"
#include "inkline/mesh.hpp"
#include "inkline/vec.hpp"

namespace oracle {

using ink::Camera;
using ink::Mesh;
using ink::ScalarImage;
using ink::Vec2;
using ink::Vec3;

// Nearest positive ray/unit-sphere (center origin, radius r) intersection;
// returns t or -1.
inline double ray_sphere(const Vec3& origin, const Vec3& dir, double r = 1.0) {
    double b = dot(origin, dir);
    double c = dot(origin, origin) - r * r;
    double disc = b * b - c;
    if (disc < 0.0) return -1.0;
    double sq = std::sqrt(disc);
    double t = -b - sq;
    if (t > 0.0) return t;
    t = -b + sq;
    return t > 0.0 ? t : -1.0;
}

// Independent ray/triangle test (plane + barycentric sign test; not
// Moller-Trumbore, which the library BVH uses).
inline double ray_triangle_plane(const Vec3& o, const Vec3& d, const Vec3& a, const Vec3& b,
                                 const Vec3& c) {
    Vec3 n = cross(b - a, c - a);
    double denom = dot(n, d);
    if (std::fabs(denom) < 1e-15) return -1.0;
    double t = dot(n, a - o) / denom;
    if (t <= 0.0) return -1.0;
    Vec3 p = o + d * t;
    // inside test via same-side edge normals
    if (dot(cross(b - a, p - a), n) < 0.0) return -1.0;
    if (dot(cross(c - b, p - b), n) < 0.0) return -1.0;
    if (dot(cross(a - c, p - c), n) < 0.0) return -1.0;
    return t;
}

// Visibility of a surface point from the camera by brute force over all
// triangles: visible iff no intersection strictly closer than the point.
inline bool bruteforce_visible(const Mesh& mesh, const Vec3& cam_pos, const Vec3& point,
                               double rel_eps = 1e-4) {
    Vec3 d = point - cam_pos;
    double t_point = d.length();
    d = d / t_point;
    for (const auto& f : mesh.faces) {
        double t = ray_triangle_plane(cam_pos, d, mesh.vertices[f[0]], mesh.vertices[f[1]],
                                      mesh.vertices[f[2]]);
        if (t > 0.0 && t < t_point * (1.0 - rel_eps)) return false;
    }
    return true;
}

// Analytic headlight shading of the unit sphere for the pixel ray through
// `pixel`; returns false for rays missing the sphere. I = n.(c-p)/|c-p|.
inline bool sphere_headlight_shading(const Camera& cam, const Vec2& pixel, double* shading,
                                     double* depth = nullptr) {
    Vec3 dir = cam.ray_dir(pixel);
    double t = ray_sphere(cam.center, dir);
    if (t < 0.0) return false;
    Vec3 p = cam.center + dir * t;
    Vec3 n = normalized(p);
    Vec3 v = cam.center - p;
    *shading = std::max(0.0, dot(n, v) / v.length());
    if (depth) *depth = dot(p - cam.center, cam.forward());
    return true;
}

// V-ramp image L(x, y) = |x - x0| / w, clamped to [0,1].
inline ScalarImage vramp(int width, int height, double x0, double w) {
    ScalarImage img(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            img.at(x, y) = ink::clamp01(std::fabs(x - x0) / w);
    return img;
}

// 90-degree rotation: out(x, y) = in(width_in - 1 - y, x).
inline ScalarImage rot90(const ScalarImage& in) {
    ScalarImage out(in.height, in.width);
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x) out.at(x, y) = in.at(in.width - 1 - y, x);
    return out;
}

inline std::vector<uint8_t> rot90_mask(const std::vector<uint8_t>& in, int w_in, int h_in) {
    std::vector<uint8_t> out(in.size());
    int w_out = h_in;
    for (int y = 0; y < w_in; ++y)
        for (int x = 0; x < w_out; ++x)
            out[static_cast<size_t>(y) * w_out + x] =
                in[static_cast<size_t>(x) * w_in + (w_in - 1 - y)];
    return out;
}

// unique temp path for test artifacts
inline std::string temp_path(const std::string& stem) {
    static int counter = 0;
    auto dir = std::filesystem::temp_directory_path();
    char buf[64];
    std::snprintf(buf, sizeof buf, "ink_test_%d_%d_", static_cast<int>(::getpid()), counter++);
    return (dir / (buf + stem)).string();
}

// camera looking at the origin from `pos`, square viewport
inline Camera look_at_camera(const Vec3& pos, int res = 512, double fov = 40.0) {
    Camera cam;
    cam.center = pos;
    cam.look_at = Vec3{0, 0, 0};
    cam.up = std::fabs(pos.y) > 0.9 * pos.length() ? Vec3{0, 0, 1} : Vec3{0, 1, 0};
    cam.width = cam.height = res;
    cam.vertical_fov = fov;
    double dist = pos.length();
    cam.near_clip = std::max(1e-3, 0.01 * dist);
    cam.far_clip = 100.0 * std::max(1.0, dist);
    return cam;
}

} // namespace oracle
