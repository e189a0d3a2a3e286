#pragma once

#include "inkline/vec.hpp"

namespace ink {

// Perspective camera. Pixel space: x right, y down, pixel (i, j) covers
// [i, i+1) x [j, j+1) with center (i + 0.5, j + 0.5). Camera space: x right,
// y up, z positive in front of the camera; depth = camera-space z.
struct Camera {
    Vec3 center{0, 0, 5};
    Vec3 look_at{0, 0, 0};
    Vec3 up{0, 1, 0};
    double vertical_fov = 40.0; // degrees
    int width = 512;
    int height = 512;
    double near_clip = 0.01;
    double far_clip = 1000.0;

    // Throws ink::Error on invariant violation (near < far, fov range,
    // up parallel to view direction).
    void validate() const;

    Vec3 forward() const { return normalized(look_at - center); }
    Vec3 right() const { return normalized(cross(forward(), up)); }
    Vec3 true_up() const { return cross(right(), forward()); }

    double focal_px() const;

    // World -> camera space.
    Vec3 to_camera(const Vec3& p) const;

    // Projects a world point; returns false if at or behind the camera
    // plane (z <= 0). depth receives camera-space z.
    bool project(const Vec3& p, Vec2* pixel, double* depth = nullptr) const;

    // Unit world-space ray direction through a pixel-space position.
    Vec3 ray_dir(const Vec2& pixel) const;
};

} // namespace ink
