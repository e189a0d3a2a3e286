#include "inkline/camera.hpp"

#include <cmath>

namespace ink {

void Camera::validate() const {
    if (!(near_clip > 0.0) || !(far_clip > near_clip))
        throw Error("camera: require 0 < near < far");
    if (!(vertical_fov > 0.0) || !(vertical_fov < 180.0))
        throw Error("camera: vertical_fov must be in (0, 180)");
    if (width <= 0 || height <= 0) throw Error("camera: non-positive resolution");
    Vec3 f = look_at - center;
    if (f.length() < 1e-12) throw Error("camera: look_at coincides with center");
    if (cross(normalized(f), normalized(up)).length() < 1e-9)
        throw Error("camera: up is parallel to the view direction");
}

double Camera::focal_px() const {
    return 0.5 * height / std::tan(0.5 * deg2rad(vertical_fov));
}

Vec3 Camera::to_camera(const Vec3& p) const {
    Vec3 d = p - center;
    return {dot(d, right()), dot(d, true_up()), dot(d, forward())};
}

bool Camera::project(const Vec3& p, Vec2* pixel, double* depth) const {
    Vec3 q = to_camera(p);
    if (depth) *depth = q.z;
    if (q.z <= 0.0) return false;
    double f = focal_px();
    pixel->x = 0.5 * width + f * q.x / q.z;
    pixel->y = 0.5 * height - f * q.y / q.z;
    return true;
}

Vec3 Camera::ray_dir(const Vec2& pixel) const {
    double f = focal_px();
    double cx = (pixel.x - 0.5 * width) / f;
    double cy = (0.5 * height - pixel.y) / f;
    return normalized(right() * cx + true_up() * cy + forward());
}

} // namespace ink
