#pragma once

#include <vector>

#include "inkline/camera.hpp"
#include "inkline/image.hpp"
#include "inkline/mesh.hpp"

namespace ink {

struct MaterialConfig {
    double diffuse_albedo = 1.0;     // (0, 1], matte white default
    double specular_strength = 0.0;  // >= 0
    double specular_exponent = 32.0; // >= 1
};

enum class LightMode { Headlight, Point, Ring };

struct LightingConfig {
    LightMode mode = LightMode::Headlight;
    Vec3 point_position{0, 0, 0}; // point mode
    int ring_count = 8;           // ring mode, >= 3
    double ring_radius = 0.0;     // 0 -> 10 x bounding-box diagonal
    bool shadows = false;         // forced off in headlight mode
};

struct RenderResult {
    ScalarImage luminance; // clamped to [0,1]; background = 1.0 (white page)
    ScalarImage depth;     // camera-space z; background = +infinity
};

// Software perspective rasterizer with z-buffer and perspective-correct
// attribute interpolation; per-pixel shading from the interpolated
// (renormalized) normal. Headlight: I = albedo * max(0, n.(c-p)/|c-p|) plus
// a Blinn half-vector specular lobe, clamped to [0,1]. Point: Lambert from
// the light direction with optional shadow rays. Ring: per-light shading
// averaged over a ring of lights in the plane through the subject centroid
// perpendicular to the view direction.
RenderResult render(const Mesh& mesh, const Camera& camera,
                    const MaterialConfig& material = {},
                    const LightingConfig& lighting = {});

// Depth buffer only (shading skipped).
ScalarImage render_depth_only(const Mesh& mesh, const Camera& camera);

// Shared rasterization products: per-pixel face id and perspective-correct
// barycentric coordinates w.r.t. the original face. face = -1 where
// uncovered. Consumed by render(), render_depth_only() and the hatching
// direction-field projection.
struct FragmentBuffer {
    int width = 0, height = 0;
    ScalarImage depth;
    std::vector<int> face;
    std::vector<double> bary; // 3 per pixel

    bool covered(int x, int y) const { return face[static_cast<size_t>(y) * width + x] >= 0; }
};

FragmentBuffer rasterize(const Mesh& mesh, const Camera& camera);

} // namespace ink
