#pragma once

#include <vector>

#include "inkline/camera.hpp"
#include "inkline/curvature.hpp"
#include "inkline/image.hpp"
#include "inkline/render.hpp"
#include "inkline/strokes.hpp"

namespace ink {

struct HatchParams {
    double spacing = 5.0;      // px, base inter-stroke distance (>= 2)
    int levels = 2;            // 1 = single hatch, 2 = cross-hatch
    double t1 = 0.6;           // hatch where I < t1
    double t2 = 0.3;           // cross-hatch where I < t2 (t2 < t1)
    double step = 1.0;         // px, streamline integration step
    double max_len = 200.0;    // px
    uint32_t seed = 1;         // jittered seeding PRNG
    bool follow_dir2 = false;  // hatch along the minimum-curvature direction
    double thickness_ratio = 0.55; // stroke thickness = ratio * spacing

    void validate() const;
};

// Screen-space line field of the projected maximum-curvature direction at
// the visible surface point of each covered pixel.
struct DirectionField {
    int width = 0, height = 0;
    ScalarImage cos2t, sin2t;      // doubled-angle encoding of the orientation
    std::vector<uint8_t> mask;     // covered pixels
    int degenerate_filled = 0;     // pixels recovered by neighborhood diffusion

    bool covered(int x, int y) const { return mask[static_cast<size_t>(y) * width + x] != 0; }
    double orientation(int x, int y) const; // [0, pi)
    // Bilinear doubled-angle sample -> unit direction (sign-free line field).
    Vec2 direction_at(double x, double y) const;
};

DirectionField project_direction_field(const Mesh& mesh, const Camera& camera,
                                       const CurvatureField& curvature,
                                       const FragmentBuffer& frags,
                                       bool use_dir2 = false);

// Evenly-spaced streamline hatching: seeds on a jittered grid, integrated
// along the field, terminated at max_len, the mask/tone boundary, or within
// `spacing` of an existing same-level hatch. Level 1 where I < t1; level 2
// (perpendicular) added where I < t2.
std::vector<Stroke> generate_hatching(const ScalarImage& render, const DirectionField& field,
                                      const HatchParams& params);

} // namespace ink
