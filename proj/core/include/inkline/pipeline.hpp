#pragma once

#include "inkline/contours.hpp"
#include "inkline/hatching.hpp"
#include "inkline/render.hpp"
#include "inkline/strokes.hpp"
#include "inkline/valleys.hpp"

namespace ink {

// End-to-end drawing pipeline: headlight render -> object-space contours and
// feature edges, visibility-clipped -> image-space valleys -> suggestive
// strokes -> thickness from the render's dark bands -> composed document.
struct DrawOptions {
    double tau = 0.25;
    double sigma = 1.5;
    double min_strength = 0.002;
    double t_min = -1.0; // < 0: auto 0.75 * height/512
    double t_max = -1.0; // < 0: auto 6.0  * height/512
    double crease_angle = 30.0;
    double suggestive_scale = 1.0; // per-tag thickness multiplier
    bool include_hidden = false;
    MaterialConfig material;

    double resolved_t_min(int height) const { return t_min >= 0 ? t_min : 0.75 * height / 512.0; }
    double resolved_t_max(int height) const { return t_max >= 0 ? t_max : 6.0 * height / 512.0; }
};

struct DrawResult {
    DrawingDocument doc;
    RenderResult render;
    ContourSet contours;          // unclipped smooth contours
    ContourSet visible_contours;  // after clip_visible (smooth + feature)
    std::vector<SuggestivePolyline> valley_strokes;
    int suggestive_point_count = 0;
};

DrawResult draw_pipeline(const Mesh& mesh, const Camera& camera, const DrawOptions& options = {});

// Photo tracing: luminance -> valleys -> strokes with thickness from the
// photo's own dark bands.
DrawingDocument trace_pipeline(const ScalarImage& photo, const DrawOptions& options = {});

// Ring-light render with a night (zero) backdrop; bright rim ridges found by
// running the valley detector on the inverted image; light-on-dark output.
struct RimOptions {
    double tau = 0.85;
    double sigma = 1.5;
    double min_strength = 0.002;
    double t_min = -1.0, t_max = -1.0;
    int ring_count = 8;
    double ring_radius = 0.0; // 0 -> auto
};

struct RimResult {
    DrawingDocument doc;        // polarity light-on-dark
    RenderResult ring_render;   // background forced to 0
};

RimResult rim_pipeline(const Mesh& mesh, const Camera& camera, const RimOptions& options = {});

} // namespace ink
