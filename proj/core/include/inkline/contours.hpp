#pragma once

#include <string>
#include <vector>

#include "inkline/camera.hpp"
#include "inkline/image.hpp"
#include "inkline/mesh.hpp"

namespace ink {

enum class CurveTag {
    SmoothContour,
    PolyhedralSilhouette,
    Crease,
};

const char* curve_tag_name(CurveTag tag);

struct ContourPolyline {
    CurveTag tag = CurveTag::SmoothContour;
    std::vector<Vec3> points;
    std::vector<Vec3> normals; // interpolated renormalized surface normals
                               // (smooth contours only; empty otherwise)
    bool closed = false;
    bool hidden = false; // set by clip_visible when hidden parts are kept
};

struct ContourSet {
    std::vector<ContourPolyline> polylines;
    double eps_g = 0.0;             // |g| bound used during extraction
    int non_manifold_crossings = 0; // crossings left unchained
    int dropped_crossings = 0;      // faces with > 2 crossing edges
    int skipped_edges = 0;          // non-manifold edges skipped by feature tagging

    size_t total_points() const;
};

// g_i = n_i . (c - p_i): positive where the surface faces the camera,
// zero on the occluding contour generator.
std::vector<double> g_field(const Mesh& mesh, const Camera& camera);

// Interpolated-normal contour extraction: finds the zero crossing of
// g(t) = n(t) . (c - p(t)) along each mesh edge whose endpoint g values have
// opposite signs (the exact root of the quadratic in t), connects crossings
// across shared faces and chains them into polylines. Crossings on
// non-manifold edges terminate chains.
ContourSet extract_smooth_contours(const Mesh& mesh, const Camera& camera,
                                   double eps_g_scale = 1e-5);

// Per-edge front/back and dihedral classification.
struct FeatureEdge {
    int v0 = -1, v1 = -1;
    bool silhouette = false; // one adjacent face front-facing, the other back
    bool crease = false;     // dihedral angle > crease_angle
    bool boundary = false;   // single adjacent face (always drawn as silhouette)
};

std::vector<FeatureEdge> classify_feature_edges(const Mesh& mesh, const Camera& camera,
                                                double crease_angle_deg);

// FeatureEdge list as a ContourSet (one 2-point polyline per drawn edge;
// silhouette tag takes precedence over crease).
ContourSet extract_feature_edges(const Mesh& mesh, const Camera& camera,
                                 double crease_angle_deg = 30.0);

struct ClipOptions {
    double samples_per_px = 4.0;  // polyline sampling density (image arclength)
    double bias_scale = 1e-3;     // depth bias = bias_scale * finite depth range
    bool keep_hidden = false;     // retain hidden segments flagged hidden
};

// Visibility against a rendered depth buffer: polylines are resampled at
// sub-pixel spacing, tested sample-by-sample (depth <= buffer + bias), and
// split at visibility transitions. Samples projecting outside the image are
// hidden.
ContourSet clip_visible(const ContourSet& contours, const ScalarImage& depth,
                        const Camera& camera, const ClipOptions& options = {});

// 2D polyline with the originating curve tag, in pixel space.
struct TaggedPolyline2D {
    CurveTag tag = CurveTag::SmoothContour;
    std::vector<Vec2> points;
    bool closed = false;
};

// Projects contour polylines to pixel space (points behind the camera are
// split out).
std::vector<TaggedPolyline2D> project_contours(const ContourSet& contours, const Camera& camera);

// Line-oriented text format: one record per polyline,
// "tag npoints x y z x y z ...".
void write_contours_text(const std::string& path, const ContourSet& contours);
ContourSet read_contours_text(const std::string& path);

} // namespace ink
