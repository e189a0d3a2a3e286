#pragma once

#include <vector>

#include "inkline/contours.hpp"
#include "inkline/image.hpp"

namespace ink {

// Output of the Hessian valley detector.
struct ValleyMap {
    int width = 0, height = 0;
    ScalarImage strength;             // max(lambda+, 0) of the smoothed Hessian
    ScalarImage orientation;          // valley tangent angle in [0, pi)
    std::vector<uint8_t> mask;        // 1-px-wide after NMS
    ScalarImage offset_x, offset_y;   // sub-pixel offsets at mask pixels

    bool masked(int x, int y) const { return mask[static_cast<size_t>(y) * width + x] != 0; }
    // Continuous position of a mask pixel (pixel center + sub-pixel offset).
    Vec2 point_at(int x, int y) const {
        return {x + 0.5 + offset_x.at(x, y), y + 0.5 + offset_y.at(x, y)};
    }
};

// Rec.709 luminance of an 8-bit image, normalized to [0,1].
// Throws ink::Error on unsupported bit depth.
ScalarImage luminance(const ColorImage& image);

// Valley detection: Gaussian smoothing at scale sigma, per-pixel Hessian,
// valley strength = max eigenvalue (eigenvector = cross-valley direction),
// candidates gated by input luminance < tau and strength > min_strength,
// non-maximum suppression along the quantized cross-valley direction with
// sub-pixel quadratic localization. The smoothing uses a rotation-symmetric
// summation order so 90-degree image rotations rotate the mask exactly.
ValleyMap detect_valleys(const ScalarImage& img, double sigma, double tau, double min_strength);

struct LinkOptions {
    double min_length = 8.0;   // px, shorter chains dropped
    double merge_radius = 2.0; // px, endpoint merge distance
};

struct Polyline2D {
    std::vector<Vec2> points;
    bool closed = false;
    double arclength() const;
};

// 8-connected chaining of the NMS mask following orientation continuity
// (angular step <= 45 degrees); short chains dropped, compatible endpoints
// merged.
std::vector<Polyline2D> link_valleys(const ValleyMap& map, const LinkOptions& options = {});

enum class ValleyPointTag { Contour, Suggestive };

struct SuggestivePolyline {
    ValleyPointTag tag = ValleyPointTag::Suggestive;
    std::vector<Vec2> points;
};

struct SuggestiveParams {
    double sigma = 1.5;
    double tau = 0.25;
    double min_strength = 0.002;
    double contour_radius = 2.0; // px: valley points this close to a projected
                                 // contour are tagged Contour
    LinkOptions link;
};

// Valley polylines of a headlight render, split into contour-tagged points
// (within contour_radius of a projected occluding contour) and
// suggestive-tagged points (0 < I < tau); everything else trimmed.
// Luminance is sampled at the pixel containing the point.
std::vector<SuggestivePolyline> suggestive_strokes(const ScalarImage& render,
                                                   const std::vector<TaggedPolyline2D>& contours_img,
                                                   double tau,
                                                   const SuggestiveParams& params = {});

} // namespace ink
