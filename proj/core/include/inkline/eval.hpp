#pragma once

#include <string>
#include <vector>

#include "inkline/contours.hpp"
#include "inkline/image.hpp"
#include "inkline/strokes.hpp"

namespace ink {

struct DarknessScore {
    double mean_under_ink = 0.0;  // mean render luminance under ink pixels
    double mean_elsewhere = 0.0;  // mean over covered non-ink pixels
    double ratio = 0.0;           // under / elsewhere
};

// How dark the render is where the drawing puts ink. Background pixels
// (infinite depth) are excluded on both sides. Throws ink::Error when the
// drawing has no ink over the covered region.
DarknessScore darkness_score(const DrawingDocument& doc, const ScalarImage& render,
                             const ScalarImage& depth);

// Fraction of projected visible-contour sample points with ink within
// `radius` px.
double contour_coverage(const DrawingDocument& doc, const ContourSet& visible_contours,
                        const Camera& camera, double radius = 2.0);

struct ChamferResult {
    double mean = 0.0; // px
    double max = 0.0;  // px
};

// Symmetric mean/max nearest-point distance between two polyline sets,
// sampled at `samples_per_px` of arclength. Throws on empty input.
ChamferResult chamfer(const std::vector<Polyline2D>& a, const std::vector<Polyline2D>& b,
                      double samples_per_px = 4.0);

// Flat metric report; serializes to "key=value" lines and to a flat JSON
// object with deterministic key order.
struct MetricReport {
    std::vector<std::pair<std::string, double>> values;

    void add(const std::string& key, double value) { values.emplace_back(key, value); }
    std::string to_key_value_text() const;
    std::string to_json() const;
};

} // namespace ink
