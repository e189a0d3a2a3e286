#pragma once

#include <string>
#include <vector>

#include "inkline/image.hpp"
#include "inkline/valleys.hpp"

namespace ink {

enum class StrokeTag { Contour, Suggestive, Crease, Silhouette, Hatch };

const char* stroke_tag_name(StrokeTag tag);
StrokeTag stroke_tag_from_name(const std::string& name);

// 2D polyline in page (pixel) coordinates with per-point thickness in px.
struct Stroke {
    StrokeTag tag = StrokeTag::Contour;
    std::vector<Vec2> points;
    std::vector<double> thickness;
};

enum class Polarity { DarkOnLight, LightOnDark };

struct DrawingDocument {
    int width = 0, height = 0;
    std::vector<Stroke> strokes;
    Polarity polarity = Polarity::DarkOnLight;
};

// Per-point thickness = cross-stroke extent of the connected run of render
// pixels with I < tau (measured perpendicular to the local tangent), clamped
// to [t_min, t_max]. Points off the image get t_min.
struct ThicknessInput {
    StrokeTag tag;
    std::vector<Vec2> points;
};

std::vector<Stroke> assign_thickness(const std::vector<ThicknessInput>& polylines,
                                     const ScalarImage& render,
                                     double t_min, double t_max, double tau);

// Clips strokes to the page and orders them silhouette/contour first, then
// suggestive, crease, hatch.
DrawingDocument compose(const std::vector<std::vector<Stroke>>& stroke_sets,
                        int width, int height, Polarity polarity);

// Flips polarity; geometry unchanged. Involution.
DrawingDocument invert_tone(DrawingDocument doc);

// SVG 1.1 subset: background rect per polarity, each stroke as a filled
// outline path (polyline offset by half the per-point thickness per side,
// round caps). Coordinates with 3 decimals; deterministic output.
std::string to_svg(const DrawingDocument& doc);

// Scan-converts strokes with per-point thickness; ink = 0 luminance for
// dark-on-light (inverted otherwise); optional supersampled box-downfilter.
ScalarImage rasterize_drawing(const DrawingDocument& doc, int supersample = 1);

// Binary ink mask at page resolution (supersample 1); ink pixel = true.
std::vector<uint8_t> ink_mask(const DrawingDocument& doc);

// Line-oriented text format: header "page W H polarity", then one record per
// stroke: "tag npoints x y t x y t ...".
void write_drawing_text(const std::string& path, const DrawingDocument& doc);
DrawingDocument read_drawing_text(const std::string& path);

} // namespace ink
