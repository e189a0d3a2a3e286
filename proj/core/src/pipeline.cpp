#include "inkline/pipeline.hpp"

#include <algorithm>

namespace ink {

DrawResult draw_pipeline(const Mesh& mesh, const Camera& camera, const DrawOptions& options) {
    DrawResult result;

    LightingConfig headlight;
    headlight.mode = LightMode::Headlight;
    result.render = render(mesh, camera, options.material, headlight);

    // object-space curves
    result.contours = extract_smooth_contours(mesh, camera);
    ContourSet features = extract_feature_edges(mesh, camera, options.crease_angle);

    ClipOptions clip;
    clip.keep_hidden = options.include_hidden;
    ContourSet visible_smooth = clip_visible(result.contours, result.render.depth, camera, clip);
    ContourSet visible_features = clip_visible(features, result.render.depth, camera, clip);

    result.visible_contours = visible_smooth;
    for (auto& poly : visible_features.polylines)
        result.visible_contours.polylines.push_back(poly);

    // hidden polylines (when kept) stay out of the drawing
    ContourSet drawable;
    for (const auto& poly : result.visible_contours.polylines)
        if (!poly.hidden) drawable.polylines.push_back(poly);
    std::vector<TaggedPolyline2D> projected = project_contours(drawable, camera);

    // image-space valleys, split into contour-tagged and suggestive points
    SuggestiveParams sparams;
    sparams.sigma = options.sigma;
    sparams.tau = options.tau;
    sparams.min_strength = options.min_strength;
    result.valley_strokes =
        suggestive_strokes(result.render.luminance, projected, options.tau, sparams);
    for (const SuggestivePolyline& sp : result.valley_strokes)
        if (sp.tag == ValleyPointTag::Suggestive)
            result.suggestive_point_count += static_cast<int>(sp.points.size());

    // thickness from the render's dark bands
    double t_min = options.resolved_t_min(camera.height);
    double t_max = options.resolved_t_max(camera.height);

    std::vector<ThicknessInput> contour_inputs;
    for (const TaggedPolyline2D& poly : projected) {
        ThicknessInput in;
        switch (poly.tag) {
            case CurveTag::SmoothContour: in.tag = StrokeTag::Contour; break;
            case CurveTag::PolyhedralSilhouette: in.tag = StrokeTag::Silhouette; break;
            case CurveTag::Crease: in.tag = StrokeTag::Crease; break;
        }
        in.points = poly.points;
        contour_inputs.push_back(std::move(in));
    }
    // suggestive-tagged valley points only: the contour-tagged ones duplicate
    // the object-space curves already drawn
    std::vector<ThicknessInput> suggestive_inputs;
    for (const SuggestivePolyline& sp : result.valley_strokes) {
        if (sp.tag != ValleyPointTag::Suggestive) continue;
        suggestive_inputs.push_back({StrokeTag::Suggestive, sp.points});
    }

    std::vector<Stroke> contour_strokes =
        assign_thickness(contour_inputs, result.render.luminance, t_min, t_max, options.tau);
    std::vector<Stroke> suggestive_strokes_px =
        assign_thickness(suggestive_inputs, result.render.luminance, t_min, t_max, options.tau);
    if (options.suggestive_scale != 1.0) {
        for (Stroke& s : suggestive_strokes_px)
            for (double& t : s.thickness)
                t = std::clamp(t * options.suggestive_scale, t_min, t_max);
    }

    result.doc = compose({contour_strokes, suggestive_strokes_px}, camera.width, camera.height,
                         Polarity::DarkOnLight);
    return result;
}

DrawingDocument trace_pipeline(const ScalarImage& photo, const DrawOptions& options) {
    ValleyMap vm = detect_valleys(photo, options.sigma, options.tau, options.min_strength);
    std::vector<Polyline2D> chains = link_valleys(vm);

    double t_min = options.resolved_t_min(photo.height);
    double t_max = options.resolved_t_max(photo.height);
    std::vector<ThicknessInput> inputs;
    for (const Polyline2D& chain : chains) {
        std::vector<Vec2> pts = chain.points;
        if (chain.closed && !pts.empty()) pts.push_back(pts.front());
        inputs.push_back({StrokeTag::Contour, std::move(pts)});
    }
    std::vector<Stroke> strokes = assign_thickness(inputs, photo, t_min, t_max, options.tau);
    return compose({strokes}, photo.width, photo.height, Polarity::DarkOnLight);
}

RimResult rim_pipeline(const Mesh& mesh, const Camera& camera, const RimOptions& options) {
    RimResult result;

    LightingConfig ring;
    ring.mode = LightMode::Ring;
    ring.ring_count = options.ring_count;
    ring.ring_radius = options.ring_radius;
    result.ring_render = render(mesh, camera, MaterialConfig{}, ring);

    // night backdrop: the white page would otherwise outshine the rim
    for (size_t i = 0; i < result.ring_render.depth.data.size(); ++i)
        if (!std::isfinite(result.ring_render.depth.data[i]))
            result.ring_render.luminance.data[i] = 0.0;

    // bright ridges = valleys of the inverted image
    ScalarImage inverted = result.ring_render.luminance;
    for (double& v : inverted.data) v = 1.0 - v;

    ValleyMap vm = detect_valleys(inverted, options.sigma, options.tau, options.min_strength);
    std::vector<Polyline2D> chains = link_valleys(vm);

    double t_min = options.t_min >= 0 ? options.t_min : 0.75 * camera.height / 512.0;
    double t_max = options.t_max >= 0 ? options.t_max : 6.0 * camera.height / 512.0;
    std::vector<ThicknessInput> inputs;
    for (const Polyline2D& chain : chains) {
        std::vector<Vec2> pts = chain.points;
        if (chain.closed && !pts.empty()) pts.push_back(pts.front());
        inputs.push_back({StrokeTag::Contour, std::move(pts)});
    }
    std::vector<Stroke> strokes = assign_thickness(inputs, inverted, t_min, t_max, options.tau);
    DrawingDocument doc = compose({strokes}, camera.width, camera.height, Polarity::DarkOnLight);
    result.doc = invert_tone(std::move(doc)); // white strokes on black
    return result;
}

} // namespace ink
