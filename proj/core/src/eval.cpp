#include "inkline/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ink {

DarknessScore darkness_score(const DrawingDocument& doc, const ScalarImage& render,
                             const ScalarImage& depth) {
    if (doc.width != render.width || doc.height != render.height)
        throw Error("darkness_score: drawing and render sizes differ");
    std::vector<uint8_t> ink = ink_mask(doc);

    double sum_ink = 0.0, sum_rest = 0.0;
    long n_ink = 0, n_rest = 0;
    for (int y = 0; y < render.height; ++y) {
        for (int x = 0; x < render.width; ++x) {
            size_t i = static_cast<size_t>(y) * render.width + x;
            if (!std::isfinite(depth.data[i])) continue; // background excluded
            if (ink[i]) {
                sum_ink += render.data[i];
                ++n_ink;
            } else {
                sum_rest += render.data[i];
                ++n_rest;
            }
        }
    }
    if (n_ink == 0) throw Error("darkness_score: drawing has no ink over the covered region");
    DarknessScore score;
    score.mean_under_ink = sum_ink / n_ink;
    score.mean_elsewhere = n_rest > 0 ? sum_rest / n_rest : 0.0;
    score.ratio = score.mean_elsewhere > 0.0 ? score.mean_under_ink / score.mean_elsewhere
                                             : std::numeric_limits<double>::infinity();
    return score;
}

double contour_coverage(const DrawingDocument& doc, const ContourSet& visible_contours,
                        const Camera& camera, double radius) {
    std::vector<uint8_t> ink = ink_mask(doc);
    ScalarImage dist = distance_transform(ink, doc.width, doc.height);

    long total = 0, covered = 0;
    for (const ContourPolyline& poly : visible_contours.polylines) {
        if (poly.hidden) continue;
        for (size_t i = 0; i + 1 < poly.points.size(); ++i) {
            Vec2 a, b;
            if (!camera.project(poly.points[i], &a) || !camera.project(poly.points[i + 1], &b))
                continue;
            double len = (b - a).length();
            int n = std::max(1, static_cast<int>(std::ceil(len * 2.0)));
            for (int k = 0; k < n; ++k) {
                Vec2 p = a + (b - a) * (static_cast<double>(k) / n);
                int x = static_cast<int>(std::floor(p.x));
                int y = static_cast<int>(std::floor(p.y));
                if (x < 0 || x >= doc.width || y < 0 || y >= doc.height) continue;
                ++total;
                if (dist.at(x, y) <= radius) ++covered;
            }
        }
    }
    if (total == 0) return 0.0;
    return static_cast<double>(covered) / static_cast<double>(total);
}

// --- chamfer ---------------------------------------------------------------

namespace {

std::vector<Vec2> dense_samples(const std::vector<Polyline2D>& polys, double samples_per_px) {
    std::vector<Vec2> out;
    for (const Polyline2D& poly : polys) {
        size_t n = poly.points.size();
        if (n == 0) continue;
        if (n == 1) {
            out.push_back(poly.points[0]);
            continue;
        }
        out.push_back(poly.points.front());
        size_t nseg = poly.closed ? n : n - 1;
        for (size_t i = 0; i < nseg; ++i) {
            const Vec2& a = poly.points[i];
            const Vec2& b = poly.points[(i + 1) % n];
            double len = (b - a).length();
            int steps = std::max(1, static_cast<int>(std::ceil(len * samples_per_px)));
            for (int k = 1; k <= steps; ++k)
                out.push_back(a + (b - a) * (static_cast<double>(k) / steps));
        }
    }
    return out;
}

// uniform-grid nearest neighbor over point sets
struct PointGrid {
    double cell;
    double ox, oy;
    int nx, ny;
    std::vector<std::vector<int>> cells;
    const std::vector<Vec2>& pts;

    explicit PointGrid(const std::vector<Vec2>& points, double cell_size)
        : cell(cell_size), pts(points) {
        double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
        for (const Vec2& p : points) {
            min_x = std::min(min_x, p.x);
            min_y = std::min(min_y, p.y);
            max_x = std::max(max_x, p.x);
            max_y = std::max(max_y, p.y);
        }
        ox = min_x;
        oy = min_y;
        nx = std::max(1, static_cast<int>((max_x - min_x) / cell) + 1);
        ny = std::max(1, static_cast<int>((max_y - min_y) / cell) + 1);
        cells.resize(static_cast<size_t>(nx) * ny);
        for (size_t i = 0; i < points.size(); ++i) {
            int cx = std::clamp(static_cast<int>((points[i].x - ox) / cell), 0, nx - 1);
            int cy = std::clamp(static_cast<int>((points[i].y - oy) / cell), 0, ny - 1);
            cells[static_cast<size_t>(cy) * nx + cx].push_back(static_cast<int>(i));
        }
    }

    double nearest_dist(const Vec2& p) const {
        int cx = std::clamp(static_cast<int>((p.x - ox) / cell), 0, nx - 1);
        int cy = std::clamp(static_cast<int>((p.y - oy) / cell), 0, ny - 1);
        double best2 = 1e300;
        for (int ring = 0; ring < std::max(nx, ny) + 1; ++ring) {
            bool any_cell = false;
            for (int gy = cy - ring; gy <= cy + ring; ++gy) {
                for (int gx = cx - ring; gx <= cx + ring; ++gx) {
                    if (std::max(std::abs(gx - cx), std::abs(gy - cy)) != ring) continue;
                    if (gx < 0 || gx >= nx || gy < 0 || gy >= ny) continue;
                    any_cell = true;
                    for (int i : cells[static_cast<size_t>(gy) * nx + gx])
                        best2 = std::min(best2, (pts[i] - p).length2());
                }
            }
            // a hit in ring r guarantees the true nearest is within r+1 rings
            if (best2 < 1e300 && std::sqrt(best2) <= (ring)*cell) break;
            if (!any_cell && ring > std::max(nx, ny)) break;
        }
        return std::sqrt(best2);
    }
};

} // namespace

ChamferResult chamfer(const std::vector<Polyline2D>& a, const std::vector<Polyline2D>& b,
                      double samples_per_px) {
    std::vector<Vec2> sa = dense_samples(a, samples_per_px);
    std::vector<Vec2> sb = dense_samples(b, samples_per_px);
    if (sa.empty() || sb.empty()) throw Error("chamfer: empty polyline set");

    PointGrid ga(sa, 8.0), gb(sb, 8.0);
    double sum = 0.0, mx = 0.0;
    for (const Vec2& p : sa) {
        double d = gb.nearest_dist(p);
        sum += d;
        mx = std::max(mx, d);
    }
    for (const Vec2& p : sb) {
        double d = ga.nearest_dist(p);
        sum += d;
        mx = std::max(mx, d);
    }
    ChamferResult r;
    r.mean = sum / static_cast<double>(sa.size() + sb.size());
    r.max = mx;
    return r;
}

// --- report ------------------------------------------------------------------

std::string MetricReport::to_key_value_text() const {
    std::ostringstream out;
    char buf[64];
    for (const auto& [key, value] : values) {
        std::snprintf(buf, sizeof buf, "%.9g", value);
        out << key << "=" << buf << "\n";
    }
    return out.str();
}

std::string MetricReport::to_json() const {
    std::ostringstream out;
    out << "{\n";
    char buf[64];
    for (size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9g", values[i].second);
        out << "  \"" << values[i].first << "\": " << buf;
        if (i + 1 < values.size()) out << ",";
        out << "\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace ink
