#include "inkline/strokes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ink {

const char* stroke_tag_name(StrokeTag tag) {
    switch (tag) {
        case StrokeTag::Contour: return "contour";
        case StrokeTag::Suggestive: return "suggestive";
        case StrokeTag::Crease: return "crease";
        case StrokeTag::Silhouette: return "silhouette";
        case StrokeTag::Hatch: return "hatch";
    }
    return "unknown";
}

StrokeTag stroke_tag_from_name(const std::string& name) {
    if (name == "contour") return StrokeTag::Contour;
    if (name == "suggestive") return StrokeTag::Suggestive;
    if (name == "crease") return StrokeTag::Crease;
    if (name == "silhouette") return StrokeTag::Silhouette;
    if (name == "hatch") return StrokeTag::Hatch;
    throw Error("unknown stroke tag '" + name + "'");
}

// --- thickness ----------------------------------------------------------------

std::vector<Stroke> assign_thickness(const std::vector<ThicknessInput>& polylines,
                                     const ScalarImage& render,
                                     double t_min, double t_max, double tau) {
    if (t_min < 0.0 || t_max < t_min) throw Error("assign_thickness: bad clamp range");
    const double step = 0.25;
    const int max_steps = static_cast<int>(std::ceil(t_max / step)) + 2;

    auto dark = [&](const Vec2& p) {
        if (p.x < 0.0 || p.y < 0.0 || p.x >= render.width || p.y >= render.height) return false;
        return render.sample(p.x, p.y) < tau;
    };

    std::vector<Stroke> out;
    for (const ThicknessInput& poly : polylines) {
        if (poly.points.size() < 2) continue;
        Stroke s;
        s.tag = poly.tag;
        s.points = poly.points;
        s.thickness.resize(poly.points.size(), t_min);
        for (size_t i = 0; i < poly.points.size(); ++i) {
            const Vec2& p = poly.points[i];
            if (p.x < 0.0 || p.y < 0.0 || p.x >= render.width || p.y >= render.height)
                continue; // off-image: t_min
            size_t i0 = i == 0 ? 0 : i - 1;
            size_t i1 = i + 1 < poly.points.size() ? i + 1 : i;
            Vec2 tangent = normalized(poly.points[i1] - poly.points[i0]);
            if (tangent.length2() < 0.25) {
                continue;
            }
            Vec2 nrm = perp(tangent);
            // connected run of dark pixels through p, perpendicular to the stroke
            double extent = 0.0;
            if (dark(p)) {
                for (int sgn = -1; sgn <= 1; sgn += 2) {
                    for (int k = 1; k <= max_steps; ++k) {
                        Vec2 q = p + nrm * (sgn * k * step);
                        if (!dark(q)) break;
                        extent += step;
                    }
                }
                extent += step; // the center sample's own width
            }
            s.thickness[i] = std::clamp(extent, t_min, t_max);
        }
        out.push_back(std::move(s));
    }
    return out;
}

// --- composition ----------------------------------------------------------------

namespace {

int draw_rank(StrokeTag tag) {
    switch (tag) {
        case StrokeTag::Silhouette:
        case StrokeTag::Contour: return 0;
        case StrokeTag::Suggestive: return 1;
        case StrokeTag::Crease: return 2;
        case StrokeTag::Hatch: return 3;
    }
    return 4;
}

// Liang-Barsky segment/rect clip; returns false if fully outside.
bool clip_segment(Vec2& a, Vec2& b, double& ta, double& tb, double w, double h) {
    double t0 = 0.0, t1 = 1.0;
    Vec2 d = b - a;
    auto update = [&](double p, double q) {
        if (std::fabs(p) < 1e-300) return q >= 0.0;
        double r = q / p;
        if (p < 0.0) {
            if (r > t1) return false;
            if (r > t0) t0 = r;
        } else {
            if (r < t0) return false;
            if (r < t1) t1 = r;
        }
        return true;
    };
    if (!update(-d.x, a.x) || !update(d.x, w - a.x) || !update(-d.y, a.y) ||
        !update(d.y, h - a.y))
        return false;
    Vec2 na = a + d * t0, nb = a + d * t1;
    ta = t0;
    tb = t1;
    a = na;
    b = nb;
    return true;
}

} // namespace

DrawingDocument compose(const std::vector<std::vector<Stroke>>& stroke_sets,
                        int width, int height, Polarity polarity) {
    DrawingDocument doc;
    doc.width = width;
    doc.height = height;
    doc.polarity = polarity;

    for (const auto& set : stroke_sets) {
        for (const Stroke& s : set) {
            if (s.points.size() < 2) continue;
            Stroke cur;
            cur.tag = s.tag;
            auto flush = [&]() {
                if (cur.points.size() >= 2) doc.strokes.push_back(cur);
                cur.points.clear();
                cur.thickness.clear();
            };
            for (size_t i = 0; i + 1 < s.points.size(); ++i) {
                Vec2 a = s.points[i], b = s.points[i + 1];
                double ta, tb;
                if (!clip_segment(a, b, ta, tb, width, height)) {
                    flush();
                    continue;
                }
                double th_a = s.thickness[i] + ta * (s.thickness[i + 1] - s.thickness[i]);
                double th_b = s.thickness[i] + tb * (s.thickness[i + 1] - s.thickness[i]);
                if (cur.points.empty() || (cur.points.back() - a).length2() > 1e-12) {
                    flush();
                    cur.points.push_back(a);
                    cur.thickness.push_back(th_a);
                }
                cur.points.push_back(b);
                cur.thickness.push_back(th_b);
            }
            flush();
        }
    }
    std::stable_sort(doc.strokes.begin(), doc.strokes.end(),
                     [](const Stroke& a, const Stroke& b) {
                         return draw_rank(a.tag) < draw_rank(b.tag);
                     });
    return doc;
}

DrawingDocument invert_tone(DrawingDocument doc) {
    doc.polarity =
        doc.polarity == Polarity::DarkOnLight ? Polarity::LightOnDark : Polarity::DarkOnLight;
    return doc;
}

// --- svg -------------------------------------------------------------------------

namespace {

std::string fmt3(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// unit normals per point from averaged segment directions
std::vector<Vec2> point_normals(const std::vector<Vec2>& pts) {
    size_t n = pts.size();
    std::vector<Vec2> normals(n);
    for (size_t i = 0; i < n; ++i) {
        size_t i0 = i == 0 ? 0 : i - 1;
        size_t i1 = i + 1 < n ? i + 1 : i;
        Vec2 t = normalized(pts[i1] - pts[i0]);
        if (t.length2() < 0.25) t = Vec2{1, 0};
        normals[i] = perp(t);
    }
    return normals;
}

} // namespace

std::string to_svg(const DrawingDocument& doc) {
    const char* bg = doc.polarity == Polarity::DarkOnLight ? "#ffffff" : "#000000";
    const char* ink = doc.polarity == Polarity::DarkOnLight ? "#000000" : "#ffffff";

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << doc.width << "\" height=\""
        << doc.height << "\" viewBox=\"0 0 " << doc.width << " " << doc.height << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << doc.width << "\" height=\"" << doc.height
        << "\" fill=\"" << bg << "\"/>\n";

    for (const Stroke& s : doc.strokes) {
        if (s.points.size() < 2) continue;
        std::vector<Vec2> nrm = point_normals(s.points);
        size_t n = s.points.size();
        std::vector<Vec2> left(n), right(n);
        for (size_t i = 0; i < n; ++i) {
            double r = 0.5 * std::max(s.thickness[i], 1e-3);
            left[i] = s.points[i] + nrm[i] * r;
            right[i] = s.points[i] - nrm[i] * r;
        }
        double r_end = 0.5 * std::max(s.thickness[n - 1], 1e-3);
        double r_start = 0.5 * std::max(s.thickness[0], 1e-3);

        out << "<path class=\"" << stroke_tag_name(s.tag) << "\" d=\"";
        out << "M " << fmt3(left[0].x) << " " << fmt3(left[0].y);
        for (size_t i = 1; i < n; ++i) out << " L " << fmt3(left[i].x) << " " << fmt3(left[i].y);
        // round end cap
        out << " A " << fmt3(r_end) << " " << fmt3(r_end) << " 0 0 0 " << fmt3(right[n - 1].x)
            << " " << fmt3(right[n - 1].y);
        for (size_t i = n - 1; i-- > 0;)
            out << " L " << fmt3(right[i].x) << " " << fmt3(right[i].y);
        // round start cap
        out << " A " << fmt3(r_start) << " " << fmt3(r_start) << " 0 0 0 " << fmt3(left[0].x)
            << " " << fmt3(left[0].y);
        out << " Z\" fill=\"" << ink << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

// --- rasterization ------------------------------------------------------------------

ScalarImage rasterize_drawing(const DrawingDocument& doc, int supersample) {
    if (supersample != 1 && supersample != 2 && supersample != 4)
        throw Error("rasterize_drawing: supersample must be 1, 2 or 4");
    const int S = supersample;
    const int W = doc.width * S, H = doc.height * S;
    std::vector<uint8_t> inked(static_cast<size_t>(W) * H, 0);

    for (const Stroke& s : doc.strokes) {
        for (size_t i = 0; i + 1 < s.points.size(); ++i) {
            Vec2 a = s.points[i] * static_cast<double>(S);
            Vec2 b = s.points[i + 1] * static_cast<double>(S);
            double ra = 0.5 * s.thickness[i] * S;
            double rb = 0.5 * s.thickness[i + 1] * S;
            double rmax = std::max(ra, rb);
            int x0 = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - rmax - 1)));
            int x1 = std::min(W - 1, static_cast<int>(std::ceil(std::max(a.x, b.x) + rmax + 1)));
            int y0 = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - rmax - 1)));
            int y1 = std::min(H - 1, static_cast<int>(std::ceil(std::max(a.y, b.y) + rmax + 1)));
            Vec2 d = b - a;
            double len2 = d.length2();
            for (int py = y0; py <= y1; ++py) {
                for (int px = x0; px <= x1; ++px) {
                    Vec2 c{px + 0.5, py + 0.5};
                    double t = len2 > 0.0 ? std::clamp(dot(c - a, d) / len2, 0.0, 1.0) : 0.0;
                    Vec2 closest = a + d * t;
                    double r = ra + t * (rb - ra);
                    if ((c - closest).length2() <= r * r)
                        inked[static_cast<size_t>(py) * W + px] = 1;
                }
            }
        }
    }

    double ink_val = doc.polarity == Polarity::DarkOnLight ? 0.0 : 1.0;
    double bg_val = 1.0 - ink_val;
    ScalarImage out(doc.width, doc.height, bg_val);
    for (int y = 0; y < doc.height; ++y) {
        for (int x = 0; x < doc.width; ++x) {
            int count = 0;
            for (int sy = 0; sy < S; ++sy)
                for (int sx = 0; sx < S; ++sx)
                    count += inked[static_cast<size_t>(y * S + sy) * W + (x * S + sx)];
            double frac = static_cast<double>(count) / (S * S);
            out.at(x, y) = bg_val + (ink_val - bg_val) * frac;
        }
    }
    return out;
}

std::vector<uint8_t> ink_mask(const DrawingDocument& doc) {
    ScalarImage r = rasterize_drawing(doc, 1);
    std::vector<uint8_t> mask(r.data.size());
    bool dark_ink = doc.polarity == Polarity::DarkOnLight;
    for (size_t i = 0; i < r.data.size(); ++i)
        mask[i] = dark_ink ? (r.data[i] < 0.5) : (r.data[i] > 0.5);
    return mask;
}

// --- text io --------------------------------------------------------------------------

void write_drawing_text(const std::string& path, const DrawingDocument& doc) {
    std::ofstream out(path);
    if (!out) throw Error("write_drawing_text: cannot open " + path);
    out << "page " << doc.width << " " << doc.height << " "
        << (doc.polarity == Polarity::DarkOnLight ? "dark-on-light" : "light-on-dark") << "\n";
    char buf[64];
    for (const Stroke& s : doc.strokes) {
        out << stroke_tag_name(s.tag) << " " << s.points.size();
        for (size_t i = 0; i < s.points.size(); ++i) {
            std::snprintf(buf, sizeof buf, " %.9g %.9g %.9g", s.points[i].x, s.points[i].y,
                          s.thickness[i]);
            out << buf;
        }
        out << "\n";
    }
}

DrawingDocument read_drawing_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("read_drawing_text: cannot open " + path);
    DrawingDocument doc;
    std::string line;
    int line_no = 0;
    bool have_page = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "page") {
            std::string pol;
            if (!(ls >> doc.width >> doc.height >> pol))
                throw Error("read_drawing_text: bad page header at line " +
                            std::to_string(line_no));
            if (pol == "dark-on-light") doc.polarity = Polarity::DarkOnLight;
            else if (pol == "light-on-dark") doc.polarity = Polarity::LightOnDark;
            else throw Error("read_drawing_text: unknown polarity '" + pol + "'");
            have_page = true;
            continue;
        }
        size_t n = 0;
        if (!(ls >> n))
            throw Error("read_drawing_text: bad record at line " + std::to_string(line_no));
        Stroke s;
        s.tag = stroke_tag_from_name(kind);
        s.points.resize(n);
        s.thickness.resize(n);
        for (size_t i = 0; i < n; ++i)
            if (!(ls >> s.points[i].x >> s.points[i].y >> s.thickness[i]))
                throw Error("read_drawing_text: truncated record at line " +
                            std::to_string(line_no));
        doc.strokes.push_back(std::move(s));
    }
    if (!have_page) throw Error("read_drawing_text: missing page header in " + path);
    return doc;
}

} // namespace ink
