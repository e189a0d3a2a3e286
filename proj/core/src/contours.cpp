#include "inkline/contours.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace ink {

const char* curve_tag_name(CurveTag tag) {
    switch (tag) {
        case CurveTag::SmoothContour: return "smooth-contour";
        case CurveTag::PolyhedralSilhouette: return "polyhedral-silhouette";
        case CurveTag::Crease: return "crease";
    }
    return "unknown";
}

size_t ContourSet::total_points() const {
    size_t n = 0;
    for (const auto& p : polylines) n += p.points.size();
    return n;
}

std::vector<double> g_field(const Mesh& mesh, const Camera& camera) {
    std::vector<double> g(mesh.vertices.size());
    for (size_t i = 0; i < mesh.vertices.size(); ++i)
        g[i] = dot(mesh.normals[i], camera.center - mesh.vertices[i]);
    return g;
}

namespace {

// Root of g(t) = (n_a + t*dn) . (c - p_a - t*dp) in (0, 1). The endpoint
// values bracket a sign change, so exactly one root lies inside; linear
// interpolation of the endpoint g values is not accurate enough to keep
// |g| below eps_g on curved meshes.
double edge_crossing_param(const Vec3& pa, const Vec3& pb, const Vec3& na, const Vec3& nb,
                           const Vec3& c, double ga, double gb) {
    Vec3 dp = pb - pa, dn = nb - na;
    double A = -dot(dn, dp);
    double B = dot(dn, c - pa) - dot(na, dp);
    double C = ga;
    double t_lin = ga / (ga - gb);
    if (std::fabs(A) < 1e-300) {
        if (std::fabs(B) < 1e-300) return t_lin;
        double t = -C / B;
        return (t > 0.0 && t < 1.0) ? t : t_lin;
    }
    double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) return t_lin;
    double sq = std::sqrt(disc);
    double q = -0.5 * (B + (B >= 0.0 ? sq : -sq));
    double r1 = q / A;
    double r2 = std::fabs(q) > 0.0 ? C / q : -1.0;
    bool ok1 = r1 > 0.0 && r1 < 1.0;
    bool ok2 = r2 > 0.0 && r2 < 1.0;
    if (ok1 && ok2) return std::fabs(r1 - t_lin) < std::fabs(r2 - t_lin) ? r1 : r2;
    if (ok1) return r1;
    if (ok2) return r2;
    return t_lin;
}

struct Crossing {
    Vec3 point;
    Vec3 normal; // interpolated, renormalized
    bool chainable = true; // false on non-manifold edges
};

} // namespace

ContourSet extract_smooth_contours(const Mesh& mesh, const Camera& camera, double eps_g_scale) {
    if (!mesh.has_normals()) throw Error("extract_smooth_contours: mesh has no normals");
    ContourSet out;
    out.eps_g = eps_g_scale * mesh.bbox_diag_length();

    std::vector<double> g = g_field(mesh, camera);
    EdgeAdjacency adj = EdgeAdjacency::build(mesh);

    auto positive = [&](int v) { return g[v] >= 0.0; };

    // one crossing per sign-change edge
    std::vector<int> edge_crossing(adj.edges.size(), -1);
    std::vector<Crossing> crossings;
    for (size_t e = 0; e < adj.edges.size(); ++e) {
        int a = adj.edges[e].v0, b = adj.edges[e].v1;
        if (positive(a) == positive(b)) continue;
        double t = edge_crossing_param(mesh.vertices[a], mesh.vertices[b], mesh.normals[a],
                                       mesh.normals[b], camera.center, g[a], g[b]);
        Crossing cr;
        cr.point = mesh.vertices[a] + (mesh.vertices[b] - mesh.vertices[a]) * t;
        cr.normal = normalized(mesh.normals[a] + (mesh.normals[b] - mesh.normals[a]) * t);
        cr.chainable = adj.edges[e].faces.size() <= 2;
        if (!cr.chainable) ++out.non_manifold_crossings;
        edge_crossing[e] = static_cast<int>(crossings.size());
        crossings.push_back(cr);
    }

    // face segments between crossing pairs
    struct Segment {
        int c0, c1;
    };
    std::vector<Segment> segments;
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        int cs[3];
        int n = 0;
        for (int k = 0; k < 3; ++k) {
            int e = adj.face_edges[f][k];
            if (e >= 0 && edge_crossing[e] >= 0) cs[n++] = edge_crossing[e];
        }
        if (n < 2) continue;
        if (n == 2) {
            segments.push_back({cs[0], cs[1]});
        } else {
            // numerically degenerate: keep the pair with largest separation
            double best = -1.0;
            int bi = 0, bj = 1;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    double d = (crossings[cs[i]].point - crossings[cs[j]].point).length2();
                    if (d > best) {
                        best = d;
                        bi = i;
                        bj = j;
                    }
                }
            segments.push_back({cs[bi], cs[bj]});
            out.dropped_crossings += n - 2;
        }
    }

    // chain: each chainable crossing touches at most 2 segments (manifold)
    std::vector<std::vector<int>> incident(crossings.size());
    for (size_t s = 0; s < segments.size(); ++s) {
        incident[segments[s].c0].push_back(static_cast<int>(s));
        incident[segments[s].c1].push_back(static_cast<int>(s));
    }
    std::vector<char> seg_used(segments.size(), 0);

    auto walk = [&](int start_seg, int start_node) {
        ContourPolyline poly;
        poly.tag = CurveTag::SmoothContour;
        int node = start_node;
        int seg = start_seg;
        poly.points.push_back(crossings[node].point);
        poly.normals.push_back(crossings[node].normal);
        while (true) {
            seg_used[seg] = 1;
            node = segments[seg].c0 == node ? segments[seg].c1 : segments[seg].c0;
            poly.points.push_back(crossings[node].point);
            poly.normals.push_back(crossings[node].normal);
            if (!crossings[node].chainable) break;
            int next = -1;
            for (int s2 : incident[node])
                if (!seg_used[s2]) {
                    next = s2;
                    break;
                }
            if (next < 0) break;
            seg = next;
        }
        if (poly.points.size() >= 3 &&
            (poly.points.front() - poly.points.back()).length2() < 1e-24)
            poly.closed = true;
        return poly;
    };

    // open chains first: start from degree-1 or non-chainable nodes
    for (size_t c = 0; c < crossings.size(); ++c) {
        bool endpoint = incident[c].size() == 1 || !crossings[c].chainable;
        if (!endpoint) continue;
        for (int s : incident[c])
            if (!seg_used[s]) out.polylines.push_back(walk(s, static_cast<int>(c)));
    }
    // remaining segments belong to closed loops
    for (size_t s = 0; s < segments.size(); ++s) {
        if (seg_used[s]) continue;
        ContourPolyline poly = walk(static_cast<int>(s), segments[s].c0);
        if (poly.points.size() >= 3) poly.closed = true;
        out.polylines.push_back(std::move(poly));
    }
    return out;
}

// --- feature edges ----------------------------------------------------------

std::vector<FeatureEdge> classify_feature_edges(const Mesh& mesh, const Camera& camera,
                                                double crease_angle_deg) {
    EdgeAdjacency adj = EdgeAdjacency::build(mesh);
    std::vector<FeatureEdge> out;
    double cos_crease = std::cos(deg2rad(crease_angle_deg));

    // front-facing: n_f . (c - x) > 0 for x on the face plane
    auto front = [&](int f) {
        Vec3 n = mesh.face_normal_raw(f);
        return dot(n, camera.center - mesh.vertices[mesh.faces[f][0]]) > 0.0;
    };

    for (const auto& e : adj.edges) {
        if (e.faces.size() > 2) continue; // skipped, counted on the mesh
        FeatureEdge fe;
        fe.v0 = e.v0;
        fe.v1 = e.v1;
        if (e.faces.size() == 1) {
            fe.boundary = true;
            fe.silhouette = true;
        } else {
            bool f0 = front(e.faces[0]);
            bool f1 = front(e.faces[1]);
            fe.silhouette = f0 != f1;
            Vec3 n0 = normalized(mesh.face_normal_raw(e.faces[0]));
            Vec3 n1 = normalized(mesh.face_normal_raw(e.faces[1]));
            fe.crease = dot(n0, n1) < cos_crease;
        }
        out.push_back(fe);
    }
    return out;
}

ContourSet extract_feature_edges(const Mesh& mesh, const Camera& camera,
                                 double crease_angle_deg) {
    ContourSet out;
    out.skipped_edges = mesh.non_manifold_edges;
    for (const FeatureEdge& fe : classify_feature_edges(mesh, camera, crease_angle_deg)) {
        if (!fe.silhouette && !fe.crease) continue;
        ContourPolyline poly;
        poly.tag = fe.silhouette ? CurveTag::PolyhedralSilhouette : CurveTag::Crease;
        poly.points = {mesh.vertices[fe.v0], mesh.vertices[fe.v1]};
        out.polylines.push_back(std::move(poly));
    }
    return out;
}

// --- visibility clipping -----------------------------------------------------

ContourSet clip_visible(const ContourSet& contours, const ScalarImage& depth,
                        const Camera& camera, const ClipOptions& options) {
    ContourSet out;
    out.eps_g = contours.eps_g;
    out.non_manifold_crossings = contours.non_manifold_crossings;
    out.dropped_crossings = contours.dropped_crossings;
    out.skipped_edges = contours.skipped_edges;

    // bias from the finite depth range
    double dmin = depth_infinity(), dmax = -depth_infinity();
    for (double d : depth.data)
        if (std::isfinite(d)) {
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
        }
    double bias = std::isfinite(dmin) && dmax > dmin ? options.bias_scale * (dmax - dmin) : 0.0;

    auto sample_visible = [&](const Vec3& p) {
        Vec2 px;
        double z;
        if (!camera.project(p, &px, &z)) return false;
        int ix = static_cast<int>(std::floor(px.x));
        int iy = static_cast<int>(std::floor(px.y));
        if (!depth.in_bounds(ix, iy)) return false; // projects outside image
        return z <= depth.at(ix, iy) + bias;
    };

    for (const ContourPolyline& poly : contours.polylines) {
        if (poly.points.size() < 2) continue;
        bool has_normals = poly.normals.size() == poly.points.size();

        // resample in image space at options.samples_per_px
        std::vector<Vec3> samples, sample_normals;
        samples.push_back(poly.points.front());
        if (has_normals) sample_normals.push_back(poly.normals.front());
        for (size_t i = 0; i + 1 < poly.points.size(); ++i) {
            const Vec3& a = poly.points[i];
            const Vec3& b = poly.points[i + 1];
            Vec2 pa, pb;
            bool va = camera.project(a, &pa);
            bool vb = camera.project(b, &pb);
            double len_px = va && vb ? (pb - pa).length() : 0.0;
            int n = std::max(1, static_cast<int>(std::ceil(len_px * options.samples_per_px)));
            for (int k = 1; k <= n; ++k) {
                double t = static_cast<double>(k) / n;
                samples.push_back(a + (b - a) * t);
                if (has_normals)
                    sample_normals.push_back(normalized(
                        poly.normals[i] + (poly.normals[i + 1] - poly.normals[i]) * t));
            }
        }

        // split into visible / hidden runs
        ContourPolyline run;
        run.tag = poly.tag;
        bool run_visible = sample_visible(samples[0]);
        run.hidden = !run_visible;
        auto push = [&](size_t i) {
            run.points.push_back(samples[i]);
            if (has_normals) run.normals.push_back(sample_normals[i]);
        };
        auto flush = [&]() {
            if (run.points.size() >= 2 && (!run.hidden || options.keep_hidden))
                out.polylines.push_back(run);
            run.points.clear();
            run.normals.clear();
        };
        push(0);
        for (size_t i = 1; i < samples.size(); ++i) {
            bool vis = sample_visible(samples[i]);
            if (vis != run_visible) {
                push(i); // include the transition point
                flush();
                run_visible = vis;
                run.hidden = !vis;
            }
            push(i);
        }
        flush();
    }
    return out;
}

// --- projection ---------------------------------------------------------------

std::vector<TaggedPolyline2D> project_contours(const ContourSet& contours, const Camera& camera) {
    std::vector<TaggedPolyline2D> out;
    for (const ContourPolyline& poly : contours.polylines) {
        TaggedPolyline2D cur;
        cur.tag = poly.tag;
        cur.closed = poly.closed;
        for (const Vec3& p : poly.points) {
            Vec2 px;
            if (camera.project(p, &px)) {
                cur.points.push_back(px);
            } else if (cur.points.size() >= 2) {
                cur.closed = false;
                out.push_back(std::move(cur));
                cur = TaggedPolyline2D{};
                cur.tag = poly.tag;
            } else {
                cur.points.clear();
                cur.closed = false;
            }
        }
        if (cur.points.size() >= 2) out.push_back(std::move(cur));
    }
    return out;
}

// --- text io -------------------------------------------------------------------

void write_contours_text(const std::string& path, const ContourSet& contours) {
    std::ofstream out(path);
    if (!out) throw Error("write_contours_text: cannot open " + path);
    char buf[96];
    for (const ContourPolyline& poly : contours.polylines) {
        out << curve_tag_name(poly.tag) << " " << poly.points.size();
        for (const Vec3& p : poly.points) {
            std::snprintf(buf, sizeof buf, " %.9g %.9g %.9g", p.x, p.y, p.z);
            out << buf;
        }
        out << "\n";
    }
}

ContourSet read_contours_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("read_contours_text: cannot open " + path);
    ContourSet set;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        size_t n = 0;
        if (!(ls >> tag >> n))
            throw Error("read_contours_text: bad record at line " + std::to_string(line_no));
        ContourPolyline poly;
        if (tag == "smooth-contour") poly.tag = CurveTag::SmoothContour;
        else if (tag == "polyhedral-silhouette") poly.tag = CurveTag::PolyhedralSilhouette;
        else if (tag == "crease") poly.tag = CurveTag::Crease;
        else throw Error("read_contours_text: unknown tag '" + tag + "' at line " +
                         std::to_string(line_no));
        poly.points.resize(n);
        for (size_t i = 0; i < n; ++i)
            if (!(ls >> poly.points[i].x >> poly.points[i].y >> poly.points[i].z))
                throw Error("read_contours_text: truncated record at line " +
                            std::to_string(line_no));
        set.polylines.push_back(std::move(poly));
    }
    return set;
}

} // namespace ink
