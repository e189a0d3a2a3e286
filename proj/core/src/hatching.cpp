#include "inkline/hatching.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ink {

void HatchParams::validate() const {
    if (!(spacing >= 2.0)) throw Error("hatching: spacing must be >= 2 px");
    if (levels != 1 && levels != 2) throw Error("hatching: levels must be 1 or 2");
    if (!(t2 > 0.0 && t1 > t2 && t1 < 1.0))
        throw Error("hatching: need 0 < t2 < t1 < 1");
    if (!(step > 0.0) || !(max_len > 0.0)) throw Error("hatching: bad step/max_len");
}

double DirectionField::orientation(int x, int y) const {
    double a = 0.5 * std::atan2(sin2t.at(x, y), cos2t.at(x, y));
    if (a < 0.0) a += M_PI;
    return a;
}

Vec2 DirectionField::direction_at(double x, double y) const {
    double c = cos2t.sample(x, y);
    double s = sin2t.sample(x, y);
    double a = 0.5 * std::atan2(s, c);
    return {std::cos(a), std::sin(a)};
}

DirectionField project_direction_field(const Mesh& mesh, const Camera& camera,
                                       const CurvatureField& curvature,
                                       const FragmentBuffer& frags, bool use_dir2) {
    const int W = frags.width, H = frags.height;
    DirectionField field;
    field.width = W;
    field.height = H;
    field.cos2t = ScalarImage(W, H, 0.0);
    field.sin2t = ScalarImage(W, H, 0.0);
    field.mask.assign(static_cast<size_t>(W) * H, 0);

    const std::vector<Vec3>& dirs = use_dir2 ? curvature.dir2 : curvature.dir1;
    std::vector<uint8_t> defined(static_cast<size_t>(W) * H, 0);
    const double probe = 1e-4 * mesh.bbox_diag_length();

    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            size_t idx = static_cast<size_t>(y) * W + x;
            int face = frags.face[idx];
            if (face < 0) continue;
            field.mask[idx] = 1;

            const auto& tri = mesh.faces[face];
            double b0 = frags.bary[idx * 3], b1 = frags.bary[idx * 3 + 1],
                   b2 = frags.bary[idx * 3 + 2];
            // interior umbilic patches get their orientation from diffusion
            if (curvature.umbilic[tri[0]] && curvature.umbilic[tri[1]] &&
                curvature.umbilic[tri[2]])
                continue;
            Vec3 p = mesh.vertices[tri[0]] * b0 + mesh.vertices[tri[1]] * b1 +
                     mesh.vertices[tri[2]] * b2;
            // sign-consistent interpolation of the line field within the face
            Vec3 d0 = dirs[tri[0]];
            Vec3 d1 = dot(dirs[tri[1]], d0) < 0.0 ? -dirs[tri[1]] : dirs[tri[1]];
            Vec3 d2 = dot(dirs[tri[2]], d0) < 0.0 ? -dirs[tri[2]] : dirs[tri[2]];
            Vec3 d = d0 * b0 + d1 * b1 + d2 * b2;
            if (d.length2() < 1e-18) continue;
            d = normalized(d);

            Vec2 pa, pb;
            if (!camera.project(p, &pa) || !camera.project(p + d * probe, &pb)) continue;
            Vec2 screen = pb - pa;
            if (screen.length() < probe * 1e-3) continue; // parallel to the view ray
            double ang = std::atan2(screen.y, screen.x);
            field.cos2t.at(x, y) = std::cos(2.0 * ang);
            field.sin2t.at(x, y) = std::sin(2.0 * ang);
            defined[idx] = 1;
        }
    }

    // neighborhood diffusion for flagged pixels (up to 10 iterations)
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<uint8_t> next_defined = defined;
        bool changed = false;
        for (int y = 0; y < H; ++y) {
            for (int x = 0; x < W; ++x) {
                size_t idx = static_cast<size_t>(y) * W + x;
                if (!field.mask[idx] || defined[idx]) continue;
                double c = 0.0, s = 0.0;
                int count = 0;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        int qx = x + dx, qy = y + dy;
                        if (qx < 0 || qx >= W || qy < 0 || qy >= H) continue;
                        size_t qidx = static_cast<size_t>(qy) * W + qx;
                        if (!defined[qidx]) continue;
                        c += field.cos2t.at(qx, qy);
                        s += field.sin2t.at(qx, qy);
                        ++count;
                    }
                if (count == 0) continue;
                double len = std::hypot(c, s);
                if (len < 1e-12) continue;
                field.cos2t.at(x, y) = c / len;
                field.sin2t.at(x, y) = s / len;
                next_defined[idx] = 1;
                ++field.degenerate_filled;
                changed = true;
            }
        }
        defined = std::move(next_defined);
        if (!changed) break;
    }

    // no seeds at all (fully umbilic subject): fall back to the projected
    // arbitrary tangent pair so the field is still defined over the mask
    bool any_defined = false;
    for (size_t i = 0; i < defined.size() && !any_defined; ++i)
        any_defined = field.mask[i] && defined[i];
    if (!any_defined) {
        for (int y = 0; y < H; ++y) {
            for (int x = 0; x < W; ++x) {
                size_t idx = static_cast<size_t>(y) * W + x;
                int face = frags.face[idx];
                if (face < 0) continue;
                const auto& tri = mesh.faces[face];
                double b0 = frags.bary[idx * 3], b1 = frags.bary[idx * 3 + 1],
                       b2 = frags.bary[idx * 3 + 2];
                Vec3 p = mesh.vertices[tri[0]] * b0 + mesh.vertices[tri[1]] * b1 +
                         mesh.vertices[tri[2]] * b2;
                Vec3 d = dirs[tri[0]];
                Vec2 pa, pb;
                if (!camera.project(p, &pa) || !camera.project(p + d * probe, &pb)) continue;
                Vec2 screen = pb - pa;
                if (screen.length() < probe * 1e-3) continue;
                double ang = std::atan2(screen.y, screen.x);
                field.cos2t.at(x, y) = std::cos(2.0 * ang);
                field.sin2t.at(x, y) = std::sin(2.0 * ang);
            }
        }
    }
    return field;
}

// --- streamline hatching -----------------------------------------------------

namespace {

// coarse occupancy grid for the spacing constraint (cell = spacing / 2)
struct OccupancyGrid {
    double cell;
    int nx, ny;
    std::vector<std::vector<Vec2>> cells;

    OccupancyGrid(int w, int h, double spacing)
        : cell(spacing * 0.5),
          nx(std::max(1, static_cast<int>(std::ceil(w / cell)))),
          ny(std::max(1, static_cast<int>(std::ceil(h / cell)))),
          cells(static_cast<size_t>(nx) * ny) {}

    void insert(const Vec2& p) {
        int cx = std::clamp(static_cast<int>(p.x / cell), 0, nx - 1);
        int cy = std::clamp(static_cast<int>(p.y / cell), 0, ny - 1);
        cells[static_cast<size_t>(cy) * nx + cx].push_back(p);
    }

    // true if any stored point lies within `radius` of p
    bool near(const Vec2& p, double radius) const {
        int r = static_cast<int>(std::ceil(radius / cell)) + 1;
        int cx = std::clamp(static_cast<int>(p.x / cell), 0, nx - 1);
        int cy = std::clamp(static_cast<int>(p.y / cell), 0, ny - 1);
        double r2 = radius * radius;
        for (int gy = std::max(0, cy - r); gy <= std::min(ny - 1, cy + r); ++gy)
            for (int gx = std::max(0, cx - r); gx <= std::min(nx - 1, cx + r); ++gx)
                for (const Vec2& q : cells[static_cast<size_t>(gy) * nx + gx])
                    if ((q - p).length2() <= r2) return true;
        return false;
    }
};

struct Tracer {
    const ScalarImage& render;
    const DirectionField& field;
    const HatchParams& params;
    double tone_limit;
    bool perpendicular;
    const OccupancyGrid& occupied;

    bool usable(const Vec2& p) const {
        int x = static_cast<int>(std::floor(p.x));
        int y = static_cast<int>(std::floor(p.y));
        if (x < 0 || x >= field.width || y < 0 || y >= field.height) return false;
        if (!field.covered(x, y)) return false;
        return render.at(x, y) < tone_limit;
    }

    Vec2 direction(const Vec2& p, const Vec2& prev) const {
        Vec2 d = field.direction_at(p.x, p.y);
        if (perpendicular) d = perp(d);
        if (dot(d, prev) < 0.0) d = -d; // line field: keep continuity
        return d;
    }

    // integrate one side of the streamline
    std::vector<Vec2> trace(const Vec2& seed, const Vec2& start_dir) const {
        std::vector<Vec2> pts;
        Vec2 p = seed;
        Vec2 dir = start_dir;
        double len = 0.0;
        while (len < params.max_len * 0.5) {
            Vec2 d = direction(p, dir);
            Vec2 q = p + d * params.step;
            if (!usable(q)) break;
            if (occupied.near(q, params.spacing)) break;
            pts.push_back(q);
            len += params.step;
            dir = d;
            p = q;
        }
        return pts;
    }
};

} // namespace

std::vector<Stroke> generate_hatching(const ScalarImage& render, const DirectionField& field,
                                      const HatchParams& params) {
    params.validate();
    std::vector<Stroke> out;
    const double thickness = params.thickness_ratio * params.spacing;

    for (int level = 0; level < params.levels; ++level) {
        double tone_limit = level == 0 ? params.t1 : params.t2;
        OccupancyGrid grid(field.width, field.height, params.spacing);
        std::mt19937 rng(params.seed + static_cast<uint32_t>(level) * 7919u);
        std::uniform_real_distribution<double> jitter(-0.5, 0.5);

        Tracer tracer{render, field, params, tone_limit, level == 1, grid};

        // jittered seed grid, row-major for determinism
        double pitch = params.spacing;
        for (double gy = pitch * 0.5; gy < field.height; gy += pitch) {
            for (double gx = pitch * 0.5; gx < field.width; gx += pitch) {
                Vec2 seed{gx + jitter(rng) * pitch * 0.5, gy + jitter(rng) * 0.2 * pitch};
                if (!tracer.usable(seed)) continue;
                if (grid.near(seed, params.spacing)) continue;

                Vec2 d0 = tracer.direction(seed, Vec2{1, 0});
                std::vector<Vec2> fwd = tracer.trace(seed, d0);
                std::vector<Vec2> back = tracer.trace(seed, -d0);

                std::vector<Vec2> pts;
                pts.reserve(back.size() + fwd.size() + 1);
                for (auto it = back.rbegin(); it != back.rend(); ++it) pts.push_back(*it);
                pts.push_back(seed);
                pts.insert(pts.end(), fwd.begin(), fwd.end());

                double len = 0.0;
                for (size_t i = 0; i + 1 < pts.size(); ++i)
                    len += (pts[i + 1] - pts[i]).length();
                if (len < params.spacing) continue; // too short to matter

                for (const Vec2& p : pts) grid.insert(p);
                Stroke s;
                s.tag = StrokeTag::Hatch;
                s.points = std::move(pts);
                s.thickness.assign(s.points.size(), thickness);
                out.push_back(std::move(s));
            }
        }
    }
    return out;
}

} // namespace ink
