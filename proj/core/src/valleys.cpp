#include "inkline/valleys.hpp"

#include <algorithm>
#include <cmath>

namespace ink {

ScalarImage luminance(const ColorImage& image) {
    if (image.bit_depth != 8)
        throw Error("luminance: unsupported bit depth " + std::to_string(image.bit_depth));
    if (image.channels != 1 && image.channels != 3)
        throw Error("luminance: expected 1 or 3 channels, got " +
                    std::to_string(image.channels));
    ScalarImage out(image.width, image.height);
    size_t n = static_cast<size_t>(image.width) * image.height;
    if (image.channels == 1) {
        for (size_t i = 0; i < n; ++i) out.data[i] = image.data[i] / 255.0;
    } else {
        for (size_t i = 0; i < n; ++i) {
            double r = image.data[3 * i] / 255.0;
            double g = image.data[3 * i + 1] / 255.0;
            double b = image.data[3 * i + 2] / 255.0;
            out.data[i] = 0.2126 * r + 0.7152 * g + 0.0722 * b; // Rec.709
        }
    }
    return out;
}

namespace {

// symmetric reflect padding index
inline int mirror(int i, int n) {
    if (i < 0) return -i - 1;
    if (i >= n) return 2 * n - i - 1;
    return i;
}

// Gaussian smoothing as a direct 2D convolution whose summation order is
// invariant under the image's 90-degree rotations: taps are accumulated per
// rotation orbit as w * ((v + v_antipodal) + (v' + v'_antipodal)). This keeps
// the NMS mask exactly covariant under rotation (the separable two-pass form
// is not bitwise rotation-symmetric).
ScalarImage gaussian_smooth_d4(const ScalarImage& img, double sigma) {
    int r = static_cast<int>(std::ceil(3.0 * sigma));
    if (2 * r + 1 > std::min(img.width, img.height))
        throw Error("detect_valleys: sigma too large for image");
    std::vector<double> w1(r + 1);
    double sum = 0.0;
    for (int k = 0; k <= r; ++k) {
        w1[k] = std::exp(-0.5 * k * k / (sigma * sigma));
        sum += k == 0 ? w1[k] : 2.0 * w1[k];
    }
    for (double& w : w1) w /= sum;

    const int W = img.width, H = img.height;
    ScalarImage out(W, H);
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            auto v = [&](int dx, int dy) {
                return img.at(mirror(x + dx, W), mirror(y + dy, H));
            };
            double s = w1[0] * w1[0] * v(0, 0);
            for (int d = 1; d <= r; ++d) // on-axis orbits
                s += (w1[d] * w1[0]) * ((v(d, 0) + v(-d, 0)) + (v(0, d) + v(0, -d)));
            for (int dx = 1; dx <= r; ++dx)
                for (int dy = 1; dy <= r; ++dy)
                    s += (w1[dx] * w1[dy]) *
                         ((v(dx, dy) + v(-dx, -dy)) + (v(-dy, dx) + v(dy, -dx)));
            out.at(x, y) = s;
        }
    }
    return out;
}

// Cross-valley direction quantized to 4 sectors from the doubled-angle pair
// (u, w) = (Ixx - Iyy, 2 Ixy); the comparisons are chosen so a 90-degree
// rotation (u, w) -> (-u, -w) maps S0<->S2 and S1<->S3 exactly.
int quantize_sector(double u, double w) {
    if (u > 0.0 && -u <= w && w < u) return 0;  // cross along x
    if (w > 0.0 && -w < u && u <= w) return 1;  // cross along (1, 1)
    if (u < 0.0 && u < w && w <= -u) return 2;  // cross along y
    if (w < 0.0 && w <= u && u < -w) return 3;  // cross along (1, -1)
    return 0;                                   // isotropic (strength ~ 0)
}

const int sector_dx[4] = {1, 1, 0, 1};
const int sector_dy[4] = {0, 1, 1, -1};

} // namespace

ValleyMap detect_valleys(const ScalarImage& img, double sigma, double tau, double min_strength) {
    if (sigma < 0.5) throw Error("detect_valleys: sigma must be >= 0.5");
    if (!(tau > 0.0) || tau > 1.0) throw Error("detect_valleys: tau must be in (0, 1]");

    const int W = img.width, H = img.height;
    ScalarImage smooth = gaussian_smooth_d4(img, sigma);

    ValleyMap vm;
    vm.width = W;
    vm.height = H;
    vm.strength = ScalarImage(W, H, 0.0);
    vm.orientation = ScalarImage(W, H, 0.0);
    vm.offset_x = ScalarImage(W, H, 0.0);
    vm.offset_y = ScalarImage(W, H, 0.0);
    vm.mask.assign(static_cast<size_t>(W) * H, 0);

    ScalarImage uu(W, H, 0.0), ww(W, H, 0.0); // doubled-angle Hessian pair
    const int margin = std::max(1, static_cast<int>(std::ceil(sigma)));

    for (int y = 1; y < H - 1; ++y) {
        for (int x = 1; x < W - 1; ++x) {
            double ixx = (smooth.at(x + 1, y) + smooth.at(x - 1, y)) - 2.0 * smooth.at(x, y);
            double iyy = (smooth.at(x, y + 1) + smooth.at(x, y - 1)) - 2.0 * smooth.at(x, y);
            // grouped so rotation negates it exactly
            double ixy = ((smooth.at(x + 1, y + 1) + smooth.at(x - 1, y - 1)) -
                          (smooth.at(x + 1, y - 1) + smooth.at(x - 1, y + 1))) * 0.25;
            double mean = 0.5 * (ixx + iyy);
            double half_diff = 0.5 * (ixx - iyy);
            double lam = mean + std::sqrt(half_diff * half_diff + ixy * ixy);
            vm.strength.at(x, y) = std::max(lam, 0.0);
            uu.at(x, y) = ixx - iyy;
            ww.at(x, y) = 2.0 * ixy;
            // tangent angle = cross-valley angle + 90 degrees, in [0, pi)
            double theta = 0.5 * std::atan2(ww.at(x, y), uu.at(x, y)) + 0.5 * M_PI;
            if (theta >= M_PI) theta -= M_PI;
            if (theta < 0.0) theta += M_PI;
            vm.orientation.at(x, y) = theta;
        }
    }

    for (int y = margin; y < H - margin; ++y) {
        for (int x = margin; x < W - margin; ++x) {
            double s0 = vm.strength.at(x, y);
            if (!(s0 > min_strength)) continue;
            if (!(img.at(x, y) < tau)) continue;
            int sector = quantize_sector(uu.at(x, y), ww.at(x, y));
            int dx = sector_dx[sector], dy = sector_dy[sector];
            double sm = vm.strength.at_clamped(x - dx, y - dy);
            double sp = vm.strength.at_clamped(x + dx, y + dy);
            if (!(s0 >= sm && s0 >= sp)) continue;
            vm.mask[static_cast<size_t>(y) * W + x] = 1;
            // quadratic sub-pixel localization along the sampled direction
            double denom = (sm + sp) - 2.0 * s0;
            double delta = 0.0;
            if (std::fabs(denom) > 1e-300) {
                delta = 0.5 * (sm - sp) / denom;
                delta = std::clamp(delta, -0.5, 0.5);
            }
            vm.offset_x.at(x, y) = delta * dx;
            vm.offset_y.at(x, y) = delta * dy;
        }
    }
    return vm;
}

// --- chaining ----------------------------------------------------------------

double Polyline2D::arclength() const {
    double len = 0.0;
    for (size_t i = 0; i + 1 < points.size(); ++i) len += (points[i + 1] - points[i]).length();
    if (closed && points.size() >= 2) len += (points.front() - points.back()).length();
    return len;
}

namespace {

inline double angle_diff_mod_pi(double a, double b) {
    double d = std::fabs(a - b);
    d = std::fmod(d, M_PI);
    return std::min(d, M_PI - d);
}

struct Chainer {
    const ValleyMap& vm;
    std::vector<uint8_t> visited;
    static constexpr double kMaxStep = M_PI / 4.0 + 1e-9;

    explicit Chainer(const ValleyMap& m)
        : vm(m), visited(static_cast<size_t>(m.width) * m.height, 0) {}

    bool masked_unvisited(int x, int y) const {
        if (x < 0 || x >= vm.width || y < 0 || y >= vm.height) return false;
        size_t i = static_cast<size_t>(y) * vm.width + x;
        return vm.mask[i] && !visited[i];
    }

    // Best unvisited 8-neighbor compatible with the local orientation.
    bool next_step(int x, int y, int* nx, int* ny) const {
        double here = vm.orientation.at(x, y);
        double best = 1e9;
        bool found = false;
        static const int offs[8][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1},
                                       {1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
        for (const auto& o : offs) {
            int qx = x + o[0], qy = y + o[1];
            if (!masked_unvisited(qx, qy)) continue;
            double step_ang = std::atan2(static_cast<double>(o[1]), static_cast<double>(o[0]));
            if (step_ang < 0.0) step_ang += M_PI;
            if (angle_diff_mod_pi(step_ang, here) > kMaxStep) continue;
            if (angle_diff_mod_pi(vm.orientation.at(qx, qy), here) > kMaxStep) continue;
            double score = angle_diff_mod_pi(step_ang, here);
            if (score < best) {
                best = score;
                *nx = qx;
                *ny = qy;
                found = true;
            }
        }
        return found;
    }

    std::vector<std::pair<int, int>> walk(int sx, int sy) {
        std::vector<std::pair<int, int>> fwd{{sx, sy}};
        visited[static_cast<size_t>(sy) * vm.width + sx] = 1;
        int x = sx, y = sy;
        int nx, ny;
        while (next_step(x, y, &nx, &ny)) {
            visited[static_cast<size_t>(ny) * vm.width + nx] = 1;
            fwd.emplace_back(nx, ny);
            x = nx;
            y = ny;
        }
        std::vector<std::pair<int, int>> back;
        x = sx;
        y = sy;
        while (next_step(x, y, &nx, &ny)) {
            visited[static_cast<size_t>(ny) * vm.width + nx] = 1;
            back.emplace_back(nx, ny);
            x = nx;
            y = ny;
        }
        std::reverse(back.begin(), back.end());
        back.insert(back.end(), fwd.begin(), fwd.end());
        return back;
    }
};

double end_orientation(const Polyline2D& p, bool front) {
    Vec2 d = front ? p.points[0] - p.points[1]
                   : p.points[p.points.size() - 1] - p.points[p.points.size() - 2];
    double a = std::atan2(d.y, d.x);
    if (a < 0.0) a += M_PI;
    if (a >= M_PI) a -= M_PI;
    return a;
}

} // namespace

std::vector<Polyline2D> link_valleys(const ValleyMap& map, const LinkOptions& options) {
    Chainer chainer(map);
    std::vector<Polyline2D> chains;

    for (int y = 0; y < map.height; ++y) {
        for (int x = 0; x < map.width; ++x) {
            if (!chainer.masked_unvisited(x, y)) continue;
            auto cells = chainer.walk(x, y);
            if (cells.size() < 2) continue;
            Polyline2D poly;
            poly.points.reserve(cells.size());
            for (auto [cx, cy] : cells) poly.points.push_back(map.point_at(cx, cy));
            // closed if the two ends are grid neighbors
            auto [fx, fy] = cells.front();
            auto [lx, ly] = cells.back();
            if (cells.size() >= 4 && std::abs(fx - lx) <= 1 && std::abs(fy - ly) <= 1)
                poly.closed = true;
            chains.push_back(std::move(poly));
        }
    }

    // endpoint merging
    const double merge2 = options.merge_radius * options.merge_radius;
    bool merged = true;
    while (merged) {
        merged = false;
        for (size_t i = 0; i < chains.size() && !merged; ++i) {
            if (chains[i].closed || chains[i].points.size() < 2) continue;
            for (size_t j = i + 1; j < chains.size() && !merged; ++j) {
                if (chains[j].closed || chains[j].points.size() < 2) continue;
                for (int ei = 0; ei < 2 && !merged; ++ei) {
                    for (int ej = 0; ej < 2 && !merged; ++ej) {
                        Vec2 pi = ei ? chains[i].points.back() : chains[i].points.front();
                        Vec2 pj = ej ? chains[j].points.back() : chains[j].points.front();
                        if ((pi - pj).length2() > merge2) continue;
                        if (angle_diff_mod_pi(end_orientation(chains[i], ei == 0),
                                              end_orientation(chains[j], ej == 0)) >
                            Chainer::kMaxStep)
                            continue;
                        // join: i tail -> j head
                        std::vector<Vec2> a = chains[i].points;
                        std::vector<Vec2> b = chains[j].points;
                        if (ei == 0) std::reverse(a.begin(), a.end());
                        if (ej == 1) std::reverse(b.begin(), b.end());
                        a.insert(a.end(), b.begin(), b.end());
                        chains[i].points = std::move(a);
                        chains.erase(chains.begin() + static_cast<long>(j));
                        merged = true;
                    }
                }
            }
        }
    }

    std::vector<Polyline2D> out;
    for (Polyline2D& c : chains)
        if (c.arclength() >= options.min_length) out.push_back(std::move(c));
    return out;
}

// --- suggestive tagging --------------------------------------------------------

std::vector<SuggestivePolyline> suggestive_strokes(const ScalarImage& render,
                                                   const std::vector<TaggedPolyline2D>& contours_img,
                                                   double tau,
                                                   const SuggestiveParams& params) {
    ValleyMap vm = detect_valleys(render, params.sigma, tau, params.min_strength);
    std::vector<Polyline2D> chains = link_valleys(vm, params.link);

    // distance field to the projected contours
    const int W = render.width, H = render.height;
    std::vector<uint8_t> contour_mask(static_cast<size_t>(W) * H, 0);
    bool have_contours = false;
    for (const TaggedPolyline2D& poly : contours_img) {
        for (size_t i = 0; i + 1 < poly.points.size(); ++i) {
            Vec2 a = poly.points[i], b = poly.points[i + 1];
            double len = (b - a).length();
            int n = std::max(1, static_cast<int>(std::ceil(len * 4.0)));
            for (int k = 0; k <= n; ++k) {
                Vec2 p = a + (b - a) * (static_cast<double>(k) / n);
                int x = static_cast<int>(std::floor(p.x));
                int y = static_cast<int>(std::floor(p.y));
                if (x >= 0 && x < W && y >= 0 && y < H) {
                    contour_mask[static_cast<size_t>(y) * W + x] = 1;
                    have_contours = true;
                }
            }
        }
    }
    ScalarImage dist = have_contours
                           ? distance_transform(contour_mask, W, H)
                           : ScalarImage(W, H, depth_infinity());

    std::vector<SuggestivePolyline> out;
    for (const Polyline2D& chain : chains) {
        std::vector<Vec2> pts = chain.points;
        if (chain.closed && !pts.empty()) pts.push_back(pts.front());

        SuggestivePolyline cur;
        bool cur_valid = false;
        auto flush = [&]() {
            if (cur_valid && cur.points.size() >= 2) out.push_back(cur);
            cur.points.clear();
            cur_valid = false;
        };
        for (const Vec2& p : pts) {
            int x = static_cast<int>(std::floor(p.x));
            int y = static_cast<int>(std::floor(p.y));
            ValleyPointTag tag;
            bool keep = false;
            if (x >= 0 && x < W && y >= 0 && y < H) {
                if (dist.at(x, y) <= params.contour_radius) {
                    tag = ValleyPointTag::Contour;
                    keep = true;
                } else {
                    double lum = render.at(x, y);
                    if (lum > 0.0 && lum < tau) {
                        tag = ValleyPointTag::Suggestive;
                        keep = true;
                    }
                }
            }
            if (!keep) {
                flush();
                continue;
            }
            if (cur_valid && tag != cur.tag) flush();
            if (!cur_valid) {
                cur.tag = tag;
                cur_valid = true;
            }
            cur.points.push_back(p);
        }
        flush();
    }
    return out;
}

} // namespace ink
