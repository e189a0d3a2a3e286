#include "inkline/raycast.hpp"

#include <algorithm>
#include <numeric>

namespace ink {

double ray_triangle(const Vec3& origin, const Vec3& dir,
                    const Vec3& a, const Vec3& b, const Vec3& c) {
    const double eps = 1e-12;
    Vec3 e1 = b - a, e2 = c - a;
    Vec3 pvec = cross(dir, e2);
    double det = dot(e1, pvec);
    if (std::fabs(det) < eps) return -1.0;
    double inv_det = 1.0 / det;
    Vec3 tvec = origin - a;
    double u = dot(tvec, pvec) * inv_det;
    if (u < 0.0 || u > 1.0) return -1.0;
    Vec3 qvec = cross(tvec, e1);
    double v = dot(dir, qvec) * inv_det;
    if (v < 0.0 || u + v > 1.0) return -1.0;
    double t = dot(e2, qvec) * inv_det;
    return t > 0.0 ? t : -1.0;
}

namespace {

bool ray_box(const Vec3& o, const Vec3& inv_d, const Vec3& bmin, const Vec3& bmax,
             double t_min, double t_max) {
    for (int i = 0; i < 3; ++i) {
        double t0 = (bmin[i] - o[i]) * inv_d[i];
        double t1 = (bmax[i] - o[i]) * inv_d[i];
        if (t0 > t1) std::swap(t0, t1);
        t_min = std::max(t_min, t0);
        t_max = std::min(t_max, t1);
        if (t_min > t_max) return false;
    }
    return true;
}

} // namespace

MeshBVH::MeshBVH(const Mesh& mesh) : mesh_(mesh) {
    std::vector<int> tris(mesh.faces.size());
    std::iota(tris.begin(), tris.end(), 0);
    nodes_.reserve(mesh.faces.size() * 2);
    if (!tris.empty()) build(tris, 0, static_cast<int>(tris.size()));
    tri_order_ = std::move(tris);
}

int MeshBVH::build(std::vector<int>& tris, int begin, int end) {
    Node node;
    node.bb_min = Vec3{1e300, 1e300, 1e300};
    node.bb_max = Vec3{-1e300, -1e300, -1e300};
    for (int i = begin; i < end; ++i) {
        const auto& f = mesh_.faces[tris[i]];
        for (int k = 0; k < 3; ++k) {
            node.bb_min = min(node.bb_min, mesh_.vertices[f[k]]);
            node.bb_max = max(node.bb_max, mesh_.vertices[f[k]]);
        }
    }
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);

    if (end - begin <= 8) {
        nodes_[id].first = begin;
        nodes_[id].count = end - begin;
        return id;
    }

    Vec3 extent = node.bb_max - node.bb_min;
    int axis = extent.x >= extent.y && extent.x >= extent.z ? 0 : (extent.y >= extent.z ? 1 : 2);
    int mid = (begin + end) / 2;
    std::nth_element(tris.begin() + begin, tris.begin() + mid, tris.begin() + end,
                     [&](int a, int b) {
                         return mesh_.face_centroid(a)[axis] < mesh_.face_centroid(b)[axis];
                     });
    int left = build(tris, begin, mid);
    int right = build(tris, mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

template <bool AnyHit>
bool MeshBVH::traverse(const Vec3& o, const Vec3& d, double t_min, double t_max,
                       RayHit* out) const {
    if (nodes_.empty()) return false;
    Vec3 inv_d{1.0 / d.x, 1.0 / d.y, 1.0 / d.z};
    int stack[64];
    int sp = 0;
    stack[sp++] = 0;
    bool found = false;
    double best = t_max;
    while (sp > 0) {
        const Node& node = nodes_[stack[--sp]];
        if (!ray_box(o, inv_d, node.bb_min, node.bb_max, t_min, best)) continue;
        if (node.leaf()) {
            for (int i = node.first; i < node.first + node.count; ++i) {
                int tri = tri_order_[i];
                const auto& f = mesh_.faces[tri];
                double t = ray_triangle(o, d, mesh_.vertices[f[0]], mesh_.vertices[f[1]],
                                        mesh_.vertices[f[2]]);
                if (t > t_min && t < best) {
                    if constexpr (AnyHit) return true;
                    best = t;
                    found = true;
                    if (out) {
                        out->t = t;
                        out->face = tri;
                    }
                }
            }
        } else {
            stack[sp++] = node.left;
            stack[sp++] = node.right;
        }
    }
    return found;
}

RayHit MeshBVH::intersect(const Vec3& origin, const Vec3& dir, double t_min, double t_max) const {
    RayHit hit;
    traverse<false>(origin, dir, t_min, t_max, &hit);
    return hit;
}

bool MeshBVH::occluded(const Vec3& origin, const Vec3& dir, double t_min, double t_max) const {
    return traverse<true>(origin, dir, t_min, t_max, nullptr);
}

} // namespace ink
