#pragma once

#include <vector>

#include "inkline/mesh.hpp"

namespace ink {

struct RayHit {
    double t = 0.0;
    int face = -1;
};

// Axis-aligned BVH over mesh triangles (median split). Used for shadow rays
// in the point/ring light render paths.
class MeshBVH {
public:
    explicit MeshBVH(const Mesh& mesh);

    // Nearest intersection with t in (t_min, t_max); returns hit.face >= 0 on hit.
    RayHit intersect(const Vec3& origin, const Vec3& dir, double t_min, double t_max) const;

    // True if any triangle intersects with t in (t_min, t_max).
    bool occluded(const Vec3& origin, const Vec3& dir, double t_min, double t_max) const;

private:
    struct Node {
        Vec3 bb_min, bb_max;
        int left = -1, right = -1; // internal children
        int first = 0, count = 0;  // leaf triangle range
        bool leaf() const { return count > 0; }
    };

    const Mesh& mesh_;
    std::vector<Node> nodes_;
    std::vector<int> tri_order_;

    int build(std::vector<int>& tris, int begin, int end);
    template <bool AnyHit>
    bool traverse(const Vec3& o, const Vec3& d, double t_min, double t_max, RayHit* out) const;
};

// Moller-Trumbore ray/triangle intersection; returns t > 0 on hit, -1 otherwise.
double ray_triangle(const Vec3& origin, const Vec3& dir,
                    const Vec3& a, const Vec3& b, const Vec3& c);

} // namespace ink
