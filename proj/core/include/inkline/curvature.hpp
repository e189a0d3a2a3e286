#pragma once

#include <vector>

#include "inkline/mesh.hpp"

namespace ink {

// Principal curvatures and directions per vertex. Sign convention: convex
// toward the outward normal is positive (unit sphere -> kappa = +1).
struct CurvatureField {
    std::vector<double> kappa1; // kappa1 >= kappa2, 1/scene-unit
    std::vector<double> kappa2;
    std::vector<Vec3> dir1;     // unit, tangent, orthogonal to dir2 and n
    std::vector<Vec3> dir2;
    std::vector<uint8_t> umbilic;      // rank-deficient fit: directions arbitrary
    std::vector<uint8_t> underdefined; // < 5 distinct 2-ring neighbors

    size_t size() const { return kappa1.size(); }
};

// Quadric fit in the vertex tangent frame over the 2-ring neighborhood;
// eigen-decomposition of the fitted second fundamental form.
CurvatureField estimate_curvature(const Mesh& mesh);

} // namespace ink
