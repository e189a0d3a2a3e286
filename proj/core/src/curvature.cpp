#include "inkline/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

namespace ink {

namespace {

// Solves the symmetric positive system A x = b (n <= 5) by Gaussian
// elimination with partial pivoting; returns false when rank-deficient.
bool solve_dense(double A[5][5], double b[5], int n, double* x) {
    int piv[5];
    for (int i = 0; i < n; ++i) piv[i] = i;
    for (int col = 0; col < n; ++col) {
        int best = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(A[r][col]) > std::fabs(A[best][col])) best = r;
        if (std::fabs(A[best][col]) < 1e-12) return false;
        if (best != col) {
            for (int k = 0; k < n; ++k) std::swap(A[col][k], A[best][k]);
            std::swap(b[col], b[best]);
        }
        for (int r = col + 1; r < n; ++r) {
            double m = A[r][col] / A[col][col];
            for (int k = col; k < n; ++k) A[r][k] -= m * A[col][k];
            b[r] -= m * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int k = r + 1; k < n; ++k) s -= A[r][k] * x[k];
        x[r] = s / A[r][r];
    }
    return true;
}

} // namespace

CurvatureField estimate_curvature(const Mesh& mesh) {
    if (!mesh.has_normals()) throw Error("estimate_curvature: mesh has no normals");
    size_t nv = mesh.vertices.size();
    CurvatureField field;
    field.kappa1.assign(nv, 0.0);
    field.kappa2.assign(nv, 0.0);
    field.dir1.assign(nv, Vec3{});
    field.dir2.assign(nv, Vec3{});
    field.umbilic.assign(nv, 0);
    field.underdefined.assign(nv, 0);

    // 1-ring adjacency
    std::vector<std::vector<int>> ring1(nv);
    for (const auto& f : mesh.faces)
        for (int k = 0; k < 3; ++k) {
            int a = f[k], b = f[(k + 1) % 3];
            ring1[a].push_back(b);
            ring1[b].push_back(a);
        }
    for (auto& r : ring1) {
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
    }

    std::vector<int> neighborhood;
    for (size_t v = 0; v < nv; ++v) {
        // distinct 2-ring neighbors
        neighborhood.clear();
        for (int n1 : ring1[v]) {
            neighborhood.push_back(n1);
            for (int n2 : ring1[n1])
                if (n2 != static_cast<int>(v)) neighborhood.push_back(n2);
        }
        std::sort(neighborhood.begin(), neighborhood.end());
        neighborhood.erase(std::unique(neighborhood.begin(), neighborhood.end()),
                           neighborhood.end());

        const Vec3& p = mesh.vertices[v];
        const Vec3& n = mesh.normals[v];
        Vec3 e1 = any_perpendicular(n);
        Vec3 e2 = cross(n, e1);
        field.dir1[v] = e1;
        field.dir2[v] = e2;

        if (neighborhood.size() < 5) {
            field.underdefined[v] = 1;
            field.umbilic[v] = 1;
            continue;
        }

        // normalize offsets by the mean neighbor distance so the normal
        // equations are well conditioned at any mesh scale
        double scale = 0.0;
        for (int q : neighborhood) scale += (mesh.vertices[q] - p).length();
        scale /= static_cast<double>(neighborhood.size());
        if (scale < 1e-300) {
            field.umbilic[v] = 1;
            continue;
        }

        // fit h(u,w) = a u^2 + b u w + c w^2 + d u + e w over the 2-ring
        double AtA[5][5] = {};
        double Atb[5] = {};
        for (int q : neighborhood) {
            Vec3 d = (mesh.vertices[q] - p) / scale;
            double u = dot(d, e1), w = dot(d, e2), h = dot(d, n);
            double row[5] = {u * u, u * w, w * w, u, w};
            for (int i = 0; i < 5; ++i) {
                for (int j = 0; j < 5; ++j) AtA[i][j] += row[i] * row[j];
                Atb[i] += row[i] * h;
            }
        }
        double coef[5];
        if (!solve_dense(AtA, Atb, 5, coef)) {
            field.umbilic[v] = 1;
            continue;
        }

        // shape operator = -Hessian of the fitted height (outward-convex
        // positive); quadratic coefficients pick up 1/scale on the way back
        double s11 = -2.0 * coef[0] / scale;
        double s12 = -coef[1] / scale;
        double s22 = -2.0 * coef[2] / scale;
        double mean = 0.5 * (s11 + s22);
        double diff = 0.5 * (s11 - s22);
        double rad = std::sqrt(diff * diff + s12 * s12);
        double k1 = mean + rad;
        double k2 = mean - rad;

        Vec3 d1;
        if (rad <= 0.05 * std::max(std::fabs(k1), std::fabs(k2)) + 1e-9 / scale) {
            field.umbilic[v] = 1; // isotropic within tolerance: directions arbitrary
            d1 = e1;
        } else {
            // eigenvector of [[s11, s12], [s12, s22]] for k1
            double vx, vy;
            if (std::fabs(s12) > 1e-300) {
                vx = k1 - s22;
                vy = s12;
            } else if (s11 >= s22) {
                vx = 1.0;
                vy = 0.0;
            } else {
                vx = 0.0;
                vy = 1.0;
            }
            double len = std::hypot(vx, vy);
            d1 = e1 * (vx / len) + e2 * (vy / len);
        }
        field.kappa1[v] = k1;
        field.kappa2[v] = k2;
        field.dir1[v] = d1;
        field.dir2[v] = normalized(cross(n, d1));
    }
    return field;
}

} // namespace ink
