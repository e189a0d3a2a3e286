#pragma once

#include <array>
#include <string>
#include <vector>

#include "inkline/vec.hpp"

namespace ink {

// Indexed triangle mesh with per-vertex unit normals. Counter-clockwise
// winding corresponds to the outward normal.
struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<Vec3> normals;              // unit, one per vertex
    std::vector<std::array<int, 3>> faces;  // CCW vertex index triples

    Vec3 bbox_min, bbox_max;
    bool edge_manifold = true;     // every edge shared by <= 2 faces
    int non_manifold_edges = 0;
    int isolated_vertices = 0;     // vertices with no incident face (normal set to +z)
    int ignored_directives = 0;    // OBJ lines skipped by the reader

    bool has_normals() const { return normals.size() == vertices.size(); }
    Vec3 bbox_diagonal() const { return bbox_max - bbox_min; }
    double bbox_diag_length() const { return bbox_diagonal().length(); }
    Vec3 bbox_center() const { return (bbox_min + bbox_max) * 0.5; }

    Vec3 face_normal_raw(int f) const {  // area-weighted (unnormalized cross)
        const auto& t = faces[f];
        return cross(vertices[t[1]] - vertices[t[0]], vertices[t[2]] - vertices[t[0]]);
    }
    Vec3 face_centroid(int f) const {
        const auto& t = faces[f];
        return (vertices[t[0]] + vertices[t[1]] + vertices[t[2]]) / 3.0;
    }

    void update_bbox();
    void update_manifold_flag();
};

// Loads the OBJ subset (v, vn, f, # comments; polygons fan-triangulated;
// everything else ignored with a counted warning). Throws ink::Error with the
// offending line number on parse failure, on degenerate (zero-area) faces,
// and on empty meshes. Normals are taken from the file when consistently
// referenced, otherwise computed.
Mesh load_mesh(const std::string& path);

// Writes the same OBJ subset (v, vn, f with v//n references).
void save_mesh_obj(const std::string& path, const Mesh& mesh);

// Per-vertex normals as the normalized area-weighted average of incident
// face normals. Isolated vertices are flagged and get +z.
Mesh compute_normals(Mesh mesh);

// Undirected edge -> adjacent faces, built once and shared by the contour
// and feature-edge extractors.
struct EdgeAdjacency {
    struct Edge {
        int v0, v1;                 // v0 < v1
        std::vector<int> faces;
    };
    std::vector<Edge> edges;
    // faces[f] -> edge ids of its three edges, same order as face corners
    std::vector<std::array<int, 3>> face_edges;

    int edge_index(int a, int b) const; // -1 if absent
    static EdgeAdjacency build(const Mesh& mesh);

private:
    std::vector<std::pair<long long, int>> lookup_; // sorted (key, edge id)
};

} // namespace ink
