#pragma once

#include "inkline/mesh.hpp"

namespace ink {

// Procedural primitives with analytic normals. Used by tests, benchmarks
// and as quick CLI inputs via save_mesh_obj.

// Unit icosphere: icosahedron subdivided `subdivisions` times, vertices
// projected to the unit sphere. subdivisions = 4 -> 2562 verts, 5120 faces.
Mesh make_icosphere(int subdivisions);

// Torus around the z axis: center-circle radius R, tube radius r.
Mesh make_torus(double R, double r, int segments_u, int segments_v);

// Open cylinder of given radius about the z axis, z in [-half_height, half_height].
Mesh make_cylinder(double radius, double half_height, int segments, int rings);

// Axis-aligned cube, side length `size`, centered at origin.
// shared_vertices = true: 8 shared vertices, 12 faces, averaged normals
// (edge-manifold; for feature-edge classification).
// shared_vertices = false: 24 vertices with face-constant normals (faces are
// disconnected quads; for interpolated-normal shading tests).
Mesh make_cube(double size, bool shared_vertices);

// Two coplanar CCW triangles spanning [-s, s]^2 in the xy plane (normal +z).
Mesh make_quad(double s);

// Plane grid in the xy plane, n x n quads over [-s, s]^2.
Mesh make_plane(double s, int n);

} // namespace ink
