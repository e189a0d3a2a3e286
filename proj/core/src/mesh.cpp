#include "inkline/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ink {

void Mesh::update_bbox() {
    if (vertices.empty()) {
        bbox_min = bbox_max = Vec3{};
        return;
    }
    bbox_min = bbox_max = vertices[0];
    for (const Vec3& v : vertices) {
        bbox_min = min(bbox_min, v);
        bbox_max = max(bbox_max, v);
    }
}

void Mesh::update_manifold_flag() {
    EdgeAdjacency adj = EdgeAdjacency::build(*this);
    non_manifold_edges = 0;
    for (const auto& e : adj.edges)
        if (e.faces.size() > 2) ++non_manifold_edges;
    edge_manifold = non_manifold_edges == 0;
}

namespace {

// Degenerate iff the face's area is vanishing relative to its longest edge.
bool face_degenerate(const Vec3& a, const Vec3& b, const Vec3& c) {
    double area2 = cross(b - a, c - a).length();
    double lmax2 = std::max({(b - a).length2(), (c - a).length2(), (c - b).length2()});
    return area2 <= 1e-12 * lmax2;
}

struct ObjCorner {
    int v = 0;  // 1-based, may be negative (relative)
    int vn = 0; // 0 = absent
};

ObjCorner parse_corner(const std::string& tok, int line_no) {
    ObjCorner c;
    size_t s1 = tok.find('/');
    auto to_int = [&](const std::string& s) {
        int val = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), val);
        if (ec != std::errc() || p != s.data() + s.size())
            throw Error("obj parse error at line " + std::to_string(line_no) +
                        ": bad face index '" + tok + "'");
        return val;
    };
    if (s1 == std::string::npos) {
        c.v = to_int(tok);
        return c;
    }
    c.v = to_int(tok.substr(0, s1));
    size_t s2 = tok.find('/', s1 + 1);
    if (s2 == std::string::npos) return c; // v/vt
    std::string vn = tok.substr(s2 + 1);
    if (!vn.empty()) c.vn = to_int(vn);
    return c;
}

int resolve_index(int idx, size_t count, int line_no) {
    int r = idx > 0 ? idx - 1 : static_cast<int>(count) + idx;
    if (idx == 0 || r < 0 || r >= static_cast<int>(count))
        throw Error("obj parse error at line " + std::to_string(line_no) +
                    ": index " + std::to_string(idx) + " out of range");
    return r;
}

} // namespace

Mesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("load_mesh: cannot open " + path);

    Mesh mesh;
    std::vector<Vec3> file_normals;
    // vertex -> normal index assigned via f v//n references (last one wins)
    std::vector<int> vertex_normal_ref;
    bool any_normal_ref = false;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind) || kind[0] == '#') continue;

        if (kind == "v") {
            Vec3 p;
            if (!(ls >> p.x >> p.y >> p.z))
                throw Error("obj parse error at line " + std::to_string(line_no) + ": bad vertex");
            mesh.vertices.push_back(p);
            vertex_normal_ref.push_back(-1);
        } else if (kind == "vn") {
            Vec3 n;
            if (!(ls >> n.x >> n.y >> n.z))
                throw Error("obj parse error at line " + std::to_string(line_no) + ": bad normal");
            file_normals.push_back(n);
        } else if (kind == "f") {
            std::vector<ObjCorner> corners;
            std::string tok;
            while (ls >> tok) corners.push_back(parse_corner(tok, line_no));
            if (corners.size() < 3)
                throw Error("obj parse error at line " + std::to_string(line_no) +
                            ": face needs at least 3 vertices");
            std::vector<int> vidx(corners.size());
            for (size_t i = 0; i < corners.size(); ++i) {
                vidx[i] = resolve_index(corners[i].v, mesh.vertices.size(), line_no);
                if (corners[i].vn != 0) {
                    int ni = resolve_index(corners[i].vn, file_normals.size(), line_no);
                    vertex_normal_ref[vidx[i]] = ni;
                    any_normal_ref = true;
                }
            }
            // fan triangulation
            for (size_t i = 1; i + 1 < vidx.size(); ++i) {
                int a = vidx[0], b = vidx[i], c = vidx[i + 1];
                if (face_degenerate(mesh.vertices[a], mesh.vertices[b], mesh.vertices[c]))
                    throw Error("load_mesh: degenerate (zero-area) face " +
                                std::to_string(mesh.faces.size()) + " at line " +
                                std::to_string(line_no));
                mesh.faces.push_back({a, b, c});
            }
        } else {
            ++mesh.ignored_directives;
        }
    }

    if (mesh.vertices.empty() || mesh.faces.empty())
        throw Error("load_mesh: empty mesh in " + path);

    bool normals_complete = any_normal_ref;
    if (any_normal_ref) {
        for (size_t v = 0; v < mesh.vertices.size(); ++v)
            if (vertex_normal_ref[v] < 0) {
                normals_complete = false;
                break;
            }
    }
    if (normals_complete) {
        mesh.normals.resize(mesh.vertices.size());
        for (size_t v = 0; v < mesh.vertices.size(); ++v) {
            Vec3 n = file_normals[vertex_normal_ref[v]];
            double len = n.length();
            if (len < 1e-12) {
                normals_complete = false;
                break;
            }
            mesh.normals[v] = n / len;
        }
    }
    mesh.update_bbox();
    mesh.update_manifold_flag();
    if (!normals_complete) {
        mesh.normals.clear();
        return compute_normals(std::move(mesh));
    }
    return mesh;
}

void save_mesh_obj(const std::string& path, const Mesh& mesh) {
    std::ofstream out(path);
    if (!out) throw Error("save_mesh_obj: cannot open " + path);
    char buf[256];
    for (const Vec3& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
        out << buf;
    }
    for (const Vec3& n : mesh.normals) {
        std::snprintf(buf, sizeof buf, "vn %.17g %.17g %.17g\n", n.x, n.y, n.z);
        out << buf;
    }
    bool has_n = mesh.has_normals();
    for (const auto& f : mesh.faces) {
        if (has_n)
            out << "f " << f[0] + 1 << "//" << f[0] + 1 << " " << f[1] + 1 << "//" << f[1] + 1
                << " " << f[2] + 1 << "//" << f[2] + 1 << "\n";
        else
            out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
    }
}

Mesh compute_normals(Mesh mesh) {
    mesh.normals.assign(mesh.vertices.size(), Vec3{});
    for (const auto& f : mesh.faces) {
        Vec3 fn = cross(mesh.vertices[f[1]] - mesh.vertices[f[0]],
                        mesh.vertices[f[2]] - mesh.vertices[f[0]]); // area-weighted
        mesh.normals[f[0]] += fn;
        mesh.normals[f[1]] += fn;
        mesh.normals[f[2]] += fn;
    }
    mesh.isolated_vertices = 0;
    for (size_t v = 0; v < mesh.normals.size(); ++v) {
        double len = mesh.normals[v].length();
        if (len < 1e-12) {
            mesh.normals[v] = Vec3{0, 0, 1}; // no incident face
            ++mesh.isolated_vertices;
        } else {
            mesh.normals[v] = mesh.normals[v] / len;
        }
    }
    mesh.update_bbox();
    return mesh;
}

// --- edge adjacency ---------------------------------------------------------

int EdgeAdjacency::edge_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    long long key = (static_cast<long long>(a) << 32) | static_cast<unsigned int>(b);
    auto it = std::lower_bound(lookup_.begin(), lookup_.end(), key,
                               [](const auto& p, long long k) { return p.first < k; });
    if (it == lookup_.end() || it->first != key) return -1;
    return it->second;
}

EdgeAdjacency EdgeAdjacency::build(const Mesh& mesh) {
    EdgeAdjacency adj;
    adj.face_edges.resize(mesh.faces.size());
    std::vector<std::pair<long long, int>> raw; // (key, face)
    raw.reserve(mesh.faces.size() * 3);
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        const auto& t = mesh.faces[f];
        for (int k = 0; k < 3; ++k) {
            int a = t[k], b = t[(k + 1) % 3];
            if (a > b) std::swap(a, b);
            raw.emplace_back((static_cast<long long>(a) << 32) | static_cast<unsigned int>(b),
                             static_cast<int>(f));
        }
    }
    std::sort(raw.begin(), raw.end());
    for (size_t i = 0; i < raw.size();) {
        size_t j = i;
        Edge e;
        e.v0 = static_cast<int>(raw[i].first >> 32);
        e.v1 = static_cast<int>(raw[i].first & 0xffffffff);
        while (j < raw.size() && raw[j].first == raw[i].first) e.faces.push_back(raw[j++].second);
        int id = static_cast<int>(adj.edges.size());
        adj.lookup_.emplace_back(raw[i].first, id);
        adj.edges.push_back(std::move(e));
        i = j;
    }
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        const auto& t = mesh.faces[f];
        for (int k = 0; k < 3; ++k)
            adj.face_edges[f][k] = adj.edge_index(t[k], t[(k + 1) % 3]);
    }
    return adj;
}

} // namespace ink
