#pragma once

#include "torusdimer/newton_polygon.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace td {

using VertexId = int;
using DartId = int;
using EdgeId = int;
using FaceId = int;
using Displacement = LatticePoint;

enum class Color { black, white, none };

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Position {
    double x = 0, y = 0;
};

// Rotation system on the torus. Edge e owns darts 2e (v1 -> v2, "e+") and 2e+1 ("e-").
// Faces are orbits of d -> prev_ccw(twin(d)); face_of(d) is the face on the left of d.
class TorusGraph {
public:
    struct Vertex {
        std::string name;
        Color color = Color::none;
        std::optional<Position> pos;
    };

    TorusGraph() = default;

    // Unchecked assembly from arrays; validate_graph() reports what is wrong with them.
    static TorusGraph from_parts(std::vector<Vertex> vertices, std::vector<std::string> edge_names,
                                 std::vector<VertexId> tail, std::vector<DartId> twin, std::vector<DartId> next_ccw,
                                 std::vector<Displacement> disp,
                                 std::vector<std::pair<std::string, DartId>> face_anchors = {});

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_darts() const { return static_cast<int>(tail_.size()); }
    int num_edges() const { return num_darts() / 2; }
    int num_faces() const { return static_cast<int>(faces_.size()); }

    const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
    const std::string& vertex_name(VertexId v) const { return vertices_.at(v).name; }
    Color color(VertexId v) const { return vertices_.at(v).color; }
    bool colored() const;
    bool is_bipartite() const;

    VertexId tail(DartId d) const { return tail_.at(d); }
    VertexId head(DartId d) const { return tail_.at(twin_.at(d)); }
    DartId twin(DartId d) const { return twin_.at(d); }
    DartId next_ccw(DartId d) const { return next_.at(d); }
    DartId prev_ccw(DartId d) const { return prev_.at(d); }
    Displacement disp(DartId d) const { return disp_.at(d); }
    EdgeId edge_of(DartId d) const { return d / 2; }
    static DartId dart_of(EdgeId e, bool forward = true) { return 2 * e + (forward ? 0 : 1); }
    const std::string& edge_name(EdgeId e) const { return edge_names_.at(e); }
    std::string dart_name(DartId d) const { return edge_names_.at(d / 2) + ((d & 1) ? "-" : "+"); }

    // darts leaving v in ccw order, starting at the lowest dart id
    std::vector<DartId> darts_at(VertexId v) const;
    int degree(VertexId v) const { return static_cast<int>(darts_at(v).size()); }

    DartId face_next(DartId d) const { return prev_.at(twin_.at(d)); }
    FaceId face_of(DartId d) const { return face_of_.at(d); }
    const std::vector<DartId>& face_darts(FaceId f) const { return faces_.at(f); }
    const std::string& face_name(FaceId f) const { return face_names_.at(f); }

    VertexId vertex_index(const std::string& name) const;
    EdgeId edge_index(const std::string& name) const;
    DartId dart_index(const std::string& name) const;  // "<edge>+" or "<edge>-"
    FaceId face_index(const std::string& name) const;
    std::optional<VertexId> find_vertex(const std::string& name) const;
    std::optional<FaceId> find_face(const std::string& name) const;

    // (name, anchor dart) pairs for explicitly named faces, in naming order
    const std::vector<std::pair<std::string, DartId>>& face_anchors() const { return anchors_; }

    const std::vector<VertexId>& tails() const { return tail_; }
    const std::vector<DartId>& twins() const { return twin_; }
    const std::vector<DartId>& nexts() const { return next_; }
    const std::vector<Displacement>& disps() const { return disp_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<std::string>& edge_names() const { return edge_names_; }

private:
    void derive();

    std::vector<Vertex> vertices_;
    std::vector<std::string> edge_names_;
    std::vector<VertexId> tail_;
    std::vector<DartId> twin_, next_, prev_;
    std::vector<Displacement> disp_;
    std::vector<std::pair<std::string, DartId>> anchors_;
    std::vector<std::vector<DartId>> faces_;
    std::vector<FaceId> face_of_;
    std::vector<std::string> face_names_;
};

class GraphBuilder {
public:
    VertexId add_vertex(std::string name, Color c = Color::none, std::optional<Position> pos = {});
    EdgeId add_edge(std::string name, VertexId v1, VertexId v2, Displacement d);
    void set_rotation(VertexId v, std::vector<DartId> ccw);
    void name_face(std::string name, DartId d);

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_edges() const { return static_cast<int>(edge_names_.size()); }
    VertexId vertex_index(const std::string& name) const;
    EdgeId edge_index(const std::string& name) const;
    DartId dart_index(const std::string& name) const;

    // Checks each dart appears exactly once in the rotation of its tail.
    TorusGraph build() const;

private:
    std::vector<TorusGraph::Vertex> vertices_;
    std::vector<std::string> edge_names_;
    std::vector<VertexId> tail_;
    std::vector<Displacement> disp_;
    std::vector<std::optional<std::vector<DartId>>> rot_;
    std::vector<std::pair<std::string, DartId>> anchors_;
    std::map<std::string, VertexId> vindex_;
    std::map<std::string, EdgeId> eindex_;
};

// Integer 1-chain stored per edge, oriented along the edge's "+" dart.
struct CycleZ {
    std::vector<long> flow;

    CycleZ() = default;
    explicit CycleZ(int edges) : flow(edges, 0) {}
    static CycleZ from_darts(const TorusGraph& g, const std::vector<DartId>& darts);
    static CycleZ face_boundary(const TorusGraph& g, FaceId f);

    void add_dart(DartId d, long times = 1);
    long on_dart(DartId d) const { return (d & 1) ? -flow.at(d / 2) : flow.at(d / 2); }
    bool is_zero() const;
    CycleZ& operator+=(const CycleZ& o);
    CycleZ& operator-=(const CycleZ& o);
    friend CycleZ operator+(CycleZ a, const CycleZ& b) { return a += b; }
    friend CycleZ operator-(CycleZ a, const CycleZ& b) { return a -= b; }
    friend CycleZ operator-(CycleZ a);
    friend CycleZ operator*(long k, CycleZ a);
    friend bool operator==(const CycleZ& a, const CycleZ& b) { return a.flow == b.flow; }
};

bool is_cycle(const TorusGraph& g, const CycleZ& c);
LatticePoint homology_class(const TorusGraph& g, const CycleZ& c);  // throws on non-cycles

struct ValidationReport {
    bool ok = true;
    int vertices = 0, edges = 0, faces = 0, euler = 0;
    std::vector<std::pair<std::string, int>> face_sizes;
    std::vector<std::string> errors;
};

ValidationReport validate_graph(const TorusGraph& g);
std::string to_string(const ValidationReport& r);

// Fundamental cycles of a BFS spanning tree combined into classes (1,0) and (0,1).
std::pair<CycleZ, CycleZ> homology_basis(const TorusGraph& g);

}  // namespace td
