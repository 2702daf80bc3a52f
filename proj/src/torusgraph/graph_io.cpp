#include "torusdimer/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace td {

bool GraphFile::all_rational() const
{
    for (const auto& [e, w] : weights)
        if (!looks_rational(w)) return false;
    for (const auto& [e, c] : couplings)
        if (c.has_J() || !looks_rational(c.s) || !looks_rational(c.c)) return false;
    return true;
}

namespace {

std::vector<std::string> split_ws(const std::string& line)
{
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

long parse_long(const std::string& s, int line, const char* what)
{
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, std::string("bad ") + what + " '" + s + "'");
    }
}

void check_number(const std::string& s, int line, const char* what)
{
    if (looks_rational(s)) return;
    try {
        parse_double(s);
    } catch (const std::exception&) {
        throw ParseError(line, std::string("bad ") + what + " '" + s + "'");
    }
}

}  // namespace

GraphFile parse_graph(std::istream& in)
{
    GraphBuilder b;
    GraphFile f;
    struct Pending {
        int line;
        std::vector<std::string> tok;
    };
    std::vector<Pending> rots, faces, weights, couplings, cycles;
    std::map<std::string, int> rot_seen;

    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        auto tok = split_ws(raw);
        if (tok.empty()) continue;
        const std::string& key = tok[0];
        if (key == "vertex") {
            if (tok.size() != 3 && tok.size() != 5) throw ParseError(line, "vertex expects: vertex <id> <b|w|n> [<x> <y>]");
            Color c;
            if (tok[2] == "b")
                c = Color::black;
            else if (tok[2] == "w")
                c = Color::white;
            else if (tok[2] == "n")
                c = Color::none;
            else
                throw ParseError(line, "bad color '" + tok[2] + "'");
            std::optional<Position> pos;
            if (tok.size() == 5) {
                try {
                    pos = Position{parse_double(tok[3]), parse_double(tok[4])};
                } catch (const std::exception&) {
                    throw ParseError(line, "bad position");
                }
            }
            try {
                b.add_vertex(tok[1], c, pos);
            } catch (const GraphError& e) {
                throw ParseError(line, e.what());
            }
        } else if (key == "edge") {
            if (tok.size() != 6) throw ParseError(line, "edge expects: edge <id> <v1> <v2> <dx> <dy>");
            Displacement d{parse_long(tok[4], line, "dx"), parse_long(tok[5], line, "dy")};
            try {
                b.add_edge(tok[1], b.vertex_index(tok[2]), b.vertex_index(tok[3]), d);
            } catch (const GraphError& e) {
                throw ParseError(line, e.what());
            }
        } else if (key == "rot") {
            if (tok.size() < 3) throw ParseError(line, "rot expects: rot <vertex> <darts...>");
            if (rot_seen.count(tok[1])) throw ParseError(line, "second rot line for '" + tok[1] + "'");
            rot_seen[tok[1]] = line;
            rots.push_back({line, tok});
        } else if (key == "weight") {
            if (tok.size() != 3) throw ParseError(line, "weight expects: weight <edge> <value>");
            check_number(tok[2], line, "weight");
            weights.push_back({line, tok});
        } else if (key == "coupling") {
            if (tok.size() != 3) throw ParseError(line, "coupling expects: coupling <edge> J=<float> | sc=<s>,<c>");
            couplings.push_back({line, tok});
        } else if (key == "face") {
            if (tok.size() != 3) throw ParseError(line, "face expects: face <name> <dart>");
            faces.push_back({line, tok});
        } else if (key == "cycle") {
            if (tok.size() < 3) throw ParseError(line, "cycle expects: cycle <name> <darts...>");
            cycles.push_back({line, tok});
        } else {
            throw ParseError(line, "unknown key '" + key + "'");
        }
    }

    for (const auto& p : rots) {
        try {
            VertexId v = b.vertex_index(p.tok[1]);
            std::vector<DartId> ds;
            for (std::size_t k = 2; k < p.tok.size(); ++k) ds.push_back(b.dart_index(p.tok[k]));
            b.set_rotation(v, ds);
        } catch (const GraphError& e) {
            throw ParseError(p.line, e.what());
        }
    }
    for (const auto& p : faces) {
        try {
            b.name_face(p.tok[1], b.dart_index(p.tok[2]));
        } catch (const GraphError& e) {
            throw ParseError(p.line, e.what());
        }
    }
    try {
        f.graph = b.build();
    } catch (const GraphError& e) {
        throw ParseError(0, e.what());
    }
    auto edge_at = [&](const Pending& p) {
        try {
            return f.graph.edge_index(p.tok[1]);
        } catch (const GraphError& e) {
            throw ParseError(p.line, e.what());
        }
    };
    for (const auto& p : weights) {
        EdgeId e = edge_at(p);
        if (f.weights.count(e)) throw ParseError(p.line, "second weight for edge '" + p.tok[1] + "'");
        f.weights[e] = p.tok[2];
    }
    for (const auto& p : couplings) {
        EdgeId e = edge_at(p);
        if (f.couplings.count(e)) throw ParseError(p.line, "second coupling for edge '" + p.tok[1] + "'");
        const std::string& v = p.tok[2];
        CouplingText c;
        if (v.rfind("J=", 0) == 0) {
            c.J = v.substr(2);
            check_number(c.J, p.line, "J");
        } else if (v.rfind("sc=", 0) == 0) {
            auto comma = v.find(',', 3);
            if (comma == std::string::npos) throw ParseError(p.line, "sc expects two values");
            c.s = v.substr(3, comma - 3);
            c.c = v.substr(comma + 1);
            check_number(c.s, p.line, "s");
            check_number(c.c, p.line, "c");
        } else {
            throw ParseError(p.line, "unknown coupling form '" + v + "'");
        }
        f.couplings[e] = c;
    }
    for (const auto& p : cycles) {
        NamedCycle c{p.tok[1], {}};
        try {
            for (std::size_t k = 2; k < p.tok.size(); ++k) c.darts.push_back(f.graph.dart_index(p.tok[k]));
        } catch (const GraphError& e) {
            throw ParseError(p.line, e.what());
        }
        if (!is_cycle(f.graph, CycleZ::from_darts(f.graph, c.darts))) throw ParseError(p.line, "cycle '" + c.name + "' is not closed");
        f.cycles.push_back(std::move(c));
    }
    auto rep = validate_graph(f.graph);
    if (!rep.ok) throw ParseError(0, "invalid graph: " + rep.errors.front());
    return f;
}

GraphFile parse_graph_string(const std::string& text)
{
    std::istringstream in(text);
    return parse_graph(in);
}

GraphFile read_graph_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    return parse_graph(in);
}

void write_graph(std::ostream& out, const GraphFile& f)
{
    const auto& g = f.graph;
    out << "# torus-graph v1\n";
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        const auto& vx = g.vertex(v);
        out << "vertex " << vx.name << ' ' << (vx.color == Color::black ? 'b' : vx.color == Color::white ? 'w' : 'n');
        if (vx.pos) out << ' ' << format_double(vx.pos->x) << ' ' << format_double(vx.pos->y);
        out << '\n';
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        DartId d = TorusGraph::dart_of(e);
        out << "edge " << g.edge_name(e) << ' ' << g.vertex_name(g.tail(d)) << ' ' << g.vertex_name(g.head(d)) << ' '
            << g.disp(d).x << ' ' << g.disp(d).y << '\n';
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        out << "rot " << g.vertex_name(v);
        for (DartId d : g.darts_at(v)) out << ' ' << g.dart_name(d);
        out << '\n';
    }
    for (FaceId k = 0; k < g.num_faces(); ++k) out << "face " << g.face_name(k) << ' ' << g.dart_name(g.face_darts(k).front()) << '\n';
    for (const auto& c : f.cycles) {
        out << "cycle " << c.name;
        for (DartId d : c.darts) out << ' ' << g.dart_name(d);
        out << '\n';
    }
    for (const auto& [e, w] : f.weights) out << "weight " << g.edge_name(e) << ' ' << w << '\n';
    for (const auto& [e, c] : f.couplings) {
        out << "coupling " << g.edge_name(e) << ' ';
        if (c.has_J())
            out << "J=" << c.J << '\n';
        else
            out << "sc=" << c.s << ',' << c.c << '\n';
    }
}

std::string graph_to_string(const GraphFile& f)
{
    std::ostringstream out;
    write_graph(out, f);
    return out.str();
}

}  // namespace td
