#pragma once

#include "torusdimer/torus_graph.hpp"

#include <iosfwd>

namespace td {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& msg)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line(line)
    {
    }
    int line;
};

// Coupling as written: either J=<float> or sc=<s>,<c>. Values stay textual until a mode is chosen.
struct CouplingText {
    std::string J;
    std::string s, c;
    bool has_J() const { return !J.empty(); }
};

struct NamedCycle {
    std::string name;
    std::vector<DartId> darts;
};

// Everything a torus-graph v1 file can carry.
struct GraphFile {
    TorusGraph graph;
    std::map<EdgeId, std::string> weights;
    std::map<EdgeId, CouplingText> couplings;
    std::vector<NamedCycle> cycles;

    bool all_rational() const;  // every weight/coupling value is p/q
};

GraphFile parse_graph(std::istream& in);
GraphFile parse_graph_string(const std::string& text);
GraphFile read_graph_file(const std::string& path);

void write_graph(std::ostream& out, const GraphFile& f);
std::string graph_to_string(const GraphFile& f);

}  // namespace td
