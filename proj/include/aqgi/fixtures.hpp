#pragma once

#include <map>
#include <string>
#include <vector>

#include "aqgi/cost.hpp"
#include "aqgi/errors.hpp"
#include "aqgi/graph.hpp"

// Named built-in instances: the figure pairs ship as literal adjacency
// matrices, and the single-graph fixtures cover the automorphism studies plus
// a few small graphs the test suite leans on.

namespace aqgi::fixtures {

inline Graph fig1_g() {
    return Graph::from_adjacency({{0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}});
}
inline Graph fig1_g_prime() {
    return Graph::from_adjacency({{0, 0, 1, 1}, {0, 0, 0, 1}, {1, 0, 0, 1}, {1, 1, 1, 0}});
}
inline Graph fig2_g() {
    return Graph::from_adjacency({{0, 1, 1, 1}, {1, 0, 1, 0}, {1, 1, 0, 1}, {1, 0, 1, 0}});
}
inline Graph fig2_g_prime() {
    return Graph::from_adjacency({{0, 1, 1, 1}, {1, 0, 0, 1}, {1, 0, 0, 1}, {1, 1, 1, 0}});
}
inline Graph fig4_g() {
    return Graph::from_adjacency({{0, 1, 0, 1, 0},
                                  {1, 0, 1, 0, 0},
                                  {0, 1, 0, 1, 0},
                                  {1, 0, 1, 0, 0},
                                  {0, 0, 0, 0, 0}});
}
inline Graph fig4_g_prime() {
    return Graph::from_adjacency({{0, 1, 1, 1, 1},
                                  {1, 0, 0, 0, 0},
                                  {1, 0, 0, 0, 0},
                                  {1, 0, 0, 0, 0},
                                  {1, 0, 0, 0, 0}});
}
inline Graph fig5_g() {
    return Graph::from_adjacency({{0, 1, 0, 0, 0, 1},
                                  {1, 0, 0, 0, 0, 1},
                                  {0, 0, 0, 0, 0, 1},
                                  {0, 0, 0, 0, 1, 1},
                                  {0, 0, 0, 1, 0, 1},
                                  {1, 1, 1, 1, 1, 0}});
}
inline Graph fig5_g_prime() {
    return Graph::from_adjacency({{0, 1, 0, 0, 0, 0},
                                  {1, 0, 1, 1, 0, 0},
                                  {0, 1, 0, 1, 1, 0},
                                  {0, 1, 1, 0, 1, 0},
                                  {0, 0, 1, 1, 0, 1},
                                  {0, 0, 0, 0, 1, 0}});
}
inline Graph fig6_g() { return fig1_g(); }
inline Graph fig6_g_prime() {
    return Graph::from_adjacency({{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}});
}
inline Graph fig7_g() { return make_cycle(5); }
inline Graph fig7_g_prime() {
    return Graph::from_adjacency({{0, 1, 1, 1, 1},
                                  {1, 0, 1, 1, 1},
                                  {1, 1, 0, 1, 1},
                                  {1, 1, 1, 0, 1},
                                  {1, 1, 1, 1, 0}});
}
inline Graph fig8_g() {
    return Graph::from_adjacency({{0, 1, 0, 1, 0, 1},
                                  {1, 0, 1, 0, 1, 0},
                                  {0, 1, 0, 1, 0, 1},
                                  {1, 0, 1, 0, 1, 0},
                                  {0, 1, 0, 1, 0, 1},
                                  {1, 0, 1, 0, 1, 0}});
}
inline Graph fig8_g_prime() {
    return Graph::from_adjacency({{0, 1, 1, 1, 1, 0},
                                  {1, 0, 1, 0, 1, 1},
                                  {1, 1, 0, 1, 0, 1},
                                  {1, 0, 1, 0, 1, 1},
                                  {1, 1, 0, 1, 0, 1},
                                  {0, 1, 1, 1, 1, 0}});
}

inline Graph k2() { return Graph::from_edge_list(2, {{0, 1}}); }
inline Graph p3() { return Graph::from_edge_list(3, {{0, 1}, {1, 2}}); }
inline Graph matching4() { return Graph::from_edge_list(4, {{0, 1}, {2, 3}}); }
inline Graph triangle() { return make_cycle(3); }

/// Single graphs addressable by name (self-instances for `aut`/SGI inputs).
inline Graph graph(const std::string& name) {
    if (name == "k2") return k2();
    if (name == "p3") return p3();
    if (name == "triangle" || name == "c3") return triangle();
    if (name == "c4") return make_cycle(4);
    if (name == "c5") return make_cycle(5);
    if (name == "c6") return make_cycle(6);
    if (name == "c7") return make_cycle(7);
    if (name == "grid23") return make_grid(2, 3);
    if (name == "w7") return make_wheel(7);
    if (name == "matching4") return matching4();
    throw input_error("unknown graph fixture '" + name + "'");
}

/// GI pairs addressable by name; single-graph names yield self-instances
/// (G' = G).
inline GIInstance pair(const std::string& name) {
    if (name == "fig1") return {fig1_g(), fig1_g_prime()};
    if (name == "fig2") return {fig2_g(), fig2_g_prime()};
    if (name == "fig4") return {fig4_g(), fig4_g_prime()};
    if (name == "fig5") return {fig5_g(), fig5_g_prime()};
    if (name == "fig6") return {fig6_g(), fig6_g_prime()};
    if (name == "fig7") return {fig7_g(), fig7_g_prime()};
    if (name == "fig8") return {fig8_g(), fig8_g_prime()};
    Graph g = graph(name);
    return {g, g};
}

inline std::vector<std::string> pair_names() {
    return {"fig1", "fig2", "fig4", "fig5", "fig6", "fig7", "fig8", "k2", "p3",
            "triangle", "c4", "c5", "c6", "c7", "grid23", "w7", "matching4"};
}

inline std::vector<std::string> graph_names() {
    return {"k2", "p3", "triangle", "c4", "c5", "c6", "c7", "grid23", "w7", "matching4"};
}

}  // namespace aqgi::fixtures
