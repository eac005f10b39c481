#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace quiverfold {

struct Arrow {
    int id;   // dense index 0..num_arrows-1
    int src;  // vertex index
    int tgt;  // vertex index
};

// Finite quiver with named vertices and named arrows. Vertices and arrows
// are addressed by dense indices internally; names are kept for I/O.
struct Quiver {
    std::vector<std::string> vertex_names;
    std::vector<std::string> arrow_names;
    std::vector<Arrow> arrows;

    int num_vertices() const { return static_cast<int>(vertex_names.size()); }
    int num_arrows() const { return static_cast<int>(arrows.size()); }

    int vertex_index(const std::string& name) const {
        for (int i = 0; i < num_vertices(); ++i)
            if (vertex_names[i] == name) return i;
        throw std::invalid_argument("unknown vertex: " + name);
    }
    int arrow_index(const std::string& name) const {
        for (int i = 0; i < num_arrows(); ++i)
            if (arrow_names[i] == name) return i;
        throw std::invalid_argument("unknown arrow: " + name);
    }

    bool has_loop() const {
        for (const Arrow& a : arrows)
            if (a.src == a.tgt) return true;
        return false;
    }

    // Arrows between an ordered pair of vertices.
    std::vector<int> arrows_between(int src, int tgt) const {
        std::vector<int> out;
        for (const Arrow& a : arrows)
            if (a.src == src && a.tgt == tgt) out.push_back(a.id);
        return out;
    }

    std::vector<int> arrows_out_of(int v) const {
        std::vector<int> out;
        for (const Arrow& a : arrows)
            if (a.src == v) out.push_back(a.id);
        return out;
    }
    std::vector<int> arrows_into(int v) const {
        std::vector<int> out;
        for (const Arrow& a : arrows)
            if (a.tgt == v) out.push_back(a.id);
        return out;
    }

    // Connected components of the underlying undirected graph,
    // each listed in increasing vertex order.
    std::vector<std::vector<int>> components() const {
        int n = num_vertices();
        std::vector<int> comp(n, -1);
        int nc = 0;
        for (int s = 0; s < n; ++s) {
            if (comp[s] != -1) continue;
            std::vector<int> stack{s};
            comp[s] = nc;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (const Arrow& a : arrows) {
                    int w = -1;
                    if (a.src == v) w = a.tgt;
                    else if (a.tgt == v) w = a.src;
                    if (w >= 0 && comp[w] == -1) {
                        comp[w] = nc;
                        stack.push_back(w);
                    }
                }
            }
            ++nc;
        }
        std::vector<std::vector<int>> out(nc);
        for (int v = 0; v < n; ++v) out[comp[v]].push_back(v);
        return out;
    }
};

inline Quiver make_quiver(const std::vector<std::string>& vertices,
                          const std::vector<std::tuple<std::string, std::string, std::string>>& arrow_specs) {
    Quiver q;
    q.vertex_names = vertices;
    {
        std::set<std::string> seen(vertices.begin(), vertices.end());
        if (seen.size() != vertices.size())
            throw std::invalid_argument("duplicate vertex name");
    }
    for (const auto& [name, src, tgt] : arrow_specs) {
        Arrow a;
        a.id = q.num_arrows();
        a.src = q.vertex_index(src);
        a.tgt = q.vertex_index(tgt);
        q.arrow_names.push_back(name);
        q.arrows.push_back(a);
    }
    {
        std::set<std::string> seen(q.arrow_names.begin(), q.arrow_names.end());
        if (seen.size() != q.arrow_names.size())
            throw std::invalid_argument("duplicate arrow name");
    }
    return q;
}

}  // namespace quiverfold
