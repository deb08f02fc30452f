#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvecount/numeric.hpp"

namespace curvecount {

// ---------------------------------------------------------------------------
// Abstract weighted-graph train tracks: vertices carry a two-sided ordered
// germ structure, edges are bands, a marked subgraph is the embedded
// train-track part, and a symmetric crossing table records the minimal
// pairwise crossings of the immersed extra edges.
// ---------------------------------------------------------------------------

class Track {
  public:
    struct End {
        int vertex = 0;
        int side = 0;  // 0 = '-', 1 = '+'
        int slot = 0;  // stacking position within the side, bottom first
    };
    struct Edge {
        std::string name;
        End ends[2];
        bool on_track = true;
    };

    int vertex_count = 0;
    std::vector<Edge> edges;
    // crossing table on off-track edge pairs, by edge index (i <= j)
    std::map<std::pair<int, int>, std::int64_t> crossing_table;

    // per vertex, per side: (edge index, end index) ordered by slot
    std::vector<std::array<std::vector<std::pair<int, int>>, 2>> germs;

    int edge_index(const std::string& name) const {
        for (size_t i = 0; i < edges.size(); ++i)
            if (edges[i].name == name) return int(i);
        throw std::domain_error("unknown edge name: " + name);
    }

    void finalize() {
        if (vertex_count <= 0) throw std::domain_error("track needs vertices");
        if (edges.empty()) throw std::domain_error("track needs edges");
        germs.assign(vertex_count, {});
        for (size_t e = 0; e < edges.size(); ++e) {
            for (int k = 0; k < 2; ++k) {
                const End& end = edges[e].ends[k];
                if (end.vertex < 0 || end.vertex >= vertex_count)
                    throw std::domain_error("edge end attached to a missing vertex");
                if (end.side != 0 && end.side != 1) throw std::domain_error("bad germ side");
                auto& list = germs[end.vertex][end.side];
                if (int(list.size()) <= end.slot) list.resize(end.slot + 1, {-1, -1});
                if (list[end.slot].first != -1)
                    throw std::domain_error("two germs in one slot");
                list[end.slot] = {int(e), k};
            }
        }
        for (int v = 0; v < vertex_count; ++v) {
            for (int s = 0; s < 2; ++s) {
                for (auto& g : germs[v][s])
                    if (g.first == -1) throw std::domain_error("gap in germ slots");
                if (germs[v][s].empty())
                    throw std::domain_error("every vertex needs germs on both sides");
            }
            // trivalent train-track part: three track germs, split 1|2 or 2|1
            int track_minus = 0, track_plus = 0;
            for (auto& [e, k] : germs[v][0])
                if (edges[e].on_track) ++track_minus;
            for (auto& [e, k] : germs[v][1])
                if (edges[e].on_track) ++track_plus;
            if (!((track_minus == 1 && track_plus == 2) || (track_minus == 2 && track_plus == 1)))
                throw std::domain_error("train-track part must be trivalent at every vertex");
        }
        // connectivity of the whole graph
        std::vector<int> seen(vertex_count, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int s = 0; s < 2; ++s)
                for (auto& [e, k] : germs[v][s]) {
                    int o = edges[e].ends[1 - k].vertex;
                    if (!seen[o]) { seen[o] = 1; stack.push_back(o); }
                }
        }
        for (int v = 0; v < vertex_count; ++v)
            if (!seen[v]) throw std::domain_error("track graph must be connected");
        for (auto& [pair, count] : crossing_table) {
            if (count < 0) throw std::domain_error("crossing counts are non-negative");
            if (edges[pair.first].on_track || edges[pair.second].on_track)
                throw std::domain_error("crossing table lives on off-track edge pairs");
        }
    }

    // Plain-text format, versioned:
    //   trackfile 1
    //   vertices <n>
    //   edge <name> <v> <-|+> <slot> <v> <-|+> <slot> [offtrack]
    //   crossing <name> <name> <count>
    static Track parse(std::istream& in) {
        Track t;
        std::string line;
        bool header = false;
        std::vector<std::tuple<std::string, std::string, std::int64_t>> crossings;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            std::istringstream ls(line);
            std::string tok;
            if (!(ls >> tok)) continue;
            if (tok == "trackfile") {
                int version = 0;
                if (!(ls >> version) || version != 1)
                    throw std::domain_error("unsupported track file version");
                header = true;
            } else if (tok == "vertices") {
                if (!(ls >> t.vertex_count)) throw std::domain_error("bad vertices line");
            } else if (tok == "edge") {
                Edge e;
                std::string s0, s1, extra;
                if (!(ls >> e.name >> e.ends[0].vertex >> s0 >> e.ends[0].slot >>
                      e.ends[1].vertex >> s1 >> e.ends[1].slot))
                    throw std::domain_error("bad edge line");
                auto side = [](const std::string& s) {
                    if (s == "-") return 0;
                    if (s == "+") return 1;
                    throw std::domain_error("bad side token");
                };
                e.ends[0].side = side(s0);
                e.ends[1].side = side(s1);
                if (ls >> extra) {
                    if (extra != "offtrack") throw std::domain_error("bad edge suffix");
                    e.on_track = false;
                }
                t.edges.push_back(e);
            } else if (tok == "crossing") {
                std::string e1, e2;
                std::int64_t c;
                if (!(ls >> e1 >> e2 >> c)) throw std::domain_error("bad crossing line");
                crossings.emplace_back(e1, e2, c);
            } else {
                throw std::domain_error("unknown track file token: " + tok);
            }
        }
        if (!header) throw std::domain_error("missing trackfile header");
        for (auto& [e1, e2, c] : crossings) {
            int i = t.edge_index(e1), j = t.edge_index(e2);
            t.crossing_table[{std::min(i, j), std::max(i, j)}] = c;
        }
        t.finalize();
        return t;
    }

    static Track parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open track file: " + path);
        return parse(in);
    }

    static Track parse_string(const std::string& text) {
        std::istringstream in(text);
        return parse(in);
    }

    // The standard once-punctured-torus track: edges a, b merge into c, and
    // the split at the far switch interleaves them.
    static Track torus_track() {
        return parse_string(
            "trackfile 1\n"
            "vertices 2\n"
            "edge a 0 - 0 1 + 1\n"
            "edge b 0 - 1 1 + 0\n"
            "edge c 0 + 0 1 - 0\n");
    }

    // Chains of merge/split switches with V vertices (V even >= 2); the thin
    // edges interleave across each splitting switch the way the torus track
    // does, so chain_track(2) is the torus track.
    static Track chain_track(int vertices) {
        if (vertices < 2 || vertices % 2 != 0)
            throw std::domain_error("chain track needs an even vertex count");
        std::ostringstream out;
        out << "trackfile 1\nvertices " << vertices << "\n";
        int pairs = vertices / 2;
        // merge vertices are even indices, split vertices odd: thin edges
        // p_i, q_i run from split 2i-1 to merge 2i; wide edge r_i runs from
        // merge 2i to split 2i+1 (indices mod V)
        for (int i = 0; i < pairs; ++i) {
            int merge = 2 * i;
            int split = (2 * i + 1) % vertices;
            int prev_split = (2 * i - 1 + vertices) % vertices;
            out << "edge p" << i << " " << prev_split << " + 1 " << merge << " - 0\n";
            out << "edge q" << i << " " << prev_split << " + 0 " << merge << " - 1\n";
            out << "edge r" << i << " " << merge << " + 0 " << split << " - 0\n";
        }
        return parse_string(out.str());
    }
};

// Integer weight vector indexed like track.edges.
using WeightVector = std::vector<std::int64_t>;

// ---------------------------------------------------------------------------
// Switch equations
// ---------------------------------------------------------------------------

struct SwitchKernel {
    std::vector<std::vector<std::int64_t>> basis;  // primitive integer rows
    int dimension = 0;
};

// Integer kernel basis of the switch map (positive-side sums minus
// negative-side sums per vertex), by fraction-free elimination.
inline SwitchKernel switch_kernel(const Track& track) {
    int E = int(track.edges.size());
    int V = track.vertex_count;
    // rows: vertices; cols: edges; entry = (+1 per germ on side +) - (+1 per side -)
    std::vector<std::vector<std::int64_t>> m(V, std::vector<std::int64_t>(E, 0));
    for (int v = 0; v < V; ++v) {
        for (auto& [e, k] : track.germs[v][1]) m[v][e] += 1;
        for (auto& [e, k] : track.germs[v][0]) m[v][e] -= 1;
    }
    // fraction-free row echelon
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < E && row < V; ++col) {
        int sel = -1;
        for (int r = row; r < V; ++r)
            if (m[r][col] != 0) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(m[sel], m[row]);
        for (int r = 0; r < V; ++r) {
            if (r == row || m[r][col] == 0) continue;
            std::int64_t a = m[row][col], b = m[r][col];
            std::int64_t g = std::gcd(std::abs(a), std::abs(b));
            std::int64_t fa = b / g, fb = a / g;
            for (int c = 0; c < E; ++c)
                m[r][c] = checked_sub(checked_mul(m[r][c], fb), checked_mul(m[row][c], fa));
            // keep entries small
            std::int64_t rg = 0;
            for (int c = 0; c < E; ++c) rg = std::gcd(rg, std::abs(m[r][c]));
            if (rg > 1)
                for (int c = 0; c < E; ++c) m[r][c] /= rg;
        }
        pivot_col.push_back(col);
        ++row;
    }
    int rank = row;
    SwitchKernel out;
    out.dimension = E - rank;
    std::vector<bool> is_pivot(E, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int free_col = 0; free_col < E; ++free_col) {
        if (is_pivot[free_col]) continue;
        // back-substitute a kernel vector with this free column = product of pivots
        std::vector<Rational> x(E, Rational(0));
        x[free_col] = Rational(1);
        for (int r = rank - 1; r >= 0; --r) {
            int pc = pivot_col[r];
            Rational sum(0);
            for (int c = pc + 1; c < E; ++c)
                if (x[c] != Rational(0)) sum = sum + Rational(m[r][c]) * x[c];
            x[pc] = Rational(0) - sum / Rational(m[r][pc]);
        }
        // clear denominators, normalize to a primitive integer vector
        std::int64_t lcm = 1;
        for (auto& xi : x) lcm = std::lcm(lcm, xi.den());
        std::vector<std::int64_t> vec(E);
        std::int64_t g = 0;
        for (int c = 0; c < E; ++c) {
            vec[c] = checked_mul(x[c].num(), lcm / x[c].den());
            g = std::gcd(g, std::abs(vec[c]));
        }
        if (g > 1)
            for (auto& vv : vec) vv /= g;
        out.basis.push_back(std::move(vec));
    }
    return out;
}

inline bool satisfies_switch_equations(const Track& track, const WeightVector& w) {
    if (w.size() != track.edges.size()) return false;
    for (int v = 0; v < track.vertex_count; ++v) {
        std::int64_t plus = 0, minus = 0;
        for (auto& [e, k] : track.germs[v][1]) plus = checked_add(plus, w[e]);
        for (auto& [e, k] : track.germs[v][0]) minus = checked_add(minus, w[e]);
        if (plus != minus) return false;
    }
    return true;
}

// Sum over unordered off-track edge pairs of i(e,e') w(e) w(e').
inline std::int64_t crossing_lower_bound(const Track& track, const WeightVector& w) {
    if (!satisfies_switch_equations(track, w))
        throw std::domain_error("weights must satisfy the switch equations");
    std::int64_t total = 0;
    for (auto& [pair, count] : track.crossing_table)
        total = checked_add(total, checked_mul(count, checked_mul(w[pair.first], w[pair.second])));
    return total;
}

// The torus-track defect projection on weight triples (a, b, c):
// rho = c - a - b >= 0, output (a + rho, b + rho, c + rho).
inline std::array<std::int64_t, 3> torus_defect_map(const std::array<std::int64_t, 3>& w) {
    std::int64_t rho = checked_sub(w[2], checked_add(w[0], w[1]));
    if (rho < 0) throw std::domain_error("defect map needs w(c) >= w(a) + w(b)");
    return {checked_add(w[0], rho), checked_add(w[1], rho), checked_add(w[2], rho)};
}

inline std::int64_t torus_defect(const std::array<std::int64_t, 3>& w) {
    return checked_sub(w[2], checked_add(w[0], w[1]));
}

// ---------------------------------------------------------------------------
// Band-complex tiling: every edge is a band of w(e) horizontal strands cut
// into columns by vertical leaves; switches stack their bands, and the tile
// columns spanning a switch carry the exceptional vertical segments at the
// block boundaries.  Crossings live one per tile, on non-adjacent interfaces
// within a column.
// ---------------------------------------------------------------------------

class TileComplex {
  public:
    struct Tile {
        int band = -1;    // edge index, or -1 for a switch tile
        int vertex = -1;  // vertex index for switch tiles
        int column = 0;   // 0-based from end 0 (in-band only)
        int row = 0;      // interface index, 1..height-1
    };

    // step result: next tile with the exit index pointing back, or a wall
    struct Step {
        int tile = -1;      // -1 means blocked
        int back_exit = 0;  // exit index on the next tile that returns here
        bool segment = false;  // blocked by an exceptional vertical segment
    };

    const Track* track = nullptr;
    WeightVector weights;
    int columns = 4;

    std::vector<Tile> tiles;
    std::vector<std::array<Step, 2>> steps;            // per tile: exit 0 / exit 1
    std::vector<std::vector<int>> adjacency;           // closed-tile contact (edge or corner)
    std::vector<int> column_id;                        // shared column key per tile
    std::vector<bool> junction;                        // tile has a segment on its boundary
    std::vector<std::array<std::vector<std::int64_t>, 2>> stack_offsets;  // per vertex per side
    std::vector<std::int64_t> stack_height;            // per vertex

    static TileComplex build(const Track& t, const WeightVector& w, int columns_per_band) {
        if (!satisfies_switch_equations(t, w))
            throw std::domain_error("weights must satisfy the switch equations");
        for (auto wi : w)
            if (wi < 1) throw std::domain_error("tiling needs positive weights");
        if (columns_per_band < 2) throw std::domain_error("tiling needs at least two columns");

        TileComplex c;
        c.track = &t;
        c.weights = w;
        c.columns = columns_per_band;

        int V = t.vertex_count;
        c.stack_offsets.assign(V, {});
        c.stack_height.assign(V, 0);
        for (int v = 0; v < V; ++v) {
            for (int s = 0; s < 2; ++s) {
                std::int64_t off = 0;
                for (auto& [e, k] : t.germs[v][s]) {
                    c.stack_offsets[v][s].push_back(off);
                    off = checked_add(off, w[e]);
                }
                if (s == 0)
                    c.stack_height[v] = off;
                else if (off != c.stack_height[v])
                    throw std::domain_error("switch stacks disagree");
            }
        }

        // tile ids: in-band blocks then switch blocks
        int E = int(t.edges.size());
        std::vector<int> band_base(E, 0), switch_base(V, 0);
        int id = 0;
        for (int e = 0; e < E; ++e) {
            band_base[e] = id;
            id += columns_per_band * int(w[e] - 1);
        }
        for (int v = 0; v < V; ++v) {
            switch_base[v] = id;
            id += int(c.stack_height[v] - 1);
        }
        c.tiles.resize(id);
        c.steps.assign(id, {});
        c.column_id.assign(id, -1);
        c.junction.assign(id, false);
        c.band_base_ = band_base;
        c.switch_base_ = switch_base;

        int col_key = 0;
        std::vector<int> band_col_key(E * columns_per_band);
        for (int e = 0; e < E; ++e)
            for (int col = 0; col < columns_per_band; ++col)
                band_col_key[e * columns_per_band + col] = col_key++;
        std::vector<int> switch_col_key(V);
        for (int v = 0; v < V; ++v) switch_col_key[v] = col_key++;

        for (int e = 0; e < E; ++e) {
            int rows = int(w[e] - 1);
            for (int col = 0; col < columns_per_band; ++col)
                for (int r = 1; r <= rows; ++r) {
                    int tid = c.band_tile(e, col, r);
                    c.tiles[tid] = Tile{e, -1, col, r};
                    c.column_id[tid] = band_col_key[e * columns_per_band + col];
                }
        }
        for (int v = 0; v < V; ++v) {
            for (int r = 1; r < c.stack_height[v]; ++r) {
                int tid = c.switch_tile(v, int(r));
                c.tiles[tid] = Tile{-1, v, 0, int(r)};
                c.column_id[tid] = switch_col_key[v];
            }
        }

        // the side-s resolution of stack interface r at vertex v:
        // a block boundary (segment) or (edge, local row, end index)
        auto resolve = [&](int v, int side, std::int64_t r)
            -> std::optional<std::tuple<int, int, int>> {
            const auto& list = t.germs[v][side];
            for (size_t g = 0; g < list.size(); ++g) {
                std::int64_t off = c.stack_offsets[v][side][g];
                std::int64_t h = w[list[g].first];
                if (r > off && r < off + h)
                    return std::tuple<int, int, int>{list[g].first, int(r - off), list[g].second};
                if (r == off && g > 0) return std::nullopt;  // block boundary
            }
            return std::nullopt;
        };

        // horizontal step structure
        for (int e = 0; e < E; ++e) {
            int rows = int(w[e] - 1);
            for (int col = 0; col < columns_per_band; ++col)
                for (int r = 1; r <= rows; ++r) {
                    int tid = c.band_tile(e, col, r);
                    for (int exit = 0; exit < 2; ++exit) {
                        int ncol = col + (exit == 1 ? 1 : -1);
                        if (ncol >= 0 && ncol < columns_per_band) {
                            c.steps[tid][exit] = {c.band_tile(e, ncol, r), 1 - exit, false};
                        } else {
                            const auto& end = t.edges[e].ends[exit];
                            int v = end.vertex;
                            std::int64_t off = 0;
                            for (size_t g = 0; g < t.germs[v][end.side].size(); ++g)
                                if (t.germs[v][end.side][g] == std::make_pair(e, exit)) {
                                    off = c.stack_offsets[v][end.side][g];
                                    break;
                                }
                            int st = c.switch_tile(v, int(off + r));
                            c.steps[tid][exit] = {st, end.side, false};
                        }
                    }
                }
        }
        for (int v = 0; v < V; ++v) {
            for (int r = 1; r < c.stack_height[v]; ++r) {
                int tid = c.switch_tile(v, int(r));
                for (int side = 0; side < 2; ++side) {
                    auto res = resolve(v, side, r);
                    if (!res) {
                        c.steps[tid][side] = {-1, 0, true};
                        c.junction[tid] = true;
                        continue;
                    }
                    auto [e, local_r, endk] = *res;
                    int col = (endk == 0) ? 0 : columns_per_band - 1;
                    c.steps[tid][side] = {c.band_tile(e, col, local_r), endk, false};
                }
            }
        }

        // closed-tile adjacency (shared edge or corner)
        c.adjacency.assign(id, {});
        auto link = [&](int a, int b) {
            if (a < 0 || b < 0 || a == b) return;
            c.adjacency[a].push_back(b);
            c.adjacency[b].push_back(a);
        };
        for (int e = 0; e < E; ++e) {
            int rows = int(w[e] - 1);
            for (int col = 0; col < columns_per_band; ++col)
                for (int r = 1; r <= rows; ++r) {
                    int tid = c.band_tile(e, col, r);
                    if (r + 1 <= rows) link(tid, c.band_tile(e, col, r + 1));
                    if (col + 1 < columns_per_band) {
                        link(tid, c.band_tile(e, col + 1, r));
                        if (r + 1 <= rows) link(tid, c.band_tile(e, col + 1, r + 1));
                        if (r - 1 >= 1) link(tid, c.band_tile(e, col + 1, r - 1));
                    }
                }
        }
        for (int v = 0; v < V; ++v) {
            for (int r = 1; r < c.stack_height[v]; ++r) {
                int tid = c.switch_tile(v, int(r));
                if (r + 1 < c.stack_height[v]) link(tid, c.switch_tile(v, r + 1));
                for (int side = 0; side < 2; ++side) {
                    // row-edge neighbor across the leaf
                    if (!c.steps[tid][side].segment) link(tid, c.steps[tid][side].tile);
                    // corner contact through the leaf endpoints: the switch
                    // tile reaches the band leaf only when its own side is
                    // not a segment
                    if (c.steps[tid][side].segment) continue;
                    for (int dr : {-1, 1}) {
                        std::int64_t r2 = r + dr;
                        if (r2 < 1 || r2 >= c.stack_height[v]) continue;
                        auto res = resolve(v, side, r2);
                        if (!res) continue;
                        auto [e, local_r, endk] = *res;
                        // same band as this tile's own side-resolution
                        auto self = resolve(v, side, r);
                        if (!self || std::get<0>(*self) != e) continue;
                        int col = (endk == 0) ? 0 : columns_per_band - 1;
                        link(tid, c.band_tile(e, col, local_r));
                    }
                }
            }
        }
        // dedupe adjacency lists
        for (auto& lst : c.adjacency) {
            std::sort(lst.begin(), lst.end());
            lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
        }
        return c;
    }

    int band_tile(int e, int col, int r) const {
        return band_base_[e] + col * int(weights[e] - 1) + (r - 1);
    }
    int switch_tile(int v, int r) const { return switch_base_[v] + (r - 1); }
    int tile_count() const { return int(tiles.size()); }

    // at most one crossing per tile; within a column, occupied interfaces
    // must be pairwise non-adjacent so the transpositions commute
    bool placement_valid(const std::vector<int>& sorted_tiles) const {
        for (size_t i = 0; i < sorted_tiles.size(); ++i) {
            for (size_t j = i + 1; j < sorted_tiles.size(); ++j) {
                int a = sorted_tiles[i], b = sorted_tiles[j];
                if (a == b) return false;
                if (column_id[a] != column_id[b]) continue;
                if (std::abs(tiles[a].row - tiles[b].row) <= 1) return false;
            }
        }
        return true;
    }

  private:
    std::vector<int> band_base_, switch_base_;
};

// ---------------------------------------------------------------------------
// Carried-multicurve tracing: a placement of crossings determines strand
// permutations per band column and per switch; following the strands reads
// off the component classes as cyclic edge words.
// ---------------------------------------------------------------------------

struct TracedComponents {
    // canonical component words (tokens "e+" / "e-" by edge index), sorted
    std::vector<std::string> multiset;
    bool all_primitive = true;

    std::string key() const {
        std::string out;
        for (auto& m : multiset) { out += m; out.push_back('|'); }
        return out;
    }
};

inline TracedComponents trace_components(const TileComplex& c, const std::vector<int>& placement) {
    const Track& t = *c.track;
    int E = int(t.edges.size());

    // per band: sorted crossing rows per column; per vertex: crossing rows
    std::vector<std::vector<std::vector<int>>> band_swaps(E);
    for (int e = 0; e < E; ++e) band_swaps[e].assign(c.columns, {});
    std::vector<std::vector<int>> switch_swaps(t.vertex_count);
    for (int tid : placement) {
        const auto& tile = c.tiles[tid];
        if (tile.band >= 0)
            band_swaps[tile.band][tile.column].push_back(tile.row);
        else
            switch_swaps[tile.vertex].push_back(tile.row);
    }

    // strand flow: entering band e at end k with row i (1-based), exit row
    auto band_pass = [&](int e, int k, std::int64_t row) {
        if (k == 0) {
            for (int col = 0; col < c.columns; ++col)
                for (int r : band_swaps[e][col]) {
                    if (row == r) row = r + 1;
                    else if (row == r + 1) row = r;
                }
        } else {
            for (int col = c.columns - 1; col >= 0; --col)
                for (int r : band_swaps[e][col]) {
                    if (row == r) row = r + 1;
                    else if (row == r + 1) row = r;
                }
        }
        return row;
    };
    auto switch_pass = [&](int v, std::int64_t row) {
        for (int r : switch_swaps[v]) {
            if (row == r) row = r + 1;
            else if (row == r + 1) row = r;
        }
        return row;
    };

    // stack offset of germ (e, k) at its vertex
    auto germ_offset = [&](int e, int k) {
        const auto& end = t.edges[e].ends[k];
        const auto& list = t.germs[end.vertex][end.side];
        for (size_t g = 0; g < list.size(); ++g)
            if (list[g] == std::make_pair(e, k)) return c.stack_offsets[end.vertex][end.side][g];
        throw std::logic_error("germ lookup failed");
    };
    auto stack_resolve = [&](int v, int side, std::int64_t row)
        -> std::tuple<int, int, std::int64_t> {
        const auto& list = t.germs[v][side];
        for (size_t g = 0; g < list.size(); ++g) {
            std::int64_t off = c.stack_offsets[v][side][g];
            std::int64_t h = c.weights[list[g].first];
            if (row > off && row <= off + h)
                return {list[g].first, list[g].second, row - off};
        }
        throw std::logic_error("strand fell off the stack");
    };

    // states: (e, entry end k, entry row i); visited both orientations
    auto state_id = [&](int e, int k, std::int64_t i) {
        std::int64_t base = 0;
        for (int ee = 0; ee < e; ++ee) base += 2 * c.weights[ee];
        return size_t(base + k * c.weights[e] + (i - 1));
    };
    size_t total_states = 0;
    for (int e = 0; e < E; ++e) total_states += 2 * size_t(c.weights[e]);
    std::vector<bool> visited(total_states, false);

    TracedComponents out;
    for (int e0 = 0; e0 < E; ++e0) {
        for (int k0 = 0; k0 < 2; ++k0) {
            for (std::int64_t i0 = 1; i0 <= c.weights[e0]; ++i0) {
                if (visited[state_id(e0, k0, i0)]) continue;
                // trace the loop
                std::vector<std::pair<int, int>> word;  // (edge, entry end)
                int e = e0, k = k0;
                std::int64_t row = i0;
                do {
                    visited[state_id(e, k, row)] = true;
                    word.push_back({e, k});
                    std::int64_t out_row = band_pass(e, k, row);
                    // mark the reversed orientation of this pass
                    visited[state_id(e, 1 - k, out_row)] = true;
                    // cross the far switch
                    const auto& far = t.edges[e].ends[1 - k];
                    std::int64_t stack_row = germ_offset(e, 1 - k) + out_row;
                    std::int64_t stack_out = switch_pass(far.vertex, stack_row);
                    auto [e2, k2, row2] = stack_resolve(far.vertex, 1 - far.side, stack_out);
                    e = e2; k = k2; row = row2;
                } while (!visited[state_id(e, k, row)]);

                // canonical form of the cyclic token word, unoriented
                auto token = [&](std::pair<int, int> p) {
                    return std::to_string(p.first) + (p.second == 0 ? "+" : "-") + ".";
                };
                auto render = [&](const std::vector<std::pair<int, int>>& seq) {
                    std::string s;
                    for (auto& p : seq) s += token(p);
                    return s;
                };
                size_t n = word.size();
                std::vector<std::pair<int, int>> rev(n);
                for (size_t i = 0; i < n; ++i)
                    rev[i] = {word[n - 1 - i].first, 1 - word[n - 1 - i].second};
                std::string best;
                for (auto* seq : {&word, &rev}) {
                    std::vector<std::pair<int, int>> rot = *seq;
                    for (size_t i = 0; i < n; ++i) {
                        std::rotate(rot.begin(), rot.begin() + (i ? 1 : 0), rot.end());
                        std::string s = render(rot);
                        if (best.empty() || s < best) best = s;
                    }
                }
                // primitivity of the cyclic token sequence
                bool primitive = true;
                for (size_t d = 1; d < n; ++d) {
                    if (n % d != 0) continue;
                    bool periodic = true;
                    for (size_t i = 0; i < n && periodic; ++i)
                        if (word[i] != word[(i + d) % n]) periodic = false;
                    if (periodic) { primitive = false; break; }
                }
                if (!primitive) out.all_primitive = false;
                out.multiset.push_back(best);
            }
        }
    }
    std::sort(out.multiset.begin(), out.multiset.end());
    return out;
}

// ---------------------------------------------------------------------------
// Complexity and normal forms: crossing-support components are connected
// unions of closed tiles; a component is anchored when it contains a tile
// whose boundary carries an exceptional vertical segment.  kappa counts the
// crossings in unanchored components; normal form means kappa = 0.
// ---------------------------------------------------------------------------

struct ComponentSplit {
    std::vector<std::vector<int>> components;  // tile lists
    std::vector<bool> anchored;
};

inline ComponentSplit crossing_components(const TileComplex& c, const std::vector<int>& placement) {
    ComponentSplit out;
    std::set<int> placed(placement.begin(), placement.end());
    std::set<int> left(placed);
    while (!left.empty()) {
        int seed = *left.begin();
        std::vector<int> comp{seed};
        left.erase(seed);
        std::vector<int> stack{seed};
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int n : c.adjacency[t])
                if (left.count(n)) {
                    left.erase(n);
                    comp.push_back(n);
                    stack.push_back(n);
                }
        }
        std::sort(comp.begin(), comp.end());
        bool anch = false;
        for (int t : comp)
            if (c.junction[t]) anch = true;
        out.components.push_back(std::move(comp));
        out.anchored.push_back(anch);
    }
    return out;
}

inline int kappa(const TileComplex& c, const std::vector<int>& placement) {
    auto split = crossing_components(c, placement);
    int k = 0;
    for (size_t i = 0; i < split.components.size(); ++i)
        if (!split.anchored[i]) k += int(split.components[i].size());
    return k;
}

// Exit index on tile `to` pointing the same transversal way as exit `dir` on
// the adjacent tile `from`.
inline int coherent_exit(const TileComplex& c, int from, int dir, int to) {
    const auto& tf = c.tiles[from];
    const auto& tt = c.tiles[to];
    if (tf.band >= 0 && tt.band >= 0) return dir;      // same band frame
    if (tf.band < 0 && tt.band < 0) return dir;        // same switch frame
    // band <-> switch: exits align through the attachment side
    const TileComplex::Tile& band_tile = tf.band >= 0 ? tf : tt;
    int e = band_tile.band;
    // which end of the band faces this switch: the switch tile's vertex
    int v = (tf.band < 0 ? tf : tt).vertex;
    int endk = -1;
    for (int k = 0; k < 2; ++k)
        if (c.track->edges[e].ends[k].vertex == v) {
            // the adjacent end is the one whose column matches
            int col = (k == 0) ? 0 : c.columns - 1;
            if (band_tile.column == col) endk = k;
        }
    if (endk < 0) endk = (band_tile.column == 0) ? 0 : 1;
    int side = c.track->edges[e].ends[endk].side;
    // on the band, exit endk points into the switch; on the switch frame the
    // same direction continues out through side (1 - side)
    if (tf.band >= 0)
        return (dir == endk) ? (1 - side) : side;
    return (dir == (1 - side)) ? endk : (1 - endk);
}

struct NormalFormState {
    std::vector<int> tiles;  // sorted crossing tiles
    int kappa = 0;
    bool normal = false;
    bool periodic = false;  // annulus obstruction: a component shifts forever
    int shifts = 0;
};

// Shift the unanchored components leftward (each component's transversal
// direction seeded at its lowest tile, exit 0) until every component anchors
// or a configuration repeats.  The repeat reproduces the annulus obstruction
// and is reported as a non-primitive component.
inline NormalFormState reduce_to_normal_form(const TileComplex& c, std::vector<int> placement,
                                             int max_shifts = 100000) {
    std::sort(placement.begin(), placement.end());
    if (!c.placement_valid(placement)) throw std::domain_error("invalid crossing placement");
    NormalFormState st;
    std::set<std::vector<int>> seen;
    for (int iter = 0; iter < max_shifts; ++iter) {
        auto split = crossing_components(c, placement);
        int kap = 0;
        int target = -1;
        for (size_t i = 0; i < split.components.size(); ++i)
            if (!split.anchored[i]) {
                kap += int(split.components[i].size());
                if (target < 0) target = int(i);
            }
        if (kap == 0) {
            st.tiles = placement;
            st.kappa = 0;
            st.normal = true;
            st.shifts = iter;
            return st;
        }
        if (!seen.insert(placement).second) {
            st.tiles = placement;
            st.kappa = kap;
            st.periodic = true;
            st.shifts = iter;
            return st;
        }
        // orient the component from its lowest tile: that tile moves through
        // exit 0, neighbors move coherently with the row structure
        const auto& comp = split.components[target];
        std::map<int, int> direction;  // tile -> exit index
        direction[comp[0]] = 0;
        std::vector<int> stack{comp[0]};
        std::set<int> comp_set(comp.begin(), comp.end());
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int n : c.adjacency[t]) {
                if (!comp_set.count(n) || direction.count(n)) continue;
                direction[n] = coherent_exit(c, t, direction[t], n);
                stack.push_back(n);
            }
        }
        // move every tile of the component one step in its direction
        std::set<int> next(placement.begin(), placement.end());
        bool blocked = false;
        for (int t : comp) next.erase(t);
        for (int t : comp) {
            const auto& s = c.steps[t][direction[t]];
            if (s.segment || s.tile < 0) { blocked = true; break; }
            if (next.count(s.tile)) { blocked = true; break; }
            next.insert(s.tile);
        }
        std::vector<int> moved(next.begin(), next.end());
        if (blocked || !c.placement_valid(moved)) {
            // unanchored components never abut a segment, and contact with
            // another cloud already merges through tile adjacency, so a
            // blocked shift can only be a non-orientable artifact
            st.tiles = placement;
            st.kappa = kap;
            st.periodic = true;
            st.shifts = iter;
            return st;
        }
        placement = std::move(moved);
    }
    throw std::runtime_error("normal-form reduction exceeded its budget");
}

// ---------------------------------------------------------------------------
// Class counting: enumerate crossing placements level by level, trace the
// carried multicurve, and classify by the multiset of component classes.
// A multiset realized with fewer crossings is not a k-crossing class.
// ---------------------------------------------------------------------------

struct NormalFormCount {
    std::int64_t count = 0;               // s(track, w, k)
    std::vector<std::vector<int>> representatives;  // one normal placement per class
    std::int64_t offtrack_crossings = 0;  // constant contribution of the crossing table
    int tile_crossings = 0;               // crossings placed in the band complex
    int columns_used = 0;
    std::int64_t placements_examined = 0;
    std::int64_t classes_without_normal_form = 0;  // diagnostics; expected 0
};

struct NormalFormOptions {
    int columns = 0;              // 0: max(k + 3, 4)
    std::int64_t max_placements = 20'000'000;
};

inline NormalFormCount count_normal_forms(const Track& track, const WeightVector& w, int k,
                                          const NormalFormOptions& opts = {}) {
    if (k < 0) throw std::domain_error("crossing count must be non-negative");
    for (size_t e = 0; e < track.edges.size(); ++e)
        if (track.edges[e].on_track && w[e] < k + 2)
            throw std::domain_error("weights below the w(e) >= k+2 threshold");
    NormalFormCount out;
    out.offtrack_crossings = crossing_lower_bound(track, w);
    std::int64_t k_tiles = k - out.offtrack_crossings;
    if (k_tiles < 0) return out;  // fewer crossings than the immersed edges force
    out.tile_crossings = int(k_tiles);
    int columns = opts.columns > 0 ? opts.columns : std::max(int(k_tiles) + 3, 4);
    out.columns_used = columns;

    auto complex = TileComplex::build(track, w, columns);
    int T = complex.tile_count();

    // minimal crossing level per realized multiset
    std::map<std::string, int> min_level;
    std::map<std::string, std::vector<int>> representative;  // at level k_tiles, kappa = 0

    std::vector<int> chosen;
    std::int64_t examined = 0;
    auto record = [&](int level) {
        ++examined;
        if (examined > opts.max_placements)
            throw std::runtime_error("normal-form enumeration exceeded its budget");
        auto traced = trace_components(complex, chosen);
        if (!traced.all_primitive) return;  // not a multicurve
        std::string key = traced.key();
        auto it = min_level.find(key);
        if (it == min_level.end())
            min_level.emplace(key, level);
        else if (level < it->second)
            it->second = level;
        if (level == k_tiles && kappa(complex, chosen) == 0) {
            auto rit = representative.find(key);
            if (rit == representative.end() || chosen < rit->second) representative[key] = chosen;
        }
    };

    // enumerate valid placements of exactly `level` crossings
    std::function<void(int, int, int)> rec = [&](int start, int remaining, int level) {
        if (remaining == 0) {
            record(level);
            return;
        }
        for (int t = start; t + remaining <= T; ++t) {
            bool ok = true;
            for (int prev : chosen) {
                if (complex.column_id[prev] == complex.column_id[t] &&
                    std::abs(complex.tiles[prev].row - complex.tiles[t].row) <= 1) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            chosen.push_back(t);
            rec(t + 1, remaining - 1, level);
            chosen.pop_back();
        }
    };
    for (int level = 0; level <= k_tiles; ++level) rec(0, level, level);

    for (auto& [key, level] : min_level) {
        if (level != k_tiles) continue;
        ++out.count;
        auto rit = representative.find(key);
        if (rit == representative.end())
            ++out.classes_without_normal_form;
        else
            out.representatives.push_back(rit->second);
    }
    out.placements_examined = examined;
    std::sort(out.representatives.begin(), out.representatives.end());
    return out;
}

}  // namespace curvecount

