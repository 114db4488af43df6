#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coarse/rational.hpp"

namespace coarse {

// A point of some space. The payload depends on the space kind:
//   Vertex    - finite graph / bounded graph vertex index
//   Word      - reduced word in a regular tree (empty = root); leaf marks the
//               pendant copy hanging off the word vertex in leafy trees
//   LevelPos  - horoball (level, base coordinate) or binary model (level, residue)
//   Tuple     - one part per product factor
struct Point {
    enum class Kind : std::uint8_t { None, Vertex, Word, LevelPos, Tuple };

    Kind kind = Kind::None;
    int space = -1; // registry id of the owning space

    int vertex = -1;
    std::string word;
    bool leaf = false;
    long long level = 0;
    long long pos = 0;
    std::vector<Point> parts;

    static Point make_vertex(int space, int v) {
        Point p; p.kind = Kind::Vertex; p.space = space; p.vertex = v; return p;
    }
    static Point make_word(int space, std::string w, bool leaf = false) {
        Point p; p.kind = Kind::Word; p.space = space; p.word = std::move(w); p.leaf = leaf; return p;
    }
    static Point make_levelpos(int space, long long level, long long pos) {
        Point p; p.kind = Kind::LevelPos; p.space = space; p.level = level; p.pos = pos; return p;
    }
    static Point make_tuple(int space, std::vector<Point> parts) {
        Point p; p.kind = Kind::Tuple; p.space = space; p.parts = std::move(parts); return p;
    }

    bool operator==(const Point& o) const {
        if (kind != o.kind || space != o.space) return false;
        switch (kind) {
            case Kind::Vertex: return vertex == o.vertex;
            case Kind::Word: return word == o.word && leaf == o.leaf;
            case Kind::LevelPos: return level == o.level && pos == o.pos;
            case Kind::Tuple: return parts == o.parts;
            default: return true;
        }
    }
    bool operator!=(const Point& o) const { return !(*this == o); }
    bool operator<(const Point& o) const { return key() < o.key(); }

    // stable total order / display name; doubles as the tie-break key
    std::string key() const;
};

std::string point_name(const Point& p);

// A direction at infinity.
//   TreeEnd - eventually periodic reduced word prefix.(tail)^inf, canonical form
//   Cusp    - the horoball vertical direction (also the binary model's root end)
//   BinEnd  - end of the dyadic binary model, named by the 2-adic value it
//             converges to (a rational with odd denominator covers every
//             eventually periodic residue ray)
// Product directions are tuples with one entry per factor.
struct Dir {
    enum class Kind : std::uint8_t { TreeEnd, Cusp, BinEnd, Tuple };

    Kind kind = Kind::Cusp;
    std::string prefix;
    std::string tail;
    Rat value{0};
    std::vector<Dir> parts;

    static Dir cusp() { Dir d; d.kind = Kind::Cusp; return d; }
    static Dir tree_end(std::string prefix, std::string tail);
    static Dir bin_end(const Rat& v) { Dir d; d.kind = Kind::BinEnd; d.value = v; return d; }
    static Dir tuple(std::vector<Dir> parts) {
        Dir d; d.kind = Kind::Tuple; d.parts = std::move(parts); return d;
    }

    bool operator==(const Dir& o) const;
    bool operator!=(const Dir& o) const { return !(*this == o); }
    bool operator<(const Dir& o) const { return key() < o.key(); }

    std::string key() const;
};

std::string dir_name(const Dir& d);

} // namespace coarse
