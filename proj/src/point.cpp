#include "coarse/point.hpp"

#include <algorithm>

#include "coarse/errors.hpp"

namespace coarse {

std::string Point::key() const {
    switch (kind) {
        case Kind::Vertex: return "v" + std::to_string(vertex);
        case Kind::Word: return (leaf ? "w*" : "w") + word;
        case Kind::LevelPos: return "l" + std::to_string(level) + "|" + std::to_string(pos);
        case Kind::Tuple: {
            std::string s = "(";
            for (size_t i = 0; i < parts.size(); ++i) {
                if (i) s += ",";
                s += parts[i].key();
            }
            return s + ")";
        }
        default: return "?";
    }
}

std::string point_name(const Point& p) {
    switch (p.kind) {
        case Point::Kind::Vertex: return std::to_string(p.vertex); // display uses space names when available
        case Point::Kind::Word: {
            std::string base = p.word.empty() ? "e" : p.word;
            return p.leaf ? base + "*" : base;
        }
        case Point::Kind::LevelPos:
            return "(" + std::to_string(p.level) + "|" + std::to_string(p.pos) + ")";
        case Point::Kind::Tuple: {
            std::string s = "(";
            for (size_t i = 0; i < p.parts.size(); ++i) {
                if (i) s += ",";
                s += point_name(p.parts[i]);
            }
            return s + ")";
        }
        default: return "?";
    }
}

// Primitive root of a string: shortest t with s = t^k.
static std::string primitive_root(const std::string& s) {
    size_t n = s.size();
    for (size_t d = 1; d <= n; ++d) {
        if (n % d) continue;
        bool ok = true;
        for (size_t i = d; i < n && ok; ++i) ok = s[i] == s[i % d];
        if (ok) return s.substr(0, d);
    }
    return s;
}

Dir Dir::tree_end(std::string prefix, std::string tail) {
    if (tail.empty()) fail(ErrKind::BadArgument, "direction tail must be nonempty");
    tail = primitive_root(tail);
    // absorb the prefix into the period where possible:  p.x (t'.x)^inf = p (x.t')^inf
    while (!prefix.empty() && prefix.back() == tail.back()) {
        prefix.pop_back();
        tail = tail.back() + tail.substr(0, tail.size() - 1);
    }
    Dir d;
    d.kind = Kind::TreeEnd;
    d.prefix = std::move(prefix);
    d.tail = std::move(tail);
    return d;
}

bool Dir::operator==(const Dir& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::TreeEnd: return prefix == o.prefix && tail == o.tail;
        case Kind::Cusp: return true;
        case Kind::BinEnd: return value == o.value;
        case Kind::Tuple: return parts == o.parts;
    }
    return false;
}

std::string Dir::key() const {
    switch (kind) {
        case Kind::TreeEnd: return "e:" + prefix + ":" + tail;
        case Kind::Cusp: return "c";
        case Kind::BinEnd: return "b:" + rat_str(value);
        case Kind::Tuple: {
            std::string s = "(";
            for (size_t i = 0; i < parts.size(); ++i) {
                if (i) s += ";";
                s += parts[i].key();
            }
            return s + ")";
        }
    }
    return "?";
}

std::string dir_name(const Dir& d) {
    switch (d.kind) {
        case Dir::Kind::TreeEnd:
            return d.prefix.empty() ? "end(" + d.tail + ")" : "end(" + d.prefix + "." + d.tail + ")";
        case Dir::Kind::Cusp: return "cusp";
        case Dir::Kind::BinEnd: return "end2(" + rat_str(d.value) + ")";
        case Dir::Kind::Tuple: {
            std::string s = "(";
            for (size_t i = 0; i < d.parts.size(); ++i) {
                if (i) s += ";";
                s += dir_name(d.parts[i]);
            }
            return s + ")";
        }
    }
    return "?";
}

} // namespace coarse
