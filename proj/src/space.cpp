#include "coarse/space.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "coarse/errors.hpp"

namespace coarse {

const char* space_kind_name(SpaceKind k) {
    switch (k) {
        case SpaceKind::FiniteGraph: return "finite_graph";
        case SpaceKind::BoundedGraph: return "bounded_graph";
        case SpaceKind::RegularTree: return "regular_tree";
        case SpaceKind::Horoball: return "horoball";
        case SpaceKind::BinTree: return "bin_tree";
        case SpaceKind::Product: return "product";
    }
    return "?";
}

const char* err_kind_name(ErrKind k) {
    switch (k) {
        case ErrKind::MismatchedSpace: return "MismatchedSpace";
        case ErrKind::InvalidPoint: return "InvalidPoint";
        case ErrKind::InvalidWord: return "InvalidWord";
        case ErrKind::BadValence: return "BadValence";
        case ErrKind::BadDepth: return "BadDepth";
        case ErrKind::BadArgument: return "BadArgument";
        case ErrKind::Disconnected: return "Disconnected";
        case ErrKind::EmptySample: return "EmptySample";
        case ErrKind::TooFewPoints: return "TooFewPoints";
        case ErrKind::EndpointMismatch: return "EndpointMismatch";
        case ErrKind::HorizonExceeded: return "HorizonExceeded";
        case ErrKind::NotLoxodromic: return "NotLoxodromic";
        case ErrKind::DoesNotFixDirection: return "DoesNotFixDirection";
        case ErrKind::NotRegularDirection: return "NotRegularDirection";
        case ErrKind::FactorNotDroppable: return "FactorNotDroppable";
        case ErrKind::NotGeneralType: return "NotGeneralType";
        case ErrKind::NotATremble: return "NotATremble";
        case ErrKind::NotAProduct: return "NotAProduct";
        case ErrKind::UnknownName: return "UnknownName";
        case ErrKind::TypeMismatch: return "TypeMismatch";
        case ErrKind::SyntaxError: return "SyntaxError";
    }
    return "Error";
}

static int next_space_id() {
    static int counter = 0;
    return counter++;
}

SpacePtr finish_space(std::shared_ptr<Space> s) {
    s->id = next_space_id();
    return s;
}

// --- word helpers -------------------------------------------------------------

bool Space::letter_ok(char c) const {
    return letter_index(c) >= 0;
}

int Space::letter_index(char c) const {
    if (kind != SpaceKind::RegularTree) return -1;
    if (valence % 2 == 0) {
        int half = valence / 2;
        if (c >= 'a' && c < 'a' + half) return (c - 'a') * 2;
        if (c >= 'A' && c < 'A' + half) return (c - 'A') * 2 + 1;
        return -1;
    }
    if (c >= 'a' && c < 'a' + valence) return c - 'a';
    return -1;
}

char Space::letter_at(int i) const {
    if (valence % 2 == 0) {
        return (i % 2 == 0) ? static_cast<char>('a' + i / 2) : static_cast<char>('A' + i / 2);
    }
    return static_cast<char>('a' + i);
}

char Space::letter_inv(char c) const {
    if (valence % 2 == 0) {
        if (c >= 'a' && c <= 'z') return static_cast<char>(c - 'a' + 'A');
        return static_cast<char>(c - 'A' + 'a');
    }
    return c; // involutive letters
}

std::string Space::word_reduce(const std::string& raw) const {
    std::string out;
    for (char c : raw) {
        if (!letter_ok(c))
            fail(ErrKind::InvalidWord, std::string("letter '") + c + "' not in the valence-" +
                                           std::to_string(valence) + " alphabet");
        bool cancel = !out.empty() && (valence % 2 == 0 ? out.back() == letter_inv(c) : out.back() == c);
        if (cancel)
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

std::string Space::word_inverse(const std::string& w) const {
    std::string out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(letter_inv(*it));
    return out;
}

std::string Space::word_mul(const std::string& u, const std::string& v) const {
    return word_reduce(u + v);
}

// --- membership ----------------------------------------------------------------

bool Space::contains(const Point& p) const {
    if (p.space != id) return false;
    switch (kind) {
        case SpaceKind::FiniteGraph:
        case SpaceKind::BoundedGraph:
            return p.kind == Point::Kind::Vertex && p.vertex >= 0 &&
                   p.vertex < static_cast<int>(names.size());
        case SpaceKind::RegularTree: {
            if (p.kind != Point::Kind::Word) return false;
            if (p.leaf && !leaves) return false;
            if (static_cast<int>(p.word.size()) > radius) return false;
            for (char c : p.word)
                if (!letter_ok(c)) return false;
            return word_reduce(p.word) == p.word;
        }
        case SpaceKind::Horoball: {
            if (p.kind != Point::Kind::LevelPos) return false;
            if (p.level < 0 || p.level > depth) return false;
            if (cycle_base) return p.pos >= 0 && p.pos < cycle_len;
            return p.pos >= -width && p.pos <= width;
        }
        case SpaceKind::BinTree: {
            if (p.kind != Point::Kind::LevelPos) return false;
            if (p.level < 0 || p.level > height) return false;
            return p.pos >= 0 && p.pos < (1LL << p.level);
        }
        case SpaceKind::Product: {
            if (p.kind != Point::Kind::Tuple || p.parts.size() != factors.size()) return false;
            for (size_t i = 0; i < factors.size(); ++i)
                if (!factors[i]->contains(p.parts[i])) return false;
            return true;
        }
    }
    return false;
}

void Space::check_point(const Point& p) const {
    if (p.space != id)
        fail(ErrKind::MismatchedSpace, "point " + point_name(p) + " does not belong to " + label);
    if (!contains(p))
        fail(ErrKind::InvalidPoint, "point " + point_name(p) + " is not a vertex of " + label);
}

// --- indexing for BFS-backed kinds ----------------------------------------------

int Space::graph_index(const Point& p) const {
    switch (kind) {
        case SpaceKind::FiniteGraph:
        case SpaceKind::BoundedGraph:
            return p.vertex;
        case SpaceKind::Horoball: {
            long long row = cycle_base ? cycle_len : 2 * width + 1;
            long long off = cycle_base ? p.pos : p.pos + width;
            return static_cast<int>(p.level * row + off);
        }
        default:
            fail(ErrKind::BadArgument, "no dense index for " + std::string(space_kind_name(kind)));
    }
}

std::vector<Point> Space::graph_points() const {
    std::vector<Point> out;
    switch (kind) {
        case SpaceKind::FiniteGraph:
        case SpaceKind::BoundedGraph:
            for (int v = 0; v < static_cast<int>(names.size()); ++v)
                out.push_back(Point::make_vertex(id, v));
            break;
        case SpaceKind::Horoball: {
            long long lo = cycle_base ? 0 : -width;
            long long hi = cycle_base ? cycle_len - 1 : width;
            for (int k = 0; k <= depth; ++k)
                for (long long x = lo; x <= hi; ++x) out.push_back(Point::make_levelpos(id, k, x));
            break;
        }
        default:
            fail(ErrKind::BadArgument, "graph_points unsupported here");
    }
    return out;
}

const std::vector<long long>& Space::bfs_row(const Point& src) const {
    std::lock_guard<std::mutex> g(cache_mu_);
    std::string k = src.key();
    auto it = bfs_cache_.find(k);
    if (it != bfs_cache_.end()) return it->second;

    long long row = 0;
    switch (kind) {
        case SpaceKind::FiniteGraph:
        case SpaceKind::BoundedGraph: row = static_cast<long long>(names.size()); break;
        case SpaceKind::Horoball:
            row = (cycle_base ? cycle_len : 2 * width + 1) * (depth + 1);
            break;
        default: fail(ErrKind::BadArgument, "bfs_row unsupported here");
    }
    std::vector<long long> dist(static_cast<size_t>(row), -1);
    std::deque<Point> q;
    dist[graph_index(src)] = 0;
    q.push_back(src);
    while (!q.empty()) {
        Point u = q.front();
        q.pop_front();
        long long du = dist[graph_index(u)];
        for (const Point& v : neighbors(u)) {
            long long& dv = dist[graph_index(v)];
            if (dv < 0) {
                dv = du + 1;
                q.push_back(v);
            }
        }
    }
    auto [pos, ok] = bfs_cache_.emplace(k, std::move(dist));
    return pos->second;
}

// --- distance -------------------------------------------------------------------

long long Space::idist(const Point& a, const Point& b) const {
    check_point(a);
    check_point(b);
    if (a == b) return 0;
    switch (kind) {
        case SpaceKind::RegularTree: {
            // host-word distance plus a hop for each pendant endpoint
            long long extra = (a.leaf ? 1 : 0) + (b.leaf ? 1 : 0);
            const std::string& u = a.word;
            const std::string& v = b.word;
            size_t c = 0;
            while (c < u.size() && c < v.size() && u[c] == v[c]) ++c;
            long long host = static_cast<long long>(u.size() - c) + static_cast<long long>(v.size() - c);
            return host + extra;
        }
        case SpaceKind::BinTree: {
            long long l1 = a.level, l2 = b.level;
            long long shared = std::min(l1, l2);
            unsigned long long x = static_cast<unsigned long long>(a.pos ^ b.pos);
            long long meet = shared;
            if (x != 0) {
                long long tz = __builtin_ctzll(x);
                meet = std::min(shared, tz);
            }
            return (l1 - meet) + (l2 - meet);
        }
        case SpaceKind::Product: {
            long long acc = 0;
            for (size_t i = 0; i < factors.size(); ++i) {
                long long d = factors[i]->idist(a.parts[i], b.parts[i]);
                acc = (pnorm == 1) ? acc + d : std::max(acc, d);
            }
            return acc;
        }
        default: {
            const auto& row = bfs_row(a);
            long long d = row[graph_index(b)];
            if (d < 0) fail(ErrKind::Disconnected, "no path between " + point_name(a) + " and " + point_name(b));
            return d;
        }
    }
}

// --- neighbors -------------------------------------------------------------------

std::vector<Point> Space::neighbors(const Point& p) const {
    check_point(p);
    std::vector<Point> out;
    switch (kind) {
        case SpaceKind::FiniteGraph:
        case SpaceKind::BoundedGraph:
            for (int v : adj[p.vertex]) out.push_back(Point::make_vertex(id, v));
            break;
        case SpaceKind::RegularTree: {
            if (p.leaf) {
                out.push_back(Point::make_word(id, p.word));
                break;
            }
            if (!p.word.empty())
                out.push_back(Point::make_word(id, p.word.substr(0, p.word.size() - 1)));
            if (static_cast<int>(p.word.size()) < radius) {
                for (int i = 0; i < valence; ++i) {
                    char c = letter_at(i);
                    bool cancel = !p.word.empty() &&
                                  (valence % 2 == 0 ? p.word.back() == letter_inv(c) : p.word.back() == c);
                    if (!cancel) out.push_back(Point::make_word(id, p.word + c));
                }
            }
            if (leaves) out.push_back(Point::make_word(id, p.word, true));
            break;
        }
        case SpaceKind::Horoball: {
            long long k = p.level, x = p.pos;
            long long reach = (k >= 62) ? (1LL << 62) : (1LL << k);
            if (k > 0) out.push_back(Point::make_levelpos(id, k - 1, x));
            if (k < depth) out.push_back(Point::make_levelpos(id, k + 1, x));
            if (cycle_base) {
                long long half = cycle_len / 2;
                long long span = std::min(reach, half);
                for (long long dlt = 1; dlt <= span; ++dlt) {
                    out.push_back(Point::make_levelpos(id, k, (x + dlt) % cycle_len));
                    long long y = (x - dlt) % cycle_len;
                    if (y < 0) y += cycle_len;
                    if (y != (x + dlt) % cycle_len) out.push_back(Point::make_levelpos(id, k, y));
                }
            } else {
                for (long long y = std::max(-width, x - reach); y <= std::min(width, x + reach); ++y)
                    if (y != x) out.push_back(Point::make_levelpos(id, k, y));
            }
            break;
        }
        case SpaceKind::BinTree: {
            long long l = p.level, r = p.pos;
            if (l > 0) out.push_back(Point::make_levelpos(id, l - 1, r & ((1LL << (l - 1)) - 1)));
            if (l < height) {
                out.push_back(Point::make_levelpos(id, l + 1, r));
                out.push_back(Point::make_levelpos(id, l + 1, r + (1LL << l)));
            }
            break;
        }
        case SpaceKind::Product: {
            if (pnorm == 1) {
                for (size_t i = 0; i < factors.size(); ++i) {
                    for (const Point& q : factors[i]->neighbors(p.parts[i])) {
                        Point np = p;
                        np.parts[i] = q;
                        out.push_back(std::move(np));
                    }
                }
            } else {
                // every tuple of per-factor moves (stay or step), not all staying
                std::vector<std::vector<Point>> opts;
                for (size_t i = 0; i < factors.size(); ++i) {
                    std::vector<Point> o{p.parts[i]};
                    for (const Point& q : factors[i]->neighbors(p.parts[i])) o.push_back(q);
                    opts.push_back(std::move(o));
                }
                std::vector<size_t> pick(factors.size(), 0);
                while (true) {
                    size_t i = 0;
                    while (i < pick.size()) {
                        if (++pick[i] < opts[i].size()) break;
                        pick[i] = 0;
                        ++i;
                    }
                    if (i == pick.size()) break;
                    bool moved = false;
                    Point np = p;
                    for (size_t j = 0; j < pick.size(); ++j) {
                        np.parts[j] = opts[j][pick[j]];
                        moved |= pick[j] != 0;
                    }
                    if (moved) out.push_back(std::move(np));
                }
            }
            break;
        }
    }
    return out;
}

// --- geodesics -------------------------------------------------------------------

std::vector<Point> Space::geodesic(const Point& a, const Point& b) const {
    check_point(a);
    check_point(b);
    if (a == b) return {a};
    std::vector<Point> path;
    switch (kind) {
        case SpaceKind::RegularTree: {
            std::vector<Point> pre, post;
            Point ah = a, bh = b;
            if (a.leaf) {
                pre.push_back(a);
                ah = Point::make_word(id, a.word);
            }
            if (b.leaf) {
                post.push_back(b);
                bh = Point::make_word(id, b.word);
            }
            const std::string& u = ah.word;
            const std::string& v = bh.word;
            size_t c = 0;
            while (c < u.size() && c < v.size() && u[c] == v[c]) ++c;
            path = pre;
            for (size_t i = u.size(); i > c; --i) path.push_back(Point::make_word(id, u.substr(0, i)));
            path.push_back(Point::make_word(id, u.substr(0, c)));
            for (size_t i = c + 1; i <= v.size(); ++i) path.push_back(Point::make_word(id, v.substr(0, i)));
            for (const Point& q : post) path.push_back(q);
            // degenerate overlaps (a == host of b etc.) leave duplicates; squeeze them
            std::vector<Point> squeezed;
            for (const Point& q : path)
                if (squeezed.empty() || !(squeezed.back() == q)) squeezed.push_back(q);
            return squeezed;
        }
        case SpaceKind::BinTree: {
            std::vector<Point> down;
            Point x = a, y = b;
            std::vector<Point> up{x};
            auto lift = [&](Point& p) {
                p = Point::make_levelpos(id, p.level - 1, p.pos & ((1LL << (p.level - 1)) - 1));
            };
            while (x.level > y.level) { lift(x); up.push_back(x); }
            while (y.level > x.level) { down.push_back(y); lift(y); }
            while (!(x == y)) {
                lift(x); up.push_back(x);
                down.push_back(y); lift(y);
            }
            path = up;
            for (auto it = down.rbegin(); it != down.rend(); ++it) path.push_back(*it);
            return path;
        }
        case SpaceKind::Product: {
            if (pnorm == 1) {
                path.push_back(a);
                Point cur = a;
                for (size_t i = 0; i < factors.size(); ++i) {
                    auto leg = factors[i]->geodesic(a.parts[i], b.parts[i]);
                    for (size_t t = 1; t < leg.size(); ++t) {
                        cur.parts[i] = leg[t];
                        path.push_back(cur);
                    }
                }
                return path;
            }
            std::vector<std::vector<Point>> legs;
            size_t len = 0;
            for (size_t i = 0; i < factors.size(); ++i) {
                legs.push_back(factors[i]->geodesic(a.parts[i], b.parts[i]));
                len = std::max(len, legs.back().size());
            }
            for (size_t t = 0; t < len; ++t) {
                Point cur = a;
                for (size_t i = 0; i < factors.size(); ++i)
                    cur.parts[i] = legs[i][std::min(t, legs[i].size() - 1)];
                path.push_back(cur);
            }
            return path;
        }
        default: {
            // lexicographically least geodesic under the neighbor order:
            // walk from a, always taking the first neighbor that stays on a geodesic
            const auto& row = bfs_row(b);
            long long d = row[graph_index(a)];
            if (d < 0) fail(ErrKind::Disconnected, "no path between " + point_name(a) + " and " + point_name(b));
            Point cur = a;
            path.push_back(cur);
            while (!(cur == b)) {
                long long dc = row[graph_index(cur)];
                bool advanced = false;
                for (const Point& nb : neighbors(cur)) {
                    if (row[graph_index(nb)] == dc - 1) {
                        cur = nb;
                        path.push_back(cur);
                        advanced = true;
                        break;
                    }
                }
                if (!advanced) fail(ErrKind::Disconnected, "geodesic reconstruction failed");
            }
            return path;
        }
    }
}

// --- enumeration -----------------------------------------------------------------

long long Space::vertex_count() const {
    switch (kind) {
        case SpaceKind::FiniteGraph:
        case SpaceKind::BoundedGraph:
            return static_cast<long long>(names.size());
        case SpaceKind::RegularTree: {
            long long n = 1, layer = 1;
            for (int r = 1; r <= radius; ++r) {
                layer *= (r == 1) ? valence : (valence - 1);
                n += layer;
                if (n > (1LL << 55)) return n;
            }
            return leaves ? 2 * n : n;
        }
        case SpaceKind::Horoball:
            return (cycle_base ? cycle_len : 2 * width + 1) * (depth + 1);
        case SpaceKind::BinTree:
            return height >= 62 ? (1LL << 62) : (1LL << (height + 1)) - 1;
        case SpaceKind::Product: {
            long long n = 1;
            for (const auto& f : factors) {
                n *= f->vertex_count();
                if (n > (1LL << 55)) return n;
            }
            return n;
        }
    }
    return 0;
}

bool Space::enumerable(long long guard) const { return vertex_count() <= guard; }

std::vector<Point> Space::vertices() const {
    if (!enumerable())
        fail(ErrKind::BadArgument, label + " is too large to enumerate (" +
                                       std::to_string(vertex_count()) + " vertices)");
    std::vector<Point> out;
    switch (kind) {
        case SpaceKind::FiniteGraph:
        case SpaceKind::BoundedGraph:
        case SpaceKind::Horoball:
            return graph_points();
        case SpaceKind::RegularTree: {
            std::vector<std::string> layer{""};
            out.push_back(Point::make_word(id, ""));
            if (leaves) out.push_back(Point::make_word(id, "", true));
            for (int r = 1; r <= radius; ++r) {
                std::vector<std::string> next;
                for (const auto& w : layer) {
                    for (int i = 0; i < valence; ++i) {
                        char c = letter_at(i);
                        bool cancel = !w.empty() &&
                                      (valence % 2 == 0 ? w.back() == letter_inv(c) : w.back() == c);
                        if (cancel) continue;
                        next.push_back(w + c);
                        out.push_back(Point::make_word(id, next.back()));
                        if (leaves) out.push_back(Point::make_word(id, next.back(), true));
                    }
                }
                layer = std::move(next);
            }
            return out;
        }
        case SpaceKind::BinTree:
            for (int l = 0; l <= height; ++l)
                for (long long r = 0; r < (1LL << l); ++r)
                    out.push_back(Point::make_levelpos(id, l, r));
            return out;
        case SpaceKind::Product: {
            std::vector<std::vector<Point>> fv;
            for (const auto& f : factors) fv.push_back(f->vertices());
            std::vector<size_t> pick(factors.size(), 0);
            while (true) {
                std::vector<Point> parts;
                for (size_t i = 0; i < pick.size(); ++i) parts.push_back(fv[i][pick[i]]);
                out.push_back(Point::make_tuple(id, std::move(parts)));
                size_t i = pick.size();
                while (i > 0) {
                    --i;
                    if (++pick[i] < fv[i].size()) break;
                    pick[i] = 0;
                    if (i == 0) return out;
                }
            }
        }
    }
    return out;
}

std::vector<Point> Space::ball(const Point& center, long long r) const {
    check_point(center);
    std::vector<Point> out{center};
    std::set<std::string> seen{center.key()};
    std::deque<std::pair<Point, long long>> q{{center, 0}};
    while (!q.empty()) {
        auto [u, du] = q.front();
        q.pop_front();
        if (du == r) continue;
        for (const Point& v : neighbors(u)) {
            if (seen.insert(v.key()).second) {
                out.push_back(v);
                q.emplace_back(v, du + 1);
            }
        }
    }
    return out;
}

// --- truncation frontier -----------------------------------------------------------

bool Space::has_frontier() const {
    switch (kind) {
        case SpaceKind::FiniteGraph:
        case SpaceKind::BoundedGraph: return false;
        case SpaceKind::RegularTree:
        case SpaceKind::BinTree: return true;
        case SpaceKind::Horoball: {
            bool top_cut = (depth >= 62) ? false
                                         : ((1LL << depth) < (cycle_base ? cycle_len : 2 * width));
            return !cycle_base || top_cut;
        }
        case SpaceKind::Product:
            for (const auto& f : factors)
                if (f->has_frontier()) return true;
            return false;
    }
    return false;
}

long long Space::frontier_depth(const Point& p) const {
    check_point(p);
    switch (kind) {
        case SpaceKind::FiniteGraph:
        case SpaceKind::BoundedGraph: return LLONG_MAX;
        case SpaceKind::RegularTree: {
            long long d = radius - static_cast<long long>(p.word.size());
            return d + (p.leaf ? 1 : 0);
        }
        case SpaceKind::BinTree:
            return std::min<long long>(p.level, height - p.level);
        case SpaceKind::Horoball: {
            if (!has_frontier()) return LLONG_MAX;
            std::lock_guard<std::mutex> g(cache_mu_);
            if (frontier_cache_.empty()) {
                long long rowlen = (cycle_base ? cycle_len : 2 * width + 1) * (depth + 1);
                frontier_cache_.assign(static_cast<size_t>(rowlen), -1);
                bool top_cut = (depth >= 62) ? false
                                             : ((1LL << depth) < (cycle_base ? cycle_len : 2 * width));
                std::deque<Point> q;
                for (const Point& v : graph_points()) {
                    bool cut = false;
                    if (!cycle_base && (v.pos == -width || v.pos == width)) cut = true;
                    if (top_cut && v.level == depth) cut = true;
                    if (cut) {
                        frontier_cache_[graph_index(v)] = 0;
                        q.push_back(v);
                    }
                }
                while (!q.empty()) {
                    Point u = q.front();
                    q.pop_front();
                    long long du = frontier_cache_[graph_index(u)];
                    for (const Point& v : neighbors(u)) {
                        long long& dv = frontier_cache_[graph_index(v)];
                        if (dv < 0) {
                            dv = du + 1;
                            q.push_back(v);
                        }
                    }
                }
            }
            return frontier_cache_[graph_index(p)];
        }
        case SpaceKind::Product: {
            long long m = LLONG_MAX;
            for (size_t i = 0; i < factors.size(); ++i)
                m = std::min(m, factors[i]->frontier_depth(p.parts[i]));
            return m;
        }
    }
    return LLONG_MAX;
}

// --- base point and probe ------------------------------------------------------------

Point Space::base() const {
    switch (kind) {
        case SpaceKind::FiniteGraph:
        case SpaceKind::BoundedGraph: return Point::make_vertex(id, 0);
        case SpaceKind::RegularTree: return Point::make_word(id, "");
        case SpaceKind::Horoball: return Point::make_levelpos(id, 0, 0);
        case SpaceKind::BinTree: return Point::make_levelpos(id, height / 2, 0);
        case SpaceKind::Product: {
            std::vector<Point> parts;
            for (const auto& f : factors) parts.push_back(f->base());
            return Point::make_tuple(id, parts);
        }
    }
    return Point();
}

Point Space::vertex_named(const std::string& name) const {
    if (kind != SpaceKind::FiniteGraph && kind != SpaceKind::BoundedGraph)
        fail(ErrKind::BadArgument, "vertex_named applies to explicit graphs, not " +
                                   std::string(space_kind_name(kind)));
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return Point::make_vertex(id, static_cast<int>(i));
    fail(ErrKind::UnknownName, "no vertex named '" + name + "' in " + label);
}

std::vector<Point> Space::default_probe() const {
    if (kind == SpaceKind::BinTree) {
        // the deep column separates dyadic affine maps that agree near the base
        std::vector<Point> probe;
        for (int l = 0; l <= height; ++l) probe.push_back(Point::make_levelpos(id, l, 0));
        if (height >= 1) probe.push_back(Point::make_levelpos(id, 1, 1));
        return probe;
    }
    long long r = 2;
    if (kind == SpaceKind::RegularTree) r = std::min<long long>(r, radius);
    return ball(base(), r);
}

long long Space::diameter_now() const {
    if (kind == SpaceKind::BoundedGraph && diameter >= 0) return diameter;
    {
        std::lock_guard<std::mutex> g(cache_mu_);
        if (diameter_cache_ >= 0) return diameter_cache_;
    }
    long long best = 0;
    switch (kind) {
        case SpaceKind::RegularTree: best = 2LL * radius + (leaves ? 2 : 0); break;
        case SpaceKind::BinTree: best = 2LL * height; break;
        case SpaceKind::Product: {
            for (size_t i = 0; i < factors.size(); ++i) {
                long long d = factors[i]->diameter_now();
                best = (pnorm == 1) ? best + d : std::max(best, d);
            }
            break;
        }
        default: {
            for (const Point& v : graph_points()) {
                const auto& row = bfs_row(v);
                for (long long d : row) {
                    if (d < 0) fail(ErrKind::Disconnected, label + " is disconnected");
                    best = std::max(best, d);
                }
            }
            break;
        }
    }
    std::lock_guard<std::mutex> g(cache_mu_);
    diameter_cache_ = best;
    return best;
}

// --- constructors ---------------------------------------------------------------------

static std::shared_ptr<Space> graph_from_edges(
    SpaceKind kind, const std::vector<std::pair<std::string, std::string>>& edges,
    const std::string& label) {
    auto s = std::make_shared<Space>();
    s->kind = kind;
    s->label = label;
    std::map<std::string, int> index;
    auto intern = [&](const std::string& n) {
        auto it = index.find(n);
        if (it != index.end()) return it->second;
        int v = static_cast<int>(s->names.size());
        index.emplace(n, v);
        s->names.push_back(n);
        return v;
    };
    // vertex ids follow first appearance in the edge list; tie-breaks always
    // compare names, so the id order never leaks into geodesic choices
    for (const auto& [u, v] : edges) {
        intern(u);
        intern(v);
    }
    s->adj.resize(s->names.size());
    std::set<std::pair<int, int>> seen;
    for (const auto& [un, vn] : edges) {
        int u = intern(un), v = intern(vn);
        if (u == v) fail(ErrKind::BadArgument, "loop edge at vertex " + un);
        if (seen.insert({std::min(u, v), std::max(u, v)}).second) {
            s->adj[u].push_back(v);
            s->adj[v].push_back(u);
        }
    }
    for (auto& lst : s->adj) {
        std::sort(lst.begin(), lst.end(),
                  [&](int x, int y) { return s->names[x] < s->names[y]; });
    }
    if (s->names.empty()) fail(ErrKind::BadArgument, "graph needs at least one edge");
    return s;
}

SpacePtr make_finite_graph(const std::vector<std::pair<std::string, std::string>>& edges,
                           const std::string& label) {
    auto s = graph_from_edges(SpaceKind::FiniteGraph, edges, label);
    auto sp = finish_space(s);
    sp->diameter_now(); // also validates connectivity
    return sp;
}

SpacePtr make_bounded_graph(const std::vector<std::pair<std::string, std::string>>& edges,
                            const std::string& label) {
    auto s = graph_from_edges(SpaceKind::BoundedGraph, edges, label);
    auto sp = finish_space(s);
    s->diameter = sp->diameter_now();
    return sp;
}

SpacePtr make_cycle(int n, const std::string& label) {
    if (n < 3) fail(ErrKind::BadArgument, "cycle needs at least 3 vertices");
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < n; ++i)
        edges.emplace_back(std::to_string(i), std::to_string((i + 1) % n));
    return make_finite_graph(edges, label.empty() ? "C" + std::to_string(n) : label);
}

SpacePtr make_path_graph(int n, const std::string& label) {
    if (n < 2) fail(ErrKind::BadArgument, "path needs at least 2 vertices");
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i + 1 < n; ++i)
        edges.emplace_back(std::to_string(i), std::to_string(i + 1));
    return make_finite_graph(edges, label.empty() ? "P" + std::to_string(n) : label);
}

SpacePtr make_grid(int w, int h, const std::string& label) {
    if (w < 2 || h < 2) fail(ErrKind::BadArgument, "grid needs at least 2x2 vertices");
    std::vector<std::pair<std::string, std::string>> edges;
    auto name = [&](int x, int y) { return std::to_string(x) + "_" + std::to_string(y); };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (x + 1 < w) edges.emplace_back(name(x, y), name(x + 1, y));
            if (y + 1 < h) edges.emplace_back(name(x, y), name(x, y + 1));
        }
    return make_finite_graph(edges, label.empty() ? "grid" + std::to_string(w) + "x" + std::to_string(h)
                                                  : label);
}

SpacePtr make_regular_tree(int valence, int radius, bool leaves, const std::string& label) {
    if (valence < 2)
        fail(ErrKind::BadValence, "tree valence must be at least 2 (2 gives the line)");
    if (valence > 26) fail(ErrKind::BadValence, "tree valence capped at 26");
    if (radius < 1) fail(ErrKind::BadDepth, "tree truncation radius must be at least 1");
    auto s = std::make_shared<Space>();
    s->kind = SpaceKind::RegularTree;
    s->valence = valence;
    s->radius = radius;
    s->leaves = leaves;
    s->label = label.empty()
                   ? "T" + std::to_string(valence) + "r" + std::to_string(radius) + (leaves ? "+leaves" : "")
                   : label;
    return finish_space(s);
}

SpacePtr make_horoball_line(long long width, int depth, const std::string& label) {
    if (width < 1) fail(ErrKind::BadArgument, "horoball base needs width >= 1");
    if (depth < 1 || depth > 40) fail(ErrKind::BadDepth, "horoball depth must be in [1, 40]");
    auto s = std::make_shared<Space>();
    s->kind = SpaceKind::Horoball;
    s->width = width;
    s->depth = depth;
    s->label = label.empty() ? "H[" + std::to_string(width) + "]d" + std::to_string(depth) : label;
    return finish_space(s);
}

SpacePtr make_horoball_cycle(long long cycle_len, int depth, const std::string& label) {
    if (cycle_len < 3) fail(ErrKind::BadArgument, "horoball cycle base needs length >= 3");
    if (depth < 1 || depth > 40) fail(ErrKind::BadDepth, "horoball depth must be in [1, 40]");
    auto s = std::make_shared<Space>();
    s->kind = SpaceKind::Horoball;
    s->cycle_base = true;
    s->cycle_len = cycle_len;
    s->depth = depth;
    s->label = label.empty() ? "Hc" + std::to_string(cycle_len) + "d" + std::to_string(depth) : label;
    return finish_space(s);
}

SpacePtr make_bin_tree(int height, const std::string& label) {
    if (height < 2 || height > 58) fail(ErrKind::BadDepth, "binary model height must be in [2, 58]");
    auto s = std::make_shared<Space>();
    s->kind = SpaceKind::BinTree;
    s->height = height;
    s->label = label.empty() ? "B" + std::to_string(height) : label;
    return finish_space(s);
}

SpacePtr make_product(const std::vector<SpacePtr>& factors, int pnorm, const std::string& label) {
    if (factors.empty()) fail(ErrKind::BadArgument, "product needs at least one factor");
    if (pnorm != 1 && pnorm != 0)
        fail(ErrKind::BadArgument, "product metric must be l1 (p=1) or linf (p=0)");
    for (const auto& f : factors)
        if (f->kind == SpaceKind::Product)
            fail(ErrKind::BadArgument, "product factors must be flat (no nested products)");
    auto s = std::make_shared<Space>();
    s->kind = SpaceKind::Product;
    s->pnorm = pnorm;
    s->factors = factors;
    std::string lbl = label;
    if (lbl.empty()) {
        lbl = "(";
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) lbl += pnorm == 1 ? " x1 " : " xoo ";
            lbl += factors[i]->label;
        }
        lbl += ")";
    }
    s->label = lbl;
    return finish_space(s);
}

} // namespace coarse
