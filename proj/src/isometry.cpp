#include "coarse/isometry.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "coarse/errors.hpp"

namespace coarse {

static std::vector<char> identity_perm(const SpacePtr& sp) {
    std::vector<char> p(sp->nletters());
    for (int i = 0; i < sp->nletters(); ++i) p[i] = sp->letter_at(i);
    return p;
}

static bool perm_is_identity(const SpacePtr& sp, const std::vector<char>& p) {
    for (int i = 0; i < static_cast<int>(p.size()); ++i)
        if (p[i] != sp->letter_at(i)) return false;
    return true;
}

static std::string perm_apply_word(const std::vector<char>& p, const SpacePtr& sp,
                                   const std::string& w) {
    std::string out;
    out.reserve(w.size());
    for (char c : w) out.push_back(p[sp->letter_index(c)]);
    return out;
}

// --- apply ---------------------------------------------------------------------

Point Isometry::apply(const Point& p) const {
    space->check_point(p);
    switch (kind) {
        case IsoKind::TreeIso: {
            std::string img = space->word_reduce(word + perm_apply_word(perm, space, p.word));
            if (static_cast<int>(img.size()) > space->radius)
                fail(ErrKind::HorizonExceeded,
                     "image word of length " + std::to_string(img.size()) +
                         " leaves the radius-" + std::to_string(space->radius) + " truncation");
            return Point::make_word(space->id, img, p.leaf);
        }
        case IsoKind::GraphPerm:
            return Point::make_vertex(space->id, vperm[p.vertex]);
        case IsoKind::BaseShift: {
            long long x = p.pos + shift;
            if (space->cycle_base) {
                x %= space->cycle_len;
                if (x < 0) x += space->cycle_len;
            } else if (x < -space->width || x > space->width) {
                fail(ErrKind::HorizonExceeded,
                     "shifted base point " + std::to_string(x) + " leaves the horoball base");
            }
            return Point::make_levelpos(space->id, p.level, x);
        }
        case IsoKind::DyadicAffine: {
            long long l2 = p.level + s;
            if (l2 < 0 || l2 > space->height)
                fail(ErrKind::HorizonExceeded,
                     "image level " + std::to_string(l2) + " leaves the residue tree window");
            Rat img = Rat(p.pos);
            for (int i = 0; i < s; ++i) img *= 2;
            for (int i = 0; i < -s; ++i) img /= 2;
            img += b;
            if (!is_integer(img))
                fail(ErrKind::HorizonExceeded,
                     "image class " + rat_str(img) + " is not an integer residue class");
            long long m = 1LL << l2;
            long long r = img.numerator() % m;
            if (r < 0) r += m;
            return Point::make_levelpos(space->id, l2, r);
        }
        case IsoKind::TupleIso: {
            std::vector<Point> out(parts.size());
            for (size_t i = 0; i < parts.size(); ++i) out[sigma[i]] = parts[i].apply(p.parts[i]);
            return Point::make_tuple(space->id, std::move(out));
        }
    }
    fail(ErrKind::BadArgument, "unreachable");
}

// --- directions ----------------------------------------------------------------

Dir Isometry::transport(const Dir& d) const {
    switch (kind) {
        case IsoKind::TreeIso: {
            if (d.kind != Dir::Kind::TreeEnd)
                fail(ErrKind::BadArgument, "tree isometries transport tree ends only");
            std::string p2 = perm_apply_word(perm, space, d.prefix);
            std::string t2 = perm_apply_word(perm, space, d.tail);
            size_t copies = (word.size() + t2.size() - 1) / t2.size() + 2;
            std::string big = word + p2;
            for (size_t i = 0; i < copies; ++i) big += t2;
            return Dir::tree_end(space->word_reduce(big), t2);
        }
        case IsoKind::GraphPerm:
            fail(ErrKind::BadArgument, "finite graphs have no directions at infinity");
        case IsoKind::BaseShift:
            if (d.kind != Dir::Kind::Cusp)
                fail(ErrKind::BadArgument, "horoball directions are the cusp only");
            return d;
        case IsoKind::DyadicAffine: {
            if (d.kind == Dir::Kind::Cusp) return d; // affine maps fix the root end
            if (d.kind != Dir::Kind::BinEnd)
                fail(ErrKind::BadArgument, "residue tree directions are the cusp or 2-adic ends");
            Rat v = d.value;
            for (int i = 0; i < s; ++i) v *= 2;
            for (int i = 0; i < -s; ++i) v /= 2;
            v += b;
            if (v.denominator() % 2 == 0)
                fail(ErrKind::HorizonExceeded,
                     "image end " + rat_str(v) + " lies outside the integer residue window");
            return Dir::bin_end(v);
        }
        case IsoKind::TupleIso: {
            if (d.kind != Dir::Kind::Tuple || d.parts.size() != parts.size())
                fail(ErrKind::BadArgument, "product directions are per-factor tuples");
            std::vector<Dir> out(parts.size());
            for (size_t i = 0; i < parts.size(); ++i) out[sigma[i]] = parts[i].transport(d.parts[i]);
            return Dir::tuple(std::move(out));
        }
    }
    fail(ErrKind::BadArgument, "unreachable");
}

// --- structure -------------------------------------------------------------------

bool Isometry::is_identity() const {
    switch (kind) {
        case IsoKind::TreeIso: return word.empty() && perm_is_identity(space, perm);
        case IsoKind::GraphPerm:
            for (int i = 0; i < static_cast<int>(vperm.size()); ++i)
                if (vperm[i] != i) return false;
            return true;
        case IsoKind::BaseShift: return shift == 0;
        case IsoKind::DyadicAffine: return s == 0 && b == Rat(0);
        case IsoKind::TupleIso:
            for (size_t i = 0; i < parts.size(); ++i)
                if (sigma[i] != static_cast<int>(i) || !parts[i].is_identity()) return false;
            return true;
    }
    return false;
}

std::string Isometry::key() const {
    switch (kind) {
        case IsoKind::TreeIso:
            return "T|" + word + "|" + std::string(perm.begin(), perm.end());
        case IsoKind::GraphPerm: {
            std::string k = "P";
            for (int v : vperm) k += "|" + std::to_string(v);
            return k;
        }
        case IsoKind::BaseShift: return "S|" + std::to_string(shift);
        case IsoKind::DyadicAffine: return "D|" + std::to_string(s) + "|" + rat_str(b);
        case IsoKind::TupleIso: {
            std::string k = "(";
            for (size_t i = 0; i < parts.size(); ++i)
                k += std::to_string(sigma[i]) + ":" + parts[i].key() + ";";
            return k + ")";
        }
    }
    return "?";
}

std::string Isometry::desc() const {
    switch (kind) {
        case IsoKind::TreeIso: {
            bool idp = perm_is_identity(space, perm);
            std::string l = "L(" + (word.empty() ? std::string("e") : word) + ")";
            if (idp) return l;
            std::string a = "A(" + std::string(perm.begin(), perm.end()) + ")";
            return word.empty() ? a : l + a;
        }
        case IsoKind::GraphPerm: {
            std::string k = "perm[";
            for (size_t v = 0; v < vperm.size(); ++v)
                k += (v ? " " : "") + space->names[vperm[v]];
            return k + "]";
        }
        case IsoKind::BaseShift: return "shift(" + std::to_string(shift) + ")";
        case IsoKind::DyadicAffine:
            return "aff(y -> 2^" + std::to_string(s) + " y + " + rat_str(b) + ")";
        case IsoKind::TupleIso: {
            std::string k = "(";
            for (size_t i = 0; i < parts.size(); ++i) k += (i ? ", " : "") + parts[i].desc();
            k += ")";
            bool idsig = true;
            for (size_t i = 0; i < sigma.size(); ++i) idsig &= sigma[i] == static_cast<int>(i);
            if (!idsig) {
                k += " swap[";
                for (size_t i = 0; i < sigma.size(); ++i)
                    k += (i ? " " : "") + std::to_string(sigma[i]);
                k += "]";
            }
            return k;
        }
    }
    return "?";
}

long long Isometry::root_displacement() const {
    Point base = space->base();
    return space->idist(base, apply(base));
}

// --- algebra ----------------------------------------------------------------------

Isometry compose(const Isometry& g, const Isometry& h) {
    if (g.space->id != h.space->id)
        fail(ErrKind::MismatchedSpace, "cannot compose isometries of different spaces");
    if (g.kind != h.kind) fail(ErrKind::BadArgument, "cannot compose isometries of different shapes");
    Isometry r = g;
    switch (g.kind) {
        case IsoKind::TreeIso: {
            r.word = g.space->word_reduce(g.word + perm_apply_word(g.perm, g.space, h.word));
            for (int i = 0; i < g.space->nletters(); ++i)
                r.perm[i] = g.perm[g.space->letter_index(h.perm[i])];
            return r;
        }
        case IsoKind::GraphPerm: {
            for (size_t v = 0; v < g.vperm.size(); ++v) r.vperm[v] = g.vperm[h.vperm[v]];
            return r;
        }
        case IsoKind::BaseShift: {
            r.shift = g.shift + h.shift;
            if (g.space->cycle_base) {
                r.shift %= g.space->cycle_len;
                if (r.shift < 0) r.shift += g.space->cycle_len;
            }
            return r;
        }
        case IsoKind::DyadicAffine: {
            r.s = g.s + h.s;
            if (r.s < -40 || r.s > 40)
                fail(ErrKind::HorizonExceeded, "composed scale exponent exceeds the window");
            Rat hb = h.b;
            for (int i = 0; i < g.s; ++i) hb *= 2;
            for (int i = 0; i < -g.s; ++i) hb /= 2;
            r.b = hb + g.b;
            return r;
        }
        case IsoKind::TupleIso: {
            for (size_t i = 0; i < g.parts.size(); ++i) {
                r.parts[i] = compose(g.parts[h.sigma[i]], h.parts[i]);
                r.sigma[i] = g.sigma[h.sigma[i]];
            }
            return r;
        }
    }
    fail(ErrKind::BadArgument, "unreachable");
}

Isometry invert(const Isometry& g) {
    Isometry r = g;
    switch (g.kind) {
        case IsoKind::TreeIso: {
            for (int i = 0; i < g.space->nletters(); ++i)
                r.perm[g.space->letter_index(g.perm[i])] = g.space->letter_at(i);
            r.word = perm_apply_word(r.perm, g.space, g.space->word_inverse(g.word));
            return r;
        }
        case IsoKind::GraphPerm: {
            for (size_t v = 0; v < g.vperm.size(); ++v) r.vperm[g.vperm[v]] = static_cast<int>(v);
            return r;
        }
        case IsoKind::BaseShift: {
            r.shift = -g.shift;
            if (g.space->cycle_base && r.shift < 0) r.shift += g.space->cycle_len;
            return r;
        }
        case IsoKind::DyadicAffine: {
            r.s = -g.s;
            Rat nb = -g.b;
            for (int i = 0; i < r.s; ++i) nb *= 2;
            for (int i = 0; i < -r.s; ++i) nb /= 2;
            r.b = nb;
            return r;
        }
        case IsoKind::TupleIso: {
            for (size_t i = 0; i < g.parts.size(); ++i) {
                r.sigma[g.sigma[i]] = static_cast<int>(i);
                r.parts[g.sigma[i]] = invert(g.parts[i]);
            }
            return r;
        }
    }
    fail(ErrKind::BadArgument, "unreachable");
}

Isometry power(const Isometry& g, long long n) {
    if (n < 0) return power(invert(g), -n);
    Isometry r = make_identity(g.space);
    for (long long i = 0; i < n; ++i) r = compose(r, g);
    return r;
}

// --- constructors --------------------------------------------------------------------

Isometry make_identity(const SpacePtr& sp) {
    Isometry g;
    g.space = sp;
    switch (sp->kind) {
        case SpaceKind::RegularTree:
            g.kind = IsoKind::TreeIso;
            g.perm = identity_perm(sp);
            return g;
        case SpaceKind::FiniteGraph:
        case SpaceKind::BoundedGraph:
            g.kind = IsoKind::GraphPerm;
            g.vperm.resize(sp->names.size());
            for (size_t v = 0; v < sp->names.size(); ++v) g.vperm[v] = static_cast<int>(v);
            return g;
        case SpaceKind::Horoball: g.kind = IsoKind::BaseShift; return g;
        case SpaceKind::BinTree: g.kind = IsoKind::DyadicAffine; return g;
        case SpaceKind::Product:
            g.kind = IsoKind::TupleIso;
            for (size_t i = 0; i < sp->factors.size(); ++i) {
                g.parts.push_back(make_identity(sp->factors[i]));
                g.sigma.push_back(static_cast<int>(i));
            }
            return g;
    }
    fail(ErrKind::BadArgument, "unreachable");
}

Isometry make_left_mult(const SpacePtr& sp, const std::string& w) {
    if (sp->kind != SpaceKind::RegularTree)
        fail(ErrKind::BadArgument, "left multiplication needs a regular tree");
    Isometry g = make_identity(sp);
    g.word = sp->word_reduce(w);
    return g;
}

Isometry make_letter_perm(const SpacePtr& sp, const std::string& images,
                          const std::string& left_word) {
    if (sp->kind != SpaceKind::RegularTree)
        fail(ErrKind::BadArgument, "letter permutations need a regular tree");
    if (static_cast<int>(images.size()) != sp->nletters())
        fail(ErrKind::BadArgument, "need one image per letter, got " +
                                       std::to_string(images.size()) + " of " +
                                       std::to_string(sp->nletters()));
    std::set<char> seen;
    for (char c : images) {
        if (!sp->letter_ok(c))
            fail(ErrKind::InvalidWord, std::string("image letter '") + c + "' not in the alphabet");
        if (!seen.insert(c).second)
            fail(ErrKind::BadArgument, std::string("letter '") + c + "' used as image twice");
    }
    for (int i = 0; i < sp->nletters(); ++i) {
        char x = sp->letter_at(i);
        char ix = sp->letter_inv(x);
        if (images[sp->letter_index(ix)] != sp->letter_inv(images[i]))
            fail(ErrKind::BadArgument,
                 std::string("images of '") + x + "' and its inverse are not inverse letters");
    }
    Isometry g = make_identity(sp);
    g.perm.assign(images.begin(), images.end());
    g.word = sp->word_reduce(left_word);
    return g;
}

Isometry make_reflection(const SpacePtr& sp, char axis) {
    if (sp->kind != SpaceKind::RegularTree)
        fail(ErrKind::BadArgument, "reflections need a regular tree");
    if (!sp->letter_ok(axis))
        fail(ErrKind::InvalidWord, std::string("axis letter '") + axis + "' not in the alphabet");
    if (sp->nletters() % 2 != 0)
        fail(ErrKind::BadArgument, "reflections pair up letters; valence must be even");
    std::string images(sp->nletters(), '?');
    for (int i = 0; i < sp->nletters(); ++i) {
        char x = sp->letter_at(i);
        bool on_axis = x == axis || x == sp->letter_inv(axis);
        images[i] = on_axis ? x : sp->letter_inv(x);
    }
    return make_letter_perm(sp, images);
}

Isometry make_graph_perm(const SpacePtr& sp,
                         const std::vector<std::pair<std::string, std::string>>& images) {
    if (sp->kind != SpaceKind::FiniteGraph && sp->kind != SpaceKind::BoundedGraph)
        fail(ErrKind::BadArgument, "vertex permutations need a finite graph");
    std::map<std::string, int> index;
    for (size_t v = 0; v < sp->names.size(); ++v) index[sp->names[v]] = static_cast<int>(v);
    std::vector<int> vperm(sp->names.size(), -1);
    for (const auto& [from, to] : images) {
        auto fi = index.find(from);
        auto ti = index.find(to);
        if (fi == index.end() || ti == index.end())
            fail(ErrKind::UnknownName, "no vertex named " + (fi == index.end() ? from : to));
        if (vperm[fi->second] != -1)
            fail(ErrKind::BadArgument, "vertex " + from + " mapped twice");
        vperm[fi->second] = ti->second;
    }
    std::set<int> hit;
    for (size_t v = 0; v < vperm.size(); ++v) {
        if (vperm[v] == -1)
            fail(ErrKind::BadArgument, "vertex " + sp->names[v] + " has no image");
        hit.insert(vperm[v]);
    }
    if (hit.size() != vperm.size()) fail(ErrKind::BadArgument, "vertex map is not a bijection");
    for (size_t v = 0; v < vperm.size(); ++v) {
        std::set<int> a, b;
        for (int w : sp->adj[v]) a.insert(vperm[w]);
        for (int w : sp->adj[vperm[v]]) b.insert(w);
        if (a != b)
            fail(ErrKind::BadArgument, "map does not preserve edges at vertex " + sp->names[v]);
    }
    Isometry g = make_identity(sp);
    g.vperm = std::move(vperm);
    return g;
}

Isometry make_cycle_rotation(const SpacePtr& sp, int step) {
    int n = static_cast<int>(sp->names.size());
    std::vector<std::pair<std::string, std::string>> images;
    for (int i = 0; i < n; ++i)
        images.emplace_back(std::to_string(i), std::to_string(((i + step) % n + n) % n));
    return make_graph_perm(sp, images);
}

Isometry make_cycle_reflection(const SpacePtr& sp, int fixed_vertex) {
    int n = static_cast<int>(sp->names.size());
    std::vector<std::pair<std::string, std::string>> images;
    for (int i = 0; i < n; ++i)
        images.emplace_back(std::to_string(i), std::to_string(((2 * fixed_vertex - i) % n + n) % n));
    return make_graph_perm(sp, images);
}

Isometry make_base_shift(const SpacePtr& sp, long long s) {
    if (sp->kind != SpaceKind::Horoball)
        fail(ErrKind::BadArgument, "base shifts need a horoball");
    Isometry g = make_identity(sp);
    g.shift = s;
    if (sp->cycle_base) {
        g.shift %= sp->cycle_len;
        if (g.shift < 0) g.shift += sp->cycle_len;
    }
    return g;
}

Isometry make_dyadic_affine(const SpacePtr& sp, int s, const Rat& b) {
    if (sp->kind != SpaceKind::BinTree)
        fail(ErrKind::BadArgument, "dyadic affine maps need the binary residue tree");
    if (s < -40 || s > 40) fail(ErrKind::BadArgument, "scale exponent out of range");
    long long den = b.denominator();
    while (den % 2 == 0) den /= 2;
    if (den != 1)
        fail(ErrKind::BadArgument, "offset " + rat_str(b) + " is not a dyadic rational");
    Isometry g = make_identity(sp);
    g.s = s;
    g.b = b;
    return g;
}

Isometry make_tuple_iso(const SpacePtr& sp, std::vector<Isometry> parts, std::vector<int> sigma) {
    if (sp->kind != SpaceKind::Product)
        fail(ErrKind::BadArgument, "tuple isometries need a product space");
    if (parts.size() != sp->factors.size())
        fail(ErrKind::BadArgument, "need one isometry per factor");
    if (sigma.empty())
        for (size_t i = 0; i < parts.size(); ++i) sigma.push_back(static_cast<int>(i));
    if (sigma.size() != parts.size())
        fail(ErrKind::BadArgument, "factor permutation has wrong length");
    std::set<int> hit;
    for (int v : sigma) {
        if (v < 0 || v >= static_cast<int>(parts.size()))
            fail(ErrKind::BadArgument, "factor permutation index out of range");
        hit.insert(v);
    }
    if (hit.size() != sigma.size()) fail(ErrKind::BadArgument, "factor permutation not a bijection");
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].space->id != sp->factors[i]->id)
            fail(ErrKind::MismatchedSpace, "part " + std::to_string(i) + " acts on the wrong factor");
        if (sigma[i] != static_cast<int>(i) &&
            sp->factors[sigma[i]]->id != sp->factors[i]->id)
            fail(ErrKind::MismatchedSpace,
                 "factor permutation moves factor " + std::to_string(i) + " onto a different space");
    }
    Isometry g;
    g.kind = IsoKind::TupleIso;
    g.space = sp;
    g.parts = std::move(parts);
    g.sigma = std::move(sigma);
    return g;
}

} // namespace coarse
