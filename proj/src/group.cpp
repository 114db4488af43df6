#include "coarse/group.hpp"

#include "coarse/errors.hpp"

#include <map>
#include <set>

namespace coarse {

MarkedGroup make_marked_group(const SpacePtr& sp, std::vector<NamedIso> gens, long long horizon,
                              std::vector<Point> probe) {
    if (!sp) fail(ErrKind::BadArgument, "marked group needs a space");
    if (gens.empty()) fail(ErrKind::BadArgument, "marked group needs at least one generator");
    if (horizon < 1) fail(ErrKind::BadArgument, "group horizon must be at least 1");

    std::set<std::string> names;
    for (const auto& g : gens) {
        if (g.name.empty()) fail(ErrKind::BadArgument, "generator names must be nonempty");
        if (!names.insert(g.name).second)
            fail(ErrKind::BadArgument, "duplicate generator name '" + g.name + "'");
        if (g.iso.space->id != sp->id)
            fail(ErrKind::MismatchedSpace, "generator '" + g.name + "' acts on a different space");
    }

    // Close under inverses. A generator that is its own inverse, or whose
    // inverse is already listed, gets no companion.
    std::set<std::string> keys;
    for (const auto& g : gens) keys.insert(g.iso.key());
    size_t declared = gens.size();
    for (size_t i = 0; i < declared; ++i) {
        Isometry inv = invert(gens[i].iso);
        if (keys.insert(inv.key()).second) {
            std::string nm = gens[i].name + "'";
            while (names.count(nm)) nm += "'";
            names.insert(nm);
            gens.push_back({nm, inv});
        }
    }

    if (probe.empty()) probe = sp->ball(sp->base(), 2);
    for (const auto& p : probe) sp->check_point(p);

    MarkedGroup G;
    G.sp = sp;
    G.gens = std::move(gens);
    G.probe = std::move(probe);
    G.horizon = horizon;
    return G;
}

std::vector<GroupElement> group_ball(const MarkedGroup& G, long long n) {
    if (n < 0) fail(ErrKind::BadArgument, "ball radius must be nonnegative");
    if (n > G.horizon)
        fail(ErrKind::HorizonExceeded, "ball radius " + std::to_string(n) +
                                           " exceeds the group horizon " +
                                           std::to_string(G.horizon));

    std::vector<GroupElement> out;
    std::set<std::string> seen;
    Isometry id = make_identity(G.sp);
    out.push_back({"e", id, 0});
    seen.insert(id.key());

    size_t level_begin = 0;
    for (long long len = 1; len <= n; ++len) {
        size_t level_end = out.size();
        for (size_t i = level_begin; i < level_end; ++i) {
            for (const auto& g : G.gens) {
                Isometry next = compose(out[i].iso, g.iso);
                if (!seen.insert(next.key()).second) continue;
                std::string w = out[i].length == 0 ? g.name : out[i].word + "." + g.name;
                out.push_back({w, next, len});
            }
        }
        level_begin = level_end;
        if (level_begin == out.size()) break; // group exhausted
    }
    return out;
}

std::vector<GroupElement> coarse_stabilizer(const MarkedGroup& G, const std::vector<Point>& pts,
                                            const Rat& eps, long long n) {
    if (eps < Rat(0)) fail(ErrKind::BadArgument, "coarse stabilizer needs eps >= 0");
    for (const auto& p : pts) G.sp->check_point(p);

    std::vector<GroupElement> out;
    for (const auto& el : group_ball(G, n)) {
        bool ok = true;
        for (const auto& p : pts) {
            try {
                if (G.sp->dist(el.iso.apply(p), p) > eps) {
                    ok = false;
                    break;
                }
            } catch (const CoarseError& e) {
                if (e.kind != ErrKind::HorizonExceeded) throw;
                ok = false; // image crossed the frontier, displacement > depth
                break;
            }
        }
        if (ok) out.push_back(el);
    }
    return out;
}

std::string probe_signature(const MarkedGroup& G, const Isometry& g) {
    std::string sig;
    for (const auto& p : G.probe) {
        try {
            sig += g.apply(p).key();
        } catch (const CoarseError& e) {
            if (e.kind != ErrKind::HorizonExceeded) throw;
            sig += "~";
        }
        sig += ";";
    }
    return sig;
}

bool probe_faithful(const MarkedGroup& G, long long n) {
    std::set<std::string> sigs;
    auto ball = group_ball(G, n);
    for (const auto& el : ball) sigs.insert(probe_signature(G, el.iso));
    return sigs.size() == ball.size();
}

} // namespace coarse
