#include "trunkkit/configuration.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace trunkkit::arrangement {

namespace {

long long relevant_in_piece(const Piece& p) {
    long long n = p.relevant ? 1 : 0;
    for (const Circle& c : p.circles)
        for (const Piece& q : c.children) n += relevant_in_piece(q);
    return n;
}

long long relevant_in_circle(const Circle& c) {
    long long n = 0;
    for (const Piece& q : c.children) n += relevant_in_piece(q);
    return n;
}

// Essential boundary circles of a piece, outer circle included.
int essential_count(const Piece& p, bool is_root) {
    int n = (!is_root && p.outer_essential) ? 1 : 0;
    for (const Circle& c : p.circles)
        if (c.essential) ++n;
    return n;
}

} // namespace

std::vector<Violation> parity_check(const PieceConfiguration& c) {
    std::vector<Violation> out;
    std::function<void(const Piece&, TreePath&)> walk = [&](const Piece& p, TreePath& path) {
        if (p.relevant) {
            const int e = essential_count(p, path.empty());
            if (e % 2 == 0)
                out.push_back({"parity", path_str(path),
                               "relevant piece has " + std::to_string(e) +
                                   " essential boundary circles (must be odd)"});
        }
        for (std::size_t ci = 0; ci < p.circles.size(); ++ci)
            for (std::size_t qi = 0; qi < p.circles[ci].children.size(); ++qi) {
                path.push_back(static_cast<int>(ci));
                path.push_back(static_cast<int>(qi));
                walk(p.circles[ci].children[qi], path);
                path.pop_back();
                path.pop_back();
            }
    };
    TreePath path;
    walk(c.root, path);
    return out;
}

namespace {

struct AbsorbAnalysis {
    std::set<int> kept;             // tags of relevant, non-excluded pieces
    long long total_relevant = 0;
};

// Exclusion rule: a relevant piece with a unique essential circle and a
// unique pseudo-essential circle (an inessential circle whose far disk holds
// another relevant piece) is set aside; it is not part of the output.
AbsorbAnalysis analyze(const Piece& root, long long total_relevant) {
    AbsorbAnalysis out;
    out.total_relevant = total_relevant;

    std::function<void(const Piece&, bool)> walk = [&](const Piece& p, bool is_root) {
        if (p.relevant) {
            const int e = essential_count(p, is_root);
            int pe = 0;
            for (const Circle& c : p.circles)
                if (!c.essential && relevant_in_circle(c) >= 1) ++pe;
            if (!is_root && !p.outer_essential &&
                total_relevant - relevant_in_piece(p) >= 1)
                ++pe;
            const bool excluded = (e == 1 && pe == 1);
            if (!excluded) out.kept.insert(p.tag);
        }
        for (const Circle& c : p.circles)
            for (const Piece& q : c.children) walk(q, false);
    };
    walk(root, true);
    return out;
}

bool kept_in_circle(const Circle& c, const std::set<int>& kept);

bool kept_in_piece(const Piece& p, const std::set<int>& kept) {
    if (kept.count(p.tag)) return true;
    for (const Circle& c : p.circles)
        if (kept_in_circle(c, kept)) return true;
    return false;
}

bool kept_in_circle(const Circle& c, const std::set<int>& kept) {
    for (const Piece& q : c.children)
        if (kept_in_piece(q, kept)) return true;
    return false;
}

// Kept pieces directly beneath a circle once dropped pieces dissolve: the
// material of an excluded or irrelevant piece vanishes and anything kept
// inside it floats up to the nearest surviving circle.
void collect_kept(const Circle& c, const std::set<int>& kept, std::vector<Piece>& out);

Piece absorb_piece(const Piece& p, const std::set<int>& kept) {
    Piece o;
    o.tag = p.tag;
    for (const Circle& c : p.circles) {
        const bool survives = c.essential || kept_in_circle(c, kept);
        if (!survives) continue; // glued: the far disk holds no kept piece
        Circle oc;
        collect_kept(c, kept, oc.children);
        o.circles.push_back(std::move(oc));
    }
    return o;
}

void collect_kept(const Circle& c, const std::set<int>& kept, std::vector<Piece>& out) {
    for (const Piece& q : c.children) {
        if (kept.count(q.tag)) {
            out.push_back(absorb_piece(q, kept));
        } else {
            for (const Circle& inner : q.circles) collect_kept(inner, kept, out);
        }
    }
}

void paths_by_tag(const Piece& p, TreePath& path, std::vector<std::pair<int, std::string>>& out) {
    out.emplace_back(p.tag, path_str(path));
    for (std::size_t ci = 0; ci < p.circles.size(); ++ci)
        for (std::size_t qi = 0; qi < p.circles[ci].children.size(); ++qi) {
            path.push_back(static_cast<int>(ci));
            path.push_back(static_cast<int>(qi));
            paths_by_tag(p.circles[ci].children[qi], path, out);
            path.pop_back();
            path.pop_back();
        }
}

} // namespace

AbsorbResult absorb(const PieceConfiguration& c) {
    if (const auto parity = parity_check(c); !parity.empty())
        throw error("absorb: parity check failed: " + parity.front().detail + " at " +
                    parity.front().path);

    const long long total_relevant = relevant_in_piece(c.root);

    // Input validation: the far disk of every essential circle must contain
    // a relevant piece.
    {
        std::function<void(const Piece&, bool, TreePath&)> walk = [&](const Piece& p, bool is_root,
                                                                      TreePath& path) {
            if (!is_root && p.outer_essential && total_relevant - relevant_in_piece(p) < 1)
                throw error("absorb: essential outer circle of " + path_str(path) +
                            " has no relevant piece on its far side");
            for (std::size_t ci = 0; ci < p.circles.size(); ++ci) {
                const Circle& circle = p.circles[ci];
                if (circle.essential && relevant_in_circle(circle) < 1) {
                    path.push_back(static_cast<int>(ci));
                    const std::string at = path_str(path);
                    path.pop_back();
                    throw error("absorb: essential circle " + at +
                                " has no relevant piece on its far side");
                }
                for (std::size_t qi = 0; qi < circle.children.size(); ++qi) {
                    path.push_back(static_cast<int>(ci));
                    path.push_back(static_cast<int>(qi));
                    walk(circle.children[qi], false, path);
                    path.pop_back();
                    path.pop_back();
                }
            }
        };
        TreePath path;
        walk(c.root, true, path);
    }

    const AbsorbAnalysis analysis = analyze(c.root, total_relevant);
    if (analysis.kept.empty())
        throw error("absorb: no pieces remain after exclusion");

    // Root the output at a kept piece so every other kept piece keeps its
    // outer circle (facing a kept piece, it always survives).
    Arrangement rooted{c.root};
    if (!analysis.kept.count(c.root.tag)) {
        TreePath target;
        bool found = false;
        std::function<void(const Piece&, TreePath&)> find_first = [&](const Piece& p, TreePath& at) {
            if (found) return;
            if (analysis.kept.count(p.tag)) { found = true; target = at; return; }
            for (std::size_t ci = 0; ci < p.circles.size(); ++ci)
                for (std::size_t qi = 0; qi < p.circles[ci].children.size(); ++qi) {
                    at.push_back(static_cast<int>(ci));
                    at.push_back(static_cast<int>(qi));
                    find_first(p.circles[ci].children[qi], at);
                    at.pop_back();
                    at.pop_back();
                }
        };
        TreePath at;
        find_first(c.root, at);
        rooted = re_root(rooted, target);
    }

    AbsorbResult result;
    result.out.root = absorb_piece(rooted.root, analysis.kept);

    if (const auto v = validate(result.out, Threshold{}); !v.empty())
        throw error("absorb: output is not a valid arrangement: condition " + v.front().condition +
                    " at " + v.front().path + " (" + v.front().detail + ")");

    // Correspondence: input path -> output path, matched through tags.
    std::vector<std::pair<int, std::string>> in_paths, out_paths;
    TreePath path;
    paths_by_tag(c.root, path, in_paths);
    path.clear();
    paths_by_tag(result.out.root, path, out_paths);
    for (const auto& [tag, in_path] : in_paths) {
        if (!analysis.kept.count(tag)) continue;
        for (const auto& [otag, out_path] : out_paths)
            if (otag == tag) {
                result.piece_map.emplace_back(in_path, out_path);
                break;
            }
    }
    return result;
}

} // namespace trunkkit::arrangement
