#include "trunkkit/arrangement.hpp"
#include "trunkkit/configuration.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <thread>

namespace trunkkit::arrangement {

// ---------------------------------------------------------------------------
// paths

std::string path_str(const TreePath& path) {
    std::string s = "root";
    for (std::size_t i = 0; i < path.size(); ++i)
        s += (i % 2 == 0 ? ".c" : ".p") + std::to_string(path[i]);
    return s;
}

namespace {

const Piece* walk_piece(const Piece& root, const TreePath& path) {
    if (path.size() % 2 != 0) return nullptr;
    const Piece* p = &root;
    for (std::size_t i = 0; i < path.size(); i += 2) {
        const int c = path[i], q = path[i + 1];
        if (c < 0 || c >= static_cast<int>(p->circles.size())) return nullptr;
        const Circle& circle = p->circles[c];
        if (q < 0 || q >= static_cast<int>(circle.children.size())) return nullptr;
        p = &circle.children[q];
    }
    return p;
}

Piece* walk_piece_mut(Piece& root, const TreePath& path) {
    return const_cast<Piece*>(walk_piece(root, path));
}

} // namespace

const Piece& resolve_piece(const Arrangement& a, const TreePath& path) {
    const Piece* p = walk_piece(a.root, path);
    if (!p) throw error("no piece at " + path_str(path));
    return *p;
}

const Circle& resolve_circle(const Arrangement& a, const TreePath& path) {
    if (path.empty() || path.size() % 2 != 1) throw error("no circle at " + path_str(path));
    TreePath head(path.begin(), path.end() - 1);
    const Piece* p = walk_piece(a.root, head);
    if (!p) throw error("no circle at " + path_str(path));
    const int c = path.back();
    if (c < 0 || c >= static_cast<int>(p->circles.size())) throw error("no circle at " + path_str(path));
    return p->circles[c];
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct BracketParser {
    std::string_view text;
    std::size_t pos = 0;
    int line = 1, col = 1;
    bool allow_flags = false;
    int next_tag = 0;

    [[noreturn]] void fail(const std::string& why) const { throw parse_error(why, line, col); }

    void advance() {
        if (text[pos] == '\n') { ++line; col = 1; }
        else ++col;
        ++pos;
    }
    void skip_ws() {
        while (pos < text.size()) {
            const char c = text[pos];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') { advance(); continue; }
            if (c == '#') { while (pos < text.size() && text[pos] != '\n') advance(); continue; }
            break;
        }
    }
    char peek() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        return text[pos];
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "', found '" + text[pos] + "'");
        advance();
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) { advance(); return true; }
        return false;
    }

    Piece parse_root() {
        bool relevant = false;
        if (eat('*')) {
            if (!allow_flags) fail("'*' flags are configuration syntax");
            relevant = true;
        }
        expect('{');
        Piece root;
        root.relevant = relevant;
        root.tag = next_tag++;
        while (peek() != '}') root.circles.push_back(parse_circle());
        expect('}');
        if (eat('!')) fail("the root piece has no outer circle to flag");
        if (!at_end()) fail("trailing input after root piece");
        return root;
    }

    Circle parse_circle() {
        expect('[');
        Circle c;
        while (peek() != ']') c.children.push_back(parse_piece());
        expect(']');
        if (eat('!')) {
            if (!allow_flags) fail("'!' flags are configuration syntax");
            c.essential = true;
        }
        return c;
    }

    Piece parse_piece() {
        bool relevant = false;
        if (eat('*')) {
            if (!allow_flags) fail("'*' flags are configuration syntax");
            relevant = true;
        }
        expect('(');
        Piece p;
        p.relevant = relevant;
        p.tag = next_tag++;
        while (peek() != ')') p.circles.push_back(parse_circle());
        expect(')');
        if (eat('!')) {
            if (!allow_flags) fail("'!' flags are configuration syntax");
            p.outer_essential = true;
        }
        return p;
    }
};

void serialize_piece(const Piece& p, bool is_root, bool with_flags, std::string& out) {
    if (with_flags && p.relevant) out += '*';
    out += is_root ? '{' : '(';
    for (const Circle& c : p.circles) {
        out += '[';
        for (const Piece& q : c.children) serialize_piece(q, false, with_flags, out);
        out += ']';
        if (with_flags && c.essential) out += '!';
    }
    out += is_root ? '}' : ')';
    if (with_flags && !is_root && p.outer_essential) out += '!';
}

} // namespace

Arrangement parse_arrangement(std::string_view text) {
    BracketParser p{text};
    return Arrangement{p.parse_root()};
}

PieceConfiguration parse_configuration(std::string_view text) {
    BracketParser p{text};
    p.allow_flags = true;
    return PieceConfiguration{p.parse_root()};
}

std::string serialize(const Arrangement& a) {
    std::string out;
    serialize_piece(a.root, true, false, out);
    return out;
}

std::string serialize(const PieceConfiguration& c) {
    std::string out;
    serialize_piece(c.root, true, true, out);
    return out;
}

// ---------------------------------------------------------------------------
// validity and counting

namespace {

void for_each_piece(const Piece& p, TreePath& path,
                    const std::function<void(const Piece&, const TreePath&)>& fn) {
    fn(p, path);
    for (std::size_t c = 0; c < p.circles.size(); ++c)
        for (std::size_t q = 0; q < p.circles[c].children.size(); ++q) {
            path.push_back(static_cast<int>(c));
            path.push_back(static_cast<int>(q));
            for_each_piece(p.circles[c].children[q], path, fn);
            path.pop_back();
            path.pop_back();
        }
}

void for_each_circle(const Piece& p, TreePath& path,
                     const std::function<void(const Circle&, const TreePath&)>& fn) {
    for (std::size_t c = 0; c < p.circles.size(); ++c) {
        path.push_back(static_cast<int>(c));
        fn(p.circles[c], path);
        for (std::size_t q = 0; q < p.circles[c].children.size(); ++q) {
            path.push_back(static_cast<int>(q));
            for_each_circle(p.circles[c].children[q], path, fn);
            path.pop_back();
        }
        path.pop_back();
    }
}

} // namespace

std::vector<Violation> validate(const Arrangement& a, Threshold t) {
    std::vector<Violation> out;
    TreePath path;

    for_each_piece(a.root, path, [&](const Piece& p, const TreePath& at) {
        const int b = boundary_count(p, at.empty());
        if (b < 1 || (b > t.a && b < t.a + 2))
            out.push_back({"1'", path_str(at),
                           "boundary count " + std::to_string(b) + " must be in [1," +
                               std::to_string(t.a) + "] or >= " + std::to_string(t.a + 2)});
    });

    for_each_circle(a.root, path, [&](const Circle& c, const TreePath& at) {
        if (c.children.empty())
            out.push_back({"2i", path_str(at), "circle contains no piece"});

        // Literal reading of (2)(ii): a circle whose subtree has no further
        // circles must contain a disk.  Implied by (2)(i) here, but checked
        // on its own anyway.
        bool further_circles = false;
        bool has_disk = false;
        for (const Piece& q : c.children) {
            if (!q.circles.empty()) further_circles = true;
            else has_disk = true;
        }
        if (!further_circles && !has_disk)
            out.push_back({"2ii", path_str(at), "innermost circle contains no disk"});
    });

    return out;
}

long long piece_count(const Arrangement& a) {
    long long n = 0;
    TreePath path;
    for_each_piece(a.root, path, [&](const Piece&, const TreePath&) { ++n; });
    return n;
}

long long lambda_count(const Arrangement& a, Threshold t) {
    long long n = 0;
    TreePath path;
    for_each_piece(a.root, path, [&](const Piece& p, const TreePath& at) {
        if (boundary_count(p, at.empty()) <= t.a) ++n;
    });
    return n;
}

// ---------------------------------------------------------------------------
// moves

std::pair<long long, long long> move_delta(const Move& m, Threshold t) {
    switch (m.kind) {
        case MoveKind::add_disk: return {1, 1};
        case MoveKind::reverse_add_disk: return {-1, -1};
        case MoveKind::inflate:
            return m.s <= t.a ? std::pair<long long, long long>{m.s - 1, m.s - 1}
                              : std::pair<long long, long long>{m.s - 2, m.s - 1};
        case MoveKind::reverse_inflate:
            return m.s <= t.a ? std::pair<long long, long long>{1 - m.s, 1 - m.s}
                              : std::pair<long long, long long>{2 - m.s, 1 - m.s};
    }
    return {0, 0};
}

namespace {

bool is_disk(const Piece& p, bool is_root) {
    return boundary_count(p, is_root) == 1;
}

} // namespace

Arrangement apply_move(const Arrangement& a, const Move& m, Threshold t) {
    Arrangement out = a;
    switch (m.kind) {
        case MoveKind::add_disk: {
            if (m.target.size() % 2 != 1) throw error("add_disk targets a circle path");
            resolve_circle(out, m.target); // bounds check
            TreePath head(m.target.begin(), m.target.end() - 1);
            Piece* owner = walk_piece_mut(out.root, head);
            owner->circles[m.target.back()].children.push_back(Piece{});
            return out;
        }
        case MoveKind::reverse_add_disk: {
            if (m.target.size() < 2 || m.target.size() % 2 != 0)
                throw error("reverse_add_disk targets a non-root piece path");
            const Piece& victim = resolve_piece(out, m.target);
            if (!victim.circles.empty())
                throw error("reverse_add_disk: target at " + path_str(m.target) + " is not a disk");
            TreePath circle_path(m.target.begin(), m.target.end() - 1);
            TreePath head(circle_path.begin(), circle_path.end() - 1);
            Piece* owner = walk_piece_mut(out.root, head);
            Circle& circle = owner->circles[circle_path.back()];
            if (circle.children.size() < 2)
                throw error("reverse_add_disk: circle at " + path_str(circle_path) +
                            " must retain at least one piece");
            circle.children.erase(circle.children.begin() + m.target.back());
            return out;
        }
        case MoveKind::inflate: {
            if (m.target.size() % 2 != 0) throw error("inflate targets a piece path");
            if (m.s < 1)
                throw error("inflate: s must be >= 1 (replacing a disk by a closed surface is rejected)");
            if (m.s == t.a + 1)
                throw error("inflate: s = a+1 = " + std::to_string(m.s) + " is forbidden");
            Piece* target = walk_piece_mut(out.root, m.target);
            if (!target) throw error("no piece at " + path_str(m.target));
            if (!is_disk(*target, m.target.empty()))
                throw error("inflate: target at " + path_str(m.target) + " is not a disk");
            for (int k = 0; k < m.s - 1; ++k) {
                Circle c;
                c.children.push_back(Piece{});
                target->circles.push_back(std::move(c));
            }
            return out;
        }
        case MoveKind::reverse_inflate: {
            if (m.target.size() % 2 != 0) throw error("reverse_inflate targets a piece path");
            Piece* target = walk_piece_mut(out.root, m.target);
            if (!target) throw error("no piece at " + path_str(m.target));
            const bool root = m.target.empty();
            const int b = boundary_count(*target, root);
            if (b < 2)
                throw error("reverse_inflate: target at " + path_str(m.target) + " is already a disk");
            if (m.s != 0 && m.s != b)
                throw error("reverse_inflate: recorded s = " + std::to_string(m.s) +
                            " does not match boundary count " + std::to_string(b));
            for (const Circle& c : target->circles)
                if (c.children.size() != 1 || !c.children.front().circles.empty())
                    throw error("reverse_inflate: each inner circle of " + path_str(m.target) +
                                " must contain exactly one disk");
            if (root)
                target->circles.erase(target->circles.begin() + 1, target->circles.end());
            else
                target->circles.clear();
            return out;
        }
    }
    throw error("unknown move kind");
}

// ---------------------------------------------------------------------------
// two-disk state, deconstruction, replay

Arrangement two_disk() {
    Arrangement a;
    Circle c;
    c.children.push_back(Piece{});
    a.root.circles.push_back(std::move(c));
    return a;
}

namespace {

// First circle in preorder with >= 2 children one of which is a disk;
// returns the path of its highest-index disk child, empty if none.
TreePath find_strippable_disk(const Arrangement& a) {
    TreePath found;
    TreePath path;
    for_each_circle(a.root, path, [&](const Circle& c, const TreePath& at) {
        if (!found.empty() || c.children.size() < 2) return;
        for (int q = static_cast<int>(c.children.size()) - 1; q >= 0; --q) {
            if (c.children[q].circles.empty()) {
                found = at;
                found.push_back(q);
                return;
            }
        }
    });
    return found;
}

// Innermost piece with more than one boundary: postorder, so descendants are
// considered before their ancestors.
bool find_innermost_multi(const Piece& p, bool is_root, TreePath& path, TreePath& found) {
    for (std::size_t c = 0; c < p.circles.size(); ++c)
        for (std::size_t q = 0; q < p.circles[c].children.size(); ++q) {
            path.push_back(static_cast<int>(c));
            path.push_back(static_cast<int>(q));
            const bool hit = find_innermost_multi(p.circles[c].children[q], false, path, found);
            path.pop_back();
            path.pop_back();
            if (hit) return true;
        }
    if (boundary_count(p, is_root) > 1) {
        found = path;
        return true;
    }
    return false;
}

} // namespace

MoveTrace deconstruct(const Arrangement& a, Threshold t) {
    if (const auto v = validate(a, t); !v.empty())
        throw error("deconstruct: input invalid: condition " + v.front().condition + " at " +
                    v.front().path);

    MoveTrace trace;
    trace.x_initial = lambda_count(a, t);
    trace.y_initial = piece_count(a);

    Arrangement cur = a;
    const long long budget = trace.y_initial + 2;
    const auto record = [&](Move m) {
        cur = apply_move(cur, m, t);
        trace.steps.push_back({std::move(m), lambda_count(cur, t), piece_count(cur)});
        if (static_cast<long long>(trace.steps.size()) > budget)
            throw error("deconstruct: exceeded the piece-linear step bound (internal invariant)");
    };

    for (;;) {
        bool progressed = false;
        // Procedure 1: reverse Move 1 until each circle holds at most one disk
        // beyond structure.
        for (;;) {
            const TreePath disk = find_strippable_disk(cur);
            if (disk.empty()) break;
            record({MoveKind::reverse_add_disk, disk, 0});
            progressed = true;
        }
        // Procedure 2: reverse Move 2 on one innermost multi-boundary piece.
        TreePath path, found;
        if (find_innermost_multi(cur.root, true, path, found)) {
            const Piece& p = resolve_piece(cur, found);
            const int s = boundary_count(p, found.empty());
            record({MoveKind::reverse_inflate, found, s});
            progressed = true;
        }
        if (!progressed) break;
    }

    if (rooted_canonical(cur) != rooted_canonical(two_disk()))
        throw error("deconstruct: did not terminate at the two-disk state (internal invariant)");
    return trace;
}

Arrangement replay(const MoveTrace& trace, Threshold t) {
    // Undoing the reverse moves newest-first rebuilds the exact tree, so the
    // recorded paths stay valid: a reverse_add_disk is undone by re-inserting
    // the disk at its recorded slot, not by appending.
    Arrangement cur = two_disk();
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
        const Move& m = it->move;
        switch (m.kind) {
            case MoveKind::reverse_add_disk: {
                TreePath circle_path(m.target.begin(), m.target.end() - 1);
                Circle& circle = const_cast<Circle&>(resolve_circle(cur, circle_path));
                const int slot = m.target.back();
                if (slot < 0 || slot > static_cast<int>(circle.children.size()))
                    throw error("replay: stale slot at " + path_str(m.target));
                circle.children.insert(circle.children.begin() + slot, Piece{});
                break;
            }
            case MoveKind::reverse_inflate:
                cur = apply_move(cur, {MoveKind::inflate, m.target, m.s}, t);
                break;
            case MoveKind::add_disk:
            case MoveKind::inflate:
                throw error("replay: trace contains forward moves");
        }
    }
    return cur;
}

// ---------------------------------------------------------------------------
// canonical forms

namespace {

std::string encode_piece(const Piece& p, bool is_root) {
    std::vector<std::string> circles;
    circles.reserve(p.circles.size());
    for (const Circle& c : p.circles) {
        std::vector<std::string> kids;
        kids.reserve(c.children.size());
        for (const Piece& q : c.children) kids.push_back(encode_piece(q, false));
        std::sort(kids.begin(), kids.end());
        std::string enc = "[";
        for (const std::string& k : kids) enc += k;
        enc += "]";
        circles.push_back(std::move(enc));
    }
    std::sort(circles.begin(), circles.end());
    std::string out(1, is_root ? '{' : '(');
    for (const std::string& c : circles) out += c;
    out += is_root ? '}' : ')';
    return out;
}

} // namespace

std::string rooted_canonical(const Arrangement& a) {
    return encode_piece(a.root, true);
}

Arrangement re_root(const Arrangement& a, const TreePath& piece_path) {
    if (piece_path.empty()) return a;
    if (piece_path.size() % 2 != 0) throw error("re_root targets a piece path");

    // Pieces along the path, root first.
    std::vector<const Piece*> chain{&a.root};
    for (std::size_t i = 0; i < piece_path.size(); i += 2)
        chain.push_back(&resolve_piece(a, TreePath(piece_path.begin(), piece_path.begin() + i + 2)));

    // Inverts chain[level] into a child piece seen from below; the physical
    // circles keep their flags as they flip between node and edge roles.
    std::function<Piece(std::size_t)> invert = [&](std::size_t level) {
        const Piece& orig = *chain[level];
        const int circle_idx = piece_path[2 * level];
        Piece inv;
        inv.relevant = orig.relevant;
        inv.tag = orig.tag;
        inv.outer_essential = orig.circles[circle_idx].essential;
        for (int c = 0; c < static_cast<int>(orig.circles.size()); ++c)
            if (c != circle_idx) inv.circles.push_back(orig.circles[c]);
        if (level > 0) {
            const Piece& parent = *chain[level - 1];
            const int parent_circle = piece_path[2 * (level - 1)];
            const int self_idx = piece_path[2 * (level - 1) + 1];
            Circle up;
            up.essential = orig.outer_essential;
            const Circle& pc = parent.circles[parent_circle];
            for (int q = 0; q < static_cast<int>(pc.children.size()); ++q)
                if (q != self_idx) up.children.push_back(pc.children[q]);
            up.children.push_back(invert(level - 1));
            inv.circles.push_back(std::move(up));
        }
        return inv;
    };

    const std::size_t k = piece_path.size() / 2; // chain[k] is the new root
    const Piece& target = *chain[k];
    Arrangement out;
    out.root.relevant = target.relevant;
    out.root.tag = target.tag;
    out.root.outer_essential = false;
    out.root.circles = target.circles;

    Circle up;
    up.essential = target.outer_essential;
    const Piece& parent = *chain[k - 1];
    const Circle& pc = parent.circles[piece_path[2 * (k - 1)]];
    const int self_idx = piece_path[2 * (k - 1) + 1];
    for (int q = 0; q < static_cast<int>(pc.children.size()); ++q)
        if (q != self_idx) up.children.push_back(pc.children[q]);
    up.children.push_back(invert(k - 1));
    out.root.circles.push_back(std::move(up));
    return out;
}

std::string canonical_form(const Arrangement& a) {
    std::string best;
    TreePath path;
    for_each_piece(a.root, path, [&](const Piece&, const TreePath& at) {
        std::string enc = rooted_canonical(re_root(a, at));
        if (best.empty() || enc < best) best = std::move(enc);
    });
    return best;
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

struct MoveSites {
    std::vector<TreePath> circles;
    std::vector<TreePath> disks; // piece paths with boundary count 1
};

MoveSites collect_sites(const Arrangement& a) {
    MoveSites sites;
    TreePath path;
    for_each_circle(a.root, path, [&](const Circle&, const TreePath& at) { sites.circles.push_back(at); });
    for_each_piece(a.root, path, [&](const Piece& p, const TreePath& at) {
        if (is_disk(p, at.empty())) sites.disks.push_back(at);
    });
    return sites;
}

} // namespace

std::set<std::string> enumerate(const EnumerateOptions& opts) {
    if (opts.n_max < 2) throw error("enumerate: n_max must be >= 2");
    const int threads = std::max(1, opts.threads);

    std::set<std::string> seen;
    std::mutex mtx;
    const auto insert_new = [&](std::string canon, std::vector<std::string>& fresh) {
        std::lock_guard<std::mutex> lock(mtx);
        if (seen.size() >= opts.max_set && !seen.count(canon))
            throw error("enumerate: dedup set budget of " + std::to_string(opts.max_set) +
                        " arrangements exceeded");
        if (seen.insert(canon).second) fresh.push_back(std::move(canon));
    };

    std::vector<std::string> frontier;
    {
        std::vector<std::string> fresh;
        insert_new(canonical_form(two_disk()), fresh);
        frontier = std::move(fresh);
    }

    const auto expand = [&](const std::string& rep, std::vector<std::string>& fresh) {
        const Arrangement a = parse_arrangement(rep);
        const long long y = piece_count(a);
        const MoveSites sites = collect_sites(a);
        if (y + 1 <= opts.n_max)
            for (const TreePath& c : sites.circles)
                insert_new(canonical_form(apply_move(a, {MoveKind::add_disk, c, 0}, opts.a)), fresh);
        for (const TreePath& d : sites.disks)
            for (int s = 2; y + s - 1 <= opts.n_max; ++s) {
                if (s == opts.a.a + 1) continue;
                insert_new(canonical_form(apply_move(a, {MoveKind::inflate, d, s}, opts.a)), fresh);
            }
    };

    while (!frontier.empty()) {
        std::vector<std::string> fresh;
        if (threads == 1 || frontier.size() < 4) {
            for (const std::string& rep : frontier) expand(rep, fresh);
        } else {
            std::vector<std::thread> pool;
            std::exception_ptr failure;
            std::atomic<std::size_t> next{0};
            for (int w = 0; w < threads; ++w)
                pool.emplace_back([&] {
                    try {
                        for (;;) {
                            const std::size_t i = next.fetch_add(1);
                            if (i >= frontier.size()) return;
                            expand(frontier[i], fresh);
                        }
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(mtx);
                        if (!failure) failure = std::current_exception();
                    }
                });
            for (std::thread& th : pool) th.join();
            if (failure) std::rethrow_exception(failure);
        }
        std::sort(fresh.begin(), fresh.end());
        frontier = std::move(fresh);
    }
    return seen;
}

// ---------------------------------------------------------------------------
// ratio checks

LambdaReport check_lambda_bound(const Arrangement& a, Threshold t) {
    LambdaReport r;
    r.x = lambda_count(a, t);
    r.y = piece_count(a);
    r.ratio = Rational(r.x, r.y);
    r.bound = Rational(t.a, t.a + 1);
    r.pass = r.ratio > r.bound;
    return r;
}

std::vector<ExtremalPoint> extremal_sequence(Threshold t, int t_max) {
    if (t_max < 0) throw error("extremal_sequence: t_max must be >= 0");
    std::vector<ExtremalPoint> out;
    Arrangement cur = two_disk();
    for (int step = 0; step <= t_max; ++step) {
        if (step > 0) {
            // inflate the first disk in preorder to a+2 boundaries
            bool found = false;
            TreePath disk;
            TreePath path;
            for_each_piece(cur.root, path, [&](const Piece& p, const TreePath& at) {
                if (!found && is_disk(p, at.empty())) { found = true; disk = at; }
            });
            if (!found) throw error("extremal_sequence: no disk to inflate (internal invariant)");
            cur = apply_move(cur, {MoveKind::inflate, disk, t.a + 2}, t);
        }
        ExtremalPoint pt;
        pt.x = lambda_count(cur, t);
        pt.y = piece_count(cur);
        pt.value = Rational(pt.x, pt.y);
        const Rational expected(2 + static_cast<long long>(step) * t.a,
                                2 + static_cast<long long>(step) * (t.a + 1));
        if (pt.value != expected)
            throw error("extremal_sequence: witness ratio " + pt.value.str() +
                        " differs from formula " + expected.str() + " (internal invariant)");
        out.push_back(pt);
    }
    return out;
}

} // namespace trunkkit::arrangement
