#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "trunkkit/error.hpp"
#include "trunkkit/rational.hpp"

namespace trunkkit::arrangement {

struct Piece;

// A boundary circle of the piece that lists it; the pieces immediately
// inside its disk are its children.  `essential` is configuration data and
// stays false on plain arrangements.
struct Circle {
    std::vector<Piece> children;
    bool essential = false;
};

// A connected planar piece.  The root piece lists all of its boundary
// circles; every other piece lists only its inner circles — its outer circle
// is the edge to the parent circle.  `relevant` / `outer_essential` are
// configuration data.  `tag` is a parse-time identity used to report
// correspondences; it never influences structure comparisons.
struct Piece {
    std::vector<Circle> circles;
    bool relevant = false;
    bool outer_essential = false;
    int tag = -1;
};

struct Arrangement {
    Piece root;
};

inline int boundary_count(const Piece& p, bool is_root) {
    return static_cast<int>(p.circles.size()) + (is_root ? 0 : 1);
}

// Odd positive threshold: condition (1)' requires every boundary count to be
// <= a or >= a+2.  The default a = 1 is the base form (1 or at least 3).
struct Threshold {
    int a = 1;

    Threshold() = default;
    explicit Threshold(int value) : a(value) {
        if (a < 1 || a % 2 == 0)
            throw error("threshold must be an odd positive integer, got " + std::to_string(a));
    }
};

struct Violation {
    std::string condition; // "1'", "2i", "2ii"
    std::string path;
    std::string detail;
};

// Alternating child indices from the root piece: circle index, piece index,
// circle index, ...  Even length addresses a piece, odd length a circle.
using TreePath = std::vector<int>;

std::string path_str(const TreePath& path);
const Piece& resolve_piece(const Arrangement& a, const TreePath& path);
const Circle& resolve_circle(const Arrangement& a, const TreePath& path);

Arrangement parse_arrangement(std::string_view text);
std::string serialize(const Arrangement& a);

// Checks conditions (1)' (with boundary counts >= 1), (2)(i), and (2)(ii);
// (2)(ii) runs independently even though this tree model implies it.
std::vector<Violation> validate(const Arrangement& a, Threshold t);

long long piece_count(const Arrangement& a);

// Pieces with boundary count <= a; at a = 1 this is the disk count lambda.
long long lambda_count(const Arrangement& a, Threshold t);

enum class MoveKind { add_disk, inflate, reverse_add_disk, reverse_inflate };

// add_disk targets a circle; the others target a piece.  `s` is the boundary
// count for inflate / reverse_inflate.  inflate turns a disk into an
// s-boundary piece and seeds one disk in each of the s-1 new circles; s must
// be >= 1 and != a+1 (s = 1 is the identity).
struct Move {
    MoveKind kind;
    TreePath target;
    int s = 0;
};

Arrangement apply_move(const Arrangement& a, const Move& m, Threshold t);

// Expected counter change per move, (dx, dy) with x = pieces with boundary
// count <= a and y = total pieces.
std::pair<long long, long long> move_delta(const Move& m, Threshold t);

struct TraceStep {
    Move move;
    long long x_after = 0;
    long long y_after = 0;
};

// Deconstruction record: reverse moves in execution order, counters after
// each step; ends at the two-disk state (x = y = 2).
struct MoveTrace {
    long long x_initial = 0;
    long long y_initial = 0;
    std::vector<TraceStep> steps;
};

Arrangement two_disk();

// Strips surplus disks and reverse-inflates innermost pieces until only the
// two-disk state remains.  Replaying the inverse moves in reverse order
// rebuilds an isomorphic arrangement.
MoveTrace deconstruct(const Arrangement& a, Threshold t);
Arrangement replay(const MoveTrace& trace, Threshold t);

// Canonical bracket text of the rooted tree (sibling order erased).
std::string rooted_canonical(const Arrangement& a);

// Canonical form over all root re-choices: equal strings iff the two
// arrangements are isomorphic as configurations on the sphere.  The string
// itself parses back as an arrangement.
std::string canonical_form(const Arrangement& a);

// Same sphere object viewed from another piece.
Arrangement re_root(const Arrangement& a, const TreePath& piece_path);

struct EnumerateOptions {
    int n_max = 2;
    Threshold a{};
    std::size_t max_set = 4u << 20;
    int threads = 1;
};

// All sphere-isomorphism classes of arrangements with at most n_max pieces,
// as canonical strings: breadth-first closure of the two moves from the
// two-disk state.  Throws if the dedup set would exceed max_set.
std::set<std::string> enumerate(const EnumerateOptions& opts);

struct LambdaReport {
    long long x = 0;
    long long y = 0;
    Rational ratio;
    Rational bound;
    bool pass = false;
};

// Exact check of x/y > a/(a+1).
LambdaReport check_lambda_bound(const Arrangement& a, Threshold t);

struct ExtremalPoint {
    Rational value;
    long long x = 0;
    long long y = 0;
};

// The ratio sequence (2 + t*a) / (2 + t*(a+1)) for t = 0..t_max, with each
// point realized by t inflate(a+2) steps from the two-disk state.
std::vector<ExtremalPoint> extremal_sequence(Threshold t, int t_max);

} // namespace trunkkit::arrangement
