#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "trunkkit/morse.hpp"

namespace trunkkit::pattern {

// Where a tangle arc ends: bottom endpoint i or top endpoint i.
struct TangleEndpoint {
    bool top = false;
    int index = 0;

    friend bool operator==(const TangleEndpoint&, const TangleEndpoint&) = default;
    std::string str() const { return (top ? "T" : "B") + std::to_string(index); }
};

// A satellite pattern presented as a tangle in the cylinder obtained by
// cutting the solid torus along one meridian disk.  `n_through` strands
// enter at the bottom and exit at the top; `signs` are the orientation signs
// of the bottom endpoints.  The event word acts on a strand set initialized
// to n_through and must return to n_through.
class CylinderTangle {
public:
    static CylinderTangle make(int n_through, std::vector<int> signs,
                               std::vector<morse::MorseEvent> events);

    int n_through() const { return n_through_; }
    const std::vector<int>& signs() const { return signs_; }
    const std::vector<morse::MorseEvent>& events() const { return events_; }

    // Arc connectivity among the 2n endpoints, traced through the word.
    const std::vector<std::pair<TangleEndpoint, TangleEndpoint>>& matching() const { return matching_; }
    int closed_loops() const { return closed_loops_; }
    int internal_max_width() const { return internal_max_width_; }

    std::string describe_matching() const;

private:
    CylinderTangle() = default;
    int n_through_ = 0;
    std::vector<int> signs_;
    std::vector<morse::MorseEvent> events_;
    std::vector<std::pair<TangleEndpoint, TangleEndpoint>> matching_;
    int closed_loops_ = 0;
    int internal_max_width_ = 0;
};

CylinderTangle parse_tangle(std::string_view text);
std::string serialize(const CylinderTangle& t);

// |sum of orientation signs|.
int winding_number(const CylinderTangle& t);

// The geometric intersection count of this presentation's meridian disk; an
// upper bound for the true wrapping number.
int presentation_wrapping(const CylinderTangle& t);

// An n-cable of a knot word: every cup becomes n nested cups, every cap n
// nested caps, every crossing an n x n block of same-sign crossings swapping
// the adjacent bundles.  The level structure is the companion's, scaled:
// level_widths[i] = n * w_i.  For n > 1 the word closes into an n-component
// link, so it is kept as an open diagram rather than a MorsePresentation.
struct CableDiagram {
    std::vector<morse::MorseEvent> events;
    std::vector<int> level_widths;        // clustered profile, n * w_i
    std::vector<std::size_t> cluster_end; // event index just past each critical cluster
    int n = 1;

    int width() const;
    int trunk() const;
};

// Rejects results whose strand count would exceed 2^20.
CableDiagram cable(const morse::MorsePresentation& companion, int n);

// Builds the satellite word: cable the companion by t.n_through(), then
// splice t's events into the leftmost strand's bundle immediately after the
// cluster that opens regular level `level`.  The result must close into a
// single component; otherwise the error cites the tangle's endpoint matching.
morse::MorsePresentation satellite(const morse::MorsePresentation& companion,
                                   const CylinderTangle& t, int level);

} // namespace trunkkit::pattern
