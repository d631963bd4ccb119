#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trunkkit/error.hpp"

namespace trunkkit::morse {

// One level event of a Morse word, read bottom to top.  Strands are indexed
// 0..w-1 left to right, w being the strand count just below the event.
//
//   cup i   : inserts two adjacent strands at i            (0 <= i <= w)
//   cap i   : joins strands i, i+1                          (0 <= i <= w-2)
//   x+/x- i : swaps strands i, i+1 with the given sign      (0 <= i <= w-2)
//
// Cups and caps are the critical events; crossings are not.
enum class EventKind { cup, cap, cross_pos, cross_neg };

struct MorseEvent {
    EventKind kind;
    int position;

    friend bool operator==(const MorseEvent&, const MorseEvent&) = default;
};

constexpr bool is_critical(EventKind k) {
    return k == EventKind::cup || k == EventKind::cap;
}

// Result of simulating an event word over an initial strand set.  Arcs are
// identified by the id of the strand pair that created them; a union-find
// pass merges arcs joined by caps.
struct EventTrace {
    int initial = 0;                  // strand count before the first event
    std::vector<int> width_after;     // strand count after each event
    std::vector<int> bottom_arc;      // arc id per initial strand
    std::vector<int> top_arc;         // arc id per surviving strand, in order
    std::vector<int> arc_root;        // representative per arc id
    int arc_count = 0;

    int root(int arc) const { return arc_root[arc]; }
};

// Simulates the word; throws trunkkit::error on a strand-count violation,
// naming the offending event index.
EventTrace trace_events(std::span<const MorseEvent> events, int initial_strands);

// A closed single-component Morse word.  Construction validates: strand
// count starts and ends at 0 and never dips negative, the word is nonempty,
// and tracing arc connectivity yields exactly one component.
class MorsePresentation {
public:
    static MorsePresentation from_events(std::vector<MorseEvent> events);

    const std::vector<MorseEvent>& events() const { return events_; }

    friend bool operator==(const MorsePresentation&, const MorsePresentation&) = default;

private:
    MorsePresentation() = default;
    std::vector<MorseEvent> events_;
};

// Strand counts at the regular levels between consecutive critical events.
struct LevelProfile {
    std::vector<int> widths;

    int width() const;  // sum
    int trunk() const;  // max
};

// Number of link components of a closed event word (no validity assumptions
// beyond strand-count sanity).
int component_count(std::span<const MorseEvent> events);

MorsePresentation parse_morse(std::string_view text);
std::string serialize(const MorsePresentation& p);
std::string serialize_events(std::span<const MorseEvent> events);

// The raw line grammar (`cup i | cap i | x+ i | x- i`, `#` comments, blank
// lines) without any closure validation; the tangle format reuses it for its
// open body.  `line_of_event`, when given, receives each event's source line.
std::vector<MorseEvent> parse_event_lines(std::string_view text, int first_line = 1,
                                          std::vector<int>* line_of_event = nullptr);

LevelProfile level_profile(const MorsePresentation& p);
int width(const MorsePresentation& p);
int trunk(const MorsePresentation& p);

// Splice: q with its final cap removed, then p with its initial cup removed.
// Both inputs are validated knots, whose words necessarily begin with `cup 0`
// and end with `cap 0`; the result realizes trunk = max, width = sum - 2.
MorsePresentation connected_sum(const MorsePresentation& p, const MorsePresentation& q);

// Test helper: inserts a cancelling zigzag (cup i, cap i+1) at the start of
// regular level `level`.  Keeps the knot class; widens that level by 2.
MorsePresentation insert_finger(const MorsePresentation& p, int level, int position);

} // namespace trunkkit::morse
