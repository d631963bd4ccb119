#include "trunkkit/pattern.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

namespace trunkkit::pattern {

using morse::EventKind;
using morse::EventTrace;
using morse::MorseEvent;
using morse::MorsePresentation;

namespace {
constexpr int kMaxStrands = 1 << 20;
}

CylinderTangle CylinderTangle::make(int n_through, std::vector<int> signs,
                                    std::vector<MorseEvent> events) {
    if (n_through < 1)
        throw error("tangle must have n_through >= 1 (a pattern meets every meridian disk)");
    if (static_cast<int>(signs.size()) != n_through)
        throw error("tangle needs exactly n_through orientation signs, got " +
                    std::to_string(signs.size()));
    for (int s : signs)
        if (s != 1 && s != -1) throw error("tangle signs must be +1 or -1");

    const EventTrace t = morse::trace_events(events, n_through);
    const int final_width = static_cast<int>(t.top_arc.size());
    if (final_width != n_through)
        throw error("tangle strand count ends at " + std::to_string(final_width) +
                    ", expected n_through = " + std::to_string(n_through));

    CylinderTangle out;
    out.n_through_ = n_through;
    out.signs_ = std::move(signs);
    out.events_ = std::move(events);

    out.internal_max_width_ = n_through;
    for (int w : t.width_after) out.internal_max_width_ = std::max(out.internal_max_width_, w);

    // Group the 2n endpoints by arc representative; every class with
    // endpoints has exactly two of them, classes without are closed loops.
    std::map<int, std::vector<TangleEndpoint>> classes;
    for (int i = 0; i < n_through; ++i)
        classes[t.root(t.bottom_arc[i])].push_back({false, i});
    for (int i = 0; i < n_through; ++i)
        classes[t.root(t.top_arc[i])].push_back({true, i});
    std::vector<bool> arc_has_endpoint(t.arc_count, false);
    for (const auto& [root, eps] : classes) {
        arc_has_endpoint[root] = true;
        if (eps.size() != 2)
            throw error("internal: tangle arc with " + std::to_string(eps.size()) + " endpoints");
        out.matching_.emplace_back(eps[0], eps[1]);
    }
    for (int a = 0; a < t.arc_count; ++a)
        if (t.root(a) == a && !arc_has_endpoint[a]) ++out.closed_loops_;
    return out;
}

std::string CylinderTangle::describe_matching() const {
    std::string s;
    for (const auto& [a, b] : matching_) {
        if (!s.empty()) s += ' ';
        s += a.str() + "-" + b.str();
    }
    if (closed_loops_ > 0) s += " +" + std::to_string(closed_loops_) + " closed loop(s)";
    return s;
}

CylinderTangle parse_tangle(std::string_view text) {
    // the header is the first substantive line; comments and blanks may precede
    std::string_view header, rest;
    int header_line = 0;
    {
        std::size_t pos = 0;
        int line_no = 0;
        while (pos <= text.size()) {
            const std::size_t eol = text.find('\n', pos);
            std::string_view line =
                text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
            ++line_no;
            std::string_view stripped = line;
            if (const auto hash = stripped.find('#'); hash != std::string_view::npos)
                stripped = stripped.substr(0, hash);
            bool blank = true;
            for (char c : stripped)
                if (c != ' ' && c != '\t' && c != '\r') blank = false;
            if (!blank) {
                header = stripped;
                header_line = line_no;
                rest = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
                break;
            }
            if (eol == std::string_view::npos) break;
            pos = eol + 1;
        }
        if (header_line == 0) throw parse_error("empty tangle: missing 'through' header", 1, 1);
    }

    // header: `through <n> signs <+/- string>`
    std::size_t i = 0;
    const auto skip_ws = [&] { while (i < header.size() && (header[i] == ' ' || header[i] == '\t' || header[i] == '\r')) ++i; };
    const auto take_word = [&] {
        skip_ws();
        std::size_t j = i;
        while (j < header.size() && header[j] != ' ' && header[j] != '\t' && header[j] != '\r') ++j;
        std::string_view w = header.substr(i, j - i);
        i = j;
        return w;
    };
    if (take_word() != "through")
        throw parse_error("tangle header must start with 'through'", header_line, 1);
    const std::string_view n_str = take_word();
    int n = 0;
    for (char c : n_str) {
        if (c < '0' || c > '9') throw parse_error("bad strand count in tangle header", header_line, static_cast<int>(i));
        n = n * 10 + (c - '0');
    }
    if (take_word() != "signs")
        throw parse_error("tangle header must contain 'signs'", header_line, static_cast<int>(i));
    const std::string_view sign_str = take_word();
    std::vector<int> signs;
    for (char c : sign_str) {
        if (c == '+') signs.push_back(1);
        else if (c == '-') signs.push_back(-1);
        else throw parse_error("tangle signs must be + or -", header_line, static_cast<int>(i));
    }
    skip_ws();
    if (i < header.size()) throw parse_error("trailing junk in tangle header", header_line, static_cast<int>(i + 1));

    // the body is an open Morse word on n strands
    std::vector<MorseEvent> events = morse::parse_event_lines(rest, header_line + 1);
    return CylinderTangle::make(n, std::move(signs), std::move(events));
}

std::string serialize(const CylinderTangle& t) {
    std::string out = "through " + std::to_string(t.n_through()) + " signs ";
    for (int s : t.signs()) out += (s > 0 ? '+' : '-');
    out += '\n';
    out += morse::serialize_events(t.events());
    return out;
}

int winding_number(const CylinderTangle& t) {
    const int sum = std::accumulate(t.signs().begin(), t.signs().end(), 0);
    return std::abs(sum);
}

int presentation_wrapping(const CylinderTangle& t) {
    return t.n_through();
}

int CableDiagram::width() const {
    return std::accumulate(level_widths.begin(), level_widths.end(), 0);
}

int CableDiagram::trunk() const {
    return level_widths.empty() ? 0 : *std::max_element(level_widths.begin(), level_widths.end());
}

CableDiagram cable(const MorsePresentation& companion, int n) {
    if (n < 1) throw error("cable: n must be >= 1");
    const morse::LevelProfile lp = morse::level_profile(companion);
    if (static_cast<long long>(n) * lp.trunk() > kMaxStrands)
        throw error("cable: strand count " + std::to_string(static_cast<long long>(n) * lp.trunk()) +
                    " exceeds the 2^20 guard");

    CableDiagram out;
    out.n = n;
    for (int w : lp.widths) out.level_widths.push_back(n * w);

    for (const MorseEvent& e : companion.events()) {
        const int base = n * e.position;
        switch (e.kind) {
            case EventKind::cup:
                // n nested cups: each inserts inside the previous pair.
                for (int k = 0; k < n; ++k)
                    out.events.push_back({EventKind::cup, base + k});
                out.cluster_end.push_back(out.events.size());
                break;
            case EventKind::cap:
                // close innermost first
                for (int k = n - 1; k >= 0; --k)
                    out.events.push_back({EventKind::cap, base + k});
                out.cluster_end.push_back(out.events.size());
                break;
            case EventKind::cross_pos:
            case EventKind::cross_neg:
                // Bubble each strand of the right bundle leftward past the
                // left bundle; n^2 crossings, bundle orders preserved.
                for (int k = 0; k < n; ++k)
                    for (int step = n - 1; step >= 0; --step)
                        out.events.push_back({e.kind, base + k + step});
                break;
        }
    }
    return out;
}

MorsePresentation satellite(const MorsePresentation& companion, const CylinderTangle& t, int level) {
    const CableDiagram cab = cable(companion, t.n_through());
    const int levels = static_cast<int>(cab.level_widths.size());
    if (level < 0 || level >= levels)
        throw error("satellite: level " + std::to_string(level) + " out of range [0, " +
                    std::to_string(levels) + ")");

    // Splice right after the cluster that opens the chosen regular level.
    // The leftmost companion strand's bundle sits at positions 0..n-1, so
    // tangle positions carry over with offset 0.
    const std::size_t at = cab.cluster_end[level];
    std::vector<MorseEvent> events(cab.events.begin(), cab.events.begin() + at);
    events.insert(events.end(), t.events().begin(), t.events().end());
    events.insert(events.end(), cab.events.begin() + at, cab.events.end());

    const int comps = morse::component_count(events);
    if (comps != 1)
        throw error("satellite: closure has " + std::to_string(comps) +
                    " components, expected 1; tangle endpoint matching: " + t.describe_matching());
    return MorsePresentation::from_events(std::move(events));
}

} // namespace trunkkit::pattern
