#include "trunkkit/morse.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace trunkkit::morse {

namespace {

// Tiny union-find over arc ids.
struct ArcSets {
    std::vector<int> parent;

    int make() {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void merge(int a, int b) { parent[find(a)] = find(b); }
};

std::string event_name(EventKind k) {
    switch (k) {
        case EventKind::cup: return "cup";
        case EventKind::cap: return "cap";
        case EventKind::cross_pos: return "x+";
        case EventKind::cross_neg: return "x-";
    }
    return "?";
}

} // namespace

EventTrace trace_events(std::span<const MorseEvent> events, int initial_strands) {
    EventTrace t;
    t.initial = initial_strands;

    ArcSets sets;
    std::vector<int> strands;                 // arc id per live strand position
    strands.reserve(16);
    for (int i = 0; i < initial_strands; ++i) {
        const int id = sets.make();
        strands.push_back(id);
        t.bottom_arc.push_back(id);
    }

    t.width_after.reserve(events.size());
    for (std::size_t idx = 0; idx < events.size(); ++idx) {
        const MorseEvent& e = events[idx];
        const int w = static_cast<int>(strands.size());
        const auto fail = [&](const std::string& why) {
            throw error("event " + std::to_string(idx) + " (" + event_name(e.kind) + " " +
                        std::to_string(e.position) + "): " + why + " at width " + std::to_string(w));
        };
        if (e.position < 0) fail("negative position");

        switch (e.kind) {
            case EventKind::cup: {
                if (e.position > w) fail("cup position out of range");
                const int id = sets.make();
                strands.insert(strands.begin() + e.position, 2, id);
                break;
            }
            case EventKind::cap: {
                if (e.position > w - 2) fail("cap position out of range");
                sets.merge(strands[e.position], strands[e.position + 1]);
                strands.erase(strands.begin() + e.position, strands.begin() + e.position + 2);
                break;
            }
            case EventKind::cross_pos:
            case EventKind::cross_neg: {
                if (e.position > w - 2) fail("crossing position out of range");
                std::swap(strands[e.position], strands[e.position + 1]);
                break;
            }
        }
        t.width_after.push_back(static_cast<int>(strands.size()));
    }

    t.top_arc = strands;
    t.arc_count = static_cast<int>(sets.parent.size());
    t.arc_root.resize(sets.parent.size());
    for (int a = 0; a < t.arc_count; ++a) t.arc_root[a] = sets.find(a);
    return t;
}

int component_count(std::span<const MorseEvent> events) {
    const EventTrace t = trace_events(events, 0);
    std::vector<int> roots;
    roots.reserve(t.arc_count);
    for (int a = 0; a < t.arc_count; ++a) roots.push_back(t.root(a));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return static_cast<int>(roots.size());
}

MorsePresentation MorsePresentation::from_events(std::vector<MorseEvent> events) {
    if (events.empty()) throw error("empty presentation rejected: a knot is nonempty");
    const EventTrace t = trace_events(events, 0);
    if (!t.top_arc.empty())
        throw error("strand count ends at " + std::to_string(t.top_arc.size()) + ", expected 0");
    const int comps = component_count(events);
    if (comps != 1)
        throw error("component count " + std::to_string(comps) + ", expected 1 (links rejected)");
    MorsePresentation p;
    p.events_ = std::move(events);
    return p;
}

int LevelProfile::width() const {
    return std::accumulate(widths.begin(), widths.end(), 0);
}

int LevelProfile::trunk() const {
    return widths.empty() ? 0 : *std::max_element(widths.begin(), widths.end());
}

std::vector<MorseEvent> parse_event_lines(std::string_view text, int first_line,
                                          std::vector<int>* line_of_event) {
    std::vector<MorseEvent> events;
    int line_no = first_line - 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);

        std::size_t i = 0;
        const auto skip_ws = [&] { while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i; };
        skip_ws();
        if (i < line.size()) {
            const std::size_t mnemonic_col = i + 1;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
            const std::string_view word = line.substr(i, j - i);
            EventKind kind;
            if (word == "cup") kind = EventKind::cup;
            else if (word == "cap") kind = EventKind::cap;
            else if (word == "x+") kind = EventKind::cross_pos;
            else if (word == "x-") kind = EventKind::cross_neg;
            else throw parse_error("unknown event '" + std::string(word) + "'", line_no, static_cast<int>(mnemonic_col));

            i = j;
            skip_ws();
            const std::size_t num_col = i + 1;
            j = i;
            while (j < line.size() && line[j] >= '0' && line[j] <= '9') ++j;
            if (j == i)
                throw parse_error("expected non-negative strand index", line_no, static_cast<int>(num_col));
            int value = 0;
            for (std::size_t k = i; k < j; ++k) {
                value = value * 10 + (line[k] - '0');
                if (value > (1 << 24)) throw parse_error("strand index too large", line_no, static_cast<int>(num_col));
            }
            i = j;
            skip_ws();
            if (i < line.size())
                throw parse_error("trailing junk after event", line_no, static_cast<int>(i + 1));

            events.push_back({kind, value});
            if (line_of_event) line_of_event->push_back(line_no);
        }

        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return events;
}

MorsePresentation parse_morse(std::string_view text) {
    std::vector<int> event_line;
    std::vector<MorseEvent> events = parse_event_lines(text, 1, &event_line);

    // Re-run validation so strand-count diagnostics carry source lines.
    try {
        return MorsePresentation::from_events(std::move(events));
    } catch (const error& e) {
        std::string what = e.what();
        if (what.rfind("event ", 0) == 0) {
            const std::size_t idx = std::stoul(what.substr(6));
            throw parse_error(what, event_line[idx], 1);
        }
        throw;
    }
}

std::string serialize_events(std::span<const MorseEvent> events) {
    std::string out;
    for (const MorseEvent& e : events) {
        out += event_name(e.kind);
        out += ' ';
        out += std::to_string(e.position);
        out += '\n';
    }
    return out;
}

std::string serialize(const MorsePresentation& p) {
    return serialize_events(p.events());
}

LevelProfile level_profile(const MorsePresentation& p) {
    const EventTrace t = trace_events(p.events(), 0);
    LevelProfile lp;
    int criticals_seen = 0;
    const int total_criticals = static_cast<int>(
        std::count_if(p.events().begin(), p.events().end(),
                      [](const MorseEvent& e) { return is_critical(e.kind); }));
    for (std::size_t i = 0; i < p.events().size(); ++i) {
        if (!is_critical(p.events()[i].kind)) continue;
        ++criticals_seen;
        if (criticals_seen < total_criticals)
            lp.widths.push_back(t.width_after[i]);
    }
    return lp;
}

int width(const MorsePresentation& p) { return level_profile(p).width(); }
int trunk(const MorsePresentation& p) { return level_profile(p).trunk(); }

MorsePresentation connected_sum(const MorsePresentation& p, const MorsePresentation& q) {
    // Any validated knot word already starts with `cup 0` (width 0 admits no
    // other event) and ends with `cap 0`; reject anything else as malformed.
    const auto check_normalized = [](const MorsePresentation& m, const char* which) {
        const MorseEvent& first = m.events().front();
        const MorseEvent& last = m.events().back();
        if (first.kind != EventKind::cup || first.position != 0)
            throw error(std::string("connected_sum: ") + which + " is not normalized (first event must be cup 0)");
        if (last.kind != EventKind::cap || last.position != 0)
            throw error(std::string("connected_sum: ") + which + " is not normalized (last event must be cap 0)");
    };
    check_normalized(p, "left input");
    check_normalized(q, "right input");

    std::vector<MorseEvent> events(q.events().begin(), q.events().end() - 1);
    events.insert(events.end(), p.events().begin() + 1, p.events().end());
    return MorsePresentation::from_events(std::move(events));
}

MorsePresentation insert_finger(const MorsePresentation& p, int level, int position) {
    const LevelProfile lp = level_profile(p);
    if (level < 0 || level >= static_cast<int>(lp.widths.size()))
        throw error("insert_finger: level out of range");
    const int w = lp.widths[level];
    if (position < 0 || position > w - 1)
        throw error("insert_finger: position out of range for width " + std::to_string(w));

    // Locate the event index right after the (level+1)-th critical event.
    int criticals_seen = 0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < p.events().size(); ++i) {
        if (is_critical(p.events()[i].kind)) {
            if (criticals_seen == level) { at = i + 1; break; }
            ++criticals_seen;
        }
    }

    std::vector<MorseEvent> events = p.events();
    events.insert(events.begin() + at, {MorseEvent{EventKind::cup, position},
                                        MorseEvent{EventKind::cap, position + 1}});
    return MorsePresentation::from_events(std::move(events));
}

} // namespace trunkkit::morse
