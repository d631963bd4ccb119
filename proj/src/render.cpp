#include "trunkkit/render.hpp"

#include <algorithm>
#include <vector>

namespace trunkkit::render {

using morse::EventKind;
using morse::MorseEvent;
using morse::MorsePresentation;

namespace {

struct Row {
    std::string art;
    std::string label;
};

void put(std::string& s, std::size_t col, char c) {
    if (s.size() <= col) s.resize(col + 1, ' ');
    s[col] = c;
}

std::vector<Row> build_rows(const MorsePresentation& p) {
    const morse::EventTrace t = morse::trace_events(p.events(), 0);
    const int total_criticals = static_cast<int>(
        std::count_if(p.events().begin(), p.events().end(),
                      [](const MorseEvent& e) { return morse::is_critical(e.kind); }));

    std::vector<Row> rows; // bottom-up; reversed on emit
    int width_before = 0;
    int criticals_seen = 0;
    for (std::size_t i = 0; i < p.events().size(); ++i) {
        const MorseEvent& e = p.events()[i];
        Row row;
        switch (e.kind) {
            case EventKind::cup: {
                for (int j = 0; j < e.position; ++j) put(row.art, 2 * j, '|');
                put(row.art, 2 * e.position, '.');
                put(row.art, 2 * e.position + 1, '-');
                put(row.art, 2 * e.position + 2, '.');
                for (int j = e.position; j < width_before; ++j) put(row.art, 2 * (j + 2), '|');
                row.label = "cup " + std::to_string(e.position);
                break;
            }
            case EventKind::cap: {
                for (int j = 0; j < e.position; ++j) put(row.art, 2 * j, '|');
                put(row.art, 2 * e.position, '\'');
                put(row.art, 2 * e.position + 1, '-');
                put(row.art, 2 * e.position + 2, '\'');
                for (int j = e.position + 2; j < width_before; ++j) put(row.art, 2 * j, '|');
                row.label = "cap " + std::to_string(e.position);
                break;
            }
            case EventKind::cross_pos:
            case EventKind::cross_neg: {
                const bool pos = e.kind == EventKind::cross_pos;
                for (int j = 0; j < width_before; ++j)
                    if (j != e.position && j != e.position + 1) put(row.art, 2 * j, '|');
                put(row.art, 2 * e.position, '\\');
                put(row.art, 2 * e.position + 1, pos ? '+' : '-');
                put(row.art, 2 * e.position + 2, '/');
                row.label = (pos ? "x+ " : "x- ") + std::to_string(e.position);
                break;
            }
        }
        rows.push_back(std::move(row));

        const int width_after = t.width_after[i];
        if (morse::is_critical(e.kind)) ++criticals_seen;
        if (i + 1 < p.events().size()) {
            Row level;
            for (int j = 0; j < width_after; ++j) put(level.art, 2 * j, '|');
            // annotate the regular level once, right above its opening event
            if (morse::is_critical(e.kind) && criticals_seen < total_criticals)
                level.label = "w=" + std::to_string(width_after);
            rows.push_back(std::move(level));
        }
        width_before = width_after;
    }
    return rows;
}

} // namespace

std::string render_ascii(const MorsePresentation& p) {
    const std::vector<Row> rows = build_rows(p);
    const int tr = morse::trunk(p);
    const std::size_t art_width = 2 * static_cast<std::size_t>(tr) - 1;

    std::string out;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        std::string line = it->art;
        if (!it->label.empty()) {
            line.resize(art_width, ' ');
            line += "  " + it->label;
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line;
        out += '\n';
    }
    out += "trunk=" + std::to_string(tr) + " width=" + std::to_string(morse::width(p)) + "\n";
    return out;
}

std::string render_svg(const MorsePresentation& p) {
    const morse::EventTrace t = morse::trace_events(p.events(), 0);
    constexpr int track = 40; // units per strand track
    constexpr int level = 30; // units per level row
    constexpr int margin = 40;

    const int tr = morse::trunk(p);
    const int n_events = static_cast<int>(p.events().size());
    const int svg_w = margin * 2 + track * std::max(tr - 1, 1);
    const int svg_h = margin * 2 + level * n_events + level; // footer row

    const auto x_of = [&](int strand) { return margin + track * strand; };
    // events are drawn top-down: event i sits at row (n_events - 1 - i)
    const auto y_of = [&](int i) { return margin + level * (n_events - 1 - i); };
    const auto num = [](int v) { return std::to_string(v); };

    std::string body;
    const int total_criticals = static_cast<int>(
        std::count_if(p.events().begin(), p.events().end(),
                      [](const MorseEvent& e) { return morse::is_critical(e.kind); }));
    int criticals_seen = 0;
    int width_before = 0;
    for (int i = 0; i < n_events; ++i) {
        const MorseEvent& e = p.events()[i];
        const int y_lo = y_of(i) + level;
        const int y_hi = y_of(i);
        const auto vertical = [&](int strand_from, int strand_to) {
            body += "<line x1=\"" + num(x_of(strand_from)) + "\" y1=\"" + num(y_lo) +
                    "\" x2=\"" + num(x_of(strand_to)) + "\" y2=\"" + num(y_hi) + "\"/>\n";
        };
        switch (e.kind) {
            case EventKind::cup:
                for (int j = 0; j < e.position; ++j) vertical(j, j);
                for (int j = e.position; j < width_before; ++j) vertical(j, j + 2);
                body += "<path d=\"M " + num(x_of(e.position)) + " " + num(y_hi) + " Q " +
                        num(x_of(e.position) + track / 2) + " " + num(y_lo + level / 2) + " " +
                        num(x_of(e.position + 1)) + " " + num(y_hi) + "\"/>\n";
                break;
            case EventKind::cap:
                for (int j = 0; j < e.position; ++j) vertical(j, j);
                for (int j = e.position + 2; j < width_before; ++j) vertical(j, j - 2);
                body += "<path d=\"M " + num(x_of(e.position)) + " " + num(y_lo) + " Q " +
                        num(x_of(e.position) + track / 2) + " " + num(y_hi - level / 2) + " " +
                        num(x_of(e.position + 1)) + " " + num(y_lo) + "\"/>\n";
                break;
            case EventKind::cross_pos:
            case EventKind::cross_neg: {
                for (int j = 0; j < width_before; ++j)
                    if (j != e.position && j != e.position + 1) vertical(j, j);
                const bool pos = e.kind == EventKind::cross_pos;
                // over strand full, under strand broken in the middle
                const int xa = x_of(e.position), xb = x_of(e.position + 1);
                const int over_from = pos ? xa : xb, over_to = pos ? xb : xa;
                const int under_from = pos ? xb : xa, under_to = pos ? xa : xb;
                body += "<line x1=\"" + num(over_from) + "\" y1=\"" + num(y_lo) + "\" x2=\"" +
                        num(over_to) + "\" y2=\"" + num(y_hi) + "\"/>\n";
                // under strand broken around the crossing point
                body += "<line x1=\"" + num(under_from) + "\" y1=\"" + num(y_lo) + "\" x2=\"" +
                        num(under_from + (under_to - under_from) * 3 / 8) + "\" y2=\"" +
                        num(y_lo + (y_hi - y_lo) * 3 / 8) + "\"/>\n";
                body += "<line x1=\"" + num(under_to + (under_from - under_to) * 3 / 8) +
                        "\" y1=\"" + num(y_hi + (y_lo - y_hi) * 3 / 8) + "\" x2=\"" + num(under_to) +
                        "\" y2=\"" + num(y_hi) + "\"/>\n";
                break;
            }
        }
        const int width_after = t.width_after[i];
        if (morse::is_critical(e.kind)) {
            ++criticals_seen;
            if (criticals_seen < total_criticals)
                body += "<text fill=\"black\" x=\"" + num(svg_w - margin + 8) + "\" y=\"" +
                        num(y_hi + 4) + "\">w=" + num(width_after) + "</text>\n";
        }
        width_before = width_after;
    }
    body += "<text fill=\"black\" x=\"" + num(margin) + "\" y=\"" + num(svg_h - 10) + "\">trunk=" +
            num(tr) + " width=" + num(morse::width(p)) + "</text>\n";

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(svg_w + 80) +
                      "\" height=\"" + num(svg_h) + "\">\n<g fill=\"none\" stroke=\"black\" font-size=\"12\">\n";
    out += body;
    out += "</g>\n</svg>\n";
    return out;
}

} // namespace trunkkit::render
