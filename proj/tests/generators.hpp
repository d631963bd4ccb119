#pragma once

// Seeded generators shared by the unit and acceptance suites.

#include <functional>
#include <random>
#include <vector>

#include "trunkkit/arrangement.hpp"
#include "trunkkit/configuration.hpp"
#include "trunkkit/morse.hpp"
#include "trunkkit/pattern.hpp"

namespace testgen {

using trunkkit::arrangement::Arrangement;
using trunkkit::arrangement::Circle;
using trunkkit::arrangement::Move;
using trunkkit::arrangement::MoveKind;
using trunkkit::arrangement::Piece;
using trunkkit::arrangement::PieceConfiguration;
using trunkkit::arrangement::Threshold;
using trunkkit::arrangement::TreePath;
using trunkkit::morse::EventKind;
using trunkkit::morse::MorseEvent;
using trunkkit::morse::MorsePresentation;

// Random knot word: grow the unknot by zigzag fingers and crossings that
// keep the diagram a one-component knot.
inline MorsePresentation random_knot(std::mt19937& rng, int ops) {
    MorsePresentation p = trunkkit::morse::parse_morse("cup 0\ncap 0\n");
    for (int k = 0; k < ops; ++k) {
        const auto lp = trunkkit::morse::level_profile(p);
        std::uniform_int_distribution<int> level_dist(0, static_cast<int>(lp.widths.size()) - 1);
        const int level = level_dist(rng);
        const int w = lp.widths[level];
        if (rng() % 2 == 0) {
            std::uniform_int_distribution<int> pos_dist(0, w - 1);
            p = trunkkit::morse::insert_finger(p, level, pos_dist(rng));
        } else if (w >= 2) {
            // splice a crossing right after the level opens; retry on
            // component split
            std::uniform_int_distribution<int> pos_dist(0, w - 2);
            const MorseEvent cross{rng() % 2 == 0 ? EventKind::cross_pos : EventKind::cross_neg,
                                   pos_dist(rng)};
            std::vector<MorseEvent> events = p.events();
            int criticals = 0;
            std::size_t at = events.size();
            for (std::size_t i = 0; i < events.size(); ++i) {
                if (trunkkit::morse::is_critical(events[i].kind)) {
                    if (criticals == level) { at = i + 1; break; }
                    ++criticals;
                }
            }
            events.insert(events.begin() + at, cross);
            if (trunkkit::morse::component_count(events) == 1)
                p = MorsePresentation::from_events(std::move(events));
        }
    }
    return p;
}

// Random tangle whose bottom-to-top permutation is an n-cycle, so splicing it
// into an n-cable always closes up into a knot.
inline trunkkit::pattern::CylinderTangle random_cyclic_tangle(std::mt19937& rng, int n, int ops) {
    std::vector<MorseEvent> events;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;

    const auto cross = [&](int pos, EventKind kind) {
        events.push_back({kind, pos});
        std::swap(perm[pos], perm[pos + 1]);
    };

    for (int k = 0; k < ops && n >= 2; ++k) {
        std::uniform_int_distribution<int> pos_dist(0, n - 2);
        cross(pos_dist(rng), rng() % 2 == 0 ? EventKind::cross_pos : EventKind::cross_neg);
    }
    // steer the permutation to the cyclic shift (bubble into place)
    for (int target = n - 1; target >= 1; --target) {
        const int want = (target + n - 1) % n;
        int at = -1;
        for (int i = 0; i <= target; ++i)
            if (perm[i] == want) at = i;
        for (int i = at; i < target; ++i) cross(i, EventKind::cross_pos);
    }
    std::vector<int> signs(n, 1);
    return trunkkit::pattern::CylinderTangle::make(n, std::move(signs), std::move(events));
}

// Random valid arrangement built by moves; piece count stays <= max_pieces.
inline Arrangement random_arrangement(std::mt19937& rng, Threshold t, int max_pieces,
                                      std::vector<trunkkit::arrangement::Move>* applied = nullptr) {
    Arrangement a = trunkkit::arrangement::two_disk();
    long long y = 2;
    const int moves = std::uniform_int_distribution<int>(0, 2 * max_pieces)(rng);
    for (int k = 0; k < moves; ++k) {
        std::vector<TreePath> circles, disks;
        TreePath path;
        const std::function<void(const Piece&, TreePath&)> walk = [&](const Piece& p, TreePath& at) {
            if (static_cast<int>(p.circles.size()) + (at.empty() ? 0 : 1) == 1)
                disks.push_back(at);
            for (std::size_t c = 0; c < p.circles.size(); ++c) {
                at.push_back(static_cast<int>(c));
                circles.push_back(at);
                for (std::size_t q = 0; q < p.circles[c].children.size(); ++q) {
                    at.push_back(static_cast<int>(q));
                    walk(p.circles[c].children[q], at);
                    at.pop_back();
                }
                at.pop_back();
            }
        };
        walk(a.root, path);

        Move m;
        if (rng() % 2 == 0 && y + 1 <= max_pieces) {
            m.kind = MoveKind::add_disk;
            m.target = circles[rng() % circles.size()];
        } else {
            std::vector<int> choices;
            for (int s = 2; s <= t.a + 4 && y + s - 1 <= max_pieces; ++s)
                if (s != t.a + 1) choices.push_back(s);
            if (choices.empty() || disks.empty()) continue;
            m.kind = MoveKind::inflate;
            m.target = disks[rng() % disks.size()];
            m.s = choices[rng() % choices.size()];
        }
        a = trunkkit::arrangement::apply_move(a, m, t);
        const auto [dx, dy] = trunkkit::arrangement::move_delta(m, t);
        (void)dx;
        y += dy;
        if (applied) applied->push_back(m);
    }
    return a;
}

// Decorates a valid base arrangement (a=1) into a configuration that absorb
// can process: all base pieces relevant with odd essential subsets, plus
// injected glue fodder (irrelevant content under fresh inessential circles)
// and excluded-piece gadgets.
inline PieceConfiguration random_configuration(std::mt19937& rng, int max_pieces) {
    Arrangement base = random_arrangement(rng, Threshold{}, max_pieces);

    const std::function<void(Piece&, bool)> decorate = [&](Piece& p, bool is_root) {
        p.relevant = true;
        // choose an odd number of essential boundary circles
        std::vector<bool*> flags;
        if (!is_root) flags.push_back(&p.outer_essential);
        for (Circle& c : p.circles) flags.push_back(&c.essential);
        const int b = static_cast<int>(flags.size());
        int odd = 1 + 2 * static_cast<int>(rng() % ((b + 1) / 2));
        if (odd > b) odd = b % 2 == 1 ? b : b - 1;
        for (int i = 0; i < b; ++i) {
            const int remaining = b - i;
            const bool take = static_cast<int>(rng() % remaining) < odd;
            *flags[i] = take;
            if (take) --odd;
        }
        for (Circle& c : p.circles)
            for (Piece& q : c.children) decorate(q, false);
    };
    decorate(base.root, true);

    // excluded gadget: relevant piece with essential outer and one inessential
    // circle holding a relevant disk with essential outer; the host circle
    // keeps its kept content, so the gadget dissolves into one extra disk
    const int gadgets = static_cast<int>(rng() % 3);
    for (int k = 0; k < gadgets; ++k) {
        std::vector<Circle*> circles;
        const std::function<void(Piece&)> collect = [&](Piece& p) {
            for (Circle& c : p.circles) {
                circles.push_back(&c);
                for (Piece& q : c.children) collect(q);
            }
        };
        collect(base.root);
        if (circles.empty()) break;
        Circle* host = circles[rng() % circles.size()];
        Piece y;
        y.relevant = true;
        y.outer_essential = true;
        Circle inner;
        inner.children.push_back(y);
        inner.essential = false;
        Piece x;
        x.relevant = true;
        x.outer_essential = true;
        x.circles.push_back(inner);
        host->children.push_back(x);
    }

    // glue fodder: fresh inessential circles holding only irrelevant disks,
    // added last so nothing kept ever lands beneath them
    const std::function<Piece*(Piece&, int&)> pick_piece = [&](Piece& p, int& countdown) -> Piece* {
        if (countdown-- == 0) return &p;
        for (Circle& c : p.circles)
            for (Piece& q : c.children)
                if (Piece* hit = pick_piece(q, countdown)) return hit;
        return nullptr;
    };
    const auto piece_total = [&]() {
        return static_cast<int>(trunkkit::arrangement::piece_count(base));
    };
    const int fodder = static_cast<int>(rng() % 3);
    for (int k = 0; k < fodder; ++k) {
        int countdown = static_cast<int>(rng()) % piece_total();
        if (countdown < 0) countdown = -countdown;
        Piece* host = pick_piece(base.root, countdown);
        Circle extra;
        Piece junk;
        junk.relevant = false;
        extra.children.push_back(junk);
        extra.essential = false;
        host->circles.push_back(extra);
    }

    // retag: parse-time tags must be unique for absorb's correspondence
    int next_tag = 0;
    const std::function<void(Piece&)> retag = [&](Piece& p) {
        p.tag = next_tag++;
        for (Circle& c : p.circles)
            for (Piece& q : c.children) retag(q);
    };
    retag(base.root);
    return PieceConfiguration{base.root};
}

} // namespace testgen
