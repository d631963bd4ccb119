#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "generators.hpp"
#include "trunkkit/morse.hpp"

using namespace trunkkit;
using morse::EventKind;
using morse::MorseEvent;
using morse::MorsePresentation;

namespace {

const char* kTrefoil = "cup 0\ncup 2\nx+ 1\nx+ 1\nx+ 1\ncap 1\ncap 0\n";

// Independent component oracle: simulate strands with explicit labels and
// global relabelling on caps, no union-find.
int oracle_components(const std::vector<MorseEvent>& events) {
    std::vector<int> strands;
    int next_label = 0;
    int live_labels = 0;
    for (const MorseEvent& e : events) {
        switch (e.kind) {
            case EventKind::cup:
                strands.insert(strands.begin() + e.position, 2, next_label++);
                ++live_labels;
                break;
            case EventKind::cap: {
                const int a = strands[e.position], b = strands[e.position + 1];
                strands.erase(strands.begin() + e.position, strands.begin() + e.position + 2);
                if (a != b) {
                    for (int& s : strands)
                        if (s == b) s = a;
                    --live_labels; // b's arc joined a's; one component fewer open
                }
                // a == b closes a component; the count of closed circles is
                // what remains in live_labels at the end
                break;
            }
            case EventKind::cross_pos:
            case EventKind::cross_neg:
                std::swap(strands[e.position], strands[e.position + 1]);
                break;
        }
    }
    return live_labels;
}

} // namespace

TEST_CASE("parsing the smallest closed diagram") {
    const auto p = morse::parse_morse("cup 0\ncap 0\n");
    CHECK(p.events().size() == 2);
    CHECK(morse::level_profile(p).widths == std::vector<int>{2});
    CHECK(morse::width(p) == 2);
    CHECK(morse::trunk(p) == 2);
}

TEST_CASE("trefoil word: seven events, one component, profile 2/4/2") {
    const auto p = morse::parse_morse(kTrefoil);
    CHECK(p.events().size() == 7);
    CHECK(oracle_components(p.events()) == 1);
    CHECK(morse::level_profile(p).widths == std::vector<int>{2, 4, 2});
    CHECK(morse::width(p) == 8);
    CHECK(morse::trunk(p) == 4);
}

TEST_CASE("two-component word is rejected with the count") {
    // the second cup's arc closes on itself
    const char* link = "cup 0\ncup 1\nx+ 1\nx+ 1\nx+ 1\ncap 1\ncap 0\n";
    {
        std::vector<MorseEvent> events{{EventKind::cup, 0}, {EventKind::cup, 1},
                                       {EventKind::cross_pos, 1}, {EventKind::cross_pos, 1},
                                       {EventKind::cross_pos, 1}, {EventKind::cap, 1},
                                       {EventKind::cap, 0}};
        CHECK(oracle_components(events) == 2);
    }
    CHECK_THROWS_WITH_AS(morse::parse_morse(link), doctest::Contains("component count 2"), error);
}

TEST_CASE("crossings are not critical points") {
    const auto with = morse::parse_morse(kTrefoil);
    const auto without = morse::parse_morse("cup 0\ncup 2\ncap 1\ncap 0\n");
    CHECK(morse::level_profile(with).widths == morse::level_profile(without).widths);
}

TEST_CASE("syntax and strand-count diagnostics") {
    CHECK_THROWS_AS(morse::parse_morse("cup 0\nfoo 1\n"), parse_error);
    CHECK_THROWS_AS(morse::parse_morse("cup\n"), parse_error);
    CHECK_THROWS_AS(morse::parse_morse("cup 0 junk\n"), parse_error);
    CHECK_THROWS_AS(morse::parse_morse(""), error);
    CHECK_THROWS_AS(morse::parse_morse("# only a comment\n"), error);
    // cap with no strands, on line 1
    try {
        morse::parse_morse("cap 0\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line == 1);
    }
    // cup out of range on line 2
    try {
        morse::parse_morse("cup 0\ncup 5\ncap 0\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line == 2);
    }
    // open diagram: strand count does not return to zero
    CHECK_THROWS_AS(morse::parse_morse("cup 0\ncup 0\ncap 0\n"), error);
}

TEST_CASE("line and column positions in syntax errors") {
    try {
        morse::parse_morse("cup 0\n  bogus 3\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 3);
    }
}

TEST_CASE("serialize round-trips and is newline-terminated") {
    const auto p = morse::parse_morse("  cup 0   # comment\n\ncup 2\nx- 1\nx+ 1\nx- 1\ncap 1\ncap 0");
    const std::string text = morse::serialize(p);
    CHECK(text == "cup 0\ncup 2\nx- 1\nx+ 1\nx- 1\ncap 1\ncap 0\n");
    CHECK(morse::parse_morse(text) == p);
}

TEST_CASE("property: width is the sum and trunk the max of the profile, both even") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 120; ++trial) {
        const auto p = testgen::random_knot(rng, static_cast<int>(rng() % 10));
        const auto lp = morse::level_profile(p);
        CHECK(static_cast<int>(lp.widths.size()) + 1 ==
              static_cast<int>(std::count_if(p.events().begin(), p.events().end(),
                                             [](const MorseEvent& e) { return morse::is_critical(e.kind); })));
        int sum = 0, mx = 0;
        for (int w : lp.widths) {
            CHECK(w % 2 == 0);
            CHECK(w >= 2);
            sum += w;
            mx = std::max(mx, w);
        }
        CHECK(morse::width(p) == sum);
        CHECK(morse::trunk(p) == mx);
        // parse . serialize = identity
        CHECK(morse::parse_morse(morse::serialize(p)) == p);
    }
}

TEST_CASE("property: component count is blind to crossing signs") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const auto p = testgen::random_knot(rng, static_cast<int>(rng() % 12));
        std::vector<MorseEvent> flipped = p.events();
        for (MorseEvent& e : flipped) {
            if (e.kind == EventKind::cross_pos && rng() % 2 == 0) e.kind = EventKind::cross_neg;
            else if (e.kind == EventKind::cross_neg && rng() % 2 == 0) e.kind = EventKind::cross_pos;
        }
        CHECK(morse::component_count(flipped) == 1);
        CHECK(oracle_components(flipped) == 1);
    }
}

TEST_CASE("connected sums of the shipped knots") {
    const auto unknot = morse::parse_morse("cup 0\ncap 0\n");
    const auto trefoil = morse::parse_morse(kTrefoil);

    const auto uu = morse::connected_sum(unknot, unknot);
    CHECK(morse::width(uu) == 2);
    CHECK(morse::trunk(uu) == 2);

    const auto tt = morse::connected_sum(trefoil, trefoil);
    CHECK(morse::width(tt) == 14);
    CHECK(morse::trunk(tt) == 4);

    const auto tu = morse::connected_sum(trefoil, unknot);
    CHECK(morse::width(tu) == 8);
    CHECK(morse::trunk(tu) == 4);
}

TEST_CASE("property: connected sum realizes trunk max and width sum minus two") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 80; ++trial) {
        const auto p = testgen::random_knot(rng, static_cast<int>(rng() % 8));
        const auto q = testgen::random_knot(rng, static_cast<int>(rng() % 8));
        const auto s = morse::connected_sum(p, q);
        CHECK(morse::trunk(s) == std::max(morse::trunk(p), morse::trunk(q)));
        CHECK(morse::width(s) == morse::width(p) + morse::width(q) - 2);
        CHECK(oracle_components(s.events()) == 1);
    }
}

TEST_CASE("finger insertion widens one level and never shrinks the trunk") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 80; ++trial) {
        const auto p = testgen::random_knot(rng, static_cast<int>(rng() % 8));
        const auto lp = morse::level_profile(p);
        const int level = static_cast<int>(rng() % lp.widths.size());
        const int w = lp.widths[level];
        const int pos = static_cast<int>(rng() % w);
        const auto q = morse::insert_finger(p, level, pos);
        // the level splits into w, w+2, w
        CHECK(morse::width(q) == morse::width(p) + 2 * (w + 1));
        CHECK(morse::trunk(q) >= morse::trunk(p));
        if (w == morse::trunk(p))
            CHECK(morse::trunk(q) == morse::trunk(p) + 2);
        else
            CHECK(morse::trunk(q) == morse::trunk(p));
        CHECK(oracle_components(q.events()) == 1);
    }
}

TEST_CASE("finger insertion argument checks") {
    const auto p = morse::parse_morse(kTrefoil);
    CHECK_THROWS_AS(morse::insert_finger(p, 3, 0), error);
    CHECK_THROWS_AS(morse::insert_finger(p, 0, 2), error);
}
