#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trunkkit/arrangement.hpp"

namespace trunkkit::arrangement {

// Arrangement-shaped tree with labelling: circles flagged essential (`!`
// suffix), pieces flagged relevant (`*` prefix).  A non-root piece's outer
// circle is flagged by a `!` suffix on the piece itself.  Configurations are
// raw labelled data; arrangement validity does not apply to them.
struct PieceConfiguration {
    Piece root;
};

PieceConfiguration parse_configuration(std::string_view text);
std::string serialize(const PieceConfiguration& c);

// Every relevant piece must have an odd number of essential boundary
// circles (counting its outer circle).  Violations name the piece.
std::vector<Violation> parity_check(const PieceConfiguration& c);

struct AbsorbResult {
    Arrangement out;
    // input piece path -> output piece path, for every kept relevant piece
    std::vector<std::pair<std::string, std::string>> piece_map;
};

// Builds the arrangement carried by a configuration:
//   - drops relevant pieces having a unique essential circle and a unique
//     pseudo-essential circle (an inessential circle whose far disk holds
//     another relevant piece), and all irrelevant pieces;
//   - glues every inessential circle of a kept piece whose far disk holds no
//     kept piece;
//   - validates the result and reports failures with tree paths.
AbsorbResult absorb(const PieceConfiguration& c);

} // namespace trunkkit::arrangement
