#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "trunkkit/morse.hpp"
#include "trunkkit/rational.hpp"

namespace trunkkit::bounds {

// Certified class-level data for one satellite construction.  Class trunks
// are minimums over all embeddings and are out of computational reach, so
// they ship as provenanced inputs rather than computed values.
struct CertifiedDatum {
    std::string name;
    int trunk_j = 0;               // certified trunk of the companion class
    int winding_n = 0;
    int wrapping_m = 0;            // certified true wrapping number
    std::map<int, int> mu_values;  // a -> mu(a), optional
    std::string provenance;

    // m >= n; mu non-increasing; mu(1) == m when given.
    void check() const;
};

std::vector<CertifiedDatum> parse_certified(std::string_view text);
std::string serialize(const std::vector<CertifiedDatum>& data);

// A presentation trunk is an upper witness for the class trunk, so an audit
// can only detect contradictions (witness below the certified lower bound),
// never confirm tightness.
struct AuditReport {
    std::string theorem;
    Rational bound;
    bool strict = false;           // bound must be exceeded, not just met
    int presentation_trunk = 0;
    int presentation_width = 0;    // reported for reference, never judged
    bool consistent = false;
    Rational margin;               // trunk - bound
    std::string warning;
    std::vector<std::string> notes;

    std::string verdict() const { return consistent ? "consistent" : "CONTRADICTION"; }
    std::string to_text() const;
    std::string to_kv() const;
};

// tr(K) >= n * tr(J)
AuditReport audit_winding(const morse::MorsePresentation& sat, const CertifiedDatum& d);

// tr(K) > m * tr(J) / 2, strict
AuditReport audit_wrapping(const morse::MorsePresentation& sat, const CertifiedDatum& d);

// tr(K) >= (m + mu) * tr(J) / 2 with n <= mu <= m; also reports the weaker
// (m + n) / 2 and mu * tr(J) bounds and checks the implication chain.
AuditReport audit_combined(const morse::MorsePresentation& sat, const CertifiedDatum& d,
                           Rational mu);

} // namespace trunkkit::bounds
