#include "trunkkit/bounds.hpp"

#include <algorithm>

namespace trunkkit::bounds {

void CertifiedDatum::check() const {
    if (name.empty()) throw error("certified datum needs a name");
    if (trunk_j < 2) throw error(name + ": companion trunk must be >= 2");
    if (wrapping_m < 1) throw error(name + ": wrapping number must be >= 1 (patterns meet every meridian disk)");
    if (wrapping_m < winding_n)
        throw error(name + ": wrapping m = " + std::to_string(wrapping_m) +
                    " below winding n = " + std::to_string(winding_n));
    int prev_a = 0, prev_mu = 0;
    bool first = true;
    for (const auto& [a, mu] : mu_values) {
        if (a < 1 || a % 2 == 0) throw error(name + ": mu indices must be odd positive");
        if (!first && mu > prev_mu)
            throw error(name + ": mu(" + std::to_string(a) + ") = " + std::to_string(mu) +
                        " exceeds mu(" + std::to_string(prev_a) + ") = " + std::to_string(prev_mu) +
                        "; mu must be non-increasing");
        prev_a = a;
        prev_mu = mu;
        first = false;
    }
    if (auto it = mu_values.find(1); it != mu_values.end() && it->second != wrapping_m)
        throw error(name + ": mu(1) = " + std::to_string(it->second) + " must equal m = " +
                    std::to_string(wrapping_m));
}

std::vector<CertifiedDatum> parse_certified(std::string_view text) {
    std::vector<CertifiedDatum> out;
    CertifiedDatum cur;
    bool open = false;
    int line_no = 0;

    const auto flush = [&] {
        if (!open) return;
        cur.check();
        out.push_back(std::move(cur));
        cur = CertifiedDatum{};
        open = false;
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.remove_suffix(1);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
            line.remove_prefix(1);

        if (!line.empty()) {
            const std::size_t eq = line.find('=');
            if (eq == std::string_view::npos)
                throw parse_error("expected key=value", line_no, 1);
            const std::string key(line.substr(0, eq));
            const std::string value(line.substr(eq + 1));
            const auto as_int = [&](const std::string& v) {
                try {
                    std::size_t used = 0;
                    const int n = std::stoi(v, &used);
                    if (used != v.size()) throw std::invalid_argument(v);
                    return n;
                } catch (const std::exception&) {
                    throw parse_error("bad integer '" + v + "' for key " + key, line_no, static_cast<int>(eq + 2));
                }
            };
            if (key == "name") {
                flush();
                cur.name = value;
                open = true;
            } else if (!open) {
                throw parse_error("key '" + key + "' before any name=", line_no, 1);
            } else if (key == "trJ") {
                cur.trunk_j = as_int(value);
            } else if (key == "n") {
                cur.winding_n = as_int(value);
            } else if (key == "m") {
                cur.wrapping_m = as_int(value);
            } else if (key == "provenance") {
                cur.provenance = value;
            } else if (key.rfind("mu.", 0) == 0) {
                int a = 0;
                try {
                    a = std::stoi(key.substr(3));
                } catch (const std::exception&) {
                    throw parse_error("bad mu index in key '" + key + "'", line_no, 1);
                }
                cur.mu_values[a] = as_int(value);
            } else {
                throw parse_error("unknown key '" + key + "'", line_no, 1);
            }
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    flush();
    return out;
}

std::string serialize(const std::vector<CertifiedDatum>& data) {
    std::string out;
    for (const CertifiedDatum& d : data) {
        out += "name=" + d.name + "\n";
        out += "trJ=" + std::to_string(d.trunk_j) + "\n";
        out += "n=" + std::to_string(d.winding_n) + "\n";
        out += "m=" + std::to_string(d.wrapping_m) + "\n";
        for (const auto& [a, mu] : d.mu_values)
            out += "mu." + std::to_string(a) + "=" + std::to_string(mu) + "\n";
        if (!d.provenance.empty()) out += "provenance=" + d.provenance + "\n";
        out += "\n";
    }
    return out;
}

std::string AuditReport::to_text() const {
    std::string s = theorem + ": bound " + (strict ? "> " : ">= ") + bound.str() + ", witness trunk " +
                    std::to_string(presentation_trunk) + " -> " + verdict() + " (margin " +
                    margin.str() + "; width " + std::to_string(presentation_width) +
                    " for reference)";
    if (!warning.empty()) s += "\n  warning: " + warning;
    for (const std::string& n : notes) s += "\n  note: " + n;
    s += "\n  a presentation trunk only witnesses the class trunk from above; audits detect contradictions, not tightness";
    return s;
}

std::string AuditReport::to_kv() const {
    std::string s = "theorem=" + theorem + " bound=" + bound.str() + " strict=" +
                    (strict ? "1" : "0") + " trunk=" + std::to_string(presentation_trunk) +
                    " width=" + std::to_string(presentation_width) + " verdict=" + verdict() +
                    " margin=" + margin.str();
    if (!warning.empty()) s += " warning=\"" + warning + "\"";
    return s;
}

namespace {

AuditReport make_report(std::string theorem, Rational bound, bool strict,
                        const morse::MorsePresentation& sat, const CertifiedDatum& d) {
    AuditReport r;
    r.theorem = std::move(theorem);
    r.bound = bound;
    r.strict = strict;
    r.presentation_trunk = morse::trunk(sat);
    r.presentation_width = morse::width(sat);
    const Rational tr(r.presentation_trunk);
    r.consistent = strict ? tr > bound : tr >= bound;
    r.margin = tr - bound;
    if (d.trunk_j <= 2)
        r.warning = "companion trunk " + std::to_string(d.trunk_j) +
                    " means a trivial companion; the theorems assume a non-trivial one";
    return r;
}

} // namespace

AuditReport audit_winding(const morse::MorsePresentation& sat, const CertifiedDatum& d) {
    d.check();
    return make_report("trunk_winding", Rational(static_cast<long long>(d.winding_n) * d.trunk_j),
                       false, sat, d);
}

AuditReport audit_wrapping(const morse::MorsePresentation& sat, const CertifiedDatum& d) {
    d.check();
    return make_report("trunk_wrapping",
                       Rational(static_cast<long long>(d.wrapping_m) * d.trunk_j, 2), true, sat, d);
}

AuditReport audit_combined(const morse::MorsePresentation& sat, const CertifiedDatum& d,
                           Rational mu) {
    d.check();
    if (mu < Rational(d.winding_n) || mu > Rational(d.wrapping_m))
        throw error(d.name + ": mu = " + mu.str() + " outside [n, m] = [" +
                    std::to_string(d.winding_n) + ", " + std::to_string(d.wrapping_m) + "]");

    const Rational trj(d.trunk_j);
    const Rational half(1, 2);
    const Rational combined = (Rational(d.wrapping_m) + mu) * half * trj;
    const Rational weaker = Rational(d.wrapping_m + d.winding_n, 2) * trj;
    const Rational mu_bound = mu * trj;

    AuditReport r = make_report("trunk_combined", combined, false, sat, d);
    if (combined < weaker || combined < mu_bound)
        throw error(d.name + ": implication chain broken (combined bound below a weaker bound)");
    r.notes.push_back("weaker bounds also implied: (m+n)/2 * trJ = " + weaker.str() +
                      ", mu * trJ = " + mu_bound.str());
    return r;
}

} // namespace trunkkit::bounds
