#include "trunkkit/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "trunkkit/arrangement.hpp"
#include "trunkkit/bounds.hpp"
#include "trunkkit/configuration.hpp"
#include "trunkkit/morse.hpp"
#include "trunkkit/pattern.hpp"
#include "trunkkit/render.hpp"

namespace trunkkit::cli {

namespace {

using json = nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string int_list_str(const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s + "]";
}

json knot_json(const morse::MorsePresentation& p) {
    const morse::LevelProfile lp = morse::level_profile(p);
    return json{{"width", lp.width()}, {"trunk", lp.trunk()}, {"profile", lp.widths}};
}

void emit_knot_line(std::ostream& out, const morse::MorsePresentation& p) {
    const morse::LevelProfile lp = morse::level_profile(p);
    out << "width=" << lp.width() << " trunk=" << lp.trunk()
        << " profile=" << int_list_str(lp.widths) << "\n";
}

std::string move_str(const arrangement::Move& m) {
    using arrangement::MoveKind;
    switch (m.kind) {
        case MoveKind::add_disk: return "add-disk target=" + arrangement::path_str(m.target);
        case MoveKind::reverse_add_disk:
            return "reverse-add-disk target=" + arrangement::path_str(m.target);
        case MoveKind::inflate:
            return "inflate target=" + arrangement::path_str(m.target) + " s=" + std::to_string(m.s);
        case MoveKind::reverse_inflate:
            return "reverse-inflate target=" + arrangement::path_str(m.target) +
                   " s=" + std::to_string(m.s);
    }
    return "?";
}

std::size_t default_max_set() {
    if (const char* env = std::getenv("TRUNKKIT_MAX_SET")) {
        const long long v = std::atoll(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 4u << 20;
}

struct Options {
    bool json_mode = false;
    bool word = false;
    bool kv = false;
    bool quiet = false;
    int a = 1;
    int n = 1;
    int level = 0;
    int steps = 0;
    int max = 2;
    int threads = 1;
    unsigned long long seed = 0;
    std::size_t max_set = default_max_set();
    std::string file, file2, data_file, name;
    std::string format = "ascii";
    double mu = -1.0;
    bool check_lambda = false;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"trunkkit: Morse knot invariants, satellites, and sphere arrangements"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--seed", o.seed, "seed for randomized helpers (all commands are deterministic)");

    const auto add_json = [&](CLI::App* cmd) { cmd->add_flag("--json", o.json_mode, "structured output"); };

    CLI::App* c_inv = app.add_subcommand("invariants", "width, trunk, and level profile of a knot");
    c_inv->add_option("file", o.file, "input .morse file")->required();
    add_json(c_inv);

    CLI::App* c_connect = app.add_subcommand("connect", "connected sum of two knots");
    c_connect->add_option("left", o.file)->required();
    c_connect->add_option("right", o.file2)->required();
    c_connect->add_flag("--word", o.word, "print the resulting Morse word");
    add_json(c_connect);

    CLI::App* c_cable = app.add_subcommand("cable", "n-cable of a knot (open diagram)");
    c_cable->add_option("file", o.file)->required();
    c_cable->add_option("--n", o.n, "cable strand count")->required();
    c_cable->add_flag("--word", o.word, "print the cabled event word");
    add_json(c_cable);

    CLI::App* c_sat = app.add_subcommand("satellite", "satellite knot from companion and tangle");
    c_sat->add_option("companion", o.file)->required();
    c_sat->add_option("pattern", o.file2)->required();
    c_sat->add_option("--level", o.level, "regular level receiving the pattern")->required();
    c_sat->add_flag("--word", o.word, "print the resulting Morse word");
    add_json(c_sat);

    CLI::App* c_verify = app.add_subcommand("arr-verify", "validate an arrangement");
    c_verify->add_option("file", o.file)->required();
    c_verify->add_option("--a", o.a, "odd threshold (default 1)");
    add_json(c_verify);

    CLI::App* c_lambda = app.add_subcommand("arr-lambda", "exact check of x/y > a/(a+1)");
    c_lambda->add_option("file", o.file)->required();
    c_lambda->add_option("--a", o.a, "odd threshold (default 1)");
    add_json(c_lambda);

    CLI::App* c_enum = app.add_subcommand("arr-enumerate", "all arrangements up to a piece budget");
    c_enum->add_option("--max", o.max, "piece budget")->required();
    c_enum->add_option("--a", o.a, "odd threshold (default 1)");
    c_enum->add_option("--threads", o.threads, "worker threads");
    c_enum->add_option("--max-set", o.max_set, "dedup set cap (or env TRUNKKIT_MAX_SET)");
    c_enum->add_flag("--check-lambda", o.check_lambda, "check the ratio bound on every member");
    c_enum->add_flag("--quiet", o.quiet, "suppress the canonical-form stream");
    add_json(c_enum);

    CLI::App* c_dec = app.add_subcommand("arr-deconstruct", "reduce an arrangement to two disks");
    c_dec->add_option("file", o.file)->required();
    c_dec->add_option("--a", o.a, "odd threshold (default 1)");
    add_json(c_dec);

    CLI::App* c_ext = app.add_subcommand("arr-extremal", "ratio sequence of the extremal move chain");
    c_ext->add_option("--a", o.a, "odd threshold (default 1)");
    c_ext->add_option("--steps", o.steps, "number of inflate(a+2) steps")->required();
    add_json(c_ext);

    CLI::App* c_abs = app.add_subcommand("arr-absorb", "arrangement carried by a configuration");
    c_abs->add_option("file", o.file)->required();
    add_json(c_abs);

    CLI::App* c_audit = app.add_subcommand("audit", "check trunk bounds against certified data");
    c_audit->add_option("file", o.file, "satellite .morse file")->required();
    c_audit->add_option("--data", o.data_file, "certified data file")->required();
    c_audit->add_option("--name", o.name, "datum name")->required();
    c_audit->add_option("--mu", o.mu, "mu value for the combined bound (half-integer resolution)");
    c_audit->add_flag("--kv", o.kv, "machine-readable key-value lines");
    add_json(c_audit);

    CLI::App* c_render = app.add_subcommand("render", "level diagram of a knot");
    c_render->add_option("file", o.file)->required();
    c_render->add_option("--format", o.format, "ascii or svg")->check(CLI::IsMember({"ascii", "svg"}));

    std::vector<const char*> argv;
    argv.push_back("trunkkit");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*c_inv) {
            const auto p = morse::parse_morse(read_file(o.file));
            if (o.json_mode) {
                json j = knot_json(p);
                j["command"] = "invariants";
                out << j.dump() << "\n";
            } else {
                emit_knot_line(out, p);
            }
            return 0;
        }

        if (*c_connect) {
            const auto left = morse::parse_morse(read_file(o.file));
            const auto right = morse::parse_morse(read_file(o.file2));
            const auto sum = morse::connected_sum(left, right);
            if (o.json_mode) {
                json j = knot_json(sum);
                j["command"] = "connect";
                j["word"] = morse::serialize(sum);
                out << j.dump() << "\n";
            } else if (o.word) {
                out << morse::serialize(sum);
            } else {
                emit_knot_line(out, sum);
            }
            return 0;
        }

        if (*c_cable) {
            const auto p = morse::parse_morse(read_file(o.file));
            const auto cab = pattern::cable(p, o.n);
            long long crossings = 0;
            for (const auto& e : cab.events)
                if (!morse::is_critical(e.kind)) ++crossings;
            if (o.json_mode) {
                json j{{"command", "cable"}, {"n", cab.n},       {"profile", cab.level_widths},
                       {"width", cab.width()}, {"trunk", cab.trunk()}, {"crossings", crossings}};
                j["word"] = morse::serialize_events(cab.events);
                out << j.dump() << "\n";
            } else if (o.word) {
                out << morse::serialize_events(cab.events);
            } else {
                out << "n=" << cab.n << " profile=" << int_list_str(cab.level_widths)
                    << " width=" << cab.width() << " trunk=" << cab.trunk()
                    << " crossings=" << crossings << "\n";
            }
            return 0;
        }

        if (*c_sat) {
            const auto companion = morse::parse_morse(read_file(o.file));
            const auto tangle = pattern::parse_tangle(read_file(o.file2));
            const auto sat = pattern::satellite(companion, tangle, o.level);
            if (o.json_mode) {
                json j = knot_json(sat);
                j["command"] = "satellite";
                j["winding"] = pattern::winding_number(tangle);
                j["wrapping_upper"] = pattern::presentation_wrapping(tangle);
                j["word"] = morse::serialize(sat);
                out << j.dump() << "\n";
            } else if (o.word) {
                out << morse::serialize(sat);
            } else {
                emit_knot_line(out, sat);
            }
            return 0;
        }

        if (*c_verify) {
            const auto a = arrangement::parse_arrangement(read_file(o.file));
            const auto violations = arrangement::validate(a, arrangement::Threshold(o.a));
            if (o.json_mode) {
                json list = json::array();
                for (const auto& v : violations)
                    list.push_back({{"condition", v.condition}, {"path", v.path}, {"detail", v.detail}});
                out << json{{"command", "arr-verify"}, {"ok", violations.empty()}, {"violations", list}}.dump()
                    << "\n";
            } else if (violations.empty()) {
                out << "ok\n";
            } else {
                for (const auto& v : violations)
                    out << "violation condition=" << v.condition << " at " << v.path << ": "
                        << v.detail << "\n";
            }
            return violations.empty() ? 0 : 1;
        }

        if (*c_lambda) {
            const auto a = arrangement::parse_arrangement(read_file(o.file));
            const arrangement::Threshold t(o.a);
            if (const auto violations = arrangement::validate(a, t); !violations.empty()) {
                err << "not a valid arrangement: condition " << violations.front().condition
                    << " at " << violations.front().path << "\n";
                return 1;
            }
            const auto r = arrangement::check_lambda_bound(a, t);
            if (o.json_mode) {
                out << json{{"command", "arr-lambda"}, {"x", r.x},
                            {"y", r.y},               {"ratio", r.ratio.str()},
                            {"bound", r.bound.str()}, {"pass", r.pass}}
                           .dump()
                    << "\n";
            } else {
                out << "x=" << r.x << " y=" << r.y << " ratio=" << r.ratio.str()
                    << " bound=" << r.bound.str() << (r.pass ? " pass" : " FAIL") << "\n";
            }
            return r.pass ? 0 : 1;
        }

        if (*c_enum) {
            arrangement::EnumerateOptions eo;
            eo.n_max = o.max;
            eo.a = arrangement::Threshold(o.a);
            eo.threads = o.threads;
            eo.max_set = o.max_set;
            const auto all = arrangement::enumerate(eo);
            long long violations = 0;
            for (const std::string& canon : all) {
                if (!o.quiet && !o.json_mode) out << canon << "\n";
                if (o.check_lambda) {
                    const auto a = arrangement::parse_arrangement(canon);
                    if (!arrangement::check_lambda_bound(a, eo.a).pass) {
                        ++violations;
                        if (!o.json_mode) out << "VIOLATION " << canon << "\n";
                    }
                }
            }
            if (o.json_mode) {
                json j{{"command", "arr-enumerate"}, {"count", all.size()}};
                if (o.check_lambda) j["violations"] = violations;
                if (!o.quiet) j["arrangements"] = std::vector<std::string>(all.begin(), all.end());
                out << j.dump() << "\n";
            } else if (o.check_lambda) {
                out << "enumerated=" << all.size() << " violations=" << violations << "\n";
            } else {
                out << "enumerated=" << all.size() << "\n";
            }
            return violations == 0 ? 0 : 1;
        }

        if (*c_dec) {
            const auto a = arrangement::parse_arrangement(read_file(o.file));
            const arrangement::Threshold t(o.a);
            const auto trace = arrangement::deconstruct(a, t);
            const auto rebuilt = arrangement::replay(trace, t);
            const bool ok = arrangement::rooted_canonical(rebuilt) == arrangement::rooted_canonical(a);
            if (!ok) throw error("replay mismatch (internal invariant)");
            if (o.json_mode) {
                json steps = json::array();
                for (const auto& s : trace.steps)
                    steps.push_back({{"move", move_str(s.move)}, {"x", s.x_after}, {"y", s.y_after}});
                out << json{{"command", "arr-deconstruct"},
                            {"steps", steps},
                            {"x_initial", trace.x_initial},
                            {"y_initial", trace.y_initial},
                            {"replay", "ok"}}
                           .dump()
                    << "\n";
            } else {
                for (const auto& s : trace.steps)
                    out << move_str(s.move) << " x=" << s.x_after << " y=" << s.y_after << "\n";
                out << "steps=" << trace.steps.size() << " x=" << trace.x_initial << "->2 y="
                    << trace.y_initial << "->2 replay=ok\n";
            }
            return 0;
        }

        if (*c_ext) {
            const arrangement::Threshold t(o.a);
            const auto seq = arrangement::extremal_sequence(t, o.steps);
            const Rational inf(t.a, t.a + 1);
            if (o.json_mode) {
                std::vector<std::string> values;
                std::vector<long long> xs, ys;
                for (const auto& pt : seq) {
                    values.push_back(pt.value.str());
                    xs.push_back(pt.x);
                    ys.push_back(pt.y);
                }
                out << json{{"command", "arr-extremal"}, {"values", values},      {"x", xs},
                            {"y", ys},                   {"infimum", inf.str()}}
                           .dump()
                    << "\n";
            } else {
                for (std::size_t i = 0; i < seq.size(); ++i)
                    out << (i ? ", " : "") << seq[i].value.str();
                out << " → inf " << inf.str() << "\n";
            }
            return 0;
        }

        if (*c_abs) {
            const auto cfg = arrangement::parse_configuration(read_file(o.file));
            arrangement::AbsorbResult r;
            try {
                r = arrangement::absorb(cfg);
            } catch (const parse_error&) {
                throw;
            } catch (const error& e) {
                err << "violation: " << e.what() << "\n";
                return 1;
            }
            if (o.json_mode) {
                json map = json::array();
                for (const auto& [in_path, out_path] : r.piece_map)
                    map.push_back({{"in", in_path}, {"out", out_path}});
                out << json{{"command", "arr-absorb"},
                            {"arrangement", arrangement::serialize(r.out)},
                            {"map", map}}
                           .dump()
                    << "\n";
            } else {
                out << arrangement::serialize(r.out) << "\n";
                for (const auto& [in_path, out_path] : r.piece_map)
                    out << "map " << in_path << " -> " << out_path << "\n";
            }
            return 0;
        }

        if (*c_audit) {
            const auto sat = morse::parse_morse(read_file(o.file));
            const auto data = bounds::parse_certified(read_file(o.data_file));
            const bounds::CertifiedDatum* datum = nullptr;
            for (const auto& d : data)
                if (d.name == o.name) datum = &d;
            if (!datum) throw error("no datum named '" + o.name + "' in " + o.data_file);

            std::vector<bounds::AuditReport> reports;
            reports.push_back(bounds::audit_winding(sat, *datum));
            reports.push_back(bounds::audit_wrapping(sat, *datum));
            Rational mu(0);
            bool have_mu = false;
            if (o.mu >= 0) {
                mu = Rational(static_cast<long long>(o.mu * 2), 2);
                have_mu = true;
            } else if (!datum->mu_values.empty()) {
                mu = Rational(datum->mu_values.rbegin()->second);
                have_mu = true;
            }
            if (have_mu) reports.push_back(bounds::audit_combined(sat, *datum, mu));

            bool all_consistent = true;
            for (const auto& r : reports) all_consistent = all_consistent && r.consistent;

            if (o.json_mode) {
                json list = json::array();
                for (const auto& r : reports)
                    list.push_back({{"theorem", r.theorem},
                                    {"bound", r.bound.str()},
                                    {"strict", r.strict},
                                    {"trunk", r.presentation_trunk},
                                    {"width", r.presentation_width},
                                    {"verdict", r.verdict()},
                                    {"margin", r.margin.str()},
                                    {"warning", r.warning}});
                out << json{{"command", "audit"}, {"name", o.name}, {"reports", list},
                            {"consistent", all_consistent}}
                           .dump()
                    << "\n";
            } else if (o.kv) {
                for (const auto& r : reports) out << "name=" << o.name << " " << r.to_kv() << "\n";
            } else {
                out << "datum " << o.name << " (trJ=" << datum->trunk_j << " n=" << datum->winding_n
                    << " m=" << datum->wrapping_m << ")\n";
                for (const auto& r : reports) out << r.to_text() << "\n";
            }
            return all_consistent ? 0 : 1;
        }

        if (*c_render) {
            const auto p = morse::parse_morse(read_file(o.file));
            out << (o.format == "svg" ? render::render_svg(p) : render::render_ascii(p));
            return 0;
        }
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    err << "usage error: no subcommand\n";
    return 2;
}

} // namespace trunkkit::cli
