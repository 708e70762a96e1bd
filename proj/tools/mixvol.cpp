// Command-line surface: exact mixed volumes of V-polytopes and the
// Monte Carlo experiments bounding averaged projections by bracketed
// quermassintegrals. Every report embeds its resolved configuration and is
// byte-reproducible from it.
//
// Exit codes: 0 success / bound holds, 2 validation error, 3 kernel error,
// 10 inconclusive, 20 bound violated.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mixvol/json_io.hpp"
#include "mixvol/mixvol.hpp"

namespace {

using namespace mixvol;

constexpr int kExitValidation = 2;
constexpr int kExitKernel = 3;

// --bodies tokens split on top-level commas; `k=`/`m=`/`seed=` fragments
// re-attach to the preceding ball token.
std::vector<std::string> split_body_tokens(const std::string& arg) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (const char ch : arg) {
        if (ch == '(' || ch == '[' || ch == '{') ++depth;
        if (ch == ')' || ch == ']' || ch == '}') --depth;
        if (ch == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    std::vector<std::string> tokens;
    for (const auto& p : parts) {
        const bool continuation = p.rfind("k=", 0) == 0 || p.rfind("m=", 0) == 0 ||
                                  p.rfind("seed=", 0) == 0;
        if (continuation && !tokens.empty())
            tokens.back() += "," + p;
        else
            tokens.push_back(p);
    }
    return tokens;
}

Vec parse_coords(const std::string& text) {
    // (x, y, z) with commas or spaces
    std::string inner = text;
    if (!inner.empty() && inner.front() == '(') inner = inner.substr(1, inner.size() - 2);
    for (char& c : inner)
        if (c == ',') c = ' ';
    Vec out;
    std::istringstream in(inner);
    double x;
    while (in >> x) out.push_back(x);
    if (out.empty()) throw std::invalid_argument("bodies: empty coordinate list in '" + text + "'");
    return out;
}

int parse_trailing_int(const std::string& tok, const std::string& prefix) {
    const std::string digits = tok.substr(prefix.size());
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bodies: malformed token '" + tok + "'");
    return std::stoi(digits);
}

BodySpec parse_body_token(const std::string& tok, int ambient_n) {
    if (tok.empty()) throw std::invalid_argument("bodies: empty token");
    if (tok.front() == '{') {
        Json j = Json::parse(tok, nullptr, true);
        return bodyspec_from_json(j);
    }
    if (tok.rfind("cube", 0) == 0) return cube_spec(parse_trailing_int(tok, "cube"));
    if (tok.rfind("simplex", 0) == 0) return simplex_spec(parse_trailing_int(tok, "simplex"));
    if (tok.rfind("cross", 0) == 0) return cross_spec(parse_trailing_int(tok, "cross"));
    if (tok.rfind("seg:", 0) == 0) {
        const std::string rest = tok.substr(4);
        if (rest.rfind("e", 0) == 0 && rest.find('(') == std::string::npos) {
            const int axis = parse_trailing_int(rest, "e");
            if (ambient_n < 1)
                throw std::invalid_argument("bodies: 'seg:e" + std::to_string(axis) +
                                            "' needs --n for the ambient dimension");
            if (!(1 <= axis && axis <= ambient_n))
                throw std::invalid_argument("bodies: axis out of range in '" + tok + "'");
            Vec e(ambient_n, 0.0);
            e[axis - 1] = 1.0;
            return segment_spec(std::move(e), tok);
        }
        return segment_spec(parse_coords(rest), tok);
    }
    if (tok.rfind("point:", 0) == 0) {
        Vec p = parse_coords(tok.substr(6));
        return BodySpec{BodyKind::point, static_cast<int>(p.size()), std::move(p), 0, 0, tok};
    }
    if (tok.rfind("ball:", 0) == 0) {
        BodySpec spec;
        spec.kind = BodyKind::ball_inscribed;
        spec.label = tok;
        for (const auto& kv : split_body_tokens(tok.substr(5))) {
            // the splitter re-joined "k=..,m=..,seed=.." into one token
            std::istringstream in(kv);
            std::string item;
            while (std::getline(in, item, ',')) {
                if (item.rfind("k=", 0) == 0) spec.dim = std::stoi(item.substr(2));
                else if (item.rfind("m=", 0) == 0) spec.m = std::stoi(item.substr(2));
                else if (item.rfind("seed=", 0) == 0) spec.seed = std::stoull(item.substr(5));
                else throw std::invalid_argument("bodies: malformed ball parameter '" + item + "'");
            }
        }
        if (spec.dim < 1 || spec.m < 1)
            throw std::invalid_argument("bodies: ball token needs k= and m=");
        return spec;
    }
    throw std::invalid_argument("bodies: unrecognized token '" + tok + "'");
}

std::vector<BodySpec> parse_bodies_arg(const std::string& arg, int ambient_n,
                                       std::vector<std::string>& tokens_echo) {
    if (arg.empty()) throw std::invalid_argument("bodies: --bodies is required");
    std::vector<BodySpec> specs;
    if (arg.front() == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw std::invalid_argument("bodies: cannot read file '" + arg.substr(1) + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        Json j = Json::parse(buf.str());
        if (!j.is_array()) throw std::invalid_argument("bodies: file must hold a JSON array");
        for (const auto& b : j) specs.push_back(bodyspec_from_json(b));
        tokens_echo.push_back(arg);
        return specs;
    }
    if (arg.front() == '[') {
        Json j = Json::parse(arg);
        for (const auto& b : j) specs.push_back(bodyspec_from_json(b));
        tokens_echo.push_back(arg);
        return specs;
    }
    for (const auto& tok : split_body_tokens(arg)) {
        specs.push_back(parse_body_token(tok, ambient_n));
        tokens_echo.push_back(tok);
    }
    return specs;
}

std::vector<ConvexBody> expand_bodies(const std::vector<BodySpec>& specs) {
    std::vector<ConvexBody> bodies;
    bodies.reserve(specs.size());
    for (const auto& s : specs) bodies.push_back(make_body(s));
    return bodies;
}

std::string format_estimate(const MonteCarloEstimate& e) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.9g +/- %.3g  (%llu samples, seed %llu)", e.mean,
                  e.stderr_, static_cast<unsigned long long>(e.samples),
                  static_cast<unsigned long long>(e.seed));
    return buf;
}

std::string report_table(const ExperimentReport& rep) {
    std::ostringstream out;
    out << "claim:    " << rep.claim << "\n";
    out << "lhs:      " << format_estimate(rep.lhs) << "\n";
    char buf[200];
    if (rep.has_bracket) {
        std::snprintf(buf, sizeof(buf),
                      "rhs:      [%.9g, %.9g] = %.9g x quermass bracket [%.9g, %.9g]",
                      rep.rhs_lower, rep.rhs_upper, rep.constant_used, rep.bracket.lower,
                      rep.bracket.upper);
        out << buf << "\n";
    } else {
        std::snprintf(buf, sizeof(buf), "rhs:      %.12g (exact)", rep.rhs_exact);
        out << buf << "\n";
    }
    out << "verdict:  " << verdict_name(rep.verdict) << "\n";
    std::snprintf(buf, sizeof(buf), "margin:   %.6g", rep.margin);
    out << buf << "\n";
    for (const auto& [name, value] : rep.notes) {
        std::snprintf(buf, sizeof(buf), "  %-32s %.12g", name.c_str(), value);
        out << buf << "\n";
    }
    if (rep.config.emit_timing) {
        std::snprintf(buf, sizeof(buf), "wall:     %.3fs", rep.lhs.wall_seconds);
        out << buf << "\n";
    }
    return out.str();
}

std::string report_csv(const ExperimentReport& rep) {
    std::ostringstream out;
    out << "sample_index,value\n";
    char buf[64];
    for (std::size_t i = 0; i < rep.per_sample.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i, rep.per_sample[i]);
        out << buf;
    }
    return out.str();
}

std::string render_report(const ExperimentReport& rep) {
    if (rep.config.format == "json") return dump_json(report_to_json(rep));
    if (rep.config.format == "csv") return report_csv(rep);
    return report_table(rep);
}

struct CommandResult {
    int exit_code = 0;
    std::string payload;
};

void emit(const RunConfig& cfg, const std::string& payload) {
    if (!cfg.out_path.empty())
        write_text_file(cfg.out_path, payload);
    else
        std::cout << payload;
}

CommandResult run_constants(RunConfig cfg, int max_n) {
    const auto table = constants_table(max_n);
    double worst = 0.0;
    for (const auto& c : table) worst = std::max(worst, c.relative_gap);
    std::string payload;
    if (cfg.format == "json") {
        Json j = constants_to_json(table);
        j["config"] = config_to_json(cfg);
        j["max_relative_gap"] = worst;
        payload = dump_json(j);
    } else {
        std::ostringstream out;
        char buf[200];
        std::snprintf(buf, sizeof(buf), "%-34s %-24s %-24s %s\n", "name", "value", "alternate",
                      "relative_gap");
        out << buf;
        for (const auto& c : table) {
            std::snprintf(buf, sizeof(buf), "%-34s %-24.16g %-24.16g %.3g\n", c.name.c_str(),
                          c.value, c.alternate_value, c.relative_gap);
            out << buf;
        }
        std::snprintf(buf, sizeof(buf), "max relative gap: %.3g\n", worst);
        out << buf;
        payload = out.str();
    }
    if (worst > 1e-10) return {kExitKernel, payload};
    return {0, payload};
}

CommandResult run_mixed_volume(RunConfig cfg, bool dump_facets) {
    std::vector<ConvexBody> bodies = expand_bodies(cfg.bodies);
    if (bodies.empty()) throw std::invalid_argument("mixed-volume: --bodies is required");
    const int n = bodies[0].dim;
    if (cfg.n > 0 && cfg.n != n)
        throw std::invalid_argument("mixed-volume: --n disagrees with body dimension");
    if (static_cast<int>(bodies.size()) != n)
        throw std::invalid_argument("mixed-volume: need exactly n bodies in R^n (got " +
                                    std::to_string(bodies.size()) + " in R^" + std::to_string(n) +
                                    ")");
    cfg.n = n;
    cfg.d = n;
    const MixedVolumeResult res = mixed_volume(bodies);

    std::string payload;
    if (cfg.format == "json") {
        Json j = mixed_volume_result_to_json(res, cfg);
        if (dump_facets) {
            Json hulls = Json::array();
            for (const auto& b : bodies) hulls.push_back(hull_facets_to_json(convex_hull(b.verts, n)));
            j["hulls"] = std::move(hulls);
        }
        payload = dump_json(j);
    } else {
        std::ostringstream out;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "mixed volume V = %.12g   (n=%d, %llu inclusion-exclusion terms, max "
                      "term volume %.6g)\n",
                      res.value, res.n, static_cast<unsigned long long>(res.terms_evaluated),
                      res.max_term_volume);
        out << buf;
        if (dump_facets)
            for (const auto& b : bodies)
                out << b.label << " facets: " << dump_json(hull_facets_to_json(convex_hull(b.verts, n)));
        payload = out.str();
    }
    return {0, payload};
}

CommandResult run_experiment(RunConfig cfg, const std::string& which) {
    ExperimentReport rep;
    RandomStream stream(cfg.seed, 0);
    if (which == "theorem" || which == "probe") {
        std::vector<ConvexBody> bodies = expand_bodies(cfg.bodies);
        if (bodies.empty()) throw std::invalid_argument("verify: --bodies is required");
        const int n = bodies[0].dim;
        const int d = static_cast<int>(bodies.size());
        if (cfg.n > 0 && cfg.n != n)
            throw std::invalid_argument("verify: --n disagrees with body dimension");
        if (cfg.d > 0 && cfg.d != d)
            throw std::invalid_argument("verify: --d disagrees with the body count");
        if (cfg.samples == 0) cfg.samples = default_samples(n);
        rep = which == "theorem"
                  ? verify_theorem(bodies, cfg.samples, cfg.m_ball, stream, cfg.workers)
                  : strictness_probe(bodies, cfg.samples, cfg.m_ball, stream, cfg.workers);
    } else if (which == "lemma") {
        if (cfg.k < 2) throw std::invalid_argument("verify lemma: --k is required (2..6)");
        if (cfg.samples == 0) cfg.samples = 100000;
        rep = verify_needle_average(cfg.k, cfg.samples, stream, cfg.workers);
    } else if (which == "lemma-sharpness") {
        if (cfg.k < 2) throw std::invalid_argument("verify lemma-sharpness: --k is required (2..4)");
        if (cfg.samples == 0) cfg.samples = default_samples(cfg.k);
        rep = verify_lemma_sharpness(cfg.k, cfg.m_ball, cfg.samples, stream, cfg.workers);
    } else if (which == "identity") {
        std::vector<ConvexBody> bodies = expand_bodies(cfg.bodies);
        if (bodies.empty()) throw std::invalid_argument("verify identity: --bodies is required");
        if (cfg.samples == 0) cfg.samples = 100;
        rep = verify_projection_identity(bodies, cfg.samples, stream, cfg.workers);
    } else {
        throw std::invalid_argument("verify: unknown subcommand '" + which + "'");
    }
    // overwrite the probe-level echo with the full CLI-resolved configuration
    const std::string command = rep.config.command;
    rep.config = cfg;
    rep.config.command = command;
    return {verdict_exit_code(rep.verdict), render_report(rep)};
}

CommandResult dispatch(RunConfig cfg, bool dump_facets, int max_n) {
    if (cfg.command == "mixed-volume") return run_mixed_volume(std::move(cfg), dump_facets);
    if (cfg.command == "constants" || cfg.command == "verify constants")
        return run_constants(std::move(cfg), max_n);
    if (cfg.command.rfind("verify ", 0) == 0)
        return run_experiment(cfg, cfg.command.substr(7));
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

CommandResult run_replay(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("replay: cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    Json j = Json::parse(buf.str());
    if (!j.contains("config")) throw std::invalid_argument("replay: report has no config object");
    RunConfig cfg = config_from_json(j["config"]);
    if (cfg.command.empty()) throw std::invalid_argument("replay: config has no command");
    cfg.out_path.clear();
    return dispatch(std::move(cfg), false, 10);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixvol: exact mixed volumes of polytopes and Monte Carlo averages over "
                 "random projections"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string bodies_arg;
    bool dump_facets = false;
    int max_n = 10;
    std::string replay_path;

    auto add_common = [&](CLI::App* cmd, bool with_bodies) {
        if (with_bodies)
            cmd->add_option("--bodies", bodies_arg,
                            "comma list of body shortcuts (cube2, simplex3, cross3, seg:e1, "
                            "seg:(x y z), point:(x y z), ball:k=3,m=256), inline JSON array, "
                            "or @file.json");
        cmd->add_option("--d", cfg.d, "expected number of bodies (cross-checked)");
        cmd->add_option("--n", cfg.n, "ambient dimension (cross-checked; needed for seg:eN)");
        cmd->add_option("--k", cfg.k, "sphere dimension for lemma commands");
        cmd->add_option("--samples", cfg.samples, "Monte Carlo sample count");
        cmd->add_option("--m-ball", cfg.m_ball, "ball approximant vertex count")
            ->default_val(256);
        cmd->add_option("--seed", cfg.seed, "random seed (echoed in reports)")->default_val(0);
        cmd->add_option("--workers", cfg.workers,
                        "worker threads (0 = auto / MIXVOL_WORKERS); wall time only");
        cmd->add_option("--format", cfg.format, "table | json | csv")->default_val("table");
        cmd->add_option("--out", cfg.out_path, "write the report to this path instead of stdout");
        cmd->add_flag("--emit-timing", cfg.emit_timing,
                      "include wall-clock data (output is no longer canonical)");
    };

    CLI::App* mv = app.add_subcommand("mixed-volume", "exact mixed volume of n bodies in R^n");
    add_common(mv, true);
    mv->add_flag("--dump-facets", dump_facets, "debug: dump hull facet planes as JSON");

    CLI::App* verify = app.add_subcommand("verify", "run a claim as an experiment");
    verify->require_subcommand(1);
    for (const char* name : {"theorem", "lemma", "lemma-sharpness", "identity", "probe"})
        add_common(verify->add_subcommand(
                       name, std::string("verify ") + name + " (see README for the claim)"),
                   true);
    CLI::App* vconst = verify->add_subcommand("constants", "two-route constant identities");
    add_common(vconst, false);
    vconst->add_option("--max-n", max_n, "largest dimension in the sweeps")->default_val(10);

    CLI::App* cconst = app.add_subcommand("constants", "alias of `verify constants`");
    add_common(cconst, false);
    cconst->add_option("--max-n", max_n, "largest dimension in the sweeps")->default_val(10);

    CLI::App* replay = app.add_subcommand("replay", "re-run the config embedded in a report");
    replay->add_option("report", replay_path, "report JSON file")->required();
    replay->add_option("--out", cfg.out_path, "write the new report to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        CommandResult result;
        if (replay->parsed()) {
            const std::string out_path = cfg.out_path;
            result = run_replay(replay_path);
            cfg = RunConfig{};
            cfg.out_path = out_path;
            emit(cfg, result.payload);
            return result.exit_code;
        }
        if (mv->parsed()) {
            cfg.command = "mixed-volume";
        } else if (cconst->parsed()) {
            cfg.command = "constants";
        } else {
            for (auto* sub : verify->get_subcommands()) cfg.command = "verify " + sub->get_name();
        }
        if (!bodies_arg.empty()) cfg.bodies = parse_bodies_arg(bodies_arg, cfg.n, cfg.body_tokens);
        result = dispatch(cfg, dump_facets, max_n);
        emit(cfg, result.payload);
        return result.exit_code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "kernel error: " << e.what() << "\n";
        return kExitKernel;
    }
}
