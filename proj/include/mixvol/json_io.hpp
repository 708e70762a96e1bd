#pragma once

// JSON serialisation of body specs, run configurations, and reports.
// Reports are canonical by default: keys are sorted, doubles print
// shortest-round-trip, and wall-clock data is nulled out so identical
// configurations produce bitwise-identical bytes regardless of worker
// count. Pass emit_timing to get real timings (non-canonical).

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "config.hpp"
#include "hull.hpp"
#include "mixed_volume.hpp"
#include "verifier.hpp"

namespace mixvol {

using Json = nlohmann::json;

inline Json bodyspec_to_json(const BodySpec& spec) {
    Json j;
    j["kind"] = body_kind_name(spec.kind);
    j["dim"] = spec.dim;
    j["label"] = spec.label;
    if (spec.kind == BodyKind::vertices || spec.kind == BodyKind::segment ||
        spec.kind == BodyKind::point) {
        Json pts = Json::array();
        const std::size_t count = spec.points.size() / static_cast<std::size_t>(spec.dim);
        for (std::size_t i = 0; i < count; ++i) {
            Json row = Json::array();
            for (int c = 0; c < spec.dim; ++c) row.push_back(spec.points[i * spec.dim + c]);
            pts.push_back(std::move(row));
        }
        j["points"] = std::move(pts);
    }
    if (spec.kind == BodyKind::ball_inscribed) {
        j["m"] = spec.m;
        j["seed"] = spec.seed;
    }
    return j;
}

inline BodySpec bodyspec_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("body spec: expected a JSON object");
    BodySpec spec;
    const std::string kind = j.value("kind", "");
    if (kind == "vertices") spec.kind = BodyKind::vertices;
    else if (kind == "cube") spec.kind = BodyKind::cube;
    else if (kind == "simplex") spec.kind = BodyKind::simplex;
    else if (kind == "cross_polytope") spec.kind = BodyKind::cross_polytope;
    else if (kind == "segment") spec.kind = BodyKind::segment;
    else if (kind == "point") spec.kind = BodyKind::point;
    else if (kind == "ball_inscribed") spec.kind = BodyKind::ball_inscribed;
    else throw std::invalid_argument("body spec: unknown kind '" + kind + "'");
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw std::invalid_argument("body spec: missing integer field 'dim'");
    spec.dim = j["dim"].get<int>();
    spec.label = j.value("label", "");
    if (j.contains("points")) {
        if (!j["points"].is_array()) throw std::invalid_argument("body spec: 'points' must be an array");
        for (const auto& row : j["points"]) {
            if (!row.is_array() || static_cast<int>(row.size()) != spec.dim)
                throw std::invalid_argument("body spec: each point needs 'dim' coordinates");
            for (const auto& x : row) {
                if (!x.is_number()) throw std::invalid_argument("body spec: malformed coordinates");
                spec.points.push_back(x.get<double>());
            }
        }
    }
    spec.m = j.value("m", 0);
    spec.seed = j.value("seed", std::uint64_t{0});
    return spec;
}

inline Json config_to_json(const RunConfig& cfg) {
    Json j;
    j["command"] = cfg.command;
    j["body_tokens"] = cfg.body_tokens;
    Json bodies = Json::array();
    for (const auto& spec : cfg.bodies) bodies.push_back(bodyspec_to_json(spec));
    j["bodies"] = std::move(bodies);
    j["d"] = cfg.d;
    j["n"] = cfg.n;
    j["k"] = cfg.k;
    j["samples"] = cfg.samples;
    j["m_ball"] = cfg.m_ball;
    j["seed"] = cfg.seed;
    j["format"] = cfg.format;
    j["workers"] = nullptr;  // execution detail; reports must not depend on it
    return j;
}

inline RunConfig config_from_json(const Json& j) {
    RunConfig cfg;
    cfg.command = j.value("command", "");
    if (j.contains("body_tokens"))
        cfg.body_tokens = j["body_tokens"].get<std::vector<std::string>>();
    if (j.contains("bodies"))
        for (const auto& b : j["bodies"]) cfg.bodies.push_back(bodyspec_from_json(b));
    cfg.d = j.value("d", 0);
    cfg.n = j.value("n", 0);
    cfg.k = j.value("k", 0);
    cfg.samples = j.value("samples", std::uint64_t{0});
    cfg.m_ball = j.value("m_ball", 256);
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.format = j.value("format", "table");
    return cfg;
}

inline Json estimate_to_json(const MonteCarloEstimate& e, bool emit_timing) {
    Json j;
    j["mean"] = e.mean;
    j["stderr"] = e.stderr_;
    j["samples"] = e.samples;
    j["seed"] = e.seed;
    j["wall_seconds"] = emit_timing ? Json(e.wall_seconds) : Json(nullptr);
    return j;
}

inline Json report_to_json(const ExperimentReport& rep) {
    const bool timing = rep.config.emit_timing;
    Json j;
    j["schema_version"] = 1;
    j["claim"] = rep.claim;
    j["config"] = config_to_json(rep.config);
    j["lhs"] = estimate_to_json(rep.lhs, timing);
    Json rhs;
    if (rep.has_bracket) {
        rhs["type"] = "bracket";
        rhs["lower"] = rep.rhs_lower;
        rhs["upper"] = rep.rhs_upper;
        rhs["constant"] = rep.constant_used;
        Json b;
        b["lower"] = rep.bracket.lower;
        b["upper"] = rep.bracket.upper;
        b["d"] = rep.bracket.d;
        b["n"] = rep.bracket.n;
        b["m"] = rep.bracket.m;
        b["seed"] = rep.bracket.seed;
        b["outer_scale"] = rep.bracket.outer_scale;
        rhs["quermass_bracket"] = std::move(b);
    } else {
        rhs["type"] = "exact";
        rhs["value"] = rep.rhs_exact;
        rhs["lower"] = rep.rhs_lower;
        rhs["upper"] = rep.rhs_upper;
    }
    j["rhs"] = std::move(rhs);
    j["verdict"] = verdict_name(rep.verdict);
    j["margin"] = rep.margin;
    Json notes;
    for (const auto& [name, value] : rep.notes) notes[name] = value;
    j["notes"] = std::move(notes);
    j["timing"] = timing ? Json{{"wall_seconds", rep.lhs.wall_seconds},
                                {"workers", resolve_workers(rep.config.workers)}}
                         : Json(nullptr);
    return j;
}

inline Json mixed_volume_result_to_json(const MixedVolumeResult& r, const RunConfig& cfg) {
    Json j;
    j["schema_version"] = 1;
    j["config"] = config_to_json(cfg);
    j["value"] = r.value;
    j["n"] = r.n;
    j["terms_evaluated"] = r.terms_evaluated;
    j["max_term_volume"] = r.max_term_volume;
    return j;
}

inline Json constants_to_json(const std::vector<ConstantReport>& table) {
    Json rows = Json::array();
    for (const auto& c : table) {
        Json r;
        r["name"] = c.name;
        r["value"] = c.value;
        r["alternate"] = c.alternate_value;
        r["relative_gap"] = c.relative_gap;
        rows.push_back(std::move(r));
    }
    Json j;
    j["schema_version"] = 1;
    j["constants"] = std::move(rows);
    return j;
}

/// Debug dump of a hull's facet planes.
inline Json hull_facets_to_json(const Hull& h) {
    Json j;
    j["dim"] = h.dim;
    j["affine_dim"] = h.affine_dim;
    j["volume"] = h.volume;
    j["max_violation"] = h.max_violation;
    Json facets = Json::array();
    for (const auto& f : h.facets) {
        Json row;
        row["normal"] = f.normal;
        row["offset"] = f.offset;
        facets.push_back(std::move(row));
    }
    j["facets"] = std::move(facets);
    j["hull_vertices"] = h.hull_vertices;
    return j;
}

/// Canonical text form used for files and stdout: sorted keys, two-space
/// indent, trailing newline.
inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output path: " + path);
    out << text;
}

}  // namespace mixvol
