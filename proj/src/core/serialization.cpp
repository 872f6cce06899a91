#include "serialization.hpp"

#include "errors.hpp"
#include "json_reader.hpp"

#include <iomanip>
#include <regex>
#include <set>
#include <sstream>

namespace glyphmcda {

using nlohmann::json;

std::string dump_canonical(const OrderedJson& doc) {
    return doc.dump(2) + "\n";
}

json parse_json_text(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ValidationError("", std::string("malformed document: ") + e.what());
    }
}

namespace {

OrderedJson ordered(const json& j) {
    return OrderedJson::parse(j.dump());
}

const std::regex& timestamp_pattern() {
    static const std::regex re(R"(^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}(:\d{2}(\.\d+)?)?(Z|[+-]\d{2}:?\d{2})?$)");
    return re;
}

std::string pad_right(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string fixed4(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << v;
    return os.str();
}

std::string json_string_list(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

constexpr std::size_t kNameWidth = 33;
constexpr std::string_view kTotalLabel = "Total Weight & Weighted Average";

std::string weight_cell(const CriterionResult& r) {
    return to_short_string(r.weight) + (r.weight_overridden ? "*" : "");
}

}  // namespace

Rational rational_from_json(const json& value, const std::string& path) {
    try {
        if (value.is_string()) return parse_rational(value.get<std::string>());
        if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
        if (value.is_number_float()) return parse_rational(value.dump());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(path, e.what());
    }
    throw ValidationError(path, "expected a number or a decimal string");
}

// ---- sheets ----

ScoreSheet sheet_from_json(const json& doc) {
    ObjectReader top(doc, "");
    ScoreSheet sheet;
    sheet.schema_version = top.string("schema_version");
    if (sheet.schema_version != kSchemaVersion) {
        throw ValidationError("/schema_version", "unsupported schema version \"" + sheet.schema_version + "\"");
    }
    sheet.design_id = top.string("design");
    sheet.assessor = top.string("assessor");
    sheet.timestamp = top.string("timestamp");
    if (!std::regex_match(sheet.timestamp, timestamp_pattern())) {
        throw ValidationError("/timestamp", "expected an ISO-8601 date-time");
    }

    const json& list = array_at(top.required("assessments"), "/assessments");
    std::map<CriterionId, CriterionAssessment> by_id;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "/assessments/" + std::to_string(i);
        ObjectReader r(list[i], path);
        CriterionAssessment a;
        const std::string token = r.string("criterion");
        a.criterion = with_path(r.at("criterion"), [&] { return criterion_from_token(token); });
        if (by_id.count(a.criterion)) throw ValidationError(r.at("criterion"), "criterion \"" + token + "\" listed twice");
        const std::string mode = r.string("mode");
        a.mode = with_path(r.at("mode"), [&] { return mode_from_token(mode); });
        const json* w = r.find("weight");
        a.weight = w ? rational_from_json(*w, r.at("weight")) : default_weight(a.criterion);
        if (const json* d = r.find("direct_score")) a.direct_score = rational_from_json(*d, r.at("direct_score"));
        if (const json* entries = r.find("variable_entries")) {
            array_at(*entries, r.at("variable_entries"));
            for (std::size_t k = 0; k < entries->size(); ++k) {
                ObjectReader er((*entries)[k], r.at("variable_entries") + "/" + std::to_string(k));
                VariableEntry e;
                e.variable_id = er.string("variable_id");
                e.score = rational_from_json(er.required("score"), er.at("score"));
                e.rationale = er.string_or("rationale", "");
                er.finish();
                a.variable_entries.push_back(std::move(e));
            }
        }
        if (const json* in = r.find("inputs")) {
            if (!in->is_object()) throw ValidationError(r.at("inputs"), "expected an object");
            a.inputs = *in;
        }
        r.finish();
        by_id.emplace(a.criterion, std::move(a));
    }
    for (CriterionId id : all_criteria()) {
        auto it = by_id.find(id);
        if (it == by_id.end()) {
            throw ValidationError("/assessments", "missing criterion \"" + std::string(to_token(id)) + "\"");
        }
        sheet.assessments.push_back(std::move(it->second));
    }

    if (const json* p = top.find("provenance")) {
        ObjectReader pr(*p, "/provenance");
        Provenance prov;
        const std::string mode = pr.string("merge_mode");
        prov.merge_mode = with_path("/provenance/merge_mode", [&] { return merge_mode_from_token(mode); });
        const json& who = array_at(pr.required("assessors"), "/provenance/assessors");
        for (std::size_t i = 0; i < who.size(); ++i) {
            prov.assessors.push_back(ObjectReader::as_string(who[i], "/provenance/assessors/" + std::to_string(i)));
        }
        prov.note = pr.string_or("note", "");
        pr.finish();
        sheet.provenance = std::move(prov);
    }
    top.finish();
    validate_sheet(sheet);
    return sheet;
}

OrderedJson sheet_to_json(const ScoreSheet& sheet) {
    OrderedJson doc;
    doc["schema_version"] = sheet.schema_version;
    doc["design"] = sheet.design_id;
    doc["assessor"] = sheet.assessor;
    doc["timestamp"] = sheet.timestamp;
    OrderedJson list = OrderedJson::array();
    for (const auto& a : sheet.assessments) {
        OrderedJson item;
        item["criterion"] = to_token(a.criterion);
        item["mode"] = to_token(a.mode);
        item["weight"] = to_canonical_string(a.weight);
        if (a.direct_score) item["direct_score"] = to_canonical_string(*a.direct_score);
        if (!a.variable_entries.empty()) {
            OrderedJson entries = OrderedJson::array();
            for (const auto& e : a.variable_entries) {
                OrderedJson ej;
                ej["variable_id"] = e.variable_id;
                ej["score"] = to_canonical_string(e.score);
                if (!e.rationale.empty()) ej["rationale"] = e.rationale;
                entries.push_back(std::move(ej));
            }
            item["variable_entries"] = std::move(entries);
        }
        if (a.inputs) item["inputs"] = ordered(*a.inputs);
        list.push_back(std::move(item));
    }
    doc["assessments"] = std::move(list);
    if (sheet.provenance) {
        OrderedJson p;
        p["merge_mode"] = to_token(sheet.provenance->merge_mode);
        p["assessors"] = sheet.provenance->assessors;
        if (!sheet.provenance->note.empty()) p["note"] = sheet.provenance->note;
        doc["provenance"] = std::move(p);
    }
    return doc;
}

ScoreSheet parse_sheet(std::string_view text) {
    return sheet_from_json(parse_json_text(text));
}

std::string serialize_sheet(const ScoreSheet& sheet) {
    validate_sheet(sheet);
    return dump_canonical(sheet_to_json(sheet));
}

// ---- designs ----

GlyphDesign design_from_json(const json& doc) {
    ObjectReader top(doc, "");
    const std::string version = top.string("schema_version");
    if (version != kSchemaVersion) {
        throw ValidationError("/schema_version", "unsupported schema version \"" + version + "\"");
    }
    GlyphDesign d;
    d.id = top.string("id");
    d.name = top.string_or("name", "");

    const json& vars = array_at(top.required("variables"), "/variables");
    for (std::size_t i = 0; i < vars.size(); ++i) {
        ObjectReader r(vars[i], "/variables/" + std::to_string(i));
        DataVariable v;
        v.id = r.string("id");
        v.name = r.string_or("name", "");
        const std::string type = r.string("data_type");
        v.data_type = with_path(r.at("data_type"), [&] { return data_type_from_token(type); });
        v.key_value_count = static_cast<int>(r.integer("key_value_count"));
        if (auto rank = r.optional_integer("importance_rank")) v.importance_rank = static_cast<int>(*rank);
        if (auto group = r.optional_integer("comparability_group")) v.comparability_group = static_cast<int>(*group);
        v.is_identity_variable = r.boolean_or("is_identity_variable", false);
        r.finish();
        d.variables.push_back(std::move(v));
    }

    const json& chans = array_at(top.required("channels"), "/channels");
    for (std::size_t i = 0; i < chans.size(); ++i) {
        ObjectReader r(chans[i], "/channels/" + std::to_string(i));
        VisualChannel c;
        c.id = r.string("id");
        c.name = r.string_or("name", "");
        const std::string kind = r.string("channel_kind");
        c.kind = with_path(r.at("channel_kind"), [&] { return channel_kind_from_token(kind); });
        if (const json* ratings = r.find("kop_ratings")) {
            ObjectReader kr(*ratings, r.at("kop_ratings"));
            for (Kop k : kAllKops) {
                const std::string key(to_token(k));
                if (const json* cell = kr.find(key)) {
                    const std::string token = ObjectReader::as_string(*cell, kr.at(key));
                    c.kop_ratings[k] = with_path(kr.at(key), [&] { return kop_rating_from_token(token); });
                }
            }
            kr.finish();
        }
        r.finish();
        d.channels.push_back(std::move(c));
    }

    ObjectReader enc(top.required("encoding"), "/encoding");
    for (auto it = doc.at("encoding").begin(); it != doc.at("encoding").end(); ++it) {
        const std::string path = enc.at(it.key());
        enc.find(it.key());
        std::vector<std::string> targets;
        for (std::size_t k = 0; k < array_at(*it, path).size(); ++k) {
            targets.push_back(ObjectReader::as_string((*it)[k], path + "/" + std::to_string(k)));
        }
        d.encoding[it.key()] = std::move(targets);
    }
    if (const json* img = top.find("image_ref")) d.image_ref = ObjectReader::as_string(*img, "/image_ref");
    d.notes = top.string_or("notes", "");
    top.finish();
    return d;
}

OrderedJson design_to_json(const GlyphDesign& d) {
    OrderedJson doc;
    doc["schema_version"] = kSchemaVersion;
    doc["id"] = d.id;
    doc["name"] = d.name;
    OrderedJson vars = OrderedJson::array();
    for (const auto& v : d.variables) {
        OrderedJson j;
        j["id"] = v.id;
        j["name"] = v.name;
        j["data_type"] = to_token(v.data_type);
        j["key_value_count"] = v.key_value_count;
        if (v.importance_rank) j["importance_rank"] = *v.importance_rank;
        if (v.comparability_group) j["comparability_group"] = *v.comparability_group;
        j["is_identity_variable"] = v.is_identity_variable;
        vars.push_back(std::move(j));
    }
    doc["variables"] = std::move(vars);
    OrderedJson chans = OrderedJson::array();
    for (const auto& c : d.channels) {
        OrderedJson j;
        j["id"] = c.id;
        j["name"] = c.name;
        j["channel_kind"] = to_token(c.kind);
        if (!c.kop_ratings.empty()) {
            OrderedJson r;
            for (const auto& [k, rating] : c.kop_ratings) r[std::string(to_token(k))] = to_token(rating);
            j["kop_ratings"] = std::move(r);
        }
        chans.push_back(std::move(j));
    }
    doc["channels"] = std::move(chans);
    OrderedJson enc = OrderedJson::object();
    for (const auto& [var, targets] : d.encoding) enc[var] = targets;
    doc["encoding"] = std::move(enc);
    if (d.image_ref) doc["image_ref"] = *d.image_ref;
    if (!d.notes.empty()) doc["notes"] = d.notes;
    return doc;
}

GlyphDesign parse_design(std::string_view text) {
    return design_from_json(parse_json_text(text));
}

std::string serialize_design(const GlyphDesign& design) {
    return dump_canonical(design_to_json(design));
}

OrderedJson violations_to_json(const std::vector<Violation>& violations) {
    OrderedJson list = OrderedJson::array();
    for (const auto& v : violations) list.push_back({{"field", v.field}, {"rule", v.rule}});
    return list;
}

// ---- merge policy ----

MergePolicy merge_policy_from_json(const json& doc) {
    ObjectReader r(doc, "");
    MergePolicy policy;
    const std::string mode = r.string_or("merge", "mean");
    policy.mode = with_path("/merge", [&] { return merge_mode_from_token(mode); });
    if (policy.mode == MergeMode::single) throw ValidationError("/merge", "merge policy must be mean or consensus");
    if (const json* scores = r.find("scores")) {
        if (policy.mode != MergeMode::consensus) throw ValidationError("/scores", "agreed scores need consensus");
        ObjectReader sr(*scores, "/scores");
        for (auto it = scores->begin(); it != scores->end(); ++it) {
            const std::string key = it.key();
            sr.find(key);
            const CriterionId id = with_path(sr.at(key), [&] { return criterion_from_token(key); });
            policy.agreed_scores[id] = rational_from_json(*it, sr.at(key));
        }
    }
    policy.note = r.string_or("note", "");
    r.finish();
    return policy;
}

// ---- reports ----

OrderedJson report_to_json(const AssessmentReport& report) {
    OrderedJson doc;
    doc["design"] = report.design_id;
    doc["merge_mode"] = to_token(report.merge_mode);
    doc["assessors"] = report.assessor_set;
    OrderedJson rows = OrderedJson::array();
    for (const auto& r : report.per_criterion) {
        OrderedJson row;
        row["criterion"] = to_token(r.criterion);
        row["weight"] = to_canonical_string(r.weight);
        row["weight_overridden"] = r.weight_overridden;
        if (r.score) {
            row["score"] = to_fixed(*r.score, 2);
            row["score_exact"] = to_canonical_string(*r.score);
        } else {
            row["score"] = nullptr;
            row["score_exact"] = nullptr;
        }
        rows.push_back(std::move(row));
    }
    doc["per_criterion"] = std::move(rows);
    doc["total_weight"] = to_canonical_string(report.total_weight);
    doc["weighted_average"] = to_fixed(report.weighted_average, 2);
    doc["weighted_average_exact"] = to_canonical_string(report.weighted_average);
    return doc;
}

std::string render_report_text(const AssessmentReport& report) {
    std::ostringstream os;
    os << "design: " << report.design_id << "\n";
    os << "assessors: " << json_string_list(report.assessor_set, ", ") << " (" << to_token(report.merge_mode) << ")\n\n";
    os << pad_right("Criterion", kNameWidth) << pad_left("weight", 8) << pad_left("score", 8) << "\n";
    bool overridden = false;
    for (const auto& r : report.per_criterion) {
        overridden = overridden || r.weight_overridden;
        const std::string weight = r.score ? weight_cell(r) : "";
        const std::string score = r.score ? to_fixed(*r.score, 2) : "-";
        os << pad_right(std::string(display_name(r.criterion)), kNameWidth) << pad_left(weight, 8)
           << pad_left(score, 8) << "\n";
    }
    os << pad_right(std::string(kTotalLabel), kNameWidth) << pad_left(to_short_string(report.total_weight), 8)
       << pad_left(to_fixed(report.weighted_average, 2), 8) << "\n";
    if (overridden) os << "* weight differs from the default\n";
    return os.str();
}

OrderedJson reports_table_to_json(const std::vector<AssessmentReport>& reports) {
    OrderedJson doc;
    OrderedJson designs = OrderedJson::array();
    for (const auto& r : reports) designs.push_back(r.design_id);
    doc["designs"] = std::move(designs);
    OrderedJson rows = OrderedJson::array();
    for (std::size_t c = 0; c < kCriterionCount; ++c) {
        OrderedJson row;
        row["criterion"] = to_token(all_criteria()[c]);
        OrderedJson cells = OrderedJson::array();
        for (const auto& r : reports) {
            const auto& res = r.per_criterion.at(c);
            OrderedJson cell;
            cell["weight"] = res.score ? OrderedJson(to_canonical_string(res.weight)) : OrderedJson(nullptr);
            cell["score"] = res.score ? OrderedJson(to_fixed(*res.score, 2)) : OrderedJson(nullptr);
            cell["weight_overridden"] = res.weight_overridden;
            cells.push_back(std::move(cell));
        }
        row["cells"] = std::move(cells);
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    OrderedJson totals = OrderedJson::array();
    for (const auto& r : reports) {
        totals.push_back({{"total_weight", to_canonical_string(r.total_weight)},
                          {"weighted_average", to_fixed(r.weighted_average, 2)}});
    }
    doc["totals"] = std::move(totals);
    return doc;
}

std::string render_reports_table_text(const std::vector<AssessmentReport>& reports) {
    std::ostringstream os;
    os << pad_right("Criterion", kNameWidth);
    for (const auto& r : reports) os << "  " << pad_left(r.design_id, 13);
    os << "\n" << std::string(kNameWidth, ' ');
    for (std::size_t i = 0; i < reports.size(); ++i) os << "  " << pad_left("weight", 6) << " " << pad_left("score", 6);
    os << "\n";
    bool overridden = false;
    for (std::size_t c = 0; c < kCriterionCount; ++c) {
        os << pad_right(std::string(display_name(all_criteria()[c])), kNameWidth);
        for (const auto& r : reports) {
            const auto& res = r.per_criterion.at(c);
            overridden = overridden || res.weight_overridden;
            os << "  " << pad_left(res.score ? weight_cell(res) : "", 6) << " "
               << pad_left(res.score ? to_fixed(*res.score, 2) : "-", 6);
        }
        os << "\n";
    }
    os << pad_right(std::string(kTotalLabel), kNameWidth);
    for (const auto& r : reports) {
        os << "  " << pad_left(to_short_string(r.total_weight), 6) << " " << pad_left(to_fixed(r.weighted_average, 2), 6);
    }
    os << "\n";
    if (overridden) os << "* weight differs from the default\n";
    return os.str();
}

OrderedJson ranking_to_json(const Ranking& ranking) {
    OrderedJson doc;
    OrderedJson order = OrderedJson::array();
    for (const auto& e : ranking.order) {
        OrderedJson j;
        j["rank"] = e.rank;
        j["design"] = e.design_id;
        j["weighted_average"] = to_fixed(e.weighted_average, 2);
        j["weighted_average_exact"] = to_canonical_string(e.weighted_average);
        j["total_weight"] = to_canonical_string(e.total_weight);
        order.push_back(std::move(j));
    }
    doc["order"] = std::move(order);
    OrderedJson profile = OrderedJson::array();
    for (const auto& p : ranking.profile) {
        OrderedJson j;
        j["criterion"] = to_token(p.criterion);
        OrderedJson scores = OrderedJson::array();
        OrderedJson deltas = OrderedJson::array();
        for (std::size_t i = 0; i < p.scores.size(); ++i) {
            scores.push_back(p.scores[i] ? OrderedJson(to_canonical_string(*p.scores[i])) : OrderedJson(nullptr));
            deltas.push_back(p.delta_to_leader[i] ? OrderedJson(to_canonical_string(*p.delta_to_leader[i]))
                                                  : OrderedJson(nullptr));
        }
        j["scores"] = std::move(scores);
        j["delta_to_leader"] = std::move(deltas);
        profile.push_back(std::move(j));
    }
    doc["profile"] = std::move(profile);
    return doc;
}

std::string render_ranking_text(const Ranking& ranking) {
    std::ostringstream os;
    for (const auto& e : ranking.order) {
        os << e.rank << ". " << pad_right(e.design_id, 12) << " " << to_fixed(e.weighted_average, 2)
           << "  (total weight " << to_short_string(e.total_weight) << ")\n";
    }
    os << "\n" << pad_right("Criterion", kNameWidth);
    for (const auto& e : ranking.order) os << "  " << pad_left(e.design_id, 13);
    os << "\n";
    for (const auto& p : ranking.profile) {
        os << pad_right(std::string(display_name(p.criterion)), kNameWidth);
        for (std::size_t i = 0; i < p.scores.size(); ++i) {
            std::string cell = p.scores[i] ? to_fixed(*p.scores[i], 2) : "-";
            if (i > 0 && p.delta_to_leader[i]) {
                const Rational& d = *p.delta_to_leader[i];
                cell += " (" + std::string(d >= 0 ? "+" : "") + to_fixed(d, 2) + ")";
            }
            os << "  " << pad_left(cell, 13);
        }
        os << "\n";
    }
    return os.str();
}

// ---- degradation sheets ----

OrderedJson manifest_to_json(const DegradationSheet& sheet) {
    OrderedJson doc;
    doc["kind"] = to_token(sheet.kind);
    if (sheet.kind == SheetKind::geometry) {
        OrderedJson params;
        params["vf_deg"] = fixed4(sheet.geometry->vf_deg);
        params["vd_cm"] = fixed4(sheet.geometry->vd_cm);
        params["shape"] = to_token(sheet.geometry->shape);
        params["ppcm"] = fixed4(*sheet.ppcm);
        params["base_cm"] = fixed4(*sheet.base_cm);
        doc["parameters"] = std::move(params);
    }
    doc["composite"] = {{"width_px", sheet.composite.width}, {"height_px", sheet.composite.height}};
    OrderedJson cells = OrderedJson::array();
    for (const auto& c : sheet.manifest) {
        OrderedJson j;
        j["row"] = c.row;
        j["col"] = c.col;
        if (c.scale) j["scale"] = to_canonical_string(*c.scale);
        if (c.size_cm) j["size_cm"] = fixed4(*c.size_cm);
        if (c.params) {
            j["kappa_ctr"] = to_canonical_string(c.params->kappa_ctr);
            j["kappa_brt"] = to_canonical_string(c.params->kappa_brt);
        }
        j["x_px"] = c.x_px;
        j["y_px"] = c.y_px;
        j["width_px"] = c.width_px;
        j["height_px"] = c.height_px;
        j["caption"] = c.caption;
        cells.push_back(std::move(j));
    }
    doc["cells"] = std::move(cells);
    if (sheet.calibration) {
        doc["calibration"] = {{"size_cm", fixed4(sheet.calibration->size_cm)},
                              {"size_px", sheet.calibration->size_px},
                              {"x_px", sheet.calibration->x_px},
                              {"y_px", sheet.calibration->y_px}};
    }
    return doc;
}

}  // namespace glyphmcda
