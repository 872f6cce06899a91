#include "derive.hpp"

#include "criteria.hpp"
#include "json_reader.hpp"
#include "serialization.hpp"

#include <array>

namespace glyphmcda {

using OJson = nlohmann::ordered_json;

namespace {

std::int64_t count(ObjectReader& r, const std::string& key, std::optional<std::int64_t> fallback = std::nullopt) {
    const json* v = r.find(key);
    if (!v) {
        if (fallback) return *fallback;
        throw ValidationError(r.at(key), "required field is missing");
    }
    const std::int64_t n = ObjectReader::as_integer(*v, r.at(key));
    if (n < 0) throw ValidationError(r.at(key), "counts must be non-negative");
    return n;
}

std::vector<std::int64_t> int_list(const json& v, const std::string& path) {
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < array_at(v, path).size(); ++i) {
        out.push_back(ObjectReader::as_integer(v[i], path + "/" + std::to_string(i)));
    }
    return out;
}

bool flag(ObjectReader& r, const std::string& key) {
    const json& v = r.required(key);
    if (!v.is_boolean()) throw ValidationError(r.at(key), "expected true or false");
    return v.get<bool>();
}

OJson level_json(std::optional<Level> level) {
    return level ? OJson(*level) : OJson(nullptr);
}

OJson derive_typedness(ObjectReader& r, const KnowledgeBase& kb) {
    std::set<Kop> akops;
    if (const json* list = r.find("akops")) {
        for (std::size_t i = 0; i < array_at(*list, r.at("akops")).size(); ++i) {
            const std::string path = r.at("akops") + "/" + std::to_string(i);
            const std::string token = ObjectReader::as_string((*list)[i], path);
            akops.insert(with_path(path, [&] { return kop_from_token(token); }));
        }
        if (akops.empty()) throw ValidationError(r.at("akops"), "at least one AKOP is required");
        if (r.find("data_type")) throw ValidationError(r.at("data_type"), "give either data_type or akops");
    } else {
        const std::string token = r.string("data_type");
        const DataType type = with_path(r.at("data_type"), [&] { return data_type_from_token(token); });
        akops = akops_for(type);
    }

    const json& channels = array_at(r.required("channels"), r.at("channels"));
    if (channels.empty()) throw CriterionInputError("typedness needs at least one channel");
    std::vector<std::map<Kop, Suitability>> per_channel;
    OJson channels_out = OJson::array();
    for (std::size_t i = 0; i < channels.size(); ++i) {
        ObjectReader cr(channels[i], r.at("channels") + "/" + std::to_string(i));
        const std::string kind_token = cr.string("kind");
        const ChannelKind kind = with_path(cr.at("kind"), [&] { return channel_kind_from_token(kind_token); });

        std::map<Kop, KopRating> ratings;
        if (const json* rj = cr.find("ratings")) {
            ObjectReader rr(*rj, cr.at("ratings"));
            for (Kop k : kAllKops) {
                const std::string key(to_token(k));
                if (const json* cell = rr.find(key)) {
                    const std::string t = ObjectReader::as_string(*cell, rr.at(key));
                    ratings[k] = with_path(rr.at(key), [&] { return kop_rating_from_token(t); });
                }
            }
            rr.finish();
        }
        std::map<Kop, Suitability> overrides;
        if (const json* sj = cr.find("suitability")) {
            ObjectReader sr(*sj, cr.at("suitability"));
            for (Kop k : kAllKops) {
                const std::string key(to_token(k));
                if (const json* cell = sr.find(key)) {
                    const std::string t = ObjectReader::as_string(*cell, sr.at(key));
                    overrides[k] = with_path(sr.at(key), [&] { return suitability_from_token(t); });
                }
            }
            sr.finish();
        }
        cr.finish();

        std::map<Kop, Suitability> suit;
        OJson suit_out = OJson::object();
        for (Kop k : akops) {
            KopRating rating;
            if (auto it = ratings.find(k); it != ratings.end()) {
                rating = it->second;
            } else if (kind == ChannelKind::custom) {
                throw CriterionInputError("custom channel " + std::to_string(i) + " needs a rating for \"" +
                                          std::string(to_token(k)) + "\"");
            } else {
                rating = kb.rating(kind, k);
            }
            std::optional<Suitability> ov;
            if (auto it = overrides.find(k); it != overrides.end()) ov = it->second;
            suit[k] = suitability(rating, ov);
            suit_out[std::string(to_token(k))] = to_token(suit[k]);
        }
        per_channel.push_back(std::move(suit));
        channels_out.push_back({{"kind", kind_token}, {"suitability", std::move(suit_out)}});
    }

    OJson out;
    OJson akops_out = OJson::array();
    for (Kop k : akops) akops_out.push_back(to_token(k));
    out["akops"] = std::move(akops_out);
    out["channels"] = std::move(channels_out);
    out["level"] = typedness_variable_score(per_channel, akops);
    return out;
}

OJson derive_discernability(ObjectReader& r) {
    const std::int64_t easy = count(r, "easy");
    const std::int64_t diff = count(r, "differentiable");
    const std::int64_t no = count(r, "not");
    OJson out;
    out["n"] = easy + diff + no;
    if (const json* k = r.find("k")) {
        const std::int64_t kv = ObjectReader::as_integer(*k, r.at("k"));
        if (kv < 1) throw ValidationError(r.at("k"), "k must be at least 1");
        if (pair_count(kv) != easy + diff + no) {
            throw CriterionInputError("pair counts sum to " + std::to_string(easy + diff + no) + " but k = " +
                                      std::to_string(kv) + " gives " + std::to_string(pair_count(kv)) + " pairs");
        }
    }
    out["level"] = discernability_score(easy, diff, no);
    return out;
}

OJson derive_intuitiveness(ObjectReader& r) {
    IntuitivenessInputs in;
    const std::string dc = r.string("dc");
    const std::string am = r.string("am");
    in.dc = with_path(r.at("dc"), [&] { return domain_convention_from_token(dc); });
    in.am = with_path(r.at("am"), [&] { return metaphor_from_token(am); });
    OJson out;
    out["level"] = intuitiveness_score(in);
    return out;
}

OJson derive_geometry(ObjectReader& r) {
    ObjectReader fr(r.required("invariant_at"), r.at("invariant_at"));
    static const std::array<const char*, 4> keys = {"1/5", "2/5", "3/5", "4/5"};
    GeometryFlags flags{};
    for (std::size_t i = 0; i < keys.size(); ++i) flags[i] = flag(fr, keys[i]);
    fr.finish();
    OJson out;
    out["level"] = geometry_score(flags);
    return out;
}

OJson derive_colorimetry(ObjectReader& r) {
    static const std::array<const char*, 4> keys = {"25.5", "51", "76.5", "102"};
    ColorimetryFlags flags{};
    if (const json* grid = r.find("grid")) {
        // rows: sign combinations; columns: magnitudes
        std::array<std::array<bool, 4>, 4> cells{};
        if (!grid->is_array() || grid->size() != 4) throw ValidationError(r.at("grid"), "expected 4 rows");
        for (std::size_t row = 0; row < 4; ++row) {
            const std::string rpath = r.at("grid") + "/" + std::to_string(row);
            if (!(*grid)[row].is_array() || (*grid)[row].size() != 4) throw ValidationError(rpath, "expected 4 flags");
            for (std::size_t m = 0; m < 4; ++m) {
                const json& v = (*grid)[row][m];
                if (!v.is_boolean()) throw ValidationError(rpath + "/" + std::to_string(m), "expected true or false");
                cells[row][m] = v.get<bool>();
            }
        }
        if (r.find("invariant_at")) throw ValidationError(r.at("invariant_at"), "give either grid or invariant_at");
        flags = colorimetry_flags_from_grid(cells);
    } else {
        ObjectReader fr(r.required("invariant_at"), r.at("invariant_at"));
        for (std::size_t i = 0; i < keys.size(); ++i) flags[i] = flag(fr, keys[i]);
        fr.finish();
    }
    OJson out;
    OJson flags_out;
    for (std::size_t i = 0; i < keys.size(); ++i) flags_out[keys[i]] = flags[i];
    out["invariant_at"] = std::move(flags_out);
    out["level"] = colorimetry_score(flags);
    return out;
}

OJson derive_separability(ObjectReader& r) {
    std::vector<Rational> scores;
    if (const json* pw = r.find("pairwise")) {
        // one list of received severities per channel
        for (std::size_t i = 0; i < array_at(*pw, r.at("pairwise")).size(); ++i) {
            const std::string cpath = r.at("pairwise") + "/" + std::to_string(i);
            std::vector<SeparabilitySeverity> received;
            for (std::size_t j = 0; j < array_at((*pw)[i], cpath).size(); ++j) {
                const std::string path = cpath + "/" + std::to_string(j);
                const std::string t = ObjectReader::as_string((*pw)[i][j], path);
                received.push_back(with_path(path, [&] { return severity_from_token(t); }));
            }
            scores.push_back(separability_channel_score(received));
        }
        if (r.find("channel_scores")) throw ValidationError(r.at("channel_scores"), "give either pairwise or channel_scores");
    } else {
        const json& list = array_at(r.required("channel_scores"), r.at("channel_scores"));
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string path = r.at("channel_scores") + "/" + std::to_string(i);
            const Rational v = rational_from_json(list[i], path);
            with_path(path, [&] { return severity_from_value(v); });
            scores.push_back(v);
        }
    }
    const std::string method = r.string_or("method", "exact");
    if (method != "exact" && method != "estimate") throw ValidationError(r.at("method"), "expected exact or estimate");

    const SeparabilityMoments m = separability_exact(scores);
    const Rational estimate = separability_estimate(scores);
    OJson out;
    OJson channel_out = OJson::array();
    for (const auto& s : scores) channel_out.push_back(to_canonical_string(s));
    out["channel_scores"] = std::move(channel_out);
    out["max_int"] = to_canonical_string(m.max_int);
    out["avg_int"] = to_canonical_string(m.avg_int);
    out["avg_int_estimate"] = to_canonical_string(estimate);
    out["method"] = method;
    out["level"] = separability_score(m.max_int, method == "exact" ? m.avg_int : estimate);
    return out;
}

OJson derive_comparability(ObjectReader& r) {
    std::int64_t pairs = 0;
    if (const json* groups = r.find("group_sizes")) {
        auto sizes = int_list(*groups, r.at("group_sizes"));
        for (auto s : sizes) {
            if (s < 1) throw ValidationError(r.at("group_sizes"), "group sizes must be positive");
        }
        pairs = comparability_pair_count(sizes);
        if (r.find("pairs")) throw ValidationError(r.at("pairs"), "give either group_sizes or pairs");
    } else {
        pairs = count(r, "pairs");
    }
    const std::int64_t major = count(r, "major", 0);
    const std::int64_t medium = count(r, "medium", 0);
    const std::int64_t minor = count(r, "minor", 0);
    OJson out;
    out["M"] = pairs;
    out["level"] = level_json(comparability_score(major, medium, minor, pairs));
    return out;
}

OJson derive_importance(ObjectReader& r) {
    OJson out;
    std::optional<double> c;
    if (const json* boxes = r.find("boxes")) {
        BoxCounts counts;
        const std::string path = r.at("boxes");
        if (boxes->is_object()) {
            ObjectReader br(*boxes, path);
            counts = {{count(br, "n11", 0), count(br, "n12", 0)}, {count(br, "n21", 0), count(br, "n22", 0)}};
            br.finish();
        } else {
            for (std::size_t a = 0; a < array_at(*boxes, path).size(); ++a) {
                counts.push_back(int_list((*boxes)[a], path + "/" + std::to_string(a)));
                for (auto n : counts.back()) {
                    if (n < 0) throw ValidationError(path + "/" + std::to_string(a), "counts must be non-negative");
                }
            }
        }
        c = importance_pearson_boxes(counts);
    } else if (const json* iota = r.find("importance")) {
        auto importance = int_list(*iota, r.at("importance"));
        auto attention = int_list(r.required("attention"), r.at("attention"));
        c = importance_pearson(importance, attention);
    } else if (r.boolean_or("ranked", true)) {
        throw ValidationError(r.at("boxes"), "give boxes, importance/attention rank vectors, or ranked: false");
    }
    out["C"] = c ? OJson(*c) : OJson(nullptr);
    out["level"] = level_json(importance_score(c));
    return out;
}

OJson derive_balance(ObjectReader& r) {
    OJson out;
    out["level"] = balance_score(count(r, "weak_count"));
    return out;
}

OJson derive_searchability(ObjectReader& r) {
    const std::int64_t high = count(r, "high");
    const std::int64_t medium = count(r, "medium");
    const std::int64_t low = count(r, "low");
    OJson out;
    out["n"] = high + medium + low;
    out["level"] = searchability_score(high, medium, low);
    return out;
}

OJson derive_learnability(ObjectReader& r) {
    LearnabilityInputs in;
    in.learning_time_hours = rational_from_json(r.required("learning_time_hours"), r.at("learning_time_hours"));
    const std::string mode = r.string("learning_mode");
    const std::string effort = r.string("repeated_effort");
    in.learning_mode = with_path(r.at("learning_mode"), [&] { return learning_mode_from_token(mode); });
    in.repeated_effort = with_path(r.at("repeated_effort"), [&] { return repeated_effort_from_token(effort); });
    OJson out;
    out["level"] = learnability_score(in);
    return out;
}

OJson derive_memorability(ObjectReader& r) {
    const Rational p1 = rational_from_json(r.required("pct_1h"), r.at("pct_1h"));
    const Rational p24 = rational_from_json(r.required("pct_24h"), r.at("pct_24h"));
    OJson out;
    out["level"] = memorability_score(p1, p24);
    return out;
}

}  // namespace

OJson derive_level(CriterionId criterion, const json& inputs, const KnowledgeBase& kb) {
    ObjectReader r(inputs, "");
    OJson out;
    switch (criterion) {
        case CriterionId::typedness: out = derive_typedness(r, kb); break;
        case CriterionId::discernability: out = derive_discernability(r); break;
        case CriterionId::intuitiveness: out = derive_intuitiveness(r); break;
        case CriterionId::invariance_geometry: out = derive_geometry(r); break;
        case CriterionId::invariance_colorimetry: out = derive_colorimetry(r); break;
        case CriterionId::composition_separability: out = derive_separability(r); break;
        case CriterionId::composition_comparability: out = derive_comparability(r); break;
        case CriterionId::attention_importance: out = derive_importance(r); break;
        case CriterionId::attention_balance: out = derive_balance(r); break;
        case CriterionId::searchability: out = derive_searchability(r); break;
        case CriterionId::learnability: out = derive_learnability(r); break;
        case CriterionId::memorability: out = derive_memorability(r); break;
    }
    r.finish();
    OJson result;
    result["criterion"] = to_token(criterion);
    for (auto it = out.begin(); it != out.end(); ++it) result[it.key()] = it.value();
    return result;
}

}  // namespace glyphmcda
