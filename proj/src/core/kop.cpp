#include "kop.hpp"

#include "errors.hpp"

#include <sstream>
#include <vector>

namespace glyphmcda {

std::string_view to_token(Suitability v) {
    switch (v) {
        case Suitability::appropriate: return "appropriate";
        case Suitability::usable: return "usable";
        case Suitability::inappropriate: return "inappropriate";
    }
    return "?";
}

Suitability suitability_from_token(std::string_view token) {
    if (token == "appropriate") return Suitability::appropriate;
    if (token == "usable") return Suitability::usable;
    if (token == "inappropriate") return Suitability::inappropriate;
    throw ValidationError("", "unknown suitability \"" + std::string(token) + "\"");
}

KnowledgeBase KnowledgeBase::parse(std::string_view text) {
    KnowledgeBase kb;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool have_version = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;) tokens.push_back(t);
        if (tokens.empty()) continue;

        const std::string where = "line " + std::to_string(line_no);
        if (tokens[0] == "version") {
            if (tokens.size() != 2) throw ValidationError(where, "expected `version <n>`");
            try {
                kb.version_ = std::stoi(tokens[1]);
            } catch (const std::exception&) {
                throw ValidationError(where, "bad version \"" + tokens[1] + "\"");
            }
            have_version = true;
            continue;
        }
        if (!have_version) throw ValidationError(where, "table must start with a version line");
        if (tokens.size() != 5) throw ValidationError(where, "expected a channel kind and four ratings");
        try {
            ChannelKind kind = channel_kind_from_token(tokens[0]);
            if (kind == ChannelKind::custom) throw ValidationError("", "custom channels have no table row");
            if (kb.rows_.count(kind)) throw ValidationError("", "duplicate row \"" + tokens[0] + "\"");
            KopRow row;
            for (std::size_t i = 0; i < kAllKops.size(); ++i) {
                row[kAllKops[i]] = kop_rating_from_token(tokens[i + 1]);
            }
            kb.rows_[kind] = row;
        } catch (const ValidationError& e) {
            throw ValidationError(where, e.what());
        }
    }
    if (!have_version) throw ValidationError("", "missing version line");
    return kb;
}

const KnowledgeBase& KnowledgeBase::builtin() {
    static const KnowledgeBase kb = parse(builtin_kop_table_text());
    return kb;
}

KnowledgeBase KnowledgeBase::with_overrides(const KnowledgeBase& overrides) const {
    KnowledgeBase merged = *this;
    for (const auto& [kind, row] : overrides.rows_) merged.rows_[kind] = row;
    return merged;
}

const KopRow& KnowledgeBase::row(ChannelKind kind) const {
    if (kind == ChannelKind::custom) throw CriterionInputError("no knowledge-base entry for custom channels");
    auto it = rows_.find(kind);
    if (it == rows_.end()) {
        throw CriterionInputError("no knowledge-base entry for \"" + std::string(to_token(kind)) + "\"");
    }
    return it->second;
}

KopRating KnowledgeBase::rating(ChannelKind kind, Kop kop) const { return row(kind).at(kop); }

std::set<Kop> akops_for(DataType type) {
    switch (type) {
        case DataType::nominal:
            return {Kop::associative, Kop::selective};
        case DataType::ordinal:
            return {Kop::associative, Kop::selective, Kop::ordered};
        case DataType::interval:
        case DataType::ratio:
            return {Kop::associative, Kop::selective, Kop::ordered, Kop::quantitative};
        case DataType::directional:
            break;
    }
    throw CriterionInputError("AKOP set undefined for directional; supply explicitly");
}

KopRating kop_rating(ChannelKind kind, Kop kop) { return KnowledgeBase::builtin().rating(kind, kop); }

Suitability suitability(KopRating rating, std::optional<Suitability> override_value) {
    switch (rating) {
        case KopRating::yes: return Suitability::appropriate;
        case KopRating::no: return Suitability::inappropriate;
        case KopRating::limited:
        case KopRating::can_be:
        case KopRating::maybe:
            return override_value.value_or(Suitability::usable);
    }
    return Suitability::usable;
}

}  // namespace glyphmcda
