#include "aggregation.hpp"

#include "errors.hpp"

#include <algorithm>
#include <numeric>

namespace glyphmcda {

Rational aggregate_type_a(const std::vector<Rational>& entries) {
    if (entries.empty()) throw CriterionInputError("no per-variable scores to aggregate");
    Rational sum = std::accumulate(entries.begin(), entries.end(), Rational(0));
    return sum / static_cast<std::int64_t>(entries.size());
}

std::optional<Rational> type_d_score(const CriterionAssessment& a) {
    switch (a.mode) {
        case AssessmentMode::null:
            return std::nullopt;
        case AssessmentMode::direct:
            return a.direct_score;
        case AssessmentMode::aggregated: {
            std::vector<Rational> scores;
            scores.reserve(a.variable_entries.size());
            for (const auto& e : a.variable_entries) scores.push_back(e.score);
            return aggregate_type_a(scores);
        }
    }
    return std::nullopt;
}

AssessmentReport weighted_average(const ScoreSheet& sheet) {
    validate_sheet(sheet);

    AssessmentReport report;
    report.design_id = sheet.design_id;
    Rational weighted_sum{0};
    bool any_scored = false;
    for (const auto& a : sheet.assessments) {
        CriterionResult r;
        r.criterion = a.criterion;
        r.weight = a.weight;
        r.score = type_d_score(a);
        r.weight_overridden = r.score.has_value() && a.weight != default_weight(a.criterion);
        if (r.score) {
            any_scored = true;
            report.total_weight += a.weight;
            weighted_sum += a.weight * *r.score;
        }
        report.per_criterion.push_back(r);
    }
    if (!any_scored) throw CriterionInputError("every criterion is null; nothing to average");
    if (report.total_weight == 0) throw CriterionInputError("total weight of scored criteria is zero");
    report.weighted_average = weighted_sum / report.total_weight;

    if (sheet.provenance) {
        report.merge_mode = sheet.provenance->merge_mode;
        report.assessor_set = sheet.provenance->assessors;
    } else {
        report.merge_mode = MergeMode::single;
        report.assessor_set = {sheet.assessor};
    }
    return report;
}

ScoreSheet merge_sheets(const std::vector<ScoreSheet>& sheets, const MergePolicy& policy) {
    if (sheets.empty()) throw ValidationError("", "no sheets to merge");
    for (const auto& s : sheets) validate_sheet(s);

    const ScoreSheet& first = sheets.front();
    for (std::size_t i = 1; i < sheets.size(); ++i) {
        const ScoreSheet& s = sheets[i];
        if (s.design_id != first.design_id) {
            throw ValidationError("/design", "cannot merge sheets for different designs (\"" + first.design_id +
                                                 "\" vs \"" + s.design_id + "\")");
        }
        for (std::size_t c = 0; c < kCriterionCount; ++c) {
            const auto& a = first.assessments[c];
            const auto& b = s.assessments[c];
            const std::string path = "/assessments/" + std::to_string(c);
            if (a.weight != b.weight) {
                throw ValidationError(path + "/weight", "weight mismatch for \"" +
                                                            std::string(to_token(a.criterion)) + "\"");
            }
            if ((a.mode == AssessmentMode::null) != (b.mode == AssessmentMode::null)) {
                throw ValidationError(path + "/mode", "criterion \"" + std::string(to_token(a.criterion)) +
                                                          "\" is null for some assessors only");
            }
        }
    }

    ScoreSheet merged;
    merged.design_id = first.design_id;
    merged.schema_version = std::string(kSchemaVersion);
    Provenance provenance;
    provenance.merge_mode = policy.mode;
    provenance.note = policy.note;
    for (const auto& s : sheets) {
        // nested merges flatten to the underlying assessors
        if (s.provenance) {
            for (const auto& who : s.provenance->assessors) provenance.assessors.push_back(who);
        } else {
            provenance.assessors.push_back(s.assessor);
        }
        merged.timestamp = std::max(merged.timestamp, s.timestamp);
    }
    for (std::size_t i = 0; i < provenance.assessors.size(); ++i) {
        merged.assessor += (i ? "+" : "") + provenance.assessors[i];
    }

    if (policy.mode == MergeMode::consensus) {
        for (const auto& [id, score] : policy.agreed_scores) {
            if (first.at(id).mode == AssessmentMode::null) {
                throw ValidationError("/scores/" + std::string(to_token(id)),
                                      "agreed score given for a null criterion");
            }
            if (!is_valid_level(score)) {
                throw ValidationError("/scores/" + std::string(to_token(id)),
                                      "score " + to_canonical_string(score) + " outside [1, 5]");
            }
        }
    } else if (policy.mode != MergeMode::mean) {
        throw ValidationError("/merge", "merge policy must be mean or consensus");
    }

    for (std::size_t c = 0; c < kCriterionCount; ++c) {
        const CriterionId id = all_criteria()[c];
        CriterionAssessment out;
        out.criterion = id;
        out.weight = first.assessments[c].weight;
        if (first.assessments[c].mode == AssessmentMode::null) {
            out.mode = AssessmentMode::null;
        } else if (policy.mode == MergeMode::mean) {
            Rational sum{0};
            for (const auto& s : sheets) sum += *type_d_score(s.assessments[c]);
            out.mode = AssessmentMode::direct;
            out.direct_score = sum / static_cast<std::int64_t>(sheets.size());
        } else {
            auto it = policy.agreed_scores.find(id);
            if (it == policy.agreed_scores.end()) {
                throw ValidationError("/scores/" + std::string(to_token(id)),
                                      "consensus requires an agreed score for every non-null criterion");
            }
            out.mode = AssessmentMode::direct;
            out.direct_score = it->second;
        }
        merged.assessments.push_back(std::move(out));
    }
    merged.provenance = std::move(provenance);
    validate_sheet(merged);
    return merged;
}

Ranking compare_designs(const std::vector<AssessmentReport>& reports) {
    if (reports.size() < 2) throw ValidationError("", "comparison needs at least two designs");

    std::vector<const AssessmentReport*> sorted;
    for (const auto& r : reports) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](const AssessmentReport* a, const AssessmentReport* b) {
        if (a->weighted_average != b->weighted_average) return a->weighted_average > b->weighted_average;
        return a->design_id < b->design_id;
    });

    Ranking ranking;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        RankedDesign entry;
        entry.design_id = sorted[i]->design_id;
        entry.weighted_average = sorted[i]->weighted_average;
        entry.total_weight = sorted[i]->total_weight;
        entry.rank = (i > 0 && sorted[i - 1]->weighted_average == sorted[i]->weighted_average)
                         ? ranking.order.back().rank
                         : static_cast<int>(i) + 1;
        ranking.order.push_back(entry);
    }

    for (std::size_t c = 0; c < kCriterionCount; ++c) {
        CriterionProfile p;
        p.criterion = all_criteria()[c];
        const auto leader = sorted.front()->per_criterion.at(c).score;
        for (const auto* r : sorted) {
            const auto score = r->per_criterion.at(c).score;
            p.scores.push_back(score);
            if (score && leader) {
                p.delta_to_leader.push_back(*score - *leader);
            } else {
                p.delta_to_leader.push_back(std::nullopt);
            }
        }
        ranking.profile.push_back(std::move(p));
    }
    return ranking;
}

}  // namespace glyphmcda
