#pragma once

#include "model.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace glyphmcda {

enum class Suitability { inappropriate = 0, usable = 1, appropriate = 2 };

std::string_view to_token(Suitability v);
Suitability suitability_from_token(std::string_view token);

using KopRow = std::map<Kop, KopRating>;

/// Channel-kind -> KOP ratings table. Immutable once constructed.
class KnowledgeBase {
public:
    /// Parses the line-oriented table format shipped in data/kop_ratings.txt:
    /// a `version <n>` line, then `<channel-kind> <a> <s> <o> <q>` rows.
    /// Throws ValidationError naming the offending line.
    static KnowledgeBase parse(std::string_view text);

    /// The table compiled into the library.
    static const KnowledgeBase& builtin();

    /// Rows of `overrides` replace rows of this table.
    KnowledgeBase with_overrides(const KnowledgeBase& overrides) const;

    /// Throws CriterionInputError for `custom` or a kind missing from the table.
    KopRating rating(ChannelKind kind, Kop kop) const;
    const KopRow& row(ChannelKind kind) const;
    bool contains(ChannelKind kind) const { return rows_.count(kind) > 0; }

    int version() const { return version_; }
    const std::map<ChannelKind, KopRow>& rows() const { return rows_; }

private:
    int version_ = 0;
    std::map<ChannelKind, KopRow> rows_;
};

/// The text of the built-in table (generated from data/kop_ratings.txt).
std::string_view builtin_kop_table_text();

/// Applicable kinds of perception for a data type. `directional` has no
/// defined row and throws CriterionInputError.
std::set<Kop> akops_for(DataType type);

KopRating kop_rating(ChannelKind kind, Kop kop);

/// yes -> appropriate, no -> inappropriate; limited / can-be / maybe take the
/// override when given and default to usable.
Suitability suitability(KopRating rating, std::optional<Suitability> override_value = std::nullopt);

}  // namespace glyphmcda
