#pragma once

#include "kop.hpp"
#include "model.hpp"

#include <nlohmann/json.hpp>

namespace glyphmcda {

/// Derives a criterion's level from its raw input record and echoes the
/// intermediate quantities (C, avg_int, M, ...). The result always ends with
/// a "level" field, which is null for criteria that do not apply.
///
/// Malformed records raise ValidationError with a path; records the level
/// function cannot score raise CriterionInputError.
nlohmann::ordered_json derive_level(CriterionId criterion, const nlohmann::json& inputs,
                                    const KnowledgeBase& kb = KnowledgeBase::builtin());

}  // namespace glyphmcda
