#pragma once

#include "model.hpp"

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace glyphmcda {

/// Design, sheet and report store rooted at a directory:
///
///   <root>/designs/<id>.json
///   <root>/sheets/<design>__<assessor>.json
///   <root>/reports/<name>
///
/// Reads are lock-free. Writes are serialized, land via temp file + rename,
/// and can be made conditional on a revision token (SHA-256 of the stored
/// bytes) for optimistic concurrency.
class Workspace {
public:
    /// Creates the directory skeleton when `create` is set; otherwise the
    /// root must already exist (IoError).
    explicit Workspace(std::filesystem::path root, bool create = true);

    const std::filesystem::path& root() const { return root_; }

    std::vector<std::string> design_ids() const;
    bool has_design(const std::string& id) const;
    GlyphDesign get_design(const std::string& id) const;  // NotFoundError
    std::string design_revision(const std::string& id) const;

    /// Rejects designs with invariant violations (ValidationError). When
    /// `if_match` is set the stored revision must equal it (ConflictError).
    /// Returns the new revision.
    std::string put_design(const GlyphDesign& design, const std::optional<std::string>& if_match = std::nullopt);

    bool has_sheet(const std::string& design, const std::string& assessor) const;
    ScoreSheet get_sheet(const std::string& design, const std::string& assessor) const;
    std::string sheet_revision(const std::string& design, const std::string& assessor) const;
    std::vector<std::string> assessors_for(const std::string& design) const;
    std::vector<ScoreSheet> sheets_for(const std::string& design) const;

    /// The design must exist (NotFoundError). Same conflict rule as put_design.
    std::string put_sheet(const ScoreSheet& sheet, const std::optional<std::string>& if_match = std::nullopt);

    /// Writes a rendered report under reports/; returns its path.
    std::filesystem::path write_report(const std::string& name, const std::string& text);

private:
    std::filesystem::path design_path(const std::string& id) const;
    std::filesystem::path sheet_path(const std::string& design, const std::string& assessor) const;
    std::string put_document(const std::filesystem::path& path, const std::string& text,
                             const std::optional<std::string>& if_match);

    std::filesystem::path root_;
    std::mutex write_mutex_;
};

/// Ids usable as file-name components: [A-Za-z0-9._+-], not starting with
/// '.', without "__". Throws ValidationError at `path` otherwise.
void validate_id(const std::string& id, const std::string& path);

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(const std::string& bytes);

std::string read_text_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace glyphmcda
