#include "workspace.hpp"

#include "errors.hpp"
#include "serialization.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace glyphmcda {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kSheetSeparator = "__";

bool id_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' || c == '_' ||
           c == '-' || c == '+';
}

}  // namespace

void validate_id(const std::string& id, const std::string& path) {
    if (id.empty()) throw ValidationError(path, "id must be non-empty");
    if (id.front() == '.') throw ValidationError(path, "id must not start with '.'");
    if (!std::all_of(id.begin(), id.end(), id_char)) {
        throw ValidationError(path, "id \"" + id + "\" may only use letters, digits and . _ + -");
    }
    if (id.find(kSheetSeparator) != std::string::npos) throw ValidationError(path, "id must not contain \"__\"");
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr)) {
        throw IoError("SHA-256 computation failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read \"" + path.string() + "\"");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file_atomic(const fs::path& path, const std::string& text) {
    static std::atomic<unsigned> counter{0};
    const fs::path tmp = path.parent_path() / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()) +
                                               "." + std::to_string(counter++));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write \"" + tmp.string() + "\"");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        out.flush();
        if (!out) throw IoError("short write to \"" + tmp.string() + "\"");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot replace \"" + path.string() + "\"");
    }
}

Workspace::Workspace(fs::path root, bool create) : root_(std::move(root)) {
    std::error_code ec;
    if (create) {
        for (const char* sub : {"designs", "sheets", "reports"}) {
            fs::create_directories(root_ / sub, ec);
            if (ec) throw IoError("cannot create workspace directory \"" + (root_ / sub).string() + "\"");
        }
    } else if (!fs::is_directory(root_, ec)) {
        throw IoError("workspace \"" + root_.string() + "\" does not exist");
    }
}

fs::path Workspace::design_path(const std::string& id) const {
    validate_id(id, "/id");
    return root_ / "designs" / (id + ".json");
}

fs::path Workspace::sheet_path(const std::string& design, const std::string& assessor) const {
    validate_id(design, "/design");
    validate_id(assessor, "/assessor");
    return root_ / "sheets" / (design + std::string(kSheetSeparator) + assessor + ".json");
}

std::vector<std::string> Workspace::design_ids() const {
    std::vector<std::string> ids;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(root_ / "designs", ec)) {
        const auto name = entry.path().filename().string();
        if (entry.path().extension() == ".json" && name.front() != '.') ids.push_back(entry.path().stem().string());
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

bool Workspace::has_design(const std::string& id) const {
    return fs::exists(design_path(id));
}

GlyphDesign Workspace::get_design(const std::string& id) const {
    const fs::path p = design_path(id);
    if (!fs::exists(p)) throw NotFoundError("unknown design \"" + id + "\"");
    return parse_design(read_text_file(p));
}

std::string Workspace::design_revision(const std::string& id) const {
    const fs::path p = design_path(id);
    if (!fs::exists(p)) throw NotFoundError("unknown design \"" + id + "\"");
    return sha256_hex(read_text_file(p));
}

std::string Workspace::put_document(const fs::path& path, const std::string& text,
                                    const std::optional<std::string>& if_match) {
    std::lock_guard<std::mutex> lock(write_mutex_);
    if (if_match) {
        if (!fs::exists(path)) throw ConflictError("revision given for a document that does not exist yet");
        const std::string current = sha256_hex(read_text_file(path));
        if (current != *if_match) throw ConflictError("stale revision; document changed since it was read");
    }
    write_file_atomic(path, text);
    return sha256_hex(text);
}

std::string Workspace::put_design(const GlyphDesign& design, const std::optional<std::string>& if_match) {
    validate_id(design.id, "/id");
    const auto violations = validate_design(design);
    if (!violations.empty()) {
        throw ValidationError("/" + violations.front().field, violations.front().rule);
    }
    return put_document(design_path(design.id), serialize_design(design), if_match);
}

bool Workspace::has_sheet(const std::string& design, const std::string& assessor) const {
    return fs::exists(sheet_path(design, assessor));
}

ScoreSheet Workspace::get_sheet(const std::string& design, const std::string& assessor) const {
    const fs::path p = sheet_path(design, assessor);
    if (!fs::exists(p)) throw NotFoundError("no sheet for design \"" + design + "\" by \"" + assessor + "\"");
    return parse_sheet(read_text_file(p));
}

std::string Workspace::sheet_revision(const std::string& design, const std::string& assessor) const {
    const fs::path p = sheet_path(design, assessor);
    if (!fs::exists(p)) throw NotFoundError("no sheet for design \"" + design + "\" by \"" + assessor + "\"");
    return sha256_hex(read_text_file(p));
}

std::vector<std::string> Workspace::assessors_for(const std::string& design) const {
    validate_id(design, "/design");
    const std::string prefix = design + std::string(kSheetSeparator);
    std::vector<std::string> out;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(root_ / "sheets", ec)) {
        if (entry.path().extension() != ".json") continue;
        const std::string stem = entry.path().stem().string();
        if (stem.rfind(prefix, 0) == 0) out.push_back(stem.substr(prefix.size()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ScoreSheet> Workspace::sheets_for(const std::string& design) const {
    std::vector<ScoreSheet> out;
    for (const auto& who : assessors_for(design)) out.push_back(get_sheet(design, who));
    return out;
}

std::string Workspace::put_sheet(const ScoreSheet& sheet, const std::optional<std::string>& if_match) {
    const fs::path p = sheet_path(sheet.design_id, sheet.assessor);
    if (!has_design(sheet.design_id)) throw NotFoundError("unknown design \"" + sheet.design_id + "\"");
    return put_document(p, serialize_sheet(sheet), if_match);
}

fs::path Workspace::write_report(const std::string& name, const std::string& text) {
    validate_id(name, "/report");
    const fs::path p = root_ / "reports" / name;
    std::lock_guard<std::mutex> lock(write_mutex_);
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    write_file_atomic(p, text);
    return p;
}

}  // namespace glyphmcda
