#pragma once

// Internal helpers for reading JSON documents with path-qualified errors.

#include "errors.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>

namespace glyphmcda {

using nlohmann::json;

// Walks one JSON object, remembering which keys were read so leftovers can
// be reported as unknown fields.
class ObjectReader {
public:
    ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw ValidationError(path_.empty() ? "/" : path_, "expected an object");
    }

    std::string at(const std::string& key) const { return path_ + "/" + key; }

    const json* find(const std::string& key) {
        seen_.insert(key);
        auto it = obj_.find(key);
        if (it == obj_.end() || it->is_null()) return nullptr;
        return &*it;
    }

    const json& required(const std::string& key) {
        const json* v = find(key);
        if (!v) throw ValidationError(at(key), "required field is missing");
        return *v;
    }

    std::string string(const std::string& key) {
        return as_string(required(key), at(key));
    }

    std::string string_or(const std::string& key, std::string fallback) {
        const json* v = find(key);
        return v ? as_string(*v, at(key)) : fallback;
    }

    std::int64_t integer(const std::string& key) { return as_integer(required(key), at(key)); }

    std::optional<std::int64_t> optional_integer(const std::string& key) {
        const json* v = find(key);
        if (!v) return std::nullopt;
        return as_integer(*v, at(key));
    }

    bool boolean_or(const std::string& key, bool fallback) {
        const json* v = find(key);
        if (!v) return fallback;
        if (!v->is_boolean()) throw ValidationError(at(key), "expected true or false");
        return v->get<bool>();
    }

    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (!seen_.count(it.key())) throw ValidationError(at(it.key()), "unknown field");
        }
    }

    static std::string as_string(const json& v, const std::string& path) {
        if (!v.is_string()) throw ValidationError(path, "expected a string");
        return v.get<std::string>();
    }

    static std::int64_t as_integer(const json& v, const std::string& path) {
        if (!v.is_number_integer()) throw ValidationError(path, "expected an integer");
        return v.get<std::int64_t>();
    }

private:
    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

inline const json& array_at(const json& v, const std::string& path) {
    if (!v.is_array()) throw ValidationError(path, "expected an array");
    return v;
}

// Re-raises token errors with the document location attached.
template <typename F>
auto with_path(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ValidationError& e) {
        if (!e.path().empty()) throw;
        throw ValidationError(path, e.what());
    }
}

}  // namespace glyphmcda
