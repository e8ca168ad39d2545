#pragma once

#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "museum/core/error.hpp"

namespace museum {

/// Reads fields out of a JSON object and, on finish(), rejects any field that
/// was not read. Errors carry `code` and a dotted path.
class StrictObject {
 public:
  StrictObject(const nlohmann::json& j, std::string path, ErrorCode code)
      : j_(j), path_(std::move(path)), code_(code) {
    if (!j_.is_object()) fail(path_ + " must be an object");
  }

  bool has(std::string_view key) const { return j_.contains(key); }

  const nlohmann::json& at(const std::string& key) {
    if (!j_.contains(key)) fail(path_ + "." + key + " is required");
    seen_.insert(key);
    return j_.at(key);
  }

  const nlohmann::json* maybe(const std::string& key) {
    if (!j_.contains(key)) return nullptr;
    seen_.insert(key);
    return &j_.at(key);
  }

  std::string str(const std::string& key) { return as_string(at(key), child(key)); }
  double number(const std::string& key) { return as_number(at(key), child(key)); }
  std::int64_t integer(const std::string& key) { return as_integer(at(key), child(key)); }
  bool boolean(const std::string& key) {
    const auto& v = at(key);
    if (!v.is_boolean()) fail(child(key) + " must be a boolean");
    return v.get<bool>();
  }

  std::string child(std::string_view key) const { return path_ + "." + std::string(key); }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) fail("unknown field " + path_ + "." + key);
    }
  }

  [[noreturn]] void fail(const std::string& message) const { throw Error(code_, message); }

  std::string as_string(const nlohmann::json& v, const std::string& where) const {
    if (!v.is_string()) fail(where + " must be a string");
    return v.get<std::string>();
  }
  double as_number(const nlohmann::json& v, const std::string& where) const {
    if (!v.is_number()) fail(where + " must be a number");
    return v.get<double>();
  }
  std::int64_t as_integer(const nlohmann::json& v, const std::string& where) const {
    if (!v.is_number_integer()) fail(where + " must be an integer");
    return v.get<std::int64_t>();
  }

 private:
  const nlohmann::json& j_;
  std::string path_;
  ErrorCode code_;
  std::set<std::string> seen_;
};

}  // namespace museum
