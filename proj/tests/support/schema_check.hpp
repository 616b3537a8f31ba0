#pragma once

#include <string>

#include <json.hpp>

namespace testutil {

// Validator for the draft-07 subset the shipped schema uses: type (string or
// list), properties/additionalProperties, required, items (single schema),
// enum. Returns an empty string on success, else the first violation path.
inline std::string schema_violation(const nlohmann::json& schema,
                                    const nlohmann::json& value,
                                    const std::string& path = "") {
  using nlohmann::json;
  auto type_matches = [&](const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "boolean") return value.is_boolean();
    if (type == "integer") return value.is_number_integer();
    if (type == "number") return value.is_number();
    if (type == "null") return value.is_null();
    return false;
  };

  if (schema.contains("type")) {
    const json& t = schema.at("type");
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(t.get<std::string>());
    } else {
      for (const auto& option : t)
        ok = ok || type_matches(option.get<std::string>());
    }
    if (!ok) return path + ": type mismatch (" + value.dump() + ")";
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& option : schema.at("enum")) ok = ok || option == value;
    if (!ok) return path + ": not in enum (" + value.dump() + ")";
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema.at("required"))
        if (!value.contains(key.get<std::string>()))
          return path + ": missing required key " + key.get<std::string>();
    }
    const json* props =
        schema.contains("properties") ? &schema.at("properties") : nullptr;
    for (auto it = value.begin(); it != value.end(); ++it) {
      if (props && props->contains(it.key())) {
        std::string err = schema_violation(props->at(it.key()), it.value(),
                                           path + "/" + it.key());
        if (!err.empty()) return err;
        continue;
      }
      if (schema.contains("additionalProperties")) {
        const json& extra = schema.at("additionalProperties");
        if (extra.is_boolean() && !extra.get<bool>())
          return path + ": unexpected key " + it.key();
        if (extra.is_object()) {
          std::string err =
              schema_violation(extra, it.value(), path + "/" + it.key());
          if (!err.empty()) return err;
        }
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      std::string err = schema_violation(schema.at("items"), value[i],
                                         path + "[" + std::to_string(i) + "]");
      if (!err.empty()) return err;
    }
  }
  return "";
}

}  // namespace testutil
