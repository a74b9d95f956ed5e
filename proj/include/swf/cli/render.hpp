#pragma once

// A command result is one JSON document:
//   {"command": ..., "summary": {key: scalar}, "tables": [{name, title,
//    columns, rows}], "notes": [...]}
// Scalars are integers, strings, booleans, null, or exact eighths
// {"eighths": n, "value": "p/q"}. All three formats render from it.

#include "swf/floer.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace swf::cli {

using Result = nlohmann::ordered_json;

enum class Format { md, json, csv };

std::optional<Format> format_from_string(const std::string& s);

Result eighths_json(Eighths e);

std::string render(const Result& r, Format f);

} // namespace swf::cli
