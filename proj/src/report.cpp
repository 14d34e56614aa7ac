/*
 * Copyright 2026 The UDA Hardness Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "uda/report.hpp"

#include <cmath>
#include <cstdio>

#include "uda/errors.hpp"

namespace uda {

std::string format_number(double v) {
  if (v == 0.0) return "0";  // collapses -0
  if (std::isnan(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
  return out;
}

namespace {

void escape_string(const std::string& s, std::string& out) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

void render_value(const ReportDoc& v, std::string& out) {
  switch (v.type()) {
    case nlohmann::detail::value_t::object: {
      out.push_back('{');
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        escape_string(it.key(), out);
        out.push_back(':');
        render_value(it.value(), out);
      }
      out.push_back('}');
      break;
    }
    case nlohmann::detail::value_t::array: {
      out.push_back('[');
      bool first = true;
      for (const auto& item : v) {
        if (!first) out.push_back(',');
        first = false;
        render_value(item, out);
      }
      out.push_back(']');
      break;
    }
    case nlohmann::detail::value_t::string:
      escape_string(v.get<std::string>(), out);
      break;
    case nlohmann::detail::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      break;
    case nlohmann::detail::value_t::number_integer:
      out += std::to_string(v.get<std::int64_t>());
      break;
    case nlohmann::detail::value_t::number_unsigned:
      out += std::to_string(v.get<std::uint64_t>());
      break;
    case nlohmann::detail::value_t::number_float:
      out += format_number(v.get<double>());
      break;
    default:
      out += "null";
  }
}

void render_csv_value(const ReportDoc& v, std::string& out) {
  std::string cell;
  switch (v.type()) {
    case nlohmann::detail::value_t::string: cell = v.get<std::string>(); break;
    case nlohmann::detail::value_t::boolean: cell = v.get<bool>() ? "true" : "false"; break;
    case nlohmann::detail::value_t::number_integer:
      cell = std::to_string(v.get<std::int64_t>());
      break;
    case nlohmann::detail::value_t::number_unsigned:
      cell = std::to_string(v.get<std::uint64_t>());
      break;
    case nlohmann::detail::value_t::number_float: cell = format_number(v.get<double>()); break;
    default: cell = "null";
  }
  const bool needs_quotes = cell.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quotes) {
    out += cell;
    return;
  }
  out.push_back('"');
  for (char c : cell) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
}

void flatten(const ReportDoc& v, const std::string& path, std::string& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    }
  } else if (v.is_array()) {
    std::size_t i = 0;
    for (const auto& item : v) {
      flatten(item, path + "." + std::to_string(i), out);
      ++i;
    }
  } else {
    out += path;
    out.push_back(',');
    render_csv_value(v, out);
    out.push_back('\n');
  }
}

}  // namespace

std::string render_json(const ReportDoc& doc) {
  std::string out;
  render_value(doc, out);
  out.push_back('\n');
  return out;
}

std::string render_csv(const ReportDoc& doc) {
  std::string out = "key,value\n";
  flatten(doc, "", out);
  return out;
}

ReportDoc make_report(const std::string& command, ReportDoc config, ReportDoc result) {
  ReportDoc doc = ReportDoc::object();
  doc["schema_version"] = "1";
  doc["command"] = command;
  doc["config"] = std::move(config);
  doc["result"] = std::move(result);
  return doc;
}

ReportDoc json_number_or_infinity(double v, bool is_infinite) {
  if (is_infinite || std::isinf(v)) return ReportDoc("Infinity");
  return ReportDoc(v);
}

}  // namespace uda
