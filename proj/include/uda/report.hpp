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

#pragma once

#include <string>

#include <json.hpp>

namespace uda {

// All reports are built as ordered JSON documents and rendered with a fixed
// number format so identical runs produce identical bytes.
using ReportDoc = nlohmann::ordered_json;

// 12 significant digits; -0 normalized to 0. Infinities must be encoded as
// the string "Infinity" by the caller before rendering.
std::string format_number(double v);

// JSON string literal including the surrounding quotes.
std::string json_escape(const std::string& s);

// Renders the document; doubles via format_number, field order as inserted.
std::string render_json(const ReportDoc& doc);

// Flattens the document to "key,value" lines with dotted paths (array
// indices as path segments), in document order; scalars rendered exactly as
// in the JSON body.
std::string render_csv(const ReportDoc& doc);

// Wraps a payload in the report envelope (schema_version, command, config,
// result).
ReportDoc make_report(const std::string& command, ReportDoc config, ReportDoc result);

// Helper: encodes possibly-infinite values ("Infinity" sentinel).
ReportDoc json_number_or_infinity(double v, bool is_infinite);

}  // namespace uda
