#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bireco/model.hpp"

namespace bireco {

struct CsvOptions {
  bool header = true;
  // Each entry is a header name, a 1-based column number, or an inclusive
  // 1-based range such as "3-8". Empty selects every column.
  std::vector<std::string> columns;
};

// RFC 4180 subset: comma separated, double-quoted fields with "" escapes,
// LF or CRLF line ends. Tokens are kept verbatim. Throws Error(kParseError)
// with the 1-based line number as detail on ragged rows.
Dataset parse_dataset_csv(std::string_view text, const CsvOptions& options);
Dataset load_dataset_csv(const std::filesystem::path& path, const CsvOptions& options);

// Canonical text form: 2-space indented, keys sorted, trailing newline.
std::string canonical_dump(const nlohmann::json& doc);

nlohmann::json projections_to_json(const ProjectionSet& projections);
std::string serialize_projections(const ProjectionSet& projections);
// Throws Error(kParseError) on malformed documents. Consistency is not
// checked here; see validate_projections().
ProjectionSet projections_from_json(const nlohmann::json& doc);
ProjectionSet parse_projections(std::string_view text);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace bireco
