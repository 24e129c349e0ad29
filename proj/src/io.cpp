#include "bireco/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "bireco/error.hpp"

namespace bireco {

namespace {

struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

std::vector<CsvRecord> split_csv(std::string_view text) {
  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  std::size_t line = 1;
  current.line = 1;
  bool in_quotes = false;
  bool field_started = false;

  auto end_record = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    const bool blank = current.fields.size() == 1 && current.fields[0].empty() && !field_started;
    if (!blank) records.push_back(std::move(current));
    current = CsvRecord{};
    field_started = false;
  };

  for (std::size_t k = 0; k < text.size(); ++k) {
    const char ch = text[k];
    if (in_quotes) {
      if (ch == '"') {
        if (k + 1 < text.size() && text[k + 1] == '"') {
          field.push_back('"');
          ++k;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        current.fields.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        if (k + 1 < text.size() && text[k + 1] == '\n') break;
        field.push_back(ch);
        break;
      case '\n':
        end_record();
        ++line;
        current.line = line;
        break;
      default:
        field.push_back(ch);
        field_started = true;
    }
  }
  if (in_quotes) throw Error(ErrorCode::kParseError, "unterminated quoted field", line);
  if (field_started || !field.empty() || !current.fields.empty()) end_record();
  return records;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::vector<std::size_t> resolve_columns(const std::vector<std::string>& spec,
                                         const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  const std::size_t width = names.size();
  if (spec.empty()) {
    for (std::size_t c = 0; c < width; ++c) out.push_back(c);
    return out;
  }
  auto number = [&](std::string_view s) {
    const std::size_t v = std::stoul(std::string(s));
    if (v < 1 || v > width) {
      throw Error(ErrorCode::kInvalidOptions,
                  "column number " + std::string(s) + " is outside 1.." + std::to_string(width));
    }
    return v - 1;
  };
  for (const auto& item : spec) {
    auto named = std::find(names.begin(), names.end(), item);
    if (named != names.end()) {
      out.push_back(static_cast<std::size_t>(named - names.begin()));
      continue;
    }
    if (all_digits(item)) {
      out.push_back(number(item));
      continue;
    }
    const auto dash = item.find('-');
    if (dash != std::string::npos && all_digits(item.substr(0, dash)) &&
        all_digits(item.substr(dash + 1))) {
      const std::size_t lo = number(item.substr(0, dash));
      const std::size_t hi = number(item.substr(dash + 1));
      if (lo > hi) throw Error(ErrorCode::kInvalidOptions, "empty column range " + item);
      for (std::size_t c = lo; c <= hi; ++c) out.push_back(c);
      continue;
    }
    throw Error(ErrorCode::kInvalidOptions, "unknown column '" + item + "'");
  }
  return out;
}

}  // namespace

Dataset parse_dataset_csv(std::string_view text, const CsvOptions& options) {
  auto records = split_csv(text);
  if (records.empty()) throw Error(ErrorCode::kParseError, "CSV file is empty", 0);
  const std::size_t width = records.front().fields.size();
  for (const auto& rec : records) {
    if (rec.fields.size() != width) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(rec.line) + ": expected " + std::to_string(width) +
                      " fields, found " + std::to_string(rec.fields.size()),
                  rec.line);
    }
  }

  std::vector<std::string> names;
  std::size_t first_row = 0;
  if (options.header) {
    names = records.front().fields;
    first_row = 1;
  } else {
    for (std::size_t c = 0; c < width; ++c) names.push_back("c" + std::to_string(c));
  }

  const auto selected = resolve_columns(options.columns, names);
  if (selected.empty()) throw Error(ErrorCode::kInvalidOptions, "no columns selected");

  std::vector<std::string> column_names;
  for (auto c : selected) column_names.push_back(names[c]);
  std::vector<ValueVector> rows;
  rows.reserve(records.size() - first_row);
  for (std::size_t r = first_row; r < records.size(); ++r) {
    ValueVector row;
    row.reserve(selected.size());
    for (auto c : selected) row.push_back(records[r].fields[c]);
    rows.push_back(std::move(row));
  }
  return Dataset(std::move(column_names), std::move(rows));
}

Dataset load_dataset_csv(const std::filesystem::path& path, const CsvOptions& options) {
  return parse_dataset_csv(read_file(path), options);
}

std::string canonical_dump(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

nlohmann::json projections_to_json(const ProjectionSet& projections) {
  nlohmann::json doc;
  doc["dimension"] = projections.dimension();
  doc["columns"] = projections.column_names();
  auto pairs = nlohmann::json::array();
  for (const auto& pair : projections.pairs()) {
    auto points = nlohmann::json::array();
    for (const auto& [key, count] : pair.counts) {
      points.push_back({projections.domain(pair.i).token(key.first),
                        projections.domain(pair.j).token(key.second), count});
    }
    pairs.push_back({{"i", pair.i}, {"j", pair.j}, {"points", std::move(points)}});
  }
  doc["pairs"] = std::move(pairs);
  return doc;
}

std::string serialize_projections(const ProjectionSet& projections) {
  return canonical_dump(projections_to_json(projections));
}

ProjectionSet projections_from_json(const nlohmann::json& doc) {
  auto fail = [](const std::string& what) -> void {
    throw Error(ErrorCode::kParseError, "projection file: " + what);
  };
  if (!doc.is_object()) fail("top level must be an object");
  if (!doc.contains("dimension") || !doc["dimension"].is_number_unsigned()) {
    fail("'dimension' must be a non-negative integer");
  }
  const auto dim = doc["dimension"].get<std::size_t>();
  if (!doc.contains("columns") || !doc["columns"].is_array()) fail("'columns' must be an array");
  std::vector<std::string> names;
  for (const auto& c : doc["columns"]) {
    if (!c.is_string()) fail("column names must be strings");
    names.push_back(c.get<std::string>());
  }
  if (names.size() != dim) fail("'columns' length does not match 'dimension'");
  if (!doc.contains("pairs") || !doc["pairs"].is_array()) fail("'pairs' must be an array");

  struct RawPair {
    std::size_t i, j;
    std::vector<std::tuple<std::string, std::string, std::uint64_t>> points;
  };
  std::vector<RawPair> raw;
  std::vector<std::set<std::string>> tokens(dim);
  for (const auto& p : doc["pairs"]) {
    if (!p.is_object() || !p.contains("i") || !p.contains("j") || !p.contains("points")) {
      fail("each pair needs 'i', 'j' and 'points'");
    }
    if (!p["i"].is_number_unsigned() || !p["j"].is_number_unsigned()) {
      fail("pair indices must be non-negative integers");
    }
    RawPair rp{p["i"].get<std::size_t>(), p["j"].get<std::size_t>(), {}};
    if (rp.i >= dim || rp.j >= dim || rp.i >= rp.j) {
      fail("pair (" + std::to_string(rp.i) + "," + std::to_string(rp.j) +
           ") must satisfy i < j < dimension");
    }
    if (!p["points"].is_array()) fail("'points' must be an array");
    for (const auto& pt : p["points"]) {
      if (!pt.is_array() || pt.size() != 3 || !pt[0].is_string() || !pt[1].is_string() ||
          !pt[2].is_number_unsigned()) {
        fail("points must be [token, token, multiplicity] with string tokens");
      }
      rp.points.emplace_back(pt[0].get<std::string>(), pt[1].get<std::string>(),
                             pt[2].get<std::uint64_t>());
      tokens[rp.i].insert(pt[0].get<std::string>());
      tokens[rp.j].insert(pt[1].get<std::string>());
    }
    raw.push_back(std::move(rp));
  }

  std::vector<ColumnDomain> domains;
  for (auto& t : tokens) domains.emplace_back(std::vector<Token>(t.begin(), t.end()));
  std::vector<PairProjection> pairs;
  for (const auto& rp : raw) {
    PairProjection pair{rp.i, rp.j, {}};
    for (const auto& [a, b, count] : rp.points) {
      const auto key = std::make_pair(*domains[rp.i].code_of(a), *domains[rp.j].code_of(b));
      if (!pair.counts.emplace(key, count).second) {
        fail("duplicate point (" + a + ", " + b + ") in pair (" + std::to_string(rp.i) + "," +
             std::to_string(rp.j) + ")");
      }
    }
    pairs.push_back(std::move(pair));
  }
  return ProjectionSet(std::move(names), std::move(domains), std::move(pairs));
}

ProjectionSet parse_projections(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError, std::string("projection file: ") + e.what(), e.byte);
  }
  return projections_from_json(doc);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kInvalidOptions, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::kInvalidOptions, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace bireco
