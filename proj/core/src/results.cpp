#include "polariton/results.hpp"

#include "polariton/errors.hpp"
#include "polariton/format.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace polariton {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line, char sep)
{
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(line);
  while (std::getline(ss, item, sep))
    out.push_back(trim(item));
  return out;
}

double parse_number(const std::string& s)
{
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ValidationError("results: cannot parse number '" + s + "'");
  return v;
}

} // namespace

OutputFormat parse_output_format(const std::string& name)
{
  if (name == "csv")
    return OutputFormat::csv;
  if (name == "json")
    return OutputFormat::json;
  throw ValidationError("unknown output format '" + name + "' (expected csv or json)");
}

void ResultTable::set_meta(const std::string& key, const std::string& value)
{
  for (auto& [k, v] : metadata)
    if (k == key) {
      v = value;
      return;
    }
  metadata.emplace_back(key, value);
}

std::optional<std::string> ResultTable::meta(const std::string& key) const
{
  for (const auto& [k, v] : metadata)
    if (k == key)
      return v;
  return std::nullopt;
}

bool ResultTable::partial() const { return meta("partial").value_or("false") == "true"; }

void write_csv(const ResultTable& table, std::ostream& os)
{
  os << "# schema: " << csv_schema << '\n';
  for (const auto& [k, v] : table.metadata)
    os << "# " << k << ": " << v << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    os << (c ? "," : "") << table.columns[c];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      os << (c ? "," : "") << format_double(row[c]);
    os << '\n';
  }
}

ResultTable read_csv(std::istream& is)
{
  ResultTable t;
  std::string line;
  bool have_schema = false;
  while (std::getline(is, line)) {
    if (trim(line).empty())
      continue;
    if (line[0] == '#') {
      const std::string body = trim(std::string_view(line).substr(1));
      const auto colon = body.find(':');
      if (colon == std::string::npos)
        continue;
      const std::string key = trim(std::string_view(body).substr(0, colon));
      const std::string value = trim(std::string_view(body).substr(colon + 1));
      if (key == "schema") {
        if (value != csv_schema)
          throw ValidationError("results: unsupported CSV schema '" + value + "'");
        have_schema = true;
      } else {
        t.metadata.emplace_back(key, value);
      }
      continue;
    }
    if (t.columns.empty()) {
      t.columns = split(line, ',');
      continue;
    }
    std::vector<double> row;
    for (const auto& cell : split(line, ','))
      row.push_back(parse_number(cell));
    if (row.size() != t.columns.size())
      throw ValidationError("results: row width does not match the header");
    t.rows.push_back(std::move(row));
  }
  if (!have_schema || t.columns.empty())
    throw ValidationError("results: missing schema line or column header");
  return t;
}

void write_json(const ResultTable& table, std::ostream& os)
{
  ordered_json j;
  j["schema"] = json_schema;
  j["metadata"] = ordered_json::object();
  for (const auto& [k, v] : table.metadata)
    j["metadata"][k] = v;
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  os << j.dump(1) << '\n';
}

ResultTable read_json(std::istream& is)
{
  ordered_json j;
  ResultTable t;
  try {
    is >> j;
    if (j.value("schema", "") != json_schema)
      throw ValidationError("results: unsupported JSON schema");
    for (const auto& item : j.at("metadata").items())
      t.metadata.emplace_back(item.key(), item.value().get<std::string>());
    t.columns = j.at("columns").get<std::vector<std::string>>();
    t.rows = j.at("rows").get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("results: malformed JSON: ") + e.what());
  }
  return t;
}

void emit(const ResultTable& table, const std::filesystem::path& path, OutputFormat format)
{
  for (const auto& row : table.rows)
    for (double v : row)
      if (!std::isfinite(v))
        throw ValidationError("emit: refusing to write non-finite values");

  auto write = [&](std::ostream& os) {
    if (format == OutputFormat::csv)
      write_csv(table, os);
    else
      write_json(table, os);
  };
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os)
    throw IoError("emit: cannot open '" + path.string() + "' for writing");
  write(os);
  os.flush();
  if (!os)
    throw IoError("emit: write to '" + path.string() + "' failed");
}

} // namespace polariton
