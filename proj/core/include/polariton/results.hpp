#ifndef POLARITON_RESULTS_HPP
#define POLARITON_RESULTS_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polariton {

enum class OutputFormat
{
  csv,
  json,
};

OutputFormat parse_output_format(const std::string& name);

/// Tabular experiment output with ordered metadata.
///
/// CSV layout (schema polariton-csv/1):
///
///   # schema: polariton-csv/1
///   # <key>: <value>            one line per metadata entry, in order
///   k,n_lower,n_upper           column header
///   0.1,1.2e-05,3.4e-04         rows, 17 significant digits
///
/// JSON mirrors the same content: {"schema", "metadata": {key: value, ...},
/// "columns", "rows"}, metadata in the same order.
struct ResultTable
{
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void set_meta(const std::string& key, const std::string& value);
  std::optional<std::string> meta(const std::string& key) const;

  /// True when a row failed and the table stops before the end of its grid.
  bool partial() const;
};

inline constexpr const char* csv_schema = "polariton-csv/1";
inline constexpr const char* json_schema = "polariton-json/1";

void write_csv(const ResultTable& table, std::ostream& os);
ResultTable read_csv(std::istream& is);
void write_json(const ResultTable& table, std::ostream& os);
ResultTable read_json(std::istream& is);

/// Writes the table to `path` (or stdout for an empty path). Throws Error
/// with the path in the message on I/O failure.
void emit(const ResultTable& table, const std::filesystem::path& path, OutputFormat format);

} // namespace polariton

#endif // POLARITON_RESULTS_HPP
