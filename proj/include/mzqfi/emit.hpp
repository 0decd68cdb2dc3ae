#ifndef MZQFI_EMIT_HPP
#define MZQFI_EMIT_HPP

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace mzqfi {

/// One table cell: a double (emitted with format_sci) or a string.
using Cell = std::variant<double, std::string>;

struct DataTable {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

/// Locale-independent scientific notation with 17 significant digits, enough
/// to round-trip any double exactly.
std::string format_sci(double v);

/// RFC-4180-style CSV with a mandatory header row and '\n' line endings.
void emit_csv(const DataTable& table, std::ostream& os);

/// JSON array of row objects; keys equal the CSV headers, numbers use the
/// same 17-digit format.
void emit_json(const DataTable& table, std::ostream& os);

/// Minimal JSON string escaping for error payloads.
std::string json_escape(const std::string& s);

} // namespace mzqfi

#endif
