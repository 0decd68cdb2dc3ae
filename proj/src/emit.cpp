#include "mzqfi/emit.hpp"

#include <cstdio>

namespace mzqfi {

std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

namespace {

bool needs_csv_quotes(const std::string& s) {
    return s.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_field(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_sci(std::get<double>(c));
    const std::string& s = std::get<std::string>(c);
    if (!needs_csv_quotes(s)) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

} // namespace

void emit_csv(const DataTable& table, std::ostream& os) {
    for (std::size_t k = 0; k < table.header.size(); ++k) {
        if (k) os << ',';
        os << table.header[k];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) os << ',';
            os << csv_field(row[k]);
        }
        os << '\n';
    }
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

void emit_json(const DataTable& table, std::ostream& os) {
    os << "[\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        os << "  {";
        const auto& row = table.rows[r];
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) os << ", ";
            os << '"' << json_escape(table.header[k]) << "\": ";
            if (std::holds_alternative<double>(row[k]))
                os << format_sci(std::get<double>(row[k]));
            else
                os << '"' << json_escape(std::get<std::string>(row[k])) << '"';
        }
        os << (r + 1 < table.rows.size() ? "},\n" : "}\n");
    }
    os << "]\n";
}

} // namespace mzqfi
