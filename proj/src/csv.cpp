#include "nursesim/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nursesim {

namespace schemas {
const CsvSchema threshold{"threshold/v1", {"a", "J_short", "se_short", "J_long", "se_long"}};
const CsvSchema sweep{"sweep/v1", {"param", "value", "policy", "J", "se", "improvement_pct"}};
const CsvSchema clearing{"clearing/v1", {"i", "j", "a", "c1", "c2", "diff", "lemma2_pass"}};
const CsvSchema tradeoff{"tradeoff/v1",
                         {"alpha", "beta", "gamma", "a", "rule_chosen", "avg_queue_all", "avg_queue_hi"}};
}  // namespace schemas

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string format_field(const CsvField& f) {
    struct Visitor {
        std::string operator()(double x) const { return format_number(x); }
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(const std::string& s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char c : s) {
                if (c == '"') q += '"';
                q += c;
            }
            return q + "\"";
        }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    };
    return std::visit(Visitor{}, f);
}

void write_csv(const std::vector<CsvRow>& rows, const CsvSchema& schema, const std::string& path) {
    std::ostringstream out;
    out << "#schema=" << schema.tag << '\n';
    for (std::size_t c = 0; c < schema.columns.size(); ++c) out << (c ? "," : "") << schema.columns[c];
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != schema.columns.size())
            throw std::invalid_argument("csv row has " + std::to_string(row.size()) + " fields, schema " +
                                        schema.tag + " has " + std::to_string(schema.columns.size()));
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_field(row[c]);
        out << '\n';
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    const std::string text = out.str();
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char c = line[k];
        if (quoted) {
            if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
                cur += '"';
                ++k;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

}  // namespace

std::size_t CsvFile::column(const std::string& name) const {
    for (std::size_t c = 0; c < header.size(); ++c)
        if (header[c] == name) return c;
    throw std::out_of_range("csv has no column '" + name + "'");
}

CsvFile read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    CsvFile out;
    std::string line;
    bool have_header = false;
    while (std::getline(f, line)) {
        if (line.rfind("#schema=", 0) == 0) {
            out.schema_tag = line.substr(8);
            continue;
        }
        if (!line.empty() && line[0] == '#') continue;
        if (!have_header) {
            out.header = split_line(line);
            have_header = true;
        } else {
            out.rows.push_back(split_line(line));
        }
    }
    return out;
}

void write_manifest(const std::vector<std::pair<std::string, std::string>>& entries,
                    const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    for (const auto& [k, v] : entries) f << k << '=' << v << '\n';
    if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace nursesim
