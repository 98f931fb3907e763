#ifndef NURSESIM_CSV_HPP
#define NURSESIM_CSV_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nursesim {

// Versioned column layout. The first line of every file is `#schema=<tag>`.
struct CsvSchema {
    std::string tag;
    std::vector<std::string> columns;
};

namespace schemas {
extern const CsvSchema threshold;  // a, J_short, se_short, J_long, se_long
extern const CsvSchema sweep;      // param, value, policy, J, se, improvement_pct
extern const CsvSchema clearing;   // i, j, a, c1, c2, diff, lemma2_pass
extern const CsvSchema tradeoff;   // alpha, beta, gamma, a, rule_chosen, avg_queue_all, avg_queue_hi
}  // namespace schemas

using CsvField = std::variant<double, std::int64_t, std::string, bool>;
using CsvRow = std::vector<CsvField>;

// 10 significant digits, "nan"/"inf"/"-inf" for non-finite values.
std::string format_number(double x);
std::string format_field(const CsvField& f);

// UTF-8, comma separated, LF line endings. Throws std::invalid_argument when
// a row's width differs from the schema and std::runtime_error when the file
// cannot be written.
void write_csv(const std::vector<CsvRow>& rows, const CsvSchema& schema, const std::string& path);

struct CsvFile {
    std::string schema_tag;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const;
};

CsvFile read_csv(const std::string& path);

// key=value lines, in the given order.
void write_manifest(const std::vector<std::pair<std::string, std::string>>& entries,
                    const std::string& path);

}  // namespace nursesim

#endif
