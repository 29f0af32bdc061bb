#ifndef TSOU_REPORT_IO_HPP
#define TSOU_REPORT_IO_HPP

#include <ostream>
#include <string>

#include "tsou/bench.hpp"
#include "tsou/ou.hpp"
#include "tsou/validation.hpp"

namespace tsou {

// "-" streams to stdout.  CSV is RFC-4180-style with a header row and 17
// significant digits; JSON keeps insertion order.
void write_path_csv(const PathMatrix& paths, const std::string& out);
void write_path_csv(const PathMatrix& paths, std::ostream& os);

void write_report_csv(const ValidationReport& report, const std::string& out);
void write_report_json(const ValidationReport& report, const std::string& out);
std::string report_json_string(const ValidationReport& report);

void write_bench_csv(const BenchReport& report, const std::string& out);
void write_bench_json(const BenchReport& report, const std::string& out);

void write_values_csv(const std::vector<double>& values,
                      const std::string& column, const std::string& out);

// Companion matplotlib script that plots one series per path column of the
// given CSV.
void write_plot_script(const std::string& csv_path, int n_series,
                       const std::string& out);

std::string format_full(double value);  // 17 significant digits

}  // namespace tsou

#endif  // TSOU_REPORT_IO_HPP
