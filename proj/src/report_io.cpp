#include "tsou/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "tsou/numeric.hpp"

namespace tsou {

namespace {

using ordered_json = nlohmann::ordered_json;

void write_text(const std::string& text, const std::string& out) {
  if (out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(out);
  if (!file) {
    throw std::runtime_error("cannot open for writing: " + out);
  }
  file << text;
  if (!file) {
    throw std::runtime_error("write failed: " + out);
  }
}

}  // namespace

std::string format_full(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_path_csv(const PathMatrix& paths, std::ostream& os) {
  os << "t";
  for (int p = 0; p < paths.n_paths; ++p) {
    os << ",path_" << p;
  }
  os << "\n";
  const auto times = paths.times();
  for (int step = 0; step <= paths.n_steps; ++step) {
    os << format_full(times[static_cast<std::size_t>(step)]);
    for (int p = 0; p < paths.n_paths; ++p) {
      os << ',' << format_full(paths.at(p, step));
    }
    os << "\n";
  }
}

void write_path_csv(const PathMatrix& paths, const std::string& out) {
  if (out == "-") {
    write_path_csv(paths, std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(out);
  if (!file) {
    throw std::runtime_error("cannot open for writing: " + out);
  }
  write_path_csv(paths, file);
  if (!file) {
    throw std::runtime_error("write failed: " + out);
  }
}

void write_report_csv(const ValidationReport& report, const std::string& out) {
  std::string text =
      "target,method,seed,n,build,order,true,estimate,err_pct,se,tolerance_pct,"
      "absolute_fallback,passed\n";
  for (const auto& r : report.records) {
    text += report.target + ',' + report.method + ',' +
            std::to_string(report.seed) + ',' + std::to_string(report.n) +
            ',' + report.build + ',' + std::to_string(r.order) + ',' +
            format_full(r.true_value) + ',' + format_full(r.estimate) + ',' +
            format_full(r.err_pct) + ',' + format_full(r.se) + ',' +
            format_full(r.tolerance_pct) + ',' +
            (r.absolute_fallback ? "true" : "false") + ',' +
            (r.passed ? "true" : "false") + "\n";
  }
  write_text(text, out);
}

std::string report_json_string(const ValidationReport& report) {
  ordered_json j;
  j["target"] = report.target;
  j["method"] = report.method;
  j["seed"] = report.seed;
  j["n"] = report.n;
  j["build"] = report.build;
  j["records"] = ordered_json::array();
  for (const auto& r : report.records) {
    ordered_json rec;
    rec["order"] = r.order;
    rec["true"] = r.true_value;
    rec["estimate"] = r.estimate;
    rec["err_pct"] = r.err_pct;
    rec["se"] = r.se;
    rec["tolerance_pct"] = r.tolerance_pct;
    rec["absolute_fallback"] = r.absolute_fallback;
    rec["passed"] = r.passed;
    j["records"].push_back(rec);
  }
  j["all_passed"] = report.all_passed();
  return j.dump(2) + "\n";
}

void write_report_json(const ValidationReport& report, const std::string& out) {
  write_text(report_json_string(report), out);
}

void write_bench_csv(const BenchReport& report, const std::string& out) {
  std::string text = "distribution,baseline,seed,repetitions,machine,method,n,"
                     "seconds,factor\n";
  for (const auto& e : report.entries) {
    text += report.distribution + ',' + report.baseline + ',' +
            std::to_string(report.seed) + ',' +
            std::to_string(report.repetitions) + ",\"" + report.machine +
            "\"," + e.method + ',' + std::to_string(e.n) + ',' +
            format_full(e.seconds) + ',' + format_full(e.factor) + "\n";
  }
  write_text(text, out);
}

void write_bench_json(const BenchReport& report, const std::string& out) {
  ordered_json j;
  j["distribution"] = report.distribution;
  j["baseline"] = report.baseline;
  j["seed"] = report.seed;
  j["repetitions"] = report.repetitions;
  j["machine"] = report.machine;
  j["entries"] = ordered_json::array();
  for (const auto& e : report.entries) {
    ordered_json rec;
    rec["method"] = e.method;
    rec["n"] = e.n;
    rec["seconds"] = e.seconds;
    rec["factor"] = e.factor;
    j["entries"].push_back(rec);
  }
  write_text(j.dump(2) + "\n", out);
}

void write_values_csv(const std::vector<double>& values,
                      const std::string& column, const std::string& out) {
  std::string text = column + "\n";
  for (double v : values) {
    text += format_full(v) + "\n";
  }
  write_text(text, out);
}

void write_plot_script(const std::string& csv_path, int n_series,
                       const std::string& out) {
  std::string script;
  script += "#!/usr/bin/env python3\n";
  script += "import csv\n";
  script += "import matplotlib.pyplot as plt\n\n";
  script += "rows = list(csv.DictReader(open(\"" + csv_path + "\")))\n";
  script += "t = [float(r[\"t\"]) for r in rows]\n";
  for (int i = 0; i < n_series; ++i) {
    const std::string name = "path_" + std::to_string(i);
    script += "plt.plot(t, [float(r[\"" + name + "\"]) for r in rows], "
              "lw=0.8, label=\"" + name + "\")\n";
  }
  script += "plt.xlabel(\"t\")\nplt.ylabel(\"Y\")\n";
  script += "plt.legend(loc=\"best\", fontsize=6)\n";
  script += "plt.tight_layout()\nplt.show()\n";
  write_text(script, out);
}

}  // namespace tsou
