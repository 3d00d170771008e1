#include "sbtk/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace sbtk {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

void write_csv(const SweepReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "write_csv: cannot open " + path);
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    out << report.columns[c];
    if (c + 1 < report.columns.size()) out << ",";
  }
  out << "\n";
  for (const std::vector<double>& row : report.rows) {
    require(row.size() == report.columns.size(), "write_csv: ragged row");
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << format_number(row[c]);
      if (c + 1 < row.size()) out << ",";
    }
    out << "\n";
  }
  require(out.good(), "write_csv: write failed for " + path);
}

void write_jsonl(const SweepReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "write_jsonl: cannot open " + path);
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    const std::vector<double>& row = report.rows[r];
    require(row.size() == report.columns.size(), "write_jsonl: ragged row");
    out << "{\"kind\":\"" << report.kind << "\"";
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << ",\"" << report.columns[c] << "\":";
      if (std::isnan(row[c]))
        out << "null";
      else
        out << format_number(row[c]);
    }
    out << ",\"flagged\":" << (report.flagged[r] ? "true" : "false") << "}\n";
  }
  require(out.good(), "write_jsonl: write failed for " + path);
}

}  // namespace sbtk
