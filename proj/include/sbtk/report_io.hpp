#ifndef SBTK_REPORT_IO_HPP
#define SBTK_REPORT_IO_HPP

#include <string>

#include "sbtk/sweeps.hpp"

namespace sbtk {

// CSV: UTF-8, header row, '.' decimal separator, scientific notation with 17
// significant digits; one row per sweep point.  Byte-identical for identical
// inputs.
void write_csv(const SweepReport& report, const std::string& path);

// JSON lines mirroring the CSV columns, one object per row.
void write_jsonl(const SweepReport& report, const std::string& path);

std::string format_number(double x);  // the 17-significant-digit format

}  // namespace sbtk

#endif
