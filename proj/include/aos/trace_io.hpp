#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "aos/engine.hpp"

namespace aos {

inline constexpr const char* kTraceCsvHeader = "iteration,op,dq,dd,theta,entropy,mean_q,best";

/// CSV with kTraceCsvHeader; doubles printed with 17 significant digits so that reading the
/// file back reproduces every value exactly.
void write_trace_csv(std::ostream& out, std::span<const TraceRecord> trace);
[[nodiscard]] std::vector<TraceRecord> read_trace_csv(std::istream& in);

/// Compact little-endian binary: "AOSTRACE", u32 version, u64 count, then per record
/// u64 iteration, 4 code bytes, five f64 (dq, dd, theta, entropy, mean_q) and u64 best.
void write_trace_binary(std::ostream& out, std::span<const TraceRecord> trace);
[[nodiscard]] std::vector<TraceRecord> read_trace_binary(std::istream& in);

void save_trace(const std::string& path, std::span<const TraceRecord> trace);
[[nodiscard]] std::vector<TraceRecord> load_trace(const std::string& path);

/// "%.17g" rendering shared by every text output.
[[nodiscard]] std::string format_double(double value);

} // namespace aos
