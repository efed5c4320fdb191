#ifndef STOCHOPTICS_TRACE_IO_HPP
#define STOCHOPTICS_TRACE_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "stochoptics/field_trace.hpp"

namespace stochoptics {

/// Binary trace record, all integers and floats little-endian:
///
///   char[8]  magic "SOTRACE1"
///   char[16] writer version, NUL padded
///   u32      family, u32 reserved (0)
///   f64      nu, gamma, jitter_band, jitter_corr_time, dt
///   u64      n, master_seed, trace_index, analysis_start
///   f64[2n]  re_0, im_0, re_1, im_1, ...
///
/// Records may be concatenated in one file.
void write_trace(std::ostream& out, const FieldTrace& trace);

/// Reads one record; throws IoError on a malformed or truncated record.
FieldTrace read_trace(std::istream& in);

void write_traces(const std::filesystem::path& path, const std::vector<FieldTrace>& traces);
std::vector<FieldTrace> read_traces(const std::filesystem::path& path);

/// CSV with header "t,re,im" and one row per sample.
void write_trace_csv(std::ostream& out, const FieldTrace& trace);

}  // namespace stochoptics

#endif  // STOCHOPTICS_TRACE_IO_HPP
