#include "stochoptics/trace_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "stochoptics/errors.hpp"
#include "stochoptics/version.hpp"

namespace stochoptics {

namespace {

constexpr std::array<char, 8> kMagic = {'S', 'O', 'T', 'R', 'A', 'C', 'E', '1'};
constexpr std::size_t kVersionField = 16;

template <class U>
void put_le(std::ostream& out, U value) {
  std::array<char, sizeof(U)> bytes{};
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }

template <class U>
U get_le(std::istream& in) {
  std::array<unsigned char, sizeof(U)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) throw IoError("truncated trace record");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(bytes[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

}  // namespace

void write_trace(std::ostream& out, const FieldTrace& trace) {
  out.write(kMagic.data(), kMagic.size());
  std::array<char, kVersionField> version{};
  std::memcpy(version.data(), kVersion.data(), std::min(kVersion.size(), kVersionField));
  out.write(version.data(), version.size());
  put_le(out, static_cast<std::uint32_t>(trace.model.family));
  put_le(out, std::uint32_t{0});
  put_f64(out, trace.model.nu);
  put_f64(out, trace.model.gamma);
  put_f64(out, trace.model.jitter_band);
  put_f64(out, trace.model.jitter_corr_time);
  put_f64(out, trace.dt);
  put_le(out, static_cast<std::uint64_t>(trace.size()));
  put_le(out, trace.master_seed);
  put_le(out, trace.trace_index);
  put_le(out, static_cast<std::uint64_t>(trace.analysis_start));
  for (const auto& z : trace.samples) {
    put_f64(out, z.real());
    put_f64(out, z.imag());
  }
}

FieldTrace read_trace(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw IoError("not a trace record (bad magic)");
  in.ignore(kVersionField);
  FieldTrace t;
  const auto family = get_le<std::uint32_t>(in);
  if (family > static_cast<std::uint32_t>(BeamFamily::periodic_thermal)) throw IoError("unknown model family in trace record");
  t.model.family = static_cast<BeamFamily>(family);
  get_le<std::uint32_t>(in);
  t.model.nu = get_f64(in);
  t.model.gamma = get_f64(in);
  t.model.jitter_band = get_f64(in);
  t.model.jitter_corr_time = get_f64(in);
  t.dt = get_f64(in);
  const auto n = get_le<std::uint64_t>(in);
  t.master_seed = get_le<std::uint64_t>(in);
  t.trace_index = get_le<std::uint64_t>(in);
  t.analysis_start = static_cast<std::size_t>(get_le<std::uint64_t>(in));
  if (n > (std::uint64_t{1} << 40)) throw IoError("implausible sample count in trace record");
  t.samples.resize(static_cast<Eigen::Index>(n));
  for (std::uint64_t j = 0; j < n; ++j) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    t.samples[static_cast<Eigen::Index>(j)] = {re, im};
  }
  try {
    t.validate();
  } catch (const DomainError& e) {
    throw IoError(std::string("invalid trace record: ") + e.what());
  }
  return t;
}

void write_traces(const std::filesystem::path& path, const std::vector<FieldTrace>& traces) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  for (const auto& t : traces) write_trace(out, t);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<FieldTrace> read_traces(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<FieldTrace> traces;
  while (in.peek() != std::char_traits<char>::eof()) traces.push_back(read_trace(in));
  if (traces.empty()) throw IoError("'" + path.string() + "' contains no traces");
  return traces;
}

void write_trace_csv(std::ostream& out, const FieldTrace& trace) {
  const auto old = out.precision(17);
  out << "t,re,im\n";
  for (std::size_t j = 0; j < trace.size(); ++j) {
    const auto z = trace.samples[static_cast<Eigen::Index>(j)];
    out << trace.dt * static_cast<double>(j) << ',' << z.real() << ',' << z.imag() << '\n';
  }
  out.precision(old);
}

}  // namespace stochoptics
