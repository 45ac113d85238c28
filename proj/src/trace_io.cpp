#include "aos/trace_io.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace aos {

std::string format_double(double value) {
    std::array<char, 32> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.17g", value);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

void write_trace_csv(std::ostream& out, std::span<const TraceRecord> trace) {
    out << kTraceCsvHeader << '\n';
    for (const TraceRecord& r : trace) {
        out << r.iteration << ',' << r.op << ',' << format_double(r.dq) << ',' << format_double(r.dd) << ','
            << format_double(r.theta) << ',' << format_double(r.entropy) << ',' << format_double(r.mean_q) << ','
            << r.best << '\n';
    }
}

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty trace file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTraceCsvHeader) throw std::runtime_error("unexpected trace header '" + line + "'");
    std::vector<TraceRecord> trace;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 8) throw std::runtime_error("trace line " + std::to_string(line_no) + ": expected 8 fields");
        try {
            TraceRecord r;
            r.iteration = std::stoull(fields[0]);
            r.op = fields[1];
            r.dq = std::stod(fields[2]);
            r.dd = std::stod(fields[3]);
            r.theta = std::stod(fields[4]);
            r.entropy = std::stod(fields[5]);
            r.mean_q = std::stod(fields[6]);
            r.best = static_cast<std::size_t>(std::stoull(fields[7]));
            trace.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw std::runtime_error("trace line " + std::to_string(line_no) + ": malformed number");
        }
    }
    return trace;
}

namespace {

constexpr char kMagic[8] = {'A', 'O', 'S', 'T', 'R', 'A', 'C', 'E'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T value) {
    static_assert(std::endian::native == std::endian::little, "binary trace assumes a little-endian host");
    std::array<char, sizeof(T)> bytes{};
    std::memcpy(bytes.data(), &value, sizeof(T));
    out.write(bytes.data(), bytes.size());
}

template <typename T>
T get(std::istream& in) {
    std::array<char, sizeof(T)> bytes{};
    if (!in.read(bytes.data(), bytes.size())) throw std::runtime_error("truncated binary trace");
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

} // namespace

void write_trace_binary(std::ostream& out, std::span<const TraceRecord> trace) {
    out.write(kMagic, sizeof(kMagic));
    put<std::uint32_t>(out, kVersion);
    put<std::uint64_t>(out, trace.size());
    for (const TraceRecord& r : trace) {
        put<std::uint64_t>(out, r.iteration);
        std::array<char, 4> code{' ', ' ', ' ', ' '};
        std::memcpy(code.data(), r.op.data(), std::min<std::size_t>(r.op.size(), 4));
        out.write(code.data(), code.size());
        put(out, r.dq);
        put(out, r.dd);
        put(out, r.theta);
        put(out, r.entropy);
        put(out, r.mean_q);
        put<std::uint64_t>(out, r.best);
    }
}

std::vector<TraceRecord> read_trace_binary(std::istream& in) {
    char magic[sizeof(kMagic)];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("not a binary trace");
    if (get<std::uint32_t>(in) != kVersion) throw std::runtime_error("unsupported binary trace version");
    const auto count = get<std::uint64_t>(in);
    std::vector<TraceRecord> trace;
    trace.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t i = 0; i < count; ++i) {
        TraceRecord r;
        r.iteration = get<std::uint64_t>(in);
        std::array<char, 4> code{};
        if (!in.read(code.data(), code.size())) throw std::runtime_error("truncated binary trace");
        r.op.assign(code.data(), code.size());
        while (!r.op.empty() && r.op.back() == ' ') r.op.pop_back();
        r.dq = get<double>(in);
        r.dd = get<double>(in);
        r.theta = get<double>(in);
        r.entropy = get<double>(in);
        r.mean_q = get<double>(in);
        r.best = static_cast<std::size_t>(get<std::uint64_t>(in));
        trace.push_back(std::move(r));
    }
    return trace;
}

namespace {
bool is_binary_path(const std::string& path) {
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0;
}
} // namespace

void save_trace(const std::string& path, std::span<const TraceRecord> trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    if (is_binary_path(path)) write_trace_binary(out, trace);
    else write_trace_csv(out, trace);
}

std::vector<TraceRecord> load_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return is_binary_path(path) ? read_trace_binary(in) : read_trace_csv(in);
}

} // namespace aos
