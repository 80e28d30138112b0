#include "lowlying/io.hpp"

#include <charconv>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "lowlying/errors.hpp"

namespace lowlying::io {

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& f) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::exception_ptr error;
  std::mutex mutex;
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = static_cast<std::size_t>(w); i < count; i += static_cast<std::size_t>(jobs)) {
          {
            std::lock_guard lock(mutex);
            if (error) return;
          }
          try {
            f(i);
          } catch (...) {
            std::lock_guard lock(mutex);
            if (!error) error = std::current_exception();
            return;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw MissingDataError("malformed number '" + std::string(s) + "'");
  }
  return v;
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw MissingDataError("malformed integer '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string format_zero_row(std::string_view label, const ZeroRow& row) {
  std::string s(label);
  s += ',' + std::to_string(row.d) + ',' + (row.central_zero ? "1" : "0");
  for (const double t : row.ordinates) s += ',' + format_double(t);
  return s;
}

std::string format_central_row(std::string_view label, const CentralRow& row) {
  return std::string(label) + ',' + std::to_string(row.d) + ',' + format_double(row.value.real()) + ',' +
         format_double(row.value.imag());
}

std::string cache_key(std::initializer_list<double> values) {
  std::string key;
  for (const double v : values) {
    if (!key.empty()) key += '_';
    key += format_double(v);
  }
  return key;
}

namespace {

std::filesystem::path cache_path(const std::filesystem::path& dir, std::string_view kind, std::string_view label,
                                 std::string_view key) {
  return dir / (std::string(kind) + "_" + std::string(label) + "_" + std::string(key) + ".csv");
}

template <class Row, class Parse>
std::map<std::int64_t, Row> load_rows(const std::filesystem::path& path, std::string_view label, Parse parse) {
  std::map<std::int64_t, Row> rows;
  std::ifstream in(path);
  if (!in) return rows;
  std::string line;
  while (std::getline(in, line)) {
    // A line without its newline was cut off mid-write.
    if (in.eof() || line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() < 2 || fields[0] != label) continue;
    try {
      Row row = parse(fields);
      rows[row.d] = std::move(row);
    } catch (const MissingDataError&) {
      // A torn final line from an interrupted run; recomputed on resume.
    }
  }
  return rows;
}

void append_line(const std::filesystem::path& path, const std::string& line) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  bool torn = false;
  if (std::ifstream in(path, std::ios::binary | std::ios::ate); in && in.tellg() > 0) {
    in.seekg(-1, std::ios::end);
    torn = in.get() != '\n';
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot write cache " + path.string());
  // Close the torn fragment with a field no parser accepts, so a half-written
  // number such as 0.3 for 0.3125 is never read back.
  if (torn) out << ",#torn\n";
  out << line << '\n';
  out.flush();
}

}  // namespace

ZeroCache::ZeroCache(std::filesystem::path dir, std::string label, std::string key)
    : path_(cache_path(dir, "zeros", label, key)), label_(std::move(label)) {}

std::map<std::int64_t, ZeroRow> ZeroCache::load() const {
  return load_rows<ZeroRow>(path_, label_, [](const std::vector<std::string_view>& f) {
    if (f.size() < 3) throw MissingDataError("short zero row");
    ZeroRow row;
    row.d = parse_int(f[1]);
    row.central_zero = parse_int(f[2]) != 0;
    for (std::size_t i = 3; i < f.size(); ++i) row.ordinates.push_back(parse_double(f[i]));
    return row;
  });
}

void ZeroCache::append(const ZeroRow& row) const { append_line(path_, format_zero_row(label_, row)); }

CentralValueCache::CentralValueCache(std::filesystem::path dir, std::string label, std::string key)
    : path_(cache_path(dir, "central", label, key)), label_(std::move(label)) {}

std::map<std::int64_t, CentralRow> CentralValueCache::load() const {
  return load_rows<CentralRow>(path_, label_, [](const std::vector<std::string_view>& f) {
    if (f.size() != 4) throw MissingDataError("bad central value row");
    return CentralRow{parse_int(f[1]), {parse_double(f[2]), parse_double(f[3])}};
  });
}

void CentralValueCache::append(const CentralRow& row) const { append_line(path_, format_central_row(label_, row)); }

}  // namespace lowlying::io
