#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lowlying::io {

/// Runs f(0..count-1) on `jobs` threads (index i goes to thread i mod jobs).
/// The first exception thrown by any call is rethrown after all threads join.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& f);

/// Shortest round-trip decimal form.
std::string format_double(double v);
double parse_double(std::string_view s);
std::int64_t parse_int(std::string_view s);

std::vector<std::string_view> split_csv(std::string_view line);

struct ZeroRow {
  std::int64_t d = 0;
  bool central_zero = false;
  std::vector<double> ordinates;
};

struct CentralRow {
  std::int64_t d = 0;
  std::complex<double> value;
};

// Append-only per-(label, key) caches. Rows for other labels are ignored on
// load; a later row for the same D replaces an earlier one.
class ZeroCache {
 public:
  ZeroCache(std::filesystem::path dir, std::string label, std::string key);
  std::map<std::int64_t, ZeroRow> load() const;
  void append(const ZeroRow& row) const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::string label_;
};

class CentralValueCache {
 public:
  CentralValueCache(std::filesystem::path dir, std::string label, std::string key);
  std::map<std::int64_t, CentralRow> load() const;
  void append(const CentralRow& row) const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::string label_;
};

/// Row formats: `label,D,central,t1,t2,...` and `label,D,re,im`.
std::string format_zero_row(std::string_view label, const ZeroRow& row);
std::string format_central_row(std::string_view label, const CentralRow& row);

/// File-name-safe cache key built from tolerance values.
std::string cache_key(std::initializer_list<double> values);

}  // namespace lowlying::io
