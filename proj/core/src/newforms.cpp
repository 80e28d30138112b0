#include "lowlying/newforms.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "lowlying/errors.hpp"
#include "lowlying/lattice.hpp"

#ifndef LOWLYING_DATA_DIR
#define LOWLYING_DATA_DIR "data"
#endif

namespace lowlying::newforms {

namespace {

using wide = __int128;
using Series = std::vector<wide>;

// ---- truncated power series --------------------------------------------------

// prod_{n>=1} (1 - q^{d n}) = sum_k (-1)^k q^{d k(3k-1)/2}, as a sparse list.
std::vector<std::pair<std::size_t, int>> pentagonal(std::size_t d, std::size_t n_max) {
  std::vector<std::pair<std::size_t, int>> terms{{0, 1}};
  for (std::int64_t k = 1;; ++k) {
    const auto e1 = static_cast<std::size_t>(k * (3 * k - 1) / 2) * d;
    const auto e2 = static_cast<std::size_t>(k * (3 * k + 1) / 2) * d;
    if (e1 > n_max) break;
    const int s = (k % 2 == 0) ? 1 : -1;
    terms.emplace_back(e1, s);
    if (e2 <= n_max) terms.emplace_back(e2, s);
  }
  return terms;
}

void multiply_sparse(Series& f, const std::vector<std::pair<std::size_t, int>>& g) {
  for (std::size_t m = f.size(); m-- > 0;) {
    wide acc = 0;
    for (const auto& [e, c] : g) {
      if (e > m) continue;
      acc += c * f[m - e];
    }
    f[m] = acc;
  }
}

// f <- f / g for sparse g with constant term 1.
void divide_sparse(Series& f, const std::vector<std::pair<std::size_t, int>>& g) {
  for (std::size_t m = 0; m < f.size(); ++m) {
    wide acc = f[m];
    for (const auto& [e, c] : g) {
      if (e == 0 || e > m) continue;
      acc -= c * f[m - e];
    }
    f[m] = acc;
  }
}

// Plain truncated convolution; zero entries of b are skipped.
Series convolve(const Series& a, const Series& b, std::size_t n_max) {
  std::vector<std::size_t> nz;
  for (std::size_t j = 0; j < b.size() && j <= n_max; ++j) {
    if (b[j] != 0) nz.push_back(j);
  }
  Series out(n_max + 1, 0);
  for (std::size_t i = 0; i < a.size() && i <= n_max; ++i) {
    if (a[i] == 0) continue;
    const wide ai = a[i];
    for (const std::size_t j : nz) {
      if (i + j > n_max) break;
      out[i + j] += ai * b[j];
    }
  }
  return out;
}

void add_scaled(Series& acc, const Series& term, wide scale) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += scale * term[i];
}

// sum_{(x,y)} p(x,y) q^{a x^2 + b x y + c y^2}
template <class Poly>
Series binary_theta(std::int64_t a, std::int64_t b, std::int64_t c, std::size_t n_max, Poly&& p) {
  Series s(n_max + 1, 0);
  lattice::for_each_binary_point(a, b, c, static_cast<std::int64_t>(n_max),
                                 [&](std::int64_t x, std::int64_t y, std::int64_t q) {
                                   s[static_cast<std::size_t>(q)] += p(wide(x), wide(y));
                                 });
  return s;
}

// Divides by the q^1 coefficient, which must divide every coefficient exactly.
Series normalize_leading(Series s) {
  if (s.size() < 2 || s[1] == 0) throw std::logic_error("theta series has vanishing q^1 coefficient");
  const wide lead = s[1];
  for (auto& c : s) {
    if (c % lead != 0) throw std::logic_error("theta series not integral after normalization");
    c /= lead;
  }
  return s;
}

Series eta_series(std::span<const EtaFactor> factors, std::size_t n_max) {
  std::int64_t weight24 = 0;
  for (const auto& f : factors) {
    if (f.level < 1) throw std::invalid_argument("eta product: levels must be positive");
    weight24 += static_cast<std::int64_t>(f.level) * f.exponent;
  }
  if (weight24 <= 0 || weight24 % 24 != 0) {
    throw std::invalid_argument("eta product: leading q-power sum(d e)/24 is not a positive integer");
  }
  const auto shift = static_cast<std::size_t>(weight24 / 24);

  Series out(n_max + 1, 0);
  if (shift > n_max) return out;
  const std::size_t len = n_max - shift;
  Series body(len + 1, 0);
  body[0] = 1;
  for (const auto& f : factors) {
    const auto p = pentagonal(static_cast<std::size_t>(f.level), len);
    for (int i = 0; i < std::abs(f.exponent); ++i) {
      if (f.exponent > 0) {
        multiply_sparse(body, p);
      } else {
        divide_sparse(body, p);
      }
    }
  }
  for (std::size_t i = 0; i <= len; ++i) out[i + shift] = body[i];
  return out;
}

Series theta_7_4(std::size_t n_max) {
  const Series s = binary_theta(1, 1, 2, n_max, [](wide x, wide y) { return 2 * x * x + 2 * x * y - 3 * y * y; });
  const Series t = binary_theta(1, 1, 2, n_max, [](wide, wide) { return wide(1); });
  return normalize_leading(convolve(s, t, n_max));
}

Series theta_3_6(std::size_t n_max) {
  // P(a,b,c,d) splits into four products p_i(a,b) r_i(c,d) over Q'_3 + Q'_3.
  const auto form = [&](auto&& p) { return binary_theta(1, -1, 1, n_max, p); };
  const Series r0 = form([](wide a, wide b) {
    return a * a * a * a - 2 * a * a * a * b + 3 * a * a * b * b - 2 * a * b * b * b + b * b * b * b;
  });
  const Series r1 = form([](wide a, wide b) { return -2 * a * a + 4 * a * b - 4 * b * b; });
  const Series r2 = form([](wide a, wide b) { return -2 * a * b + 4 * b * b; });
  const Series r3 = form([](wide, wide b) { return -2 * b * b; });
  const Series one = form([](wide, wide) { return wide(1); });
  const Series cc = form([](wide c, wide) { return c * c; });
  const Series cd = form([](wide c, wide d) { return c * d; });
  const Series dd = form([](wide, wide d) { return d * d; });

  Series acc(n_max + 1, 0);
  add_scaled(acc, convolve(r0, one, n_max), 1);
  add_scaled(acc, convolve(r1, cc, n_max), 1);
  add_scaled(acc, convolve(r2, cd, n_max), 1);
  add_scaled(acc, convolve(r3, dd, n_max), 1);
  return normalize_leading(std::move(acc));
}

wide p1_weight8(wide a, wide b) {
  const wide a2 = a * a, b2 = b * b;
  return 2 * a2 * a2 * a2 - 6 * a2 * a2 * a * b - 15 * a2 * a2 * b2 + 40 * a2 * a * b2 * b -
         15 * a2 * b2 * b2 - 6 * a * b2 * b2 * b + 2 * b2 * b2 * b2;
}

Series theta_3_8(std::size_t n_max) {
  // sum (P_1(a,b) + P_1(c,d)) q^{Q'(a,b) + Q'(c,d)} = 2 S_{P_1} T_1 by symmetry.
  const Series s = binary_theta(1, -1, 1, n_max, p1_weight8);
  const Series t = binary_theta(1, -1, 1, n_max, [](wide, wide) { return wide(1); });
  Series raw = convolve(s, t, n_max);
  for (auto& c : raw) c *= 2;
  return normalize_leading(std::move(raw));
}

std::vector<std::int64_t> narrow(const Series& s) {
  std::vector<std::int64_t> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] > std::numeric_limits<std::int64_t>::max() || s[i] < std::numeric_limits<std::int64_t>::min()) {
      throw std::overflow_error("coefficient a_" + std::to_string(i) + " does not fit in int64");
    }
    out[i] = static_cast<std::int64_t>(s[i]);
  }
  return out;
}

Series exact_series(const Newform& form, std::size_t n_max) {
  if (const auto* eta = std::get_if<EtaProduct>(&form.provider)) return eta_series(eta->factors, n_max);
  const auto& theta = std::get<ThetaSeries>(form.provider);
  switch (theta.construction) {
    case ThetaConstruction::level7_weight4: return theta_7_4(n_max);
    case ThetaConstruction::level3_weight6: return theta_3_6(n_max);
    case ThetaConstruction::level3_weight8: return theta_3_8(n_max);
  }
  throw std::logic_error("unknown theta construction");
}

[[noreturn]] void bad_file(const std::filesystem::path& path, const std::string& what) {
  throw MissingDataError("coefficient file " + path.string() + ": " + what);
}

double parse_double(std::string_view field, const std::filesystem::path& path, std::size_t line) {
  double v = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end) bad_file(path, "malformed number on line " + std::to_string(line));
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

// ---- characters ----------------------------------------------------------------

cdouble DirichletCharacter::operator()(std::int64_t n) const {
  std::int64_t r = n % modulus;
  if (r < 0) r += modulus;
  return values[static_cast<std::size_t>(r)];
}

DirichletCharacter DirichletCharacter::kronecker(std::int64_t d) {
  DirichletCharacter chi;
  chi.modulus = std::llabs(d);
  chi.values.assign(static_cast<std::size_t>(chi.modulus), cdouble(0.0));
  for (std::int64_t r = 0; r < chi.modulus; ++r) chi.values[r] = arith::kronecker(d, r);
  return chi;
}

DirichletCharacter DirichletCharacter::from_primitive_root(std::int64_t p, std::int64_t g, int order, int j) {
  DirichletCharacter chi;
  chi.modulus = p;
  chi.values.assign(static_cast<std::size_t>(p), cdouble(0.0));
  std::int64_t x = 1;
  for (std::int64_t e = 0; e < p - 1; ++e) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * e) % order) / order;
    chi.values[x] = std::polar(1.0, angle);
    x = (x * g) % p;
  }
  return chi;
}

// ---- coefficient providers -------------------------------------------------------

std::vector<std::int64_t> coeffs_eta_product(std::span<const EtaFactor> factors, std::size_t n_max) {
  return narrow(eta_series(factors, n_max));
}

std::vector<std::int64_t> coeffs_theta_7_4(std::size_t n_max) { return narrow(theta_7_4(n_max)); }
std::vector<std::int64_t> coeffs_theta_3_6(std::size_t n_max) { return narrow(theta_3_6(n_max)); }
std::vector<std::int64_t> coeffs_theta_3_8(std::size_t n_max) { return narrow(theta_3_8(n_max)); }

std::vector<cdouble> load_coeffs_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad_file(path, "cannot be opened");
  std::string line;
  std::size_t line_no = 0;
  std::vector<cdouble> a{cdouble(0.0)};
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    if (!header_seen) {
      if (row != "n,re,im") bad_file(path, "expected header `n,re,im`");
      header_seen = true;
      continue;
    }
    const auto c1 = row.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
    if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos) {
      bad_file(path, "expected three fields on line " + std::to_string(line_no));
    }
    std::size_t n = 0;
    const auto nfield = trim(row.substr(0, c1));
    auto [ptr, ec] = std::from_chars(nfield.data(), nfield.data() + nfield.size(), n);
    if (ec != std::errc() || ptr != nfield.data() + nfield.size()) {
      bad_file(path, "malformed index on line " + std::to_string(line_no));
    }
    if (n != a.size()) bad_file(path, "index gap: expected n=" + std::to_string(a.size()) + " on line " + std::to_string(line_no));
    const double re = parse_double(trim(row.substr(c1 + 1, c2 - c1 - 1)), path, line_no);
    const double im = parse_double(trim(row.substr(c2 + 1)), path, line_no);
    a.emplace_back(re, im);
  }
  if (a.size() < 2) bad_file(path, "contains no coefficients");
  if (std::abs(a[1] - cdouble(1.0)) > 1e-12) bad_file(path, "a_1 != 1");
  return a;
}

void write_coeffs_file(const std::filesystem::path& path, std::span<const cdouble> a) {
  std::ofstream out(path);
  if (!out) throw MissingDataError("cannot write " + path.string());
  out << "n,re,im\n";
  std::array<char, 64> buf{};
  const auto put = [&](double v) {
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.write(buf.data(), ptr - buf.data());
  };
  for (std::size_t n = 1; n < a.size(); ++n) {
    out << n << ',';
    put(a[n].real());
    out << ',';
    put(a[n].imag());
    out << '\n';
  }
}

std::vector<cdouble> normalized_coeffs(std::span<const cdouble> a, int weight) {
  std::vector<cdouble> lambda(a.size());
  const double half = 0.5 * (weight - 1);
  for (std::size_t n = 1; n < a.size(); ++n) {
    lambda[n] = a[n] / std::pow(static_cast<double>(n), half);
  }
  return lambda;
}

std::vector<cdouble> coefficients(const Newform& form, std::size_t n_max) {
  if (const auto* file = std::get_if<CoefficientFile>(&form.provider)) {
    auto a = load_coeffs_file(file->path);
    if (a.size() < n_max + 1) {
      throw MissingDataError(form.label + ": coefficient file provides " + std::to_string(a.size() - 1) +
                             " coefficients, " + std::to_string(n_max) + " requested");
    }
    a.resize(n_max + 1);
    return a;
  }
  const Series s = exact_series(form, n_max);
  std::vector<cdouble> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = static_cast<double>(static_cast<long double>(s[i]));
  return out;
}

std::vector<cdouble> normalized_coefficients(const Newform& form, std::size_t n_max) {
  if (std::holds_alternative<CoefficientFile>(form.provider)) {
    return normalized_coeffs(coefficients(form, n_max), form.weight);
  }
  const Series s = exact_series(form, n_max);
  std::vector<cdouble> out(s.size());
  const long double half = 0.5L * (form.weight - 1);
  for (std::size_t n = 1; n < s.size(); ++n) {
    out[n] = static_cast<double>(static_cast<long double>(s[n]) / std::pow(static_cast<long double>(n), half));
  }
  return out;
}

std::size_t available_coefficients(const Newform& form) {
  if (const auto* file = std::get_if<CoefficientFile>(&form.provider)) {
    return load_coeffs_file(file->path).size() - 1;
  }
  return std::numeric_limits<std::size_t>::max();
}

// ---- table -------------------------------------------------------------------------

namespace {
constexpr std::array<std::string_view, 6> kLabels = {"11.2.a.a", "7.4.a.a",  "3.6.a.a",
                                                     "3.8.a.a",  "13.2.e.a", "7.3.b.a"};
}  // namespace

std::span<const std::string_view> table_labels() { return kLabels; }

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("LOWLYING_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return LOWLYING_DATA_DIR;
}

namespace {
DirichletCharacter character_13_2_e_a() { return DirichletCharacter::from_primitive_root(13, 2, 6, 1); }
}  // namespace

Newform table_form(std::string_view label, const std::optional<std::filesystem::path>& coeff_file) {
  Newform f;
  f.label = std::string(label);
  if (label == "11.2.a.a") {
    f.weight = 2;
    f.level = 11;
    f.provider = EtaProduct{{{1, 2}, {11, 2}}};
  } else if (label == "7.4.a.a") {
    f.weight = 4;
    f.level = 7;
    f.provider = ThetaSeries{ThetaConstruction::level7_weight4};
  } else if (label == "3.6.a.a") {
    f.weight = 6;
    f.level = 3;
    f.provider = ThetaSeries{ThetaConstruction::level3_weight6};
  } else if (label == "3.8.a.a") {
    f.weight = 8;
    f.level = 3;
    f.provider = ThetaSeries{ThetaConstruction::level3_weight8};
  } else if (label == "13.2.e.a") {
    f.weight = 2;
    f.level = 13;
    f.kind = FamilyKind::non_self_dual;
    f.character = character_13_2_e_a();
    f.provider = CoefficientFile{coeff_file.value_or(default_data_dir() / "13.2.e.a.csv")};
  } else if (label == "7.3.b.a") {
    f.weight = 3;
    f.level = 7;
    f.kind = FamilyKind::self_cm;
    f.character = DirichletCharacter::kronecker(-7);
    f.provider = EtaProduct{{{1, 3}, {7, 3}}};
  } else {
    throw std::invalid_argument("unknown form label '" + std::string(label) + "'");
  }
  return f;
}

}  // namespace lowlying::newforms
