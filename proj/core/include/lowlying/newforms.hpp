#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lowlying/arith.hpp"

namespace lowlying {

using cdouble = std::complex<double>;

namespace newforms {

// Coefficient lists follow power-series indexing throughout: element n is the
// coefficient of q^n, element 0 is the constant term (0 for cusp forms).

struct EtaFactor {
  int level;     // d in eta(d z)
  int exponent;  // e
};

struct EtaProduct {
  std::vector<EtaFactor> factors;
};

enum class ThetaConstruction { level7_weight4, level3_weight6, level3_weight8 };

struct ThetaSeries {
  ThetaConstruction construction;
};

// CSV with header `n,re,im`, rows for n = 1, 2, ... contiguous.
struct CoefficientFile {
  std::filesystem::path path;
};

using CoefficientProvider = std::variant<EtaProduct, ThetaSeries, CoefficientFile>;

// Dirichlet character given by its values on residues mod `modulus`.
struct DirichletCharacter {
  std::int64_t modulus = 1;
  std::vector<cdouble> values{cdouble(1.0)};

  cdouble operator()(std::int64_t n) const;
  bool is_principal() const { return modulus == 1; }

  static DirichletCharacter principal() { return {}; }
  static DirichletCharacter kronecker(std::int64_t d);
  // Character mod p determined by its value exp(2 pi i j / order) at the
  // primitive root g.
  static DirichletCharacter from_primitive_root(std::int64_t p, std::int64_t g, int order, int j);
};

struct Newform {
  std::string label;
  int weight = 2;
  std::int64_t level = 1;
  FamilyKind kind = FamilyKind::principal;
  DirichletCharacter character;
  // Root number of the untwisted L-function; calibrated numerically.
  std::optional<cdouble> epsilon;
  CoefficientProvider provider;

  bool self_dual() const { return kind != FamilyKind::non_self_dual; }
};

/// Coefficients of q^{sum d e / 24} prod_i prod_n (1 - q^{d_i n})^{e_i} up to q^{n_max}.
/// Throws std::invalid_argument if the leading power is not a positive integer,
/// std::overflow_error if a coefficient exceeds int64.
std::vector<std::int64_t> coeffs_eta_product(std::span<const EtaFactor> factors, std::size_t n_max);

/// 7.4.a.a from the quaternary form Q'_7 + Q'_7, Q'_7(x,y) = x^2 + xy + 2y^2.
std::vector<std::int64_t> coeffs_theta_7_4(std::size_t n_max);
/// 3.6.a.a from Q'_3 + Q'_3, Q'_3(x,y) = x^2 - xy + y^2, degree-4 harmonic weight.
std::vector<std::int64_t> coeffs_theta_3_6(std::size_t n_max);
/// 3.8.a.a from Q'_3 + Q'_3 with the degree-6 weight P_1(a,b) + P_1(c,d).
std::vector<std::int64_t> coeffs_theta_3_8(std::size_t n_max);

/// Reads a coefficient CSV. Validates contiguity and a_1 = 1; throws
/// MissingDataError on any problem.
std::vector<cdouble> load_coeffs_file(const std::filesystem::path& path);

void write_coeffs_file(const std::filesystem::path& path, std::span<const cdouble> a);

/// lambda_n = a_n / n^{(k-1)/2}.
std::vector<cdouble> normalized_coeffs(std::span<const cdouble> a, int weight);

/// Raw coefficients a_0..a_{n_max} from the form's provider. For file
/// providers with fewer than n_max coefficients, throws MissingDataError.
std::vector<cdouble> coefficients(const Newform& form, std::size_t n_max);

/// lambda_0..lambda_{n_max}; computed from exact integers where available so
/// large weights do not lose precision before normalization.
std::vector<cdouble> normalized_coefficients(const Newform& form, std::size_t n_max);

/// Number of coefficients a provider can supply (unbounded providers report SIZE_MAX).
std::size_t available_coefficients(const Newform& form);

// --- Table of the six forms ------------------------------------------------

std::span<const std::string_view> table_labels();

/// Default coefficient fixture for 13.2.e.a shipped with the library.
std::filesystem::path default_data_dir();

/// One of the six forms by LMFDB label; `coeff_file` overrides the fixture
/// path for file-backed forms. Throws std::invalid_argument on unknown labels.
Newform table_form(std::string_view label, const std::optional<std::filesystem::path>& coeff_file = {});

}  // namespace newforms
}  // namespace lowlying
