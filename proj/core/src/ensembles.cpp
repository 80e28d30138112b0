#include "lowlying/ensembles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "lowlying/errors.hpp"

namespace lowlying::ensembles {

namespace {

constexpr double kUnitTolerance = 1e-9;
constexpr double kCharPolyTolerance = 1e-8;

void require_even(int n, const char* what) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument(std::string(what) + ": size must be even and >= 2");
}

template <class Matrix>
void check_diagonal(const Matrix& r) {
  for (Eigen::Index j = 0; j < r.rows(); ++j) {
    if (std::abs(r(j, j)) == 0.0) throw ConvergenceError("QR: exactly singular Gaussian draw");
  }
}

std::vector<double> phases_of(const Eigen::VectorXcd& values) {
  std::vector<double> out(static_cast<std::size_t>(values.size()));
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double modulus = std::abs(values[i]);
    if (std::abs(modulus - 1.0) > kUnitTolerance) {
      throw ConvergenceError("eigenphases: eigenvalue modulus " + std::to_string(modulus));
    }
    out[static_cast<std::size_t>(i)] = std::arg(values[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double product_form(const std::vector<double>& phases) {
  double p = 1.0;
  for (const double t : phases) p *= 2.0 * std::abs(std::sin(0.5 * t));
  return p;
}

double checked(double det, double product) {
  if (std::abs(det - product) > kCharPolyTolerance * std::max(det, product) + 1e-14) {
    throw ConvergenceError("char_poly_at_one: determinant " + std::to_string(det) + " vs product " +
                           std::to_string(product));
  }
  return product;
}

}  // namespace

std::string_view to_string(Group g) {
  switch (g) {
    case Group::U:
      return "U";
    case Group::SO:
      return "SO";
    case Group::USp:
      return "USp";
  }
  return "?";
}

Group parse_group(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "u") return Group::U;
  if (lower == "so") return Group::SO;
  if (lower == "usp") return Group::USp;
  throw std::invalid_argument("unknown group '" + std::string(name) + "' (expected U, SO or USp)");
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state ^= stream * 0xd1342543de82ef95ULL;
  const std::uint64_t b = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double Rng::uniform() {
  // 53 random bits, shifted off zero.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double phi = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

std::complex<double> Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("haar_unitary: n must be >= 1");
  Eigen::MatrixXcd z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = rng.complex_normal();
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  check_diagonal(r);
  Eigen::MatrixXcd q = qr.householderQ();
  for (int j = 0; j < n; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

Eigen::MatrixXd haar_special_orthogonal(int n, Rng& rng) {
  require_even(n, "haar_special_orthogonal");
  Eigen::MatrixXd z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = rng.normal();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  check_diagonal(r);
  Eigen::MatrixXd q = qr.householderQ();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

Eigen::MatrixXcd haar_unitary_symplectic(int n, Rng& rng) {
  require_even(n, "haar_unitary_symplectic");
  const int m = n / 2;
  Eigen::MatrixXcd z(n, n);
  for (int bj = 0; bj < m; ++bj) {
    for (int bi = 0; bi < m; ++bi) {
      const std::complex<double> a = rng.complex_normal();
      const std::complex<double> b = rng.complex_normal();
      z(2 * bi, 2 * bj) = a;
      z(2 * bi, 2 * bj + 1) = b;
      z(2 * bi + 1, 2 * bj) = -std::conj(b);
      z(2 * bi + 1, 2 * bj + 1) = std::conj(a);
    }
  }
  // Quaternionic Gram-Schmidt: orthonormalize column 2j against everything
  // before it, then complete the pair with K conj(column 2j).
  Eigen::MatrixXcd q(n, n);
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXcd v = z.col(2 * j);
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < 2 * j; ++i) v -= q.col(i).dot(v) * q.col(i);
    }
    const double norm = v.norm();
    if (norm == 0.0) throw ConvergenceError("haar_unitary_symplectic: degenerate draw");
    v /= norm;
    q.col(2 * j) = v;
    for (int i = 0; i < m; ++i) {
      q(2 * i, 2 * j + 1) = -std::conj(v(2 * i + 1));
      q(2 * i + 1, 2 * j + 1) = std::conj(v(2 * i));
    }
  }
  return q;
}

Eigen::MatrixXd symplectic_form(int n) {
  require_even(n, "symplectic_form");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; i += 2) {
    j(i, i + 1) = 1.0;
    j(i + 1, i) = -1.0;
  }
  return j;
}

std::vector<double> eigenphases(const Eigen::MatrixXcd& a) {
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
  if (solver.info() != Eigen::Success) throw ConvergenceError("eigenphases: eigensolver failed");
  return phases_of(solver.eigenvalues());
}

std::vector<double> eigenphases(const Eigen::MatrixXd& a) {
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
  if (solver.info() != Eigen::Success) throw ConvergenceError("eigenphases: eigensolver failed");
  return phases_of(solver.eigenvalues());
}

double char_poly_at_one(const Eigen::MatrixXcd& a, const std::vector<double>& phases) {
  const Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(a.rows(), a.cols()) - a;
  return checked(std::abs(m.partialPivLu().determinant()), product_form(phases));
}

double char_poly_at_one(const Eigen::MatrixXcd& a) { return char_poly_at_one(a, eigenphases(a)); }

double char_poly_at_one(const Eigen::MatrixXd& a) {
  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(a.rows(), a.cols()) - a;
  return checked(std::abs(m.partialPivLu().determinant()), product_form(eigenphases(a)));
}

double lowest_phase(const std::vector<double>& phases, LowestPhase mode) {
  double best = std::numeric_limits<double>::infinity();
  for (const double t : phases) {
    if (mode == LowestPhase::smallest_positive) {
      if (t > 0.0) best = std::min(best, t);
    } else {
      best = std::min(best, std::abs(t));
    }
  }
  return best;
}

namespace {

template <class Matrix>
EnsembleSample finish(Group group, const Matrix& a, const Rng& rng) {
  EnsembleSample s;
  s.group = group;
  s.n = static_cast<int>(a.rows());
  s.eigenphases = eigenphases(a);
  const Matrix m = Matrix::Identity(a.rows(), a.cols()) - a;
  s.lambda_at_one = checked(std::abs(m.partialPivLu().determinant()), product_form(s.eigenphases));
  s.seed = rng.seed();
  s.draw = rng.stream();
  return s;
}

}  // namespace

EnsembleSample sample_unitary(int n, Rng& rng) { return finish(Group::U, haar_unitary(n, rng), rng); }

EnsembleSample sample_special_orthogonal(int n_even, Rng& rng) {
  return finish(Group::SO, haar_special_orthogonal(n_even, rng), rng);
}

EnsembleSample sample_unitary_symplectic(int n_even, Rng& rng) {
  return finish(Group::USp, haar_unitary_symplectic(n_even, rng), rng);
}

EnsembleSample sample(Group group, int n, std::uint64_t seed, std::uint64_t draw) {
  Rng rng(seed, draw);
  switch (group) {
    case Group::U:
      return sample_unitary(n, rng);
    case Group::SO:
      return sample_special_orthogonal(n, rng);
    case Group::USp:
      return sample_unitary_symplectic(n, rng);
  }
  throw std::invalid_argument("sample: unknown group");
}

double ExcisedConfig::cutoff() const {
  const double value = c_std * std::exp((1.0 - weight) * n_std / 2.0);
  if (!(value > 0.0)) throw std::invalid_argument("ExcisedConfig: cutoff must be positive");
  return value;
}

EnsembleSample sample_excised(int n_even, double cutoff, Rng& rng, std::size_t max_attempts,
                              std::size_t* attempts) {
  if (cutoff < 0.0) throw std::invalid_argument("sample_excised: negative cutoff");
  for (std::size_t i = 1; i <= max_attempts; ++i) {
    EnsembleSample s = sample_special_orthogonal(n_even, rng);
    if (s.lambda_at_one >= cutoff) {
      if (attempts) *attempts = i;
      return s;
    }
  }
  if (attempts) *attempts = max_attempts;
  throw ConvergenceError("sample_excised: no acceptance in " + std::to_string(max_attempts) +
                         " attempts (acceptance rate 0)");
}

ExcisedBatch sample_excised_batch(int n_even, double cutoff, std::uint64_t seed, std::size_t count,
                                  std::size_t max_attempts, int jobs) {
  require_even(n_even, "sample_excised_batch");
  if (cutoff < 0.0) throw std::invalid_argument("sample_excised_batch: negative cutoff");
  jobs = std::max(1, jobs);
  ExcisedBatch out;
  const std::size_t chunk = std::max<std::size_t>(64, count);
  while (out.samples.size() < count) {
    if (out.attempts >= max_attempts) {
      throw ConvergenceError("sample_excised_batch: " + std::to_string(out.samples.size()) + " of " +
                             std::to_string(count) + " accepted after " + std::to_string(out.attempts) +
                             " draws (acceptance rate " + std::to_string(out.acceptance_rate()) + ")");
    }
    const std::size_t first = out.attempts;
    const std::size_t size = std::min(chunk, max_attempts - first);
    std::vector<EnsembleSample> drawn(size);
    auto work = [&](int worker) {
      for (std::size_t i = static_cast<std::size_t>(worker); i < size; i += static_cast<std::size_t>(jobs)) {
        drawn[i] = sample(Group::SO, n_even, seed, first + i);
      }
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (int w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    }
    for (std::size_t i = 0; i < size && out.samples.size() < count; ++i) {
      ++out.attempts;
      if (drawn[i].lambda_at_one >= cutoff) out.samples.push_back(std::move(drawn[i]));
    }
  }
  return out;
}

}  // namespace lowlying::ensembles
