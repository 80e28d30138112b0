#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace lowlying::ensembles {

enum class Group { U, SO, USp };

std::string_view to_string(Group g);
/// Accepts "U", "SO", "USp" (case-insensitive); std::invalid_argument otherwise.
Group parse_group(std::string_view name);

// mt19937_64 keyed by (seed, stream) through SplitMix64, with Box-Muller
// normals. Streams are independent of each other and of the order in which
// they are consumed.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);
  double uniform();  // (0, 1)
  double normal();
  std::complex<double> complex_normal();  // E|z|^2 = 1
  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_, stream_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t& state);

Eigen::MatrixXcd haar_unitary(int n, Rng& rng);
/// n even; determinant +1.
Eigen::MatrixXd haar_special_orthogonal(int n, Rng& rng);
/// n = 2N even. The embedding sends a quaternion a + b j to [[a, b], [-conj(b), conj(a)]],
/// so the result commutes with v -> K conj(v), K = blockdiag([[0, -1], [1, 0]]), and
/// satisfies A^T J A = J for J = blockdiag([[0, 1], [-1, 0]]).
Eigen::MatrixXcd haar_unitary_symplectic(int n, Rng& rng);

Eigen::MatrixXd symplectic_form(int n);

/// Sorted eigenphases in (-pi, pi]; ConvergenceError if some |lambda| is off
/// the unit circle by more than 1e-9.
std::vector<double> eigenphases(const Eigen::MatrixXcd& a);
std::vector<double> eigenphases(const Eigen::MatrixXd& a);

/// |det(I - A)|, computed by LU and as prod |1 - e^{i theta}|; ConvergenceError
/// if they differ by more than 1e-8 relative.
double char_poly_at_one(const Eigen::MatrixXcd& a);
double char_poly_at_one(const Eigen::MatrixXd& a);
double char_poly_at_one(const Eigen::MatrixXcd& a, const std::vector<double>& phases);

enum class LowestPhase { smallest_positive, smallest_absolute };

/// Lowest eigenphase under the chosen convention (+inf if no positive phase).
double lowest_phase(const std::vector<double>& phases, LowestPhase mode = LowestPhase::smallest_positive);

struct EnsembleSample {
  Group group = Group::U;
  int n = 0;
  std::vector<double> eigenphases;
  double lambda_at_one = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t draw = 0;

  double theta_min(LowestPhase mode = LowestPhase::smallest_positive) const {
    return lowest_phase(eigenphases, mode);
  }
};

/// One Haar draw from `group` of size n using the stream (seed, draw).
EnsembleSample sample(Group group, int n, std::uint64_t seed, std::uint64_t draw);

EnsembleSample sample_unitary(int n, Rng& rng);
EnsembleSample sample_special_orthogonal(int n_even, Rng& rng);
EnsembleSample sample_unitary_symplectic(int n_even, Rng& rng);

struct ExcisedConfig {
  double c_std = 1.0;
  int weight = 2;
  int n_std = 1;  // base size before doubling
  double cutoff() const;
};

/// Rejection sampling on SO(n_even) from a single stream until
/// lambda_at_one >= cutoff. `attempts` receives the number of draws used.
/// ConvergenceError (with the acceptance rate) after max_attempts rejections.
EnsembleSample sample_excised(int n_even, double cutoff, Rng& rng, std::size_t max_attempts,
                              std::size_t* attempts = nullptr);

struct ExcisedBatch {
  std::vector<EnsembleSample> samples;
  std::size_t attempts = 0;
  double acceptance_rate() const {
    return attempts == 0 ? 0.0 : static_cast<double>(samples.size()) / static_cast<double>(attempts);
  }
};

/// Walks draws 0, 1, 2, ... of `seed` and keeps those with
/// lambda_at_one >= cutoff until `count` are accepted. With cutoff 0 the
/// result equals the plain sampler's first `count` draws; across cutoffs the
/// draws are common random numbers. ConvergenceError after max_attempts draws.
ExcisedBatch sample_excised_batch(int n_even, double cutoff, std::uint64_t seed, std::size_t count,
                                  std::size_t max_attempts, int jobs = 1);

}  // namespace lowlying::ensembles
