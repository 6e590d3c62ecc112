#pragma once

#include "xcov/polynomial.hpp"
#include "xcov/star_word.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace xcov {

using Matrix = Eigen::MatrixXd;

enum class EntryDist { Gaussian, Rademacher };

struct FamilySpec {
  int n = 1;        // samples (columns of X_l, Y_l)
  double rho = 0;   // E[X_ij Y_ij]
};

/// A simulated family of independent cross-covariance matrices sharing the
/// dimension p. Label l (1-based) refers to families[l - 1].
struct EnsembleConfig {
  int p = 1;
  std::vector<FamilySpec> families;
  EntryDist dist = EntryDist::Gaussian;
  std::uint64_t seed = 0;
  int replicates = 1;

  /// Throws DomainError on an invalid configuration and ResourceLimitError
  /// when a single p x n_l matrix would exceed kMaxMatrixEntries.
  void validate() const;
  int labels() const { return static_cast<int>(families.size()); }
  const FamilySpec& family(int label) const;
};

inline constexpr double kMaxMatrixEntries = 3.2e7;

/// Random stream for one (replicate, label) cell of an experiment.
///
/// Seeding contract: the 64-bit state is
///   s0 = splitmix64(root)
///   s1 = splitmix64(s0 ^ splitmix64(replicate + 1))
///   s2 = splitmix64(s1 ^ splitmix64(0x100000000 + label))
/// and seeds a std::mt19937_64. Streams for distinct (replicate, label)
/// pairs are therefore fixed by the root seed alone, independent of the
/// order or thread in which replicates run.
class Stream {
 public:
  Stream(std::uint64_t root_seed, std::uint64_t replicate, std::uint64_t label);
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// X, Y are p x n with i.i.d. entry pairs of mean 0, variance 1 and
/// correlation rho. Gaussian: Y = rho X + sqrt(1 - rho^2) Z. Rademacher:
/// X = +-1, Y = X with probability (1 + rho) / 2, else -X. Column-major fill.
std::pair<Matrix, Matrix> sample_pair(int p, int n, double rho, EntryDist dist, Stream& stream);

/// C = X Y^T / n.
Matrix cross_covariance(const Matrix& x, const Matrix& y, int n);

/// E = sqrt(n / p) (C - rho I).
Matrix centered_scaled(const Matrix& c, double rho, int n, int p);

/// One replicate of an ensemble: X_l, Y_l and C_l per label.
struct MatrixFamily {
  struct Member {
    Matrix x, y, c;
    int n = 1;
    double rho = 0;
  };
  int p = 1;
  std::vector<Member> members;  // members[l - 1] for label l

  const Matrix& c(int label) const;
  /// E_l, computed on demand.
  Matrix e(int label) const;
};

/// Draws replicate `replicate` of the ensemble (deterministic in the seed).
MatrixFamily sample_family(const EnsembleConfig& cfg, int replicate);

enum class Regime { RawC, CenteredE };

/// Substitutes C_l (or E_l) for symbol l and its transpose for the starred
/// symbol; the identity word maps to I_p.
Matrix eval_matrix_poly(const NCPolynomial& poly, const MatrixFamily& fam, Regime regime);

/// Generic coefficient version (surd coefficients are evaluated in double).
Matrix eval_matrix_poly(const SurdPolynomial& poly, const MatrixFamily& fam, Regime regime);

/// [p^{-1} Tr(M^k)] for k = 1..max_order.
std::vector<double> trace_moments(const Matrix& m, int max_order);

/// p^{-1} Tr of a word in C_l / C_l^T (or E_l / E_l^T).
double word_trace(const StarWord& w, const MatrixFamily& fam, Regime regime);

struct MomentEstimate {
  double mean = 0;
  double std_error = 0;  // sample standard deviation / sqrt(replicates)
  int replicates = 0;
};

MomentEstimate summarize(std::span<const double> values);

/// Runs fn(replicate, family) for replicates 0..R-1 on `threads` workers and
/// returns the results in replicate order. Results do not depend on threads.
std::vector<std::vector<double>> run_replicates(
    const EnsembleConfig& cfg, int threads,
    const std::function<std::vector<double>(int, const MatrixFamily&)>& fn);

/// Monte Carlo estimate of lim p^{-1} E Tr(w).
MomentEstimate monte_carlo_word_moment(const EnsembleConfig& cfg, const StarWord& w, Regime regime,
                                       int threads = 1);

enum class SpectrumKind { RealEigs, Singular, ComplexEigs };

struct SpectralSample {
  SpectrumKind kind = SpectrumKind::RealEigs;
  std::vector<double> values;                      // RealEigs (ascending), Singular (ascending)
  std::vector<std::complex<double>> complex_values;  // ComplexEigs, sorted by (re, im)

  std::size_t size() const { return kind == SpectrumKind::ComplexEigs ? complex_values.size() : values.size(); }
};

/// Relative asymmetry tolerated before RealEigs rejects a matrix.
inline constexpr double kSymmetryTolerance = 1e-10;

/// Eigenvalues, singular values or complex eigenvalues of m. RealEigs
/// symmetrizes (M + M^T) / 2 after checking max|M - M^T| <= 1e-10 max|M|.
SpectralSample spectrum(const Matrix& m, SpectrumKind kind);

/// Mean of lambda^k over the spectrum, k = 1..max_order. RealEigs only.
std::vector<double> esd_moments(const SpectralSample& sample, int max_order);

}  // namespace xcov
