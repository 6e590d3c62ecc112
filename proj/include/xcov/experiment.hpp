#pragma once

#include "xcov/matrix_lab.hpp"
#include "xcov/polynomial.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xcov {

/// Flat key=value settings. '[section]' headers and '#' comments are
/// accepted and ignored; later assignments win.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(std::string_view text);
ConfigMap read_config_file(const std::string& path);
/// "key=value" override as passed to --set.
void apply_override(ConfigMap& map, std::string_view assignment);

struct ExperimentConfig {
  EnsembleConfig ensemble;
  std::vector<ExactScalar> rho_exact;  // rho_l as written, exactly
  std::string polynomial_text = "I";
  Regime regime = Regime::RawC;
  int max_order = 4;
  int bins = 50;
  std::string output_path;  // empty: stdout
  double z_threshold = 5;
  double bias_allowance = 10;  // mc-verify tolerance is z*se + bias_allowance/p
  int threads = 1;
  int n_ref = 0;  // CENTERED_E with C symbols: scale sqrt(n_ref / p); 0 means min n_l
};

/// Keys: p, n1..n9, rho1..rho9, dist (gaussian|rademacher), seed, replicates,
/// poly, regime (raw_c|centered_e), max_order, bins, out, plus z_threshold,
/// bias_allowance, threads and n_ref. Unknown keys and bad values raise ParseError
/// or DomainError.
ExperimentConfig build_experiment(const ConfigMap& map);

/// The polynomial variable under study, on both sides of a comparison.
///
/// RAW_C: the polynomial in C_l, compared with the cross-covariance limit at
/// y_l = p / n_l.
/// CENTERED_E: either a polynomial in E_l, or a polynomial a in C_l whose
/// matrix is sqrt(n_ref / p) a(C), n_ref defaulting to min n_l over its labels; the
/// limit is taken in the elliptic family with parameters rho_l^2.
class Observable {
 public:
  explicit Observable(const ExperimentConfig& cfg);

  /// Exact limit of phi(Pi^k).
  Surd moment(int k) const;
  /// Exact limit of kappa_k(Pi, ..., Pi).
  Surd cumulant(int k) const;
  /// The matrix Pi for one replicate.
  Matrix matrix(const MatrixFamily& fam) const;
  bool symmetric() const;
  /// Limit polynomial in the symbols of the state (c or e).
  const SurdPolynomial& limit_polynomial() const { return limit_; }
  char limit_symbol() const { return elliptic_ ? 'e' : 'c'; }

 private:
  Regime regime_;
  NCPolynomial source_;
  SymbolKind kind_ = SymbolKind::Raw;
  double scale_ = 1;  // applied to the raw-C matrix for CENTERED_E with C symbols
  SurdPolynomial limit_;
  bool elliptic_ = false;
  std::optional<MomentFunctional> phi_;
};

struct ComparisonRow {
  int order = 0;
  Surd exact_limit;
  double mc_mean = 0;
  double mc_se = 0;
  double z_score = 0;
  bool within_tolerance = false;
};

struct VerifyReport {
  std::vector<ComparisonRow> rows;
  bool pass = true;
};

/// Writers return the process exit status; output goes to `out`.
int cmd_moments(const ExperimentConfig& cfg, std::ostream& out);
int cmd_cumulants(const ExperimentConfig& cfg, std::ostream& out);
VerifyReport mc_verify(const ExperimentConfig& cfg);
int cmd_mc_verify(const ExperimentConfig& cfg, std::ostream& out);
int cmd_esd(const ExperimentConfig& cfg, std::ostream& out);
int cmd_scatter(const ExperimentConfig& cfg, std::ostream& out);

struct HistogramBin {
  double left = 0, right = 0;
  long long count = 0;
  double density = 0;
};

/// Fixed-width bins over [min, max] of the values; the last bin is closed.
/// A degenerate range yields a single bin of width 1 centred on the value.
std::vector<HistogramBin> histogram(std::vector<double> values, int bins);

/// Runs `command` (moments, cumulants, mc-verify, esd, scatter), writing to
/// cfg.output_path or, when empty, to `fallback`.
int run_command(const std::string& command, const ExperimentConfig& cfg, std::ostream& fallback);

}  // namespace xcov
