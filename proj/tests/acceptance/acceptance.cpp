// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: xcov_acceptance <recipes-dir> [criterion numbers...]
#include "xcov/errors.hpp"
#include "xcov/experiment.hpp"
#include "xcov/free_cumulants.hpp"
#include "xcov/limit_laws.hpp"
#include "xcov/matrix_lab.hpp"
#include "xcov/partition.hpp"
#include "xcov/polynomial.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace xcov;

namespace {

// Pinned tolerances.
constexpr double kZ = 5.0;                    // standard errors
constexpr double kBiasRawRegime = 10.0;        // criterion 5: c / p with c = 10
constexpr double kBiasCenteredRegime = 30.0;        // criteria 6 and 7: c / p with c = 30
constexpr double kPipelineRelTol = 1e-8;      // criterion 8
constexpr double kCombinatoricsSeconds = 5;   // criterion 1
constexpr double kRoundTripSeconds = 10;      // criterion 2
constexpr double kRawRegimeSeconds = 300;      // criterion 5, per geometry
constexpr double kCenteredRegimeSeconds = 600;      // criterion 6

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failures of one criterion and prints detail lines.
class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)), start_(Clock::now()) {}

  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (failures_ <= 25) std::cout << "    FAIL " << what << "\n";
    }
  }
  void note(const std::string& text) { std::cout << "    " << text << "\n"; }
  double elapsed() const { return seconds_since(start_); }

  bool finish(int number) const {
    const bool ok = failures_ == 0;
    std::printf("%s criterion %d: %s [%d checks, %d failed, %.1f s]\n", ok ? "PASS" : "FAIL", number, title_.c_str(),
                checks_, failures_, elapsed());
    std::fflush(stdout);
    return ok;
  }

 private:
  std::string title_;
  Clock::time_point start_;
  int checks_ = 0;
  int failures_ = 0;
};

std::string fmt(double v) { return format_g12(v); }

StarWord power_word(Letter l, int k) { return StarWord(std::vector<Letter>(static_cast<std::size_t>(k), l)); }

// ---------------------------------------------------------------------------
bool criterion1() {
  Criterion c("combinatorics: Catalan counts, Moebius closed form, Kreweras block count");
  for (int k = 1; k <= 8; ++k) {
    c.check(BigInt(enumerate_nc(k).size()) == catalan(k), "|NC(" + std::to_string(k) + ")| = Catalan");
  }
  for (int k = 1; k <= 6; ++k) {
    c.check(BigInt(enumerate_nc_pair(2 * k).size()) == catalan(k), "|NC2(" + std::to_string(2 * k) + ")| = Catalan");
  }
  for (int n = 2; n <= 7; ++n) {
    const BigInt expected = (n % 2 ? 1 : -1) * catalan(n - 1);
    c.check(BigInt(mobius_nc(NCPartition::singletons(n), NCPartition::one_block(n))) == expected,
            "mu(0_n, 1_n) for n = " + std::to_string(n));
  }
  for (int n = 1; n <= 6; ++n) {
    for (const auto& p : enumerate_nc(n)) {
      c.check(p.block_count() + kreweras_complement(p).block_count() == static_cast<std::size_t>(n + 1),
              "|pi| + |K(pi)| = n + 1 for " + p.to_string());
    }
  }
  c.check(c.elapsed() < kCombinatoricsSeconds, "runtime under 5 s");
  return c.finish(1);
}

// ---------------------------------------------------------------------------
// A random table of joint cumulants on single-label *-words of length <= 6.
bool criterion2() {
  Criterion c("moment-cumulant round trip on 100 random rational tables through order 6");
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> num(-12, 12), den(1, 12);
  std::vector<StarWord> words;
  for (std::size_t len = 1; len <= 6; ++len) {
    for (const auto& w : all_words(len, 1)) words.push_back(w);
  }
  for (int table = 0; table < 100; ++table) {
    auto values = std::make_shared<std::map<StarWord, ExactScalar>>();
    for (const auto& w : words) (*values)[w] = ExactScalar(num(rng), den(rng));
    const CumulantFunctional kappa([values](const StarWord& w) { return values->at(w); });
    const MomentFunctional phi("table", [kappa](const StarWord& w) { return moments_from_cumulants(w, kappa); });
    bool ok = true;
    for (const auto& w : words) ok = ok && cumulants_from_moments(w, phi) == values->at(w);
    c.check(ok, "table " + std::to_string(table));
  }
  c.check(c.elapsed() < kRoundTripSeconds, "runtime under 10 s");
  return c.finish(2);
}

// ---------------------------------------------------------------------------
bool criterion3() {
  Criterion c("freeness: mixed cumulants of two-label families vanish for all words of length <= 6");
  const std::vector<FamilyParams> families = {
      {{1, {ExactScalar(2, 5), ExactScalar(1, 2)}}, {2, {ExactScalar(-3, 4), ExactScalar(2)}}},
      {{1, {ExactScalar(0), ExactScalar(1)}}, {2, {ExactScalar(1), ExactScalar(1, 3)}}},
  };
  const std::vector<EllipticParams> elliptic = {
      {{1, ExactScalar(4, 25)}, {2, ExactScalar(9, 16)}},
      {{1, ExactScalar(0)}, {2, ExactScalar(1)}},
  };
  std::size_t mixed = 0;
  for (const auto& params : families) {
    const auto phi = cc_moment_functional(params);
    for (std::size_t len = 2; len <= 6; ++len) {
      for (const auto& w : all_words(len, 2)) {
        if (w.labels().size() < 2) continue;
        ++mixed;
        c.check(cumulants_from_moments(w, phi) == 0, "cross-covariance kappa(" + w.to_string() + ") = 0");
      }
    }
  }
  for (const auto& params : elliptic) {
    const auto phi = elliptic_moment_functional(params);
    for (std::size_t len = 2; len <= 6; ++len) {
      for (const auto& w : all_words(len, 2)) {
        if (w.labels().size() < 2) continue;
        ++mixed;
        c.check(cumulants_from_moments(w, phi) == 0, "elliptic kappa(" + w.to_string('e') + ") = 0");
      }
    }
  }
  c.note(std::to_string(mixed) + " mixed words checked");
  return c.finish(3);
}

// ---------------------------------------------------------------------------
bool criterion4() {
  Criterion c("specializations: Marchenko-Pastur, rho = 0 Gram cumulants, c + c* pattern, double Kreweras sum");
  // rho = 1 single label: engine = MP (cumulant route) = Narayana.
  for (const ExactScalar y : {ExactScalar(1, 3), ExactScalar(1), ExactScalar(5, 2)}) {
    const FamilyParams params{{1, {ExactScalar(1), y}}};
    for (int k = 1; k <= 8; ++k) {
      const ExactScalar engine = cc_family_moment(power_word({1, Exponent::Plain}, k), params);
      c.check(engine == mp_moment(k, y) && engine == mp_moment_closed_form(k, y),
              "rho = 1 moment k = " + std::to_string(k) + " y = " + to_fraction_string(y));
    }
  }
  // rho = 0: kappa_k(c c*) from the engine, the closed sum and y^k MP_k(y). Needs words of length 12.
  const int old_enum = enumeration_cap();
  const int old_word = word_cap();
  set_enumeration_cap(12);
  set_word_cap(12);
  for (const ExactScalar y : {ExactScalar(1, 2), ExactScalar(3, 2)}) {
    const FamilyParams params{{1, {ExactScalar(0), y}}};
    const auto phi = cc_moment_functional(params);
    const auto gram = NCPolynomial::monomial(StarWord::parse("1 1*"), 1);
    for (int k = 1; k <= 6; ++k) {
      const ExactScalar engine = poly_cumulant_power(gram, k, phi);
      const ExactScalar closed = cc_star_moment_rho0(k, y);
      const ExactScalar mp = ipow(y, static_cast<unsigned>(k)) * mp_moment(k, y);
      c.check(engine == closed && closed == mp, "kappa_" + std::to_string(k) + "(c c*) at rho = 0, y = " + to_fraction_string(y));
    }
  }
  set_word_cap(old_word);
  set_enumeration_cap(old_enum);
  // c + c* at rho = 0.
  for (const ExactScalar y : {ExactScalar(1, 2), ExactScalar(2)}) {
    const FamilyParams params{{1, {ExactScalar(0), y}}};
    const auto phi = cc_moment_functional(params);
    const auto sum = NCPolynomial::symbol(1) + NCPolynomial::symbol(1, Exponent::Star);
    for (int k = 1; k <= 8; ++k) {
      const ExactScalar expected = k % 2 ? ExactScalar(0) : 2 * ipow(y, static_cast<unsigned>(k - 1));
      c.check(poly_cumulant_power(sum, k, phi) == expected && c_plus_cstar_cumulant(k, y, 0) == expected,
              "kappa_" + std::to_string(k) + "(c + c*) at rho = 0");
    }
  }
  // Alternating cumulants of c1 c2* through the generic engine.
  const ExactScalar y1(1, 2), y2(4, 3);
  const FamilyParams two{{1, {ExactScalar(0), y1}}, {2, {ExactScalar(0), y2}}};
  const auto phi = cc_moment_functional(two);
  const auto a = NCPolynomial::monomial(StarWord::parse("1 2*"), 1);
  const auto b = NCPolynomial::monomial(StarWord::parse("2 1*"), 1);
  for (int k = 1; k <= 2; ++k) {
    std::vector<NCPolynomial> ab, ba;
    for (int i = 0; i < k; ++i) {
      ab.push_back(a);
      ab.push_back(b);
      ba.push_back(b);
      ba.push_back(a);
    }
    const ExactScalar sum = prod_alt_cumulant(k, y1, y2);
    c.check(poly_cumulant<ExactScalar>(ab, phi) == sum && poly_cumulant<ExactScalar>(ba, phi) == sum,
            "kappa_" + std::to_string(2 * k) + " alternating = double Kreweras sum");
    c.note("kappa_" + std::to_string(2 * k) + "(c1 c2*, c2 c1*, ...) = " + to_fraction_string(sum));
  }
  return c.finish(4);
}

// ---------------------------------------------------------------------------
// Shared between the Monte Carlo criteria and the pipeline identity check.
struct PipelineRecord {
  double worst_esd = 0;
  double worst_singular = 0;
  int matrices = 0;
};
PipelineRecord g_pipeline;

double relative_gap(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& scale) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(scale[i], 1e-300));
  return worst;
}

// esd_moments against trace_moments; relative to the mean of |lambda|^k.
void record_esd_identity(const Matrix& m, int order) {
  const auto sample = spectrum(m, SpectrumKind::RealEigs);
  const auto esd = esd_moments(sample, order);
  const auto tr = trace_moments(m, order);
  std::vector<double> scale(static_cast<std::size_t>(order), 0.0);
  for (double l : sample.values) {
    double power = 1;
    for (int k = 0; k < order; ++k) {
      power *= std::abs(l);
      scale[static_cast<std::size_t>(k)] += power / static_cast<double>(sample.values.size());
    }
  }
  g_pipeline.worst_esd = std::max(g_pipeline.worst_esd, relative_gap(esd, tr, scale));
  ++g_pipeline.matrices;
}

// Singular values of C against sqrt(eig(C C^T)); relative to the largest singular value.
void record_singular_identity(const Matrix& c) {
  const auto sv = spectrum(c, SpectrumKind::Singular).values;
  const Matrix gram = c * c.transpose();
  const auto eig = spectrum(gram, SpectrumKind::RealEigs).values;
  double worst = 0;
  for (std::size_t i = 0; i < sv.size(); ++i) {
    worst = std::max(worst, std::abs(sv[i] - std::sqrt(std::max(0.0, eig[i]))) / sv.back());
  }
  g_pipeline.worst_singular = std::max(g_pipeline.worst_singular, worst);
}

struct Observation {
  std::string name;
  ExactScalar exact;
  std::vector<double> values;
};

void judge(Criterion& c, const std::vector<Observation>& obs, double allowance, const std::string& where) {
  for (const auto& o : obs) {
    const auto est = summarize(o.values);
    const double exact = to_double(o.exact);
    const double diff = est.mean - exact;
    const bool ok = std::abs(diff) <= kZ * est.std_error + allowance;
    c.check(ok, where + " " + o.name + ": mean " + fmt(est.mean) + " exact " + fmt(exact) + " se " + fmt(est.std_error) +
                    " |diff| " + fmt(std::abs(diff)) + " > " + fmt(kZ * est.std_error + allowance));
  }
}

bool criterion5() {
  Criterion c("Monte Carlo, cross-covariance regime: p = n = 500, rho in {0, 0.4, 0.8}, 30 replicates");
  const int p = 500, n = 500, replicates = 30;
  for (double rho : {0.0, 0.4, 0.8}) {
    const auto start = Clock::now();
    const ExactScalar rho_exact = parse_exact(rho == 0 ? "0" : rho == 0.4 ? "0.4" : "0.8");
    const FamilyParams params{{1, {rho_exact, ExactScalar(p, n)}}};
    const auto phi = cc_moment_functional(params);
    std::vector<StarWord> words;
    for (std::size_t len = 1; len <= 3; ++len)
      for (const auto& w : all_words(len, 1)) words.push_back(w);
    const auto sum = parse_polynomial("C1 + C1^*").polynomial;
    const auto gram = parse_polynomial("C1*C1^*").polynomial;

    std::vector<Observation> obs;
    for (const auto& w : words) obs.push_back({"word " + w.to_string(), cc_family_moment(w, params), {}});
    for (int k = 1; k <= 4; ++k) obs.push_back({"(C+C^T)^" + std::to_string(k), poly_moment(sum, k, phi), {}});
    for (int k = 1; k <= 4; ++k) obs.push_back({"(CC^T)^" + std::to_string(k), poly_moment(gram, k, phi), {}});

    EnsembleConfig cfg;
    cfg.p = p;
    cfg.families = {{n, rho}};
    cfg.seed = 5000 + static_cast<std::uint64_t>(rho * 10);
    cfg.replicates = replicates;
    run_replicates(cfg, 1, [&](int r, const MatrixFamily& fam) {
      std::size_t i = 0;
      for (const auto& w : words) obs[i++].values.push_back(word_trace(w, fam, Regime::RawC));
      const Matrix ms = eval_matrix_poly(sum, fam, Regime::RawC);
      const Matrix mg = eval_matrix_poly(gram, fam, Regime::RawC);
      for (double v : trace_moments(ms, 4)) obs[i++].values.push_back(v);
      for (double v : trace_moments(mg, 4)) obs[i++].values.push_back(v);
      if (r == 0) {
        record_esd_identity(ms, 8);
        record_esd_identity(mg, 8);
        record_singular_identity(fam.c(1));
      }
      return std::vector<double>{};
    });
    const std::string where = "rho=" + fmt(rho);
    judge(c, obs, kBiasRawRegime / p, where);
    const double secs = seconds_since(start);
    c.check(secs < kRawRegimeSeconds, where + " runtime " + fmt(secs) + " s under 300 s");
    c.note(where + ": " + std::to_string(obs.size()) + " quantities, " + fmt(secs) + " s");
  }
  return c.finish(5);
}

// ---------------------------------------------------------------------------
bool criterion6() {
  Criterion c("Monte Carlo, elliptic regime: n = 10000, p = 300, rho in {0, 0.4, 0.8}, 20 replicates");
  const int p = 300, n = 10000, replicates = 20;
  for (const char* rho_text : {"0", "0.4", "0.8"}) {
    const ExactScalar rho = parse_exact(rho_text);
    const EllipticParams params{{1, rho * rho}};
    const auto phi = elliptic_moment_functional(params);
    const auto sum = parse_polynomial("E1 + E1^*").polynomial;
    std::vector<Observation> obs = {
        {"Tr(E E^T)", elliptic_family_moment(StarWord::parse("1 1*"), params), {}},
        {"Tr(E^2)", elliptic_family_moment(StarWord::parse("1 1"), params), {}},
        {"Tr((E+E^T)^2)", poly_moment(sum, 2, phi), {}},
        {"Tr((E+E^T)^4)", poly_moment(sum, 4, phi), {}},
    };
    // Closed forms for the first three: 1, rho^2, 2 + 2 rho^2.
    c.check(obs[0].exact == 1 && obs[1].exact == rho * rho && obs[2].exact == 2 + 2 * rho * rho,
            "elliptic predictions 1, rho^2, 2 + 2 rho^2");
    EnsembleConfig cfg;
    cfg.p = p;
    cfg.families = {{n, to_double(rho)}};
    cfg.seed = 6000 + static_cast<std::uint64_t>(to_double(rho) * 10);
    cfg.replicates = replicates;
    run_replicates(cfg, 1, [&](int r, const MatrixFamily& fam) {
      const Matrix e = fam.e(1);
      obs[0].values.push_back((e.array() * e.array()).sum() / p);
      obs[1].values.push_back((e.array() * e.transpose().array()).sum() / p);
      const Matrix s = e + e.transpose();
      const auto tm = trace_moments(s, 4);
      obs[2].values.push_back(tm[1]);
      obs[3].values.push_back(tm[3]);
      if (r == 0) {
        record_esd_identity(s, 8);
        record_singular_identity(fam.c(1));
      }
      return std::vector<double>{};
    });
    judge(c, obs, kBiasCenteredRegime / p, std::string("rho=") + rho_text);
  }
  c.check(c.elapsed() < kCenteredRegimeSeconds, "runtime under 600 s");
  return c.finish(6);
}

// ---------------------------------------------------------------------------
// Pi = sqrt(min(n1, n2) / p) (C1 + C1* + C1 C2* + C2 C1* - 2 rho1 (1 + rho2) I),
// n1 = 2000, n2 = 4000, p = 100. Its limit is
//   (1 + rho2)(e1 + e1*) + rho1 sqrt(n1/n2) (e2 + e2*),
// which for rho1 = 1 is the stated two-term form with sqrt(1/2).
bool criterion7() {
  Criterion c("two-family centered polynomial: n1 = 2000, n2 = 4000, p = 100, even moments 2 and 4");
  const int p = 100, n1 = 2000, n2 = 4000, replicates = 30;
  struct Case {
    const char* rho1;
    const char* rho2;
  };
  const std::vector<Case> cases = {{"1", "0"}, {"1", "0.4"}, {"1", "0.8"}, {"0.4", "0.4"}, {"0.8", "0.8"}};
  for (const auto& cs : cases) {
    const ExactScalar rho1 = parse_exact(cs.rho1), rho2 = parse_exact(cs.rho2);
    const ExactScalar shift = 2 * rho1 * (1 + rho2);
    ExperimentConfig cfg;
    cfg.ensemble.p = p;
    cfg.ensemble.families = {{n1, to_double(rho1)}, {n2, to_double(rho2)}};
    cfg.ensemble.replicates = replicates;
    cfg.ensemble.seed = 7000 + static_cast<std::uint64_t>(to_double(rho1) * 10 + to_double(rho2) * 100);
    cfg.rho_exact = {rho1, rho2};
    cfg.regime = Regime::CenteredE;
    cfg.polynomial_text = "C1 + C1^* + C1*C2^* + C2*C1^* - " + to_fraction_string(shift) + "*I";
    const Observable obs(cfg);

    // The stated limit, built independently of the expansion code.
    const EllipticParams ep{{1, rho1 * rho1}, {2, rho2 * rho2}};
    const auto phi = elliptic_moment_functional(ep);
    const Surd half_root = Surd::sqrt(ExactScalar(1, 2));
    const SurdPolynomial e1 = SurdPolynomial::symbol(1) + SurdPolynomial::symbol(1, Exponent::Star);
    const SurdPolynomial e2 = SurdPolynomial::symbol(2) + SurdPolynomial::symbol(2, Exponent::Star);
    const SurdPolynomial stated = e1 * Surd(1 + rho2) + e2 * half_root;
    const SurdPolynomial corrected = e1 * Surd(1 + rho2) + e2 * (Surd(rho1) * half_root);
    c.check(obs.limit_polynomial() == corrected, std::string("expansion gives the rho1-weighted form at rho1 = ") + cs.rho1);
    const SurdPolynomial& target = rho1 == 1 ? stated : corrected;

    std::vector<Observation> rows;
    for (int k : {2, 4}) {
      const Surd exact = poly_moment(target, k, phi);
      rows.push_back({"phi(Pi^" + std::to_string(k) + ")", exact.rational(), {}});
    }
    run_replicates(cfg.ensemble, 1, [&](int r, const MatrixFamily& fam) {
      const Matrix m = obs.matrix(fam);
      const auto tm = trace_moments(m, 4);
      rows[0].values.push_back(tm[1]);
      rows[1].values.push_back(tm[3]);
      if (r == 0) record_esd_identity(m, 8);
      return std::vector<double>{};
    });
    const std::string where = std::string("rho1=") + cs.rho1 + " rho2=" + cs.rho2 + (rho1 == 1 ? " (stated form)" : " (rho1-weighted form)");
    judge(c, rows, kBiasCenteredRegime / p, where);
    // Diagnostic only: the same polynomial under the exact cross-covariance state at
    // y_l = p / n_l, rescaled. It isolates the deterministic finite-size part of any miss.
    const FamilyParams finite{{1, {rho1, ExactScalar(p, n1)}}, {2, {rho2, ExactScalar(p, n2)}}};
    const auto phi_finite = cc_moment_functional(finite);
    const auto raw = parse_polynomial(cfg.polynomial_text).polynomial;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const int k = i == 0 ? 2 : 4;
      const auto est = summarize(rows[i].values);
      const double at_finite_y =
          to_double(poly_moment(raw, k, phi_finite)) * std::pow(static_cast<double>(n1) / p, k / 2.0);
      c.note(where + " " + rows[i].name + ": limit " + fmt(to_double(rows[i].exact)) + ", exact at finite y " +
             fmt(at_finite_y) + ", mean " + fmt(est.mean) + " se " + fmt(est.std_error));
    }
  }
  return c.finish(7);
}

// ---------------------------------------------------------------------------
bool criterion8() {
  Criterion c("pipeline identities: ESD moments = trace moments, singular values = sqrt eig(C C^T)");
  // Matrices recorded during criteria 5-7, plus a fresh batch when run alone.
  if (g_pipeline.matrices == 0) {
    EnsembleConfig cfg;
    cfg.p = 200;
    cfg.families = {{400, 0.4}, {300, -0.3}};
    cfg.seed = 8;
    const auto fam = sample_family(cfg, 0);
    for (const char* text : {"C1 + C1^*", "C1*C1^*", "C1*C2^* + C2*C1^*"}) {
      record_esd_identity(eval_matrix_poly(parse_polynomial(text).polynomial, fam, Regime::RawC), 8);
    }
    record_singular_identity(fam.c(1));
    record_singular_identity(fam.c(2));
  }
  c.note(std::to_string(g_pipeline.matrices) + " symmetric matrices; worst ESD/trace gap " + fmt(g_pipeline.worst_esd) +
         ", worst singular gap " + fmt(g_pipeline.worst_singular));
  c.check(g_pipeline.worst_esd <= kPipelineRelTol, "esd_moments vs trace_moments within 1e-8 relative");
  c.check(g_pipeline.worst_singular <= kPipelineRelTol, "singular values vs sqrt eig(C C^T) within 1e-8 relative");
  return c.finish(8);
}

// ---------------------------------------------------------------------------
std::string run_to_string(const std::string& command, ExperimentConfig cfg, int threads, int& status) {
  cfg.threads = threads;
  cfg.output_path.clear();
  std::ostringstream out;
  status = run_command(command, cfg, out);
  return out.str();
}

bool criterion9(const std::filesystem::path& recipes) {
  Criterion c("determinism: every recipe twice (1 and 2 threads), byte-identical CSVs; mc-verify exits 0");
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(recipes)) {
    for (const auto& entry : std::filesystem::directory_iterator(recipes)) {
      if (entry.path().extension() == ".cfg") files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  c.check(!files.empty(), "recipes found in " + recipes.string());
  for (const auto& file : files) {
    const std::string name = file.filename().string();
    try {
      const auto cfg = build_experiment(read_config_file(file.string()));
      std::vector<std::string> commands = {"mc-verify"};
      const Observable obs(cfg);
      if (obs.symmetric()) commands.push_back("esd");
      if (cfg.regime == Regime::CenteredE && !obs.symmetric()) commands.push_back("scatter");
      for (const auto& command : commands) {
        int s1 = 0, s2 = 0;
        const std::string a = run_to_string(command, cfg, 1, s1);
        const std::string b = run_to_string(command, cfg, 2, s2);
        c.check(a == b && !a.empty(), name + " " + command + ": identical output");
        c.check(s1 == s2, name + " " + command + ": identical status");
        if (command == "mc-verify") {
          c.check(s1 == 0, name + " mc-verify exit status 0");
          if (s1 != 0) c.note(name + " rows:\n" + a);
        }
      }
    } catch (const std::exception& e) {
      c.check(false, name + ": " + e.what());
    }
  }
  c.note(std::to_string(files.size()) + " recipes");
  return c.finish(9);
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path recipes = argc > 1 ? argv[1] : "recipes";
  std::set<int> only;
  for (int i = 2; i < argc; ++i) only.insert(std::stoi(argv[i]));
  auto wanted = [&](int n) { return only.empty() || only.count(n); };

  const std::vector<std::pair<int, std::function<bool()>>> criteria = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, [&] { return criterion9(recipes); }},
  };
  int failed = 0;
  for (const auto& [number, run] : criteria) {
    if (!wanted(number)) continue;
    try {
      if (!run()) ++failed;
    } catch (const std::exception& e) {
      std::printf("FAIL criterion %d: exception: %s\n", number, e.what());
      ++failed;
    }
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
