#include "xcov/matrix_lab.hpp"

#include "xcov/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

namespace xcov {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Stream::Stream(std::uint64_t root_seed, std::uint64_t replicate, std::uint64_t label) {
  const std::uint64_t s0 = splitmix64(root_seed);
  const std::uint64_t s1 = splitmix64(s0 ^ splitmix64(replicate + 1));
  const std::uint64_t s2 = splitmix64(s1 ^ splitmix64(0x100000000ULL + label));
  engine_.seed(s2);
}

void EnsembleConfig::validate() const {
  if (p < 1) throw DomainError("p must be at least 1");
  if (families.empty()) throw DomainError("ensemble needs at least one family");
  if (replicates < 1) throw DomainError("replicates must be at least 1");
  for (std::size_t i = 0; i < families.size(); ++i) {
    const auto& f = families[i];
    const std::string name = std::to_string(i + 1);
    if (f.n < 1) throw DomainError("n" + name + " must be at least 1");
    if (!(std::abs(f.rho) <= 1)) throw DomainError("rho" + name + " must lie in [-1, 1]");
    const double entries = static_cast<double>(p) * std::max(p, f.n);
    if (entries > kMaxMatrixEntries) {
      throw ResourceLimitError("family " + name + ": p*n = " + std::to_string(p) + "*" + std::to_string(f.n) +
                               " exceeds the limit of " + std::to_string(static_cast<long long>(kMaxMatrixEntries)) +
                               " matrix entries");
    }
  }
}

const FamilySpec& EnsembleConfig::family(int label) const {
  if (label < 1 || label > labels()) throw DomainError("unknown label " + std::to_string(label));
  return families[static_cast<std::size_t>(label - 1)];
}

std::pair<Matrix, Matrix> sample_pair(int p, int n, double rho, EntryDist dist, Stream& stream) {
  if (!(std::abs(rho) <= 1)) throw DomainError("rho must lie in [-1, 1]");
  if (p < 1 || n < 1) throw DomainError("matrix dimensions must be positive");
  Matrix x(p, n), y(p, n);
  const double* end = x.data() + x.size();
  double* xs = x.data();
  double* ys = y.data();
  if (dist == EntryDist::Gaussian) {
    const double tail = std::sqrt(std::max(0.0, 1 - rho * rho));
    for (; xs != end; ++xs, ++ys) {
      const double a = stream.normal();
      const double z = stream.normal();
      *xs = a;
      *ys = rho * a + tail * z;
    }
  } else {
    const double keep = (1 + rho) / 2;
    for (; xs != end; ++xs, ++ys) {
      const double a = (stream.bits() >> 63) ? 1.0 : -1.0;
      *xs = a;
      *ys = stream.uniform() < keep ? a : -a;
    }
  }
  return {std::move(x), std::move(y)};
}

Matrix cross_covariance(const Matrix& x, const Matrix& y, int n) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw DomainError("cross_covariance: X is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                      " but Y is " + std::to_string(y.rows()) + "x" + std::to_string(y.cols()));
  }
  if (n < 1 || x.cols() != n) throw DomainError("cross_covariance: n must equal the number of columns");
  Matrix c = x * y.transpose();
  c /= static_cast<double>(n);
  return c;
}

Matrix centered_scaled(const Matrix& c, double rho, int n, int p) {
  if (c.rows() != c.cols()) throw DomainError("centered_scaled: C must be square");
  Matrix e = c;
  e.diagonal().array() -= rho;
  e *= std::sqrt(static_cast<double>(n) / p);
  return e;
}

const Matrix& MatrixFamily::c(int label) const {
  if (label < 1 || label > static_cast<int>(members.size())) throw DomainError("unknown label " + std::to_string(label));
  return members[static_cast<std::size_t>(label - 1)].c;
}

Matrix MatrixFamily::e(int label) const {
  const auto& m = members.at(static_cast<std::size_t>(label - 1));
  return centered_scaled(c(label), m.rho, m.n, p);
}

MatrixFamily sample_family(const EnsembleConfig& cfg, int replicate) {
  cfg.validate();
  MatrixFamily fam;
  fam.p = cfg.p;
  for (int label = 1; label <= cfg.labels(); ++label) {
    const auto& family = cfg.family(label);
    Stream stream(cfg.seed, static_cast<std::uint64_t>(replicate), static_cast<std::uint64_t>(label));
    auto [x, y] = sample_pair(cfg.p, family.n, family.rho, cfg.dist, stream);
    MatrixFamily::Member m;
    m.c = cross_covariance(x, y, family.n);
    m.x = std::move(x);
    m.y = std::move(y);
    m.n = family.n;
    m.rho = family.rho;
    fam.members.push_back(std::move(m));
  }
  return fam;
}

namespace {

// Per-label substitution matrices for one evaluation.
class Substitution {
 public:
  Substitution(const MatrixFamily& fam, Regime regime) : fam_(fam), regime_(regime) {}

  const Matrix& plain(int label) {
    if (label < 1 || label > static_cast<int>(fam_.members.size())) {
      throw DomainError("unknown label " + std::to_string(label) + " (family has " +
                        std::to_string(fam_.members.size()) + ")");
    }
    if (regime_ == Regime::RawC) return fam_.c(label);
    auto it = centered_.find(label);
    if (it == centered_.end()) it = centered_.emplace(label, fam_.e(label)).first;
    return it->second;
  }

  Matrix word(const StarWord& w) {
    const int p = fam_.p;
    if (w.empty()) return Matrix::Identity(p, p);
    Matrix out = letter(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i].exp == Exponent::Star) {
        out = out * plain(w[i].label).transpose();
      } else {
        out = out * plain(w[i].label);
      }
    }
    return out;
  }

 private:
  Matrix letter(const Letter& l) {
    if (l.exp == Exponent::Star) return plain(l.label).transpose();
    return plain(l.label);
  }

  const MatrixFamily& fam_;
  Regime regime_;
  std::map<int, Matrix> centered_;
};

template <class Coeff>
Matrix eval_poly(const BasicPolynomial<Coeff>& poly, const MatrixFamily& fam, Regime regime) {
  Substitution sub(fam, regime);
  Matrix out = Matrix::Zero(fam.p, fam.p);
  for (const auto& [w, c] : poly.terms()) {
    const double coefficient = coefficient_value(c);
    if (w.empty()) {
      out.diagonal().array() += coefficient;
    } else {
      out += coefficient * sub.word(w);
    }
  }
  return out;
}

// Tr(A B) without forming the product.
double trace_of_product(const Matrix& a, const Matrix& b) { return (a.array() * b.transpose().array()).sum(); }

}  // namespace

Matrix eval_matrix_poly(const NCPolynomial& poly, const MatrixFamily& fam, Regime regime) {
  return eval_poly(poly, fam, regime);
}

Matrix eval_matrix_poly(const SurdPolynomial& poly, const MatrixFamily& fam, Regime regime) {
  return eval_poly(poly, fam, regime);
}

std::vector<double> trace_moments(const Matrix& m, int max_order) {
  if (m.rows() != m.cols()) throw DomainError("trace_moments: matrix must be square");
  if (max_order < 0) throw DomainError("trace_moments: negative order");
  std::vector<double> out;
  if (max_order == 0) return out;
  const double p = static_cast<double>(m.rows());
  // powers[j] = M^{j+1}, up to ceil(K/2); Tr(M^k) pairs two of them.
  const int half = (max_order + 1) / 2;
  std::vector<Matrix> powers;
  powers.reserve(static_cast<std::size_t>(half));
  powers.push_back(m);
  for (int j = 2; j <= half; ++j) powers.push_back(powers.back() * m);
  for (int k = 1; k <= max_order; ++k) {
    if (k <= half) {
      out.push_back(powers[static_cast<std::size_t>(k - 1)].trace() / p);
    } else {
      const int a = half;
      const int b = k - half;
      out.push_back(trace_of_product(powers[static_cast<std::size_t>(a - 1)], powers[static_cast<std::size_t>(b - 1)]) / p);
    }
  }
  return out;
}

double word_trace(const StarWord& w, const MatrixFamily& fam, Regime regime) {
  const double p = static_cast<double>(fam.p);
  if (w.empty()) return 1.0;
  Substitution sub(fam, regime);
  if (w.size() == 1) {
    return sub.plain(w[0].label).trace() / p;
  }
  const std::size_t cut = (w.size() + 1) / 2;
  std::vector<Letter> head(w.letters().begin(), w.letters().begin() + static_cast<std::ptrdiff_t>(cut));
  std::vector<Letter> tail(w.letters().begin() + static_cast<std::ptrdiff_t>(cut), w.letters().end());
  return trace_of_product(sub.word(StarWord(head)), sub.word(StarWord(tail))) / p;
}

MomentEstimate summarize(std::span<const double> values) {
  MomentEstimate est;
  est.replicates = static_cast<int>(values.size());
  if (values.empty()) return est;
  double sum = 0;
  for (double v : values) sum += v;
  est.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0;
    for (double v : values) ss += (v - est.mean) * (v - est.mean);
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    est.std_error = sd / std::sqrt(static_cast<double>(values.size()));
  }
  return est;
}

std::vector<std::vector<double>> run_replicates(
    const EnsembleConfig& cfg, int threads,
    const std::function<std::vector<double>(int, const MatrixFamily&)>& fn) {
  cfg.validate();
  const int r = cfg.replicates;
  std::vector<std::vector<double>> results(static_cast<std::size_t>(r));
  const int workers = std::clamp(threads, 1, r);
  if (workers == 1) {
    for (int i = 0; i < r; ++i) results[static_cast<std::size_t>(i)] = fn(i, sample_family(cfg, i));
    return results;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= r) return;
      try {
        results[static_cast<std::size_t>(i)] = fn(i, sample_family(cfg, i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(r);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

MomentEstimate monte_carlo_word_moment(const EnsembleConfig& cfg, const StarWord& w, Regime regime, int threads) {
  for (const auto& letter : w) cfg.family(letter.label);
  auto rows = run_replicates(cfg, threads, [&](int, const MatrixFamily& fam) {
    return std::vector<double>{word_trace(w, fam, regime)};
  });
  std::vector<double> values;
  values.reserve(rows.size());
  for (const auto& row : rows) values.push_back(row.front());
  return summarize(values);
}

namespace {

std::string matrix_stats(const Matrix& m) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%ldx%ld matrix, max|entry| = %.6g, Frobenius norm = %.6g, finite = %s",
                static_cast<long>(m.rows()), static_cast<long>(m.cols()), m.cwiseAbs().maxCoeff(), m.norm(),
                m.allFinite() ? "yes" : "no");
  return buf;
}

}  // namespace

SpectralSample spectrum(const Matrix& m, SpectrumKind kind) {
  SpectralSample out;
  out.kind = kind;
  if (m.size() == 0) throw DomainError("spectrum of an empty matrix");
  if (!m.allFinite()) throw NumericalError("spectrum: non-finite entries in " + matrix_stats(m));
  switch (kind) {
    case SpectrumKind::RealEigs: {
      if (m.rows() != m.cols()) throw DomainError("REAL_EIGS needs a square matrix");
      const double scale = m.cwiseAbs().maxCoeff();
      const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
      if (asym > kSymmetryTolerance * scale) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "REAL_EIGS needs a symmetric matrix: max|M - M^T| = %.3g vs max|M| = %.3g",
                      asym, scale);
        throw DomainError(buf);
      }
      const Matrix sym = (m + m.transpose()) / 2;
      Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
      if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed on " + matrix_stats(m));
      const auto& ev = solver.eigenvalues();
      out.values.assign(ev.data(), ev.data() + ev.size());
      std::sort(out.values.begin(), out.values.end());
      break;
    }
    case SpectrumKind::Singular: {
      Eigen::BDCSVD<Matrix> svd(m);
      if (svd.info() != Eigen::Success) throw NumericalError("SVD failed on " + matrix_stats(m));
      const auto& sv = svd.singularValues();
      out.values.assign(sv.data(), sv.data() + sv.size());
      std::sort(out.values.begin(), out.values.end());
      break;
    }
    case SpectrumKind::ComplexEigs: {
      if (m.rows() != m.cols()) throw DomainError("COMPLEX_EIGS needs a square matrix");
      Eigen::EigenSolver<Matrix> solver(m, false);
      if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge on " + matrix_stats(m));
      const auto& ev = solver.eigenvalues();
      out.complex_values.assign(ev.data(), ev.data() + ev.size());
      std::sort(out.complex_values.begin(), out.complex_values.end(),
                [](const std::complex<double>& a, const std::complex<double>& b) {
                  return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
                });
      break;
    }
  }
  return out;
}

std::vector<double> esd_moments(const SpectralSample& sample, int max_order) {
  if (sample.kind != SpectrumKind::RealEigs) throw DomainError("esd_moments needs REAL_EIGS");
  if (sample.values.empty()) throw DomainError("esd_moments of an empty spectrum");
  std::vector<double> out(static_cast<std::size_t>(std::max(max_order, 0)), 0.0);
  for (double lambda : sample.values) {
    double power = 1;
    for (int k = 1; k <= max_order; ++k) {
      power *= lambda;
      out[static_cast<std::size_t>(k - 1)] += power;
    }
  }
  for (double& v : out) v /= static_cast<double>(sample.values.size());
  return out;
}

}  // namespace xcov
