#include "xcov/experiment.hpp"

#include "xcov/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace xcov {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

template <class Int>
Int parse_integer(const std::string& key, const std::string& value) {
  Int out{};
  const char* first = value.data();
  const char* last = first + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) throw DomainError("config key '" + key + "': expected an integer, got '" + value + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    return to_double(parse_exact(value));
  } catch (const ParseError&) {
    throw DomainError("config key '" + key + "': expected a number, got '" + value + "'");
  }
}

// Matches "<prefix><digits>" and returns the index, or 0.
int indexed_key(const std::string& key, std::string_view prefix) {
  if (key.size() <= prefix.size() || key.compare(0, prefix.size(), prefix) != 0) return 0;
  const std::string digits = key.substr(prefix.size());
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) return 0;
  if (digits.size() > 1 && digits[0] == '0') return 0;
  const int index = std::stoi(digits);
  return index >= 1 && index <= 9 ? index : 0;
}

void write_csv_line(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace

ConfigMap parse_config_text(std::string_view text) {
  ConfigMap map;
  std::size_t offset = 0;
  int line_number = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    ++line_number;
    std::string_view line = text.substr(offset, end - offset);
    const std::size_t line_start = offset;
    offset = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("line " + std::to_string(line_number) + ": unterminated section header", line_start);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_number) + ": expected key=value", line_start);
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError("line " + std::to_string(line_number) + ": empty key", line_start);
    map[key] = std::string(trim(line.substr(eq + 1)));
  }
  return map;
}

ConfigMap read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

void apply_override(ConfigMap& map, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ParseError("override '" + std::string(assignment) + "' is not key=value", 0);
  const std::string key = lower(trim(assignment.substr(0, eq)));
  if (key.empty()) throw ParseError("override has an empty key", 0);
  map[key] = std::string(trim(assignment.substr(eq + 1)));
}

ExperimentConfig build_experiment(const ConfigMap& map) {
  ExperimentConfig cfg;
  std::map<int, int> ns;
  std::map<int, ExactScalar> rhos;
  bool have_p = false;
  for (const auto& [key, value] : map) {
    if (key == "p") {
      cfg.ensemble.p = parse_integer<int>(key, value);
      have_p = true;
    } else if (int l = indexed_key(key, "n")) {
      ns[l] = parse_integer<int>(key, value);
    } else if (int l = indexed_key(key, "rho")) {
      try {
        rhos[l] = parse_exact(value);
      } catch (const ParseError&) {
        throw DomainError("config key '" + key + "': expected a number, got '" + value + "'");
      }
    } else if (key == "dist") {
      const std::string v = lower(value);
      if (v == "gaussian") {
        cfg.ensemble.dist = EntryDist::Gaussian;
      } else if (v == "rademacher") {
        cfg.ensemble.dist = EntryDist::Rademacher;
      } else {
        throw DomainError("dist must be gaussian or rademacher, got '" + value + "'");
      }
    } else if (key == "seed") {
      cfg.ensemble.seed = parse_integer<std::uint64_t>(key, value);
    } else if (key == "replicates") {
      cfg.ensemble.replicates = parse_integer<int>(key, value);
    } else if (key == "poly") {
      cfg.polynomial_text = value;
    } else if (key == "regime") {
      const std::string v = lower(value);
      if (v == "raw_c") {
        cfg.regime = Regime::RawC;
      } else if (v == "centered_e") {
        cfg.regime = Regime::CenteredE;
      } else {
        throw DomainError("regime must be raw_c or centered_e, got '" + value + "'");
      }
    } else if (key == "max_order") {
      cfg.max_order = parse_integer<int>(key, value);
    } else if (key == "bins") {
      cfg.bins = parse_integer<int>(key, value);
    } else if (key == "out") {
      cfg.output_path = value;
    } else if (key == "z_threshold") {
      cfg.z_threshold = parse_real(key, value);
    } else if (key == "bias_allowance") {
      cfg.bias_allowance = parse_real(key, value);
    } else if (key == "threads") {
      cfg.threads = parse_integer<int>(key, value);
    } else if (key == "n_ref") {
      cfg.n_ref = parse_integer<int>(key, value);
      if (cfg.n_ref < 1) throw DomainError("n_ref must be at least 1");
    } else {
      throw DomainError("unknown config key '" + key + "'");
    }
  }
  if (!have_p) throw DomainError("config is missing p");
  if (ns.empty()) throw DomainError("config needs at least n1");
  const int t = ns.rbegin()->first;
  for (int l = 1; l <= t; ++l) {
    if (!ns.count(l)) throw DomainError("config has n" + std::to_string(t) + " but no n" + std::to_string(l));
  }
  for (const auto& [l, rho] : rhos) {
    if (l > t) throw DomainError("rho" + std::to_string(l) + " has no matching n" + std::to_string(l));
  }
  for (int l = 1; l <= t; ++l) {
    const ExactScalar rho = rhos.count(l) ? rhos[l] : ExactScalar(0);
    if (rho < -1 || rho > 1) throw DomainError("rho" + std::to_string(l) + " must lie in [-1, 1]");
    cfg.rho_exact.push_back(rho);
    cfg.ensemble.families.push_back(FamilySpec{ns[l], to_double(rho)});
  }
  if (cfg.max_order < 1 || cfg.max_order > enumeration_cap()) {
    throw DomainError("max_order must lie in 1.." + std::to_string(enumeration_cap()));
  }
  if (cfg.bins < 1) throw DomainError("bins must be at least 1");
  if (cfg.threads < 1) throw DomainError("threads must be at least 1");
  if (!(cfg.z_threshold > 0)) throw DomainError("z_threshold must be positive");
  if (!(cfg.bias_allowance >= 0)) throw DomainError("bias_allowance must be nonnegative");
  cfg.ensemble.validate();
  return cfg;
}

namespace {

SurdPolynomial to_surd(const NCPolynomial& a) {
  SurdPolynomial out;
  for (const auto& [w, c] : a.terms()) out.add(w, Surd(c));
  return out;
}

}  // namespace

Observable::Observable(const ExperimentConfig& cfg) : regime_(cfg.regime) {
  ParsedPolynomial parsed = parse_polynomial(cfg.polynomial_text);
  source_ = std::move(parsed.polynomial);
  kind_ = parsed.kind.value_or(cfg.regime == Regime::RawC ? SymbolKind::Raw : SymbolKind::Centered);
  const int t = cfg.ensemble.labels();
  const std::vector<int> labels = source_.labels();
  for (int l : labels) {
    if (l > t) throw DomainError("polynomial uses label " + std::to_string(l) + " but only n1..n" + std::to_string(t) + " are configured");
  }
  const int p = cfg.ensemble.p;
  if (regime_ == Regime::RawC) {
    if (kind_ == SymbolKind::Centered) throw DomainError("E symbols need regime centered_e");
    FamilyParams params;
    for (int l = 1; l <= t; ++l) {
      params[l] = CrossCovParams{cfg.rho_exact[static_cast<std::size_t>(l - 1)],
                                 ExactScalar(p) / cfg.ensemble.family(l).n};
    }
    limit_ = to_surd(source_);
    phi_ = cc_moment_functional(std::move(params));
    return;
  }
  elliptic_ = true;
  EllipticParams params;
  for (int l = 1; l <= t; ++l) {
    const ExactScalar& rho = cfg.rho_exact[static_cast<std::size_t>(l - 1)];
    params[l] = rho * rho;
  }
  phi_ = elliptic_moment_functional(std::move(params));
  if (kind_ == SymbolKind::Centered) {
    limit_ = to_surd(source_);
    return;
  }
  int n_ref = 0;
  for (int l : labels) {
    const int n = cfg.ensemble.family(l).n;
    n_ref = n_ref == 0 ? n : std::min(n_ref, n);
  }
  if (cfg.n_ref > 0) n_ref = cfg.n_ref;
  if (n_ref == 0) n_ref = p;
  std::map<int, ExactScalar> rho_map;
  std::map<int, RatioLimit> ratios;
  for (int l = 1; l <= t; ++l) {
    rho_map[l] = cfg.rho_exact[static_cast<std::size_t>(l - 1)];
    ratios[l] = RatioLimit::finite(ExactScalar(n_ref) / cfg.ensemble.family(l).n);
  }
  limit_ = centered_scaled_limit(source_, rho_map, ratios);
  scale_ = std::sqrt(static_cast<double>(n_ref) / p);
}

Surd Observable::moment(int k) const { return poly_moment(limit_, k, *phi_); }

Surd Observable::cumulant(int k) const { return poly_cumulant_power(limit_, k, *phi_); }

Matrix Observable::matrix(const MatrixFamily& fam) const {
  if (regime_ == Regime::CenteredE && kind_ == SymbolKind::Centered) {
    return eval_matrix_poly(source_, fam, Regime::CenteredE);
  }
  Matrix m = eval_matrix_poly(source_, fam, Regime::RawC);
  if (regime_ == Regime::CenteredE) m *= scale_;
  return m;
}

bool Observable::symmetric() const { return is_symmetric(source_); }

namespace {

int write_exact_table(const ExperimentConfig& cfg, std::ostream& out, bool cumulants) {
  const Observable obs(cfg);
  write_csv_line(out, {"k", "exact", "decimal"});
  for (int k = 1; k <= cfg.max_order; ++k) {
    const Surd value = cumulants ? obs.cumulant(k) : obs.moment(k);
    write_csv_line(out, {std::to_string(k), value.to_string(), format_g12(value.to_double())});
  }
  return 0;
}

}  // namespace

int cmd_moments(const ExperimentConfig& cfg, std::ostream& out) { return write_exact_table(cfg, out, false); }

int cmd_cumulants(const ExperimentConfig& cfg, std::ostream& out) { return write_exact_table(cfg, out, true); }

VerifyReport mc_verify(const ExperimentConfig& cfg) {
  const Observable obs(cfg);
  const int order = cfg.max_order;
  std::vector<Surd> exact;
  for (int k = 1; k <= order; ++k) exact.push_back(obs.moment(k));
  const auto per_replicate = run_replicates(cfg.ensemble, cfg.threads, [&](int, const MatrixFamily& fam) {
    return trace_moments(obs.matrix(fam), order);
  });
  VerifyReport report;
  const double allowance = cfg.bias_allowance / cfg.ensemble.p;
  for (int k = 1; k <= order; ++k) {
    std::vector<double> values;
    values.reserve(per_replicate.size());
    for (const auto& row : per_replicate) values.push_back(row[static_cast<std::size_t>(k - 1)]);
    const MomentEstimate est = summarize(values);
    ComparisonRow row;
    row.order = k;
    row.exact_limit = exact[static_cast<std::size_t>(k - 1)];
    row.mc_mean = est.mean;
    row.mc_se = est.std_error;
    const double diff = est.mean - row.exact_limit.to_double();
    if (est.std_error > 0) {
      row.z_score = diff / est.std_error;
    } else {
      row.z_score = diff == 0 ? 0 : std::copysign(HUGE_VAL, diff);
    }
    row.within_tolerance = std::abs(diff) <= cfg.z_threshold * est.std_error + allowance;
    report.pass = report.pass && row.within_tolerance;
    report.rows.push_back(std::move(row));
  }
  return report;
}

int cmd_mc_verify(const ExperimentConfig& cfg, std::ostream& out) {
  const VerifyReport report = mc_verify(cfg);
  write_csv_line(out, {"k", "exact_limit", "mc_mean", "mc_se", "z_score", "within_tolerance"});
  for (const auto& row : report.rows) {
    write_csv_line(out, {std::to_string(row.order), format_g12(row.exact_limit.to_double()), format_g12(row.mc_mean),
                         format_g12(row.mc_se), format_g12(row.z_score), row.within_tolerance ? "1" : "0"});
  }
  return report.pass ? 0 : 1;
}

std::vector<HistogramBin> histogram(std::vector<double> values, int bins) {
  if (bins < 1) throw DomainError("bins must be at least 1");
  if (values.empty()) throw DomainError("histogram of no values");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double total = static_cast<double>(values.size());
  if (!(hi - lo > 1e-12 * std::max(1.0, std::abs(lo)))) {
    const double centre = (lo + hi) / 2;
    return {HistogramBin{centre - 0.5, centre + 0.5, static_cast<long long>(values.size()), 1.0}};
  }
  const double width = (hi - lo) / bins;
  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    out[static_cast<std::size_t>(b)].left = lo + width * b;
    out[static_cast<std::size_t>(b)].right = b + 1 == bins ? hi : lo + width * (b + 1);
  }
  for (double v : values) {
    auto b = static_cast<long long>(std::floor((v - lo) / width));
    b = std::clamp<long long>(b, 0, bins - 1);
    ++out[static_cast<std::size_t>(b)].count;
  }
  for (auto& bin : out) bin.density = static_cast<double>(bin.count) / (total * (bin.right - bin.left));
  return out;
}

int cmd_esd(const ExperimentConfig& cfg, std::ostream& out) {
  const Observable obs(cfg);
  if (!obs.symmetric()) {
    throw DomainError("polynomial not symmetric: spectral convergence is only established for symmetric "
                      "(self-adjoint) polynomials");
  }
  const auto per_replicate = run_replicates(cfg.ensemble, cfg.threads, [&](int, const MatrixFamily& fam) {
    return spectrum(obs.matrix(fam), SpectrumKind::RealEigs).values;
  });
  std::vector<double> pooled;
  for (const auto& v : per_replicate) pooled.insert(pooled.end(), v.begin(), v.end());
  write_csv_line(out, {"bin_left", "bin_right", "count", "density"});
  for (const auto& bin : histogram(std::move(pooled), cfg.bins)) {
    write_csv_line(out, {format_g12(bin.left), format_g12(bin.right), std::to_string(bin.count), format_g12(bin.density)});
  }
  return 0;
}

int cmd_scatter(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.regime != Regime::CenteredE) throw DomainError("scatter needs regime centered_e");
  const Observable obs(cfg);
  const auto per_replicate = run_replicates(cfg.ensemble, cfg.threads, [&](int, const MatrixFamily& fam) {
    const auto sample = spectrum(obs.matrix(fam), SpectrumKind::ComplexEigs);
    std::vector<double> flat;
    flat.reserve(2 * sample.complex_values.size());
    for (const auto& z : sample.complex_values) {
      flat.push_back(z.real());
      flat.push_back(z.imag());
    }
    return flat;
  });
  write_csv_line(out, {"re", "im"});
  for (const auto& flat : per_replicate) {
    for (std::size_t i = 0; i + 1 < flat.size(); i += 2) write_csv_line(out, {format_g12(flat[i]), format_g12(flat[i + 1])});
  }
  return 0;
}

int run_command(const std::string& command, const ExperimentConfig& cfg, std::ostream& fallback) {
  std::ofstream file;
  std::ostream* out = &fallback;
  // Buffer so that a failing command leaves no partial file behind.
  std::ostringstream buffer;
  int status = 0;
  if (command == "moments") {
    status = cmd_moments(cfg, buffer);
  } else if (command == "cumulants") {
    status = cmd_cumulants(cfg, buffer);
  } else if (command == "mc-verify") {
    status = cmd_mc_verify(cfg, buffer);
  } else if (command == "esd") {
    status = cmd_esd(cfg, buffer);
  } else if (command == "scatter") {
    status = cmd_scatter(cfg, buffer);
  } else {
    throw DomainError("unknown command '" + command + "'");
  }
  if (!cfg.output_path.empty()) {
    file.open(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!file) throw DomainError("cannot write '" + cfg.output_path + "'");
    out = &file;
  }
  *out << buffer.str();
  out->flush();
  return status;
}

}  // namespace xcov
