#include "sphlkc/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sphlkc/lkc.hpp"
#include "sphlkc/simsphere.hpp"
#include "sphlkc/version.hpp"

namespace sphlkc {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad numeric value for '" + key + "': " + s);
  }
}

long parse_int(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad integer value for '" + key + "': " + s);
  }
}

// "a,b,c" or "lo:hi:count" (inclusive linspace)
std::vector<double> parse_levels(const std::string& s, const std::string& key) {
  auto c1 = s.find(':');
  if (c1 != std::string::npos) {
    auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw std::runtime_error("config: expected lo:hi:count for '" + key + "'");
    double lo = parse_double(trim(s.substr(0, c1)), key);
    double hi = parse_double(trim(s.substr(c1 + 1, c2 - c1 - 1)), key);
    long n = parse_int(trim(s.substr(c2 + 1)), key);
    if (n < 2) throw std::runtime_error("config: level count must be >= 2");
    std::vector<double> out(n);
    for (long i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
    return out;
  }
  std::vector<double> out;
  for (const auto& tok : split_list(s))
    if (!tok.empty()) out.push_back(parse_double(tok, key));
  if (out.empty()) throw std::runtime_error("config: empty list for '" + key + "'");
  return out;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += fmt(v[i]);
  }
  return s;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

const std::set<std::string> kCommands = {"spectra",     "lkc-theory", "simulate",
                                         "mc-validate", "mc-sup",     "cum4"};

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config: malformed section at line " +
                                 std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      static const std::set<std::string> kSections = {"grid", "spectrum", "window",
                                                      "kernel", "transform", "cum4"};
      if (!kSections.count(section))
        throw std::runtime_error("config: unknown section [" + section + "]");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key = value at line " +
                               std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    std::string scoped = section.empty() ? key : section + "." + key;

    if (scoped == "command") {
      if (!kCommands.count(value))
        throw std::runtime_error("config: unknown command '" + value + "'");
      c.command = value;
    } else if (scoped == "seed") {
      c.seed = static_cast<std::uint64_t>(parse_int(value, scoped));
    } else if (scoped == "replicates") {
      c.replicates = static_cast<int>(parse_int(value, scoped));
    } else if (scoped == "levels") {
      c.levels = parse_levels(value, scoped);
    } else if (scoped == "out") {
      c.out = value;
    } else if (scoped == "grid.n_theta") {
      c.n_theta = static_cast<int>(parse_int(value, scoped));
    } else if (scoped == "grid.n_phi") {
      c.n_phi = static_cast<int>(parse_int(value, scoped));
    } else if (scoped == "spectrum.model") {
      if (value != "sachs-wolfe" && value != "bardeen" && value != "tabulated")
        throw std::runtime_error("config: unknown spectrum model '" + value + "'");
      c.model = value;
    } else if (scoped == "spectrum.G") {
      c.G = parse_double(value, scoped);
    } else if (scoped == "spectrum.alpha") {
      c.alpha = parse_double(value, scoped);
    } else if (scoped == "spectrum.ellmax") {
      c.ellmax = static_cast<int>(parse_int(value, scoped));
    } else if (scoped == "spectrum.table") {
      c.table = value;
    } else if (scoped == "window.B") {
      c.B = parse_double(value, scoped);
    } else if (scoped == "window.j") {
      c.j = static_cast<int>(parse_int(value, scoped));
    } else if (scoped == "kernel.L_K") {
      c.L_K = static_cast<int>(parse_int(value, scoped));
    } else if (scoped == "kernel.kappa") {
      c.kappa = value;
    } else if (scoped == "transform.q") {
      c.q = static_cast<int>(parse_int(value, scoped));
    } else if (scoped == "cum4.j_list") {
      c.j_list.clear();
      for (const auto& tok : split_list(value))
        if (!tok.empty()) c.j_list.push_back(static_cast<int>(parse_int(tok, scoped)));
    } else {
      throw std::runtime_error("config: unknown key '" + scoped + "'");
    }
  }
  return c;
}

RunConfig RunConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os << "command = " << command << "\n";
  os << "seed = " << seed << "\n";
  os << "replicates = " << replicates << "\n";
  os << "levels = " << join_doubles(levels) << "\n";
  os << "out = " << out << "\n";
  os << "\n[grid]\n";
  os << "n_theta = " << n_theta << "\n";
  os << "n_phi = " << n_phi << "\n";
  os << "\n[spectrum]\n";
  os << "model = " << model << "\n";
  os << "G = " << fmt(G) << "\n";
  os << "alpha = " << fmt(alpha) << "\n";
  os << "ellmax = " << ellmax << "\n";
  if (!table.empty()) os << "table = " << table << "\n";
  os << "\n[window]\n";
  os << "B = " << fmt(B) << "\n";
  os << "j = " << j << "\n";
  os << "\n[kernel]\n";
  os << "L_K = " << L_K << "\n";
  os << "kappa = " << kappa << "\n";
  os << "\n[transform]\n";
  os << "q = " << q << "\n";
  os << "\n[cum4]\n";
  os << "j_list = " << join_ints(j_list) << "\n";
  return os.str();
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t RunConfig::hash() const {
  // the output location is not part of the experiment identity: two runs of
  // the same configuration into different directories must stamp artifacts
  // identically
  std::istringstream in(canonical());
  std::ostringstream core;
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("out = ", 0) != 0) core << line << "\n";
  return fnv1a64(core.str());
}

NeedletWindow RunConfig::make_window() const { return NeedletWindow(B, j); }

PowerSpectrum RunConfig::make_spectrum() const {
  return make_spectrum(make_window().ell_max());
}

PowerSpectrum RunConfig::make_spectrum(int ellmax_needed) const {
  int lmax = ellmax > 0 ? ellmax : ellmax_needed;
  if (model == "sachs-wolfe") return PowerSpectrum::sachs_wolfe(G, alpha, lmax);
  if (model == "bardeen") return PowerSpectrum::bardeen(lmax);
  if (table.empty())
    throw std::runtime_error("config: tabulated spectrum needs [spectrum] table");
  return PowerSpectrum::from_table_file(table);
}

SmoothingKernel RunConfig::make_kernel() const {
  if (kappa == "ones") return SmoothingKernel::ones(L_K);
  if (kappa == "band") return SmoothingKernel::band_indicator(make_window(), L_K);
  SmoothingKernel k;
  for (const auto& tok : split_list(kappa))
    if (!tok.empty()) k.kappa.push_back(parse_double(tok, "kernel.kappa"));
  if (static_cast<int>(k.kappa.size()) != L_K + 1)
    throw std::runtime_error("config: kappa list must have L_K + 1 values");
  return k;
}

McSetup RunConfig::make_setup() const {
  auto window = make_window();
  auto spectrum = make_spectrum();
  auto kernel = make_kernel();
  int band = q * std::min(window.ell_max(), spectrum.ellmax());
  McSetup setup{std::move(spectrum), window, std::move(kernel), q,
                n_theta > 0 ? n_theta : band + 2,
                n_phi > 0 ? n_phi : 2 * band + 3};
  return setup;
}

// ---------------------------------------------------------------------------
// Command execution
// ---------------------------------------------------------------------------

namespace {

constexpr double kFourPi = 12.566370614359172;

class ArtifactWriter {
 public:
  ArtifactWriter(const std::filesystem::path& path, const RunConfig& config)
      : os_(path) {
    if (!os_) throw std::runtime_error("cannot write artifact: " + path.string());
    char head[96];
    std::snprintf(head, sizeof(head), "# sphlkc %s config %016llx\n", kVersion,
                  static_cast<unsigned long long>(config.hash()));
    os_ << head;
  }

  // RFC-4180-style quoting; numeric cells never need it but string cells may.
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ",";
      os_ << quote(cells[i]);
    }
    os_ << "\n";
  }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    q += "\"";
    return q;
  }
  std::ofstream os_;
};

void write_manifest(const RunConfig& config, const std::vector<std::string>& notes) {
  std::filesystem::path dir(config.out);
  std::ofstream os(dir / "manifest.txt");
  if (!os) throw std::runtime_error("cannot write manifest");
  char head[96];
  std::snprintf(head, sizeof(head), "# sphlkc %s config %016llx\n", kVersion,
                static_cast<unsigned long long>(config.hash()));
  os << head;
  for (const auto& n : notes) os << "# " << n << "\n";
  os << "\n" << config.canonical();
}

std::vector<std::string> report_notes(const McReport& report) {
  std::vector<std::string> notes = report.notes;
  notes.push_back("replicates = " + std::to_string(report.replicates));
  notes.push_back("seed = " + std::to_string(report.seed));
  return notes;
}

void write_report_csv(const McReport& report, const RunConfig& config,
                      const std::filesystem::path& path) {
  ArtifactWriter w(path, config);
  w.row({"level", "stat", "mc_mean", "mc_se", "theory", "z"});
  for (const auto& r : report.rows)
    w.row({fmt(r.level), r.stat, fmt(r.mc_mean), fmt(r.mc_se), fmt(r.theory),
           fmt(r.z)});
}

int cmd_spectra(const RunConfig& config) {
  auto window = config.make_window();
  auto spectrum = config.make_spectrum();
  auto kernel = config.make_kernel();
  auto ts = transformed_spectrum(config.q, window, spectrum, kernel);

  std::filesystem::path dir(config.out);
  ArtifactWriter w(dir / "spectra.csv", config);
  w.row({"ell", "C_ell", "b2", "kappa2", "C_ell_jq"});
  int top = std::max(window.ell_max(), kernel.L_K());
  for (int ell = 1; ell <= top; ++ell) {
    double c = ell <= spectrum.ellmax() ? spectrum(ell) : 0.0;
    double b = window.multiplier(ell);
    double kap = kernel(ell);
    double cjq = ell <= ts.L_K() ? ts.values[ell] : 0.0;
    w.row({std::to_string(ell), fmt(c), fmt(b * b), fmt(kap * kap), fmt(cjq)});
  }
  std::vector<std::string> notes;
  notes.push_back("var_beta = " + fmt(field_variance(window, spectrum)));
  notes.push_back("lambda_j = " + fmt(spectral_moment(window, spectrum)));
  notes.push_back("var_transformed = " + fmt(ts.variance()));
  notes.push_back("lambda_jq = " + fmt(lambda_jq(ts)));
  write_manifest(config, notes);
  return 0;
}

int cmd_lkc_theory(const RunConfig& config) {
  auto window = config.make_window();
  auto spectrum = config.make_spectrum();
  auto kernel = config.make_kernel();
  auto ts = transformed_spectrum(config.q, window, spectrum, kernel);
  double lambda = lambda_jq(ts);

  std::filesystem::path dir(config.out);
  ArtifactWriter w(dir / "lkc-theory.csv", config);
  w.row({"u", "l0", "l1", "l2", "len", "exc_prob"});
  for (double u : config.levels) {
    auto t = expected_lkc_gaussian(u, lambda);
    w.row({fmt(u), fmt(t.l0), fmt(t.l1), fmt(t.l2), fmt(t.boundary_length()),
           fmt(excursion_prob_approx(u, lambda))});
  }
  write_manifest(config, {"lambda_jq = " + fmt(lambda),
                          std::string("exc_prob_error_class = ") +
                              kExcursionProbErrorClass});
  return 0;
}

int cmd_simulate(const RunConfig& config) {
  auto setup = config.make_setup();
  auto grid = make_grid(setup.n_theta, setup.n_phi);
  auto ts = transformed_spectrum(setup.q, setup.window, setup.spectrum, setup.kernel);
  auto gres = build_gjq(setup.spectrum, setup.window, setup.kernel, setup.q, grid,
                        config.seed, 0, &ts);
  auto fsur = build_surrogate(ts, grid, config.seed, 0);
  double sigma = std::sqrt(ts.variance());
  for (double& v : fsur.values) v /= sigma;

  std::filesystem::path dir(config.out);
  {
    std::ofstream os(dir / "field_gjq.txt");
    write_field_text(gres.normalized, os);
  }
  {
    std::ofstream os(dir / "field_gjq.bin", std::ios::binary);
    write_field_binary(gres.normalized, os);
  }
  {
    std::ofstream os(dir / "field_surrogate.bin", std::ios::binary);
    write_field_binary(fsur, os);
  }
  write_manifest(config, {"sigma_theory = " + fmt(gres.sigma_theory)});
  return 0;
}

int cmd_mc_validate(const RunConfig& config) {
  auto setup = config.make_setup();
  auto report = mc_validate_lkcs(setup, config.levels, config.replicates, config.seed);
  write_report_csv(report, config, std::filesystem::path(config.out) / "mc-validate.csv");
  write_manifest(config, report_notes(report));
  return 0;
}

int cmd_mc_sup(const RunConfig& config) {
  auto setup = config.make_setup();
  auto report =
      mc_sup_probability(setup, config.levels, config.replicates, config.seed);
  write_report_csv(report, config, std::filesystem::path(config.out) / "mc-sup.csv");
  write_manifest(config, report_notes(report));
  return 0;
}

int cmd_cum4(const RunConfig& config) {
  int jmax = 0;
  for (int jj : config.j_list) jmax = std::max(jmax, jj);
  NeedletWindow top_window(config.B, jmax);
  auto spectrum = config.make_spectrum(top_window.ell_max());
  auto kernel = config.make_kernel();
  auto report = mc_cumulant_decay(spectrum, config.B, config.j_list, kernel,
                                  config.q, config.replicates, config.seed);

  std::filesystem::path dir(config.out);
  ArtifactWriter w(dir / "cum4.csv", config);
  w.row({"j", "cum4", "se_indicative", "low_replicate_warning"});
  for (const auto& r : report.rows)
    w.row({std::to_string(r.j), fmt(r.cum4), fmt(r.se_indicative),
           r.warn_low_replicates ? "1" : "0"});
  auto notes = report.notes;
  notes.push_back("slope = " + fmt(report.slope));
  notes.push_back("log_B = " + fmt(report.log_bandwidth));
  write_manifest(config, notes);
  return 0;
}

}  // namespace

int run_command(const RunConfig& config) {
  std::filesystem::create_directories(config.out);
  if (config.command == "spectra") return cmd_spectra(config);
  if (config.command == "lkc-theory") return cmd_lkc_theory(config);
  if (config.command == "simulate") return cmd_simulate(config);
  if (config.command == "mc-validate") return cmd_mc_validate(config);
  if (config.command == "mc-sup") return cmd_mc_sup(config);
  if (config.command == "cum4") return cmd_cum4(config);
  throw std::runtime_error("unknown command '" + config.command + "'");
}

}  // namespace sphlkc
