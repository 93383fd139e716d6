#include "paucity/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "paucity/arith.hpp"
#include "paucity/congruence.hpp"
#include "paucity/constants.hpp"
#include "paucity/csv.hpp"
#include "paucity/errors.hpp"
#include "paucity/meanvalue.hpp"
#include "paucity/quadruples.hpp"
#include "paucity/sieve.hpp"

namespace paucity {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
  return out;
}

unsigned long long parse_u64(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    // Accept 1e6-style limits as long as they are exact integers.
    const long double v = std::stold(s, &used);
    if (used != s.size() || v < 0 || v != std::floor(v) || v > 1.8e19L) throw std::exception();
    return static_cast<unsigned long long>(v);
  } catch (const std::exception&) {
    throw ValidationError(std::string("bad ") + what + ": '" + s + "'");
  }
}

CheckpointGrid parse_grid(const std::string& text, std::uint64_t limit) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  CheckpointGrid grid;
  if (kind == "geometric") {
    const auto parts = split(rest.empty() ? "10" : rest, ':');
    const std::uint64_t ratio = parse_u64(parts[0], "grid ratio");
    const std::uint64_t start = parts.size() > 1 ? parse_u64(parts[1], "grid start") : 1000;
    grid = limit < start ? CheckpointGrid{{limit}} : CheckpointGrid::geometric(start, ratio, limit);
  } else if (kind == "list") {
    for (const auto& p : split(rest, ',')) grid.points.push_back(parse_u64(p, "grid point"));
  } else {
    throw ValidationError("unknown grid '" + text + "' (use geometric:R[:START] or list:a,b,...)");
  }
  grid.validate(limit);
  return grid;
}

struct Common {
  std::string out_dir = ".";
  unsigned threads = 1;
  std::uint64_t block_size = 1 << 16;
};

void apply_thread_env(Common& c) {
  if (const char* env = std::getenv("PAUCITY_THREADS"); env && *env) {
    const auto n = parse_u64(env, "PAUCITY_THREADS");
    if (n < 1 || n > 4096) throw ValidationError("PAUCITY_THREADS out of range");
    c.threads = static_cast<unsigned>(n);
  }
}

class Manifest {
 public:
  Manifest(const std::vector<std::string>& args, std::string subcommand)
      : doc_{{"command_line", args},
             {"subcommand", std::move(subcommand)},
             {"version", kVersion},
             {"start", utc_now()},
             {"config", json::object()},
             {"outputs", json::array()}} {}

  json& config() { return doc_["config"]; }
  void output(const fs::path& p) { doc_["outputs"].push_back(p.filename().string()); }

  void write(const fs::path& dir) {
    doc_["end"] = utc_now();
    const fs::path path = dir / (doc_["subcommand"].get<std::string>() + ".manifest.json");
    auto out = open_out(path);
    out << doc_.dump(2) << '\n';
  }

 private:
  json doc_;
};

void add_common(CLI::App* sub, Common& c, bool sieving) {
  sub->add_option("--out-dir", c.out_dir, "Directory for CSV and manifest output");
  if (sieving) {
    sub->add_option("--threads", c.threads, "Worker threads (PAUCITY_THREADS overrides)")
        ->check(CLI::Range(1u, 4096u));
    sub->add_option("--block-size", c.block_size, "Sieve block length")
        ->check(CLI::Range(std::uint64_t{2}, kBlockSizeBudget));
  }
}

// --- sieve -----------------------------------------------------------------

struct SieveArgs {
  std::string limit;
  bool per_n = false;
  bool dump = false;
};

void cmd_sieve(const SieveArgs& a, Common& c, Manifest& m, std::ostream& out) {
  SieveConfig cfg{parse_u64(a.limit, "limit"), c.block_size, c.threads};
  cfg.validate();
  m.config() = {{"limit", cfg.limit},     {"block_size", cfg.block_size},
                {"threads", cfg.thread_count}, {"per_n", a.per_n},
                {"dump", a.dump},         {"r0_conventions", {"pair", "divisor"}}};
  const fs::path dir = c.out_dir;
  std::ofstream per_n, dump;
  if (a.per_n) {
    per_n = open_out(dir / "sieve.csv");
    per_n << "n,r0_pair,r0_div,r1,r2\n";
    m.output(dir / "sieve.csv");
  }
  if (a.dump) {
    dump = open_out(dir / "blocks.pcty");
    m.output(dir / "blocks.pcty");
  }
  std::uint64_t s0 = 0, s0d = 0, s1 = 0, s2 = 0, blocks = 0;
  std::uint16_t max0 = 0, max1 = 0, max2 = 0;
  sieve_all(cfg, [&](const RepresentationBlock& b) {
    ++blocks;
    for (std::size_t i = 0; i < b.size(); ++i) {
      s0 += b.r0_pair[i];
      s0d += b.r0_div[i];
      s1 += b.r1[i];
      s2 += b.r2[i];
      max0 = std::max(max0, b.r0_pair[i]);
      max1 = std::max(max1, b.r1[i]);
      max2 = std::max(max2, b.r2[i]);
      if (a.per_n) {
        per_n << b.lo + i << ',' << b.r0_pair[i] << ',' << b.r0_div[i] << ',' << b.r1[i] << ','
              << b.r2[i] << '\n';
      }
    }
    if (a.dump) write_block(dump, b);
  });
  auto summary = open_out(dir / "sieve_summary.csv");
  m.output(dir / "sieve_summary.csv");
  summary << "quantity,value\n"
          << "limit," << cfg.limit << "\n"
          << "sum_r0_pair," << s0 << "\n"
          << "sum_r0_div," << s0d << "\n"
          << "sum_r1," << s1 << "\n"
          << "sum_r2," << s2 << "\n"
          << "max_r0_pair," << max0 << "\n"
          << "max_r1," << max1 << "\n"
          << "max_r2," << max2 << "\n";
  out << "sieved [1, " << cfg.limit << "] in " << blocks << " blocks: sum r0=" << s0
      << " sum r1=" << s1 << " sum r2=" << s2 << "\n";
}

// --- mean ------------------------------------------------------------------

struct MeanArgs {
  std::string limit;
  std::string stats = "S01,S02,S22";
  std::string grid = "geometric:10";
  std::string r0 = "pair";
  double c = 1.0;
};

void cmd_mean(const MeanArgs& a, Common& c, Manifest& m, std::ostream& out) {
  SieveConfig cfg{parse_u64(a.limit, "limit"), c.block_size, c.threads};
  cfg.validate();
  if (cfg.limit < 2) throw ValidationError("mean: limit must be >= 2");
  const CheckpointGrid grid = parse_grid(a.grid, cfg.limit);
  MeanValueOptions opts;
  if (a.r0 == "pair") opts.r0 = R0Convention::Pair;
  else if (a.r0 == "div") opts.r0 = R0Convention::Divisor;
  else throw ValidationError("--r0 must be pair or div");
  opts.dispersion_c = a.c;

  std::vector<Statistic> stats;
  for (const auto& raw : split(a.stats, ',')) {
    std::string name = raw;
    if (const auto open = name.find('('); open != std::string::npos) {
      // DISPERSION(c) carries its own c.
      if (name.back() != ')') throw ValidationError("bad statistic '" + raw + "'");
      try {
        opts.dispersion_c = std::stod(name.substr(open + 1, name.size() - open - 2));
      } catch (const std::exception&) {
        throw ValidationError("bad dispersion parameter in '" + raw + "'");
      }
      name = name.substr(0, open);
      if (name != "DISPERSION") throw ValidationError("bad statistic '" + raw + "'");
    }
    const auto s = parse_statistic(name);
    if (!s) throw ValidationError("unknown statistic '" + raw + "'");
    if (std::find(stats.begin(), stats.end(), *s) == stats.end()) stats.push_back(*s);
  }
  if (!(opts.dispersion_c > 0)) throw ValidationError("dispersion c must be positive");

  m.config() = {{"limit", cfg.limit},
                {"block_size", cfg.block_size},
                {"threads", cfg.thread_count},
                {"grid", grid.points},
                {"stats", split(a.stats, ',')},
                {"r0_convention", a.r0},
                {"dispersion_c", opts.dispersion_c}};
  const auto series = compute_mean_values(cfg, grid, stats, opts);
  const fs::path path = fs::path(c.out_dir) / "mean.csv";
  auto csv = open_out(path);
  write_mean_csv(csv, series);
  m.output(path);
  out << "wrote " << path.string() << " (" << grid.points.size() << " checkpoints x "
      << series.size() << " statistics)\n";
}

// --- constants -------------------------------------------------------------

struct ConstantsArgs {
  double eps = 1e-10;
  std::string prime_limit = "10000000";
  std::string vz = "1000,10000,100000";
};

void cmd_constants(const ConstantsArgs& a, Common& c, Manifest& m, std::ostream& out) {
  const std::uint64_t plimit = parse_u64(a.prime_limit, "prime limit");
  m.config() = {{"eps", a.eps}, {"prime_limit", plimit}, {"vz", a.vz}};
  const ConstantValue g = catalan(a.eps);
  const ConstantValue k = landau_ramanujan(plimit);
  const ConstantValue k3 = landau_ramanujan_mod3(plimit);
  const long double pi = std::numbers::pi_v<long double>;

  std::ostringstream table;
  table << "name,value,error_bound\n";
  auto row = [&](const std::string& name, long double v, long double e) {
    table << name << ',' << format_real(v) << ',' << format_real(e) << '\n';
  };
  row("G", g.value, g.error_bound);
  row("K", k.value, k.error_bound);
  row("K_mod3", k3.value, k3.error_bound);
  row("12G/pi^2", 12 * g.value / (pi * pi), 12 * g.error_bound / (pi * pi));
  row("12G/pi^3", 12 * g.value / (pi * pi * pi), 12 * g.error_bound / (pi * pi * pi));
  row("1/(4K)", 1 / (4 * k.value), k.error_bound / (4 * k.value * (k.value - k.error_bound)));
  if (g.truncated) out << "note: eps below " << format_real(kMinCatalanEps) << " was clamped\n";

  const fs::path dir = c.out_dir;
  const fs::path cpath = dir / "constants.csv";
  open_out(cpath) << table.str();
  m.output(cpath);
  out << table.str();

  if (!a.vz.empty()) {
    std::vector<std::uint64_t> zs;
    for (const auto& s : split(a.vz, ',')) zs.push_back(parse_u64(s, "z"));
    const std::uint64_t zmax = *std::max_element(zs.begin(), zs.end());
    if (zmax < 3) throw ValidationError("z must be >= 3");
    const PrimeTable primes = sieve_primes(zmax);
    const fs::path vpath = dir / "vz.csv";
    auto vz = open_out(vpath);
    vz << "z,V,V_log3z\n";
    for (std::uint64_t z : zs) {
      const long double v = sieve_density_product(static_cast<long double>(z), primes);
      const long double lz = std::log(static_cast<long double>(z));
      vz << z << ',' << format_real(v) << ',' << format_real(v * lz * lz * lz) << '\n';
    }
    m.output(vpath);
  }
}

// --- congruence ------------------------------------------------------------

struct CongruenceArgs {
  std::string kind = "both";
  std::uint64_t max_modulus = 100;
  std::uint64_t t = 1;
  std::uint64_t d = 1;
};

bool squarefree(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

void cmd_congruence(const CongruenceArgs& a, Common& c, Manifest& m, std::ostream& out) {
  if (a.kind != "rho" && a.kind != "nu" && a.kind != "both") {
    throw ValidationError("--kind must be rho, nu or both");
  }
  m.config() = {{"kind", a.kind}, {"max_modulus", a.max_modulus}, {"t", a.t}, {"d", a.d}};
  const fs::path dir = c.out_dir;
  std::uint64_t rows = 0, mismatches = 0;
  const char* header = "modulus,t,d,closed,oracle,match\n";
  if (a.kind != "nu") {
    if (a.max_modulus > kRhoOracleBudget) throw CapacityError("rho oracle budget exceeded");
    const SpfTable spf(std::max<std::uint64_t>(a.max_modulus, 1));
    const fs::path path = dir / "rho.csv";
    auto csv = open_out(path);
    csv << header;
    for (std::uint64_t d = 1; d <= a.max_modulus; ++d) {
      const auto closed = rho_closed(spf.factorize(d)).count;
      const auto oracle = rho_oracle(d).count;
      csv << d << ",,," << closed << ',' << oracle << ',' << (closed == oracle ? "true" : "false")
          << '\n';
      ++rows;
      mismatches += closed != oracle;
    }
    m.output(path);
  }
  if (a.kind != "rho") {
    if (a.max_modulus > kNuOracleBudget) throw CapacityError("nu oracle budget exceeded");
    const FormParams params(a.t, a.d);
    const fs::path path = dir / "nu.csv";
    auto csv = open_out(path);
    csv << header;
    for (std::uint64_t delta = 1; delta <= a.max_modulus; ++delta) {
      if (!squarefree(delta)) continue;
      const auto closed = nu_closed(delta, params).count;
      const auto oracle = nu_oracle(delta, params).count;
      csv << delta << ',' << a.t << ',' << a.d << ',' << closed << ',' << oracle << ','
          << (closed == oracle ? "true" : "false") << '\n';
      ++rows;
      mismatches += closed != oracle;
    }
    m.output(path);
  }
  out << rows << " rows, " << mismatches << " mismatches\n";
}

// --- offdiag ---------------------------------------------------------------

struct OffdiagArgs {
  std::string limit;
  std::string mode = "both";
  bool emit = false;
};

void cmd_offdiag(const OffdiagArgs& a, Common& c, Manifest& m, std::ostream& out) {
  const std::uint64_t limit = parse_u64(a.limit, "limit");
  if (a.mode != "direct" && a.mode != "param" && a.mode != "both") {
    throw ValidationError("--mode must be direct, param or both");
  }
  m.config() = {{"limit", limit},
                {"mode", a.mode},
                {"threads", c.threads},
                {"emit_quadruples", a.emit},
                {"n1_dprime_convention", "q < r, p < q and r < a"}};
  const fs::path dir = c.out_dir;
  const bool direct = a.mode != "param", param = a.mode != "direct";

  OffdiagCensus census;
  if (direct) {
    std::ofstream quads;
    QuadrupleSink sink;
    if (a.emit) {
      quads = open_out(dir / "quadruples.csv");
      quads << "a,p,q,r,n\n";
      sink = [&](const Quadruple& x) {
        quads << x.a << ',' << x.p << ',' << x.q << ',' << x.r << ',' << x.n << '\n';
      };
      m.output(dir / "quadruples.csv");
    }
    census = enumerate_offdiag(limit, sink, c.threads);
  }
  std::uint64_t n1_param = 0;
  if (param) n1_param = count_param_side(limit);

  const fs::path path = dir / "offdiag.csv";
  auto csv = open_out(path);
  csv << "limit,mode,N,N1,N1_prime,N1_dprime,mirrored,degenerate,N1_param,param_consistent\n";
  csv << limit << ',' << a.mode << ',';
  if (direct) {
    csv << census.total << ',' << census.n1 << ',' << census.n1_prime << ',' << census.n1_dprime
        << ',' << census.mirrored << ',' << census.degenerate << ',';
  } else {
    csv << ",,,,,,";
  }
  if (param) csv << n1_param;
  csv << ',';
  if (direct && param) csv << (n1_param == census.n1 ? "true" : "false");
  csv << '\n';
  m.output(path);

  if (direct) {
    out << "N_direct=" << census.total << " N1=" << census.n1 << " N1'=" << census.n1_prime
        << " N1''=" << census.n1_dprime << " mirrored=" << census.mirrored
        << " degenerate=" << census.degenerate << "\n";
  }
  if (param) out << "N1_param=" << n1_param << "\n";
  if (direct && param) {
    out << "param_consistent=" << (n1_param == census.n1 ? "true" : "false") << "\n";
  }
  out << "note: N1'' taken as q < r with p < q, r < a\n";
}

}  // namespace

ReportOutputs build_report(const std::vector<fs::path>& inputs, const fs::path& out_dir) {
  if (inputs.empty()) throw ValidationError("report: no input files");
  std::vector<MeanCsvRow> rows;
  for (const auto& p : inputs) {
    std::ifstream in(p);
    if (!in) throw ValidationError("report: cannot read " + p.string());
    auto part = read_mean_csv(in);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  ReportOutputs outputs;
  outputs.table = out_dir / "report.csv";
  auto table = open_out(outputs.table);
  table << "statistic,x,raw_value,scale,ratio,target,deviation,relative_deviation\n";
  std::map<std::string, std::vector<std::pair<std::uint64_t, long double>>> plots;
  for (const auto& r : rows) {
    const auto x = static_cast<long double>(r.x);
    const MainTermModel model = main_term_model(r.statistic);
    const long double ratio = normalize(r.statistic, r.raw, x);
    table << r.label << ',' << r.x << ',' << r.raw_value << ',' << model.scale_name << ','
          << format_real(ratio) << ',';
    if (model.constant) {
      const long double dev = ratio - *model.constant;
      table << format_real(*model.constant) << ',' << format_real(dev) << ','
            << format_real(dev / *model.constant);
    } else {
      table << ",,";
    }
    table << '\n';
    plots[r.label].emplace_back(r.x, ratio);
  }
  for (const auto& [label, pts] : plots) {
    std::string name = label;
    std::replace_if(name.begin(), name.end(), [](char ch) { return !std::isalnum(static_cast<unsigned char>(ch)) && ch != '.' && ch != '_'; }, '_');
    const fs::path path = out_dir / ("plot_" + name + ".csv");
    auto f = open_out(path);
    f << "x,ratio\n";
    for (const auto& [x, ratio] : pts) f << x << ',' << format_real(ratio) << '\n';
    outputs.plot_files.push_back(path);
  }
  return outputs;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"paucity: sums of two squares with prime coordinates", "paucity"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  SieveArgs sieve_args;
  MeanArgs mean_args;
  ConstantsArgs constants_args;
  CongruenceArgs congruence_args;
  OffdiagArgs offdiag_args;
  std::vector<std::string> report_inputs;

  auto* sieve = app.add_subcommand("sieve", "Tabulate r0, r1, r2 over [1, limit]");
  sieve->add_option("--limit", sieve_args.limit, "Upper end x")->required();
  sieve->add_flag("--per-n", sieve_args.per_n, "Write per-n tallies to sieve.csv");
  sieve->add_flag("--dump", sieve_args.dump, "Write raw blocks to blocks.pcty");
  add_common(sieve, common, true);

  auto* mean = app.add_subcommand("mean", "Checkpointed mean values");
  mean->add_option("--limit", mean_args.limit, "Upper end x")->required();
  mean->add_option("--stats", mean_args.stats, "Comma-separated statistics");
  mean->add_option("--grid", mean_args.grid, "geometric:R[:START] or list:a,b,...");
  mean->add_option("--r0", mean_args.r0, "r0 convention: pair or div");
  mean->add_option("--c", mean_args.c, "Dispersion parameter c");
  add_common(mean, common, true);

  auto* constants = app.add_subcommand("constants", "Catalan, Landau-Ramanujan and V(z)");
  constants->add_option("--eps", constants_args.eps, "Target accuracy for G");
  constants->add_option("--prime-limit", constants_args.prime_limit, "Euler product cutoff");
  constants->add_option("--vz", constants_args.vz, "Comma-separated z values for V(z)");
  add_common(constants, common, false);

  auto* congruence = app.add_subcommand("congruence", "Closed forms vs exhaustive counts");
  congruence->add_option("--kind", congruence_args.kind, "rho, nu or both");
  congruence->add_option("--max-modulus", congruence_args.max_modulus, "Largest modulus");
  congruence->add_option("--t", congruence_args.t, "Form parameter t");
  congruence->add_option("--d", congruence_args.d, "Form parameter d");
  add_common(congruence, common, false);

  auto* offdiag = app.add_subcommand("offdiag", "Off-diagonal census and parametrization");
  offdiag->add_option("--limit", offdiag_args.limit, "Upper end x")->required();
  offdiag->add_option("--mode", offdiag_args.mode, "direct, param or both");
  offdiag->add_flag("--emit-quadruples", offdiag_args.emit, "Write quadruples.csv");
  add_common(offdiag, common, true);

  auto* report = app.add_subcommand("report", "Compare mean-value CSVs with main terms");
  report->add_option("--inputs,inputs", report_inputs, "mean.csv files")->delimiter(',');
  add_common(report, common, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    apply_thread_env(common);
    fs::create_directories(common.out_dir);
    CLI::App* chosen = app.get_subcommands().front();
    Manifest manifest(args, chosen->get_name());
    if (chosen == sieve) cmd_sieve(sieve_args, common, manifest, out);
    else if (chosen == mean) cmd_mean(mean_args, common, manifest, out);
    else if (chosen == constants) cmd_constants(constants_args, common, manifest, out);
    else if (chosen == congruence) cmd_congruence(congruence_args, common, manifest, out);
    else if (chosen == offdiag) cmd_offdiag(offdiag_args, common, manifest, out);
    else {
      std::vector<fs::path> paths(report_inputs.begin(), report_inputs.end());
      manifest.config() = {{"inputs", report_inputs}};
      const auto outputs = build_report(paths, common.out_dir);
      manifest.output(outputs.table);
      for (const auto& p : outputs.plot_files) manifest.output(p);
      out << "wrote " << outputs.table.string() << " and " << outputs.plot_files.size()
          << " plot files\n";
    }
    manifest.write(common.out_dir);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const OverflowError& e) {
    err << "overflow: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace paucity
