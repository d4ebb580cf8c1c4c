// manin_dp4: counting, comparison, verification and constant runs for the A3+A1 quartic del Pezzo surface.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "dp4/bijection.hpp"
#include "dp4/constant.hpp"
#include "dp4/direct.hpp"
#include "dp4/runconfig.hpp"
#include "dp4/torsor.hpp"
#include "dp4/verify.hpp"

using namespace dp4;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kVerifyFail = 1, kConfig = 2, kBudget = 3 };

std::string csv_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9e", x);
  return buf;
}

std::string elapsed_str(const RunConfig& c, double s) {
  if (!c.timing) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

std::int64_t direct_limit(const FieldDescriptor& K) { return K.is_rational() ? kDirectLimitQ : kDirectLimitQuadratic; }

struct Row {
  std::string method;
  std::int64_t count;
  double elapsed;
};

Row run_method(const FieldDescriptor& K, const Bound& B, const std::string& method, int threads) {
  if (method == "direct") {
    DirectOptions o;
    o.threads = threads;
    auto r = direct_count(K, B, o);
    return {"direct", r.count, r.elapsed_s};
  }
  EnumerateOptions o;
  o.B = B;
  o.threads = threads;
  auto r = enumerate_M(K, o);
  if (r.M != static_cast<std::int64_t>(K.mu_order) * r.canonical)
    throw std::logic_error("torsor run violated |M| = |mu| N at B = " + B.str());
  return {"torsor", r.canonical, r.elapsed_s};
}

int cmd_count(const RunConfig& c, std::ostream& os) {
  if (c.ladder.empty()) throw ConfigError("count needs --B or --B-ladder");
  auto K = make_field(c.field);
  std::vector<std::string> methods =
      c.method == "both" ? std::vector<std::string>{"direct", "torsor"} : std::vector<std::string>{c.method};
  ojson arr = ojson::array();
  if (c.format == "csv") os << "field,B,method,count,elapsed_s\n";
  for (const auto& B : c.ladder)
    for (const auto& m : methods) {
      Row r = run_method(K, B, m, c.threads);
      if (c.format == "csv")
        os << K.short_tag << ',' << B.str() << ',' << r.method << ',' << r.count << ',' << elapsed_str(c, r.elapsed)
           << '\n';
      else
        arr.push_back({{"field", K.short_tag},
                       {"B", B.str()},
                       {"method", r.method},
                       {"count", r.count},
                       {"elapsed_s", c.timing ? r.elapsed : 0.0}});
    }
  if (c.format == "json") os << arr.dump(2) << '\n';
  return kOk;
}

int cmd_compare(const RunConfig& c, std::ostream& os) {
  auto K = make_field(c.field);
  ojson arr = ojson::array();
  if (c.format == "csv") os << "field,B,direct,torsor,match,ratio,c,band_lo,band_hi,in_band\n";
  if (c.ladder.empty()) {
    if (c.format == "json") os << arr.dump(2) << '\n';
    return kOk;
  }
  ConstantBundle cb = assemble_c(K, c.primes_up_to, DensityMethod::Adelic2dQuad, {}, c.precision_bits);
  double band_lo = cb.c_lo / 10, band_hi = cb.c_hi * 10;
  int mismatches = 0;
  for (const auto& B : c.ladder) {
    std::int64_t t = run_method(K, B, "torsor", c.threads).count;
    bool have_direct = B.to_double() <= static_cast<double>(direct_limit(K));
    std::int64_t d = have_direct ? run_method(K, B, "direct", c.threads).count : -1;
    bool match = !have_direct || d == t;
    mismatches += !match;
    double b = B.to_double(), ratio = t / (b * std::pow(std::log(b), 5));
    bool in_band = ratio >= band_lo && ratio <= band_hi;
    if (c.format == "csv") {
      os << K.short_tag << ',' << B.str() << ',' << (have_direct ? std::to_string(d) : "") << ',' << t << ','
         << (have_direct ? (match ? "yes" : "NO") : "") << ',' << csv_double(ratio) << ',' << csv_double(cb.c())
         << ',' << csv_double(band_lo) << ',' << csv_double(band_hi) << ',' << (in_band ? "yes" : "no") << '\n';
    } else {
      ojson j{{"field", K.short_tag}, {"B", B.str()}};
      j["direct"] = have_direct ? ojson(d) : ojson(nullptr);
      j["torsor"] = t;
      j["match"] = have_direct ? ojson(match) : ojson(nullptr);
      j["ratio"] = ratio;
      j["c"] = cb.c();
      j["band_lo"] = band_lo;
      j["band_hi"] = band_hi;
      j["in_band"] = in_band;
      arr.push_back(j);
    }
  }
  if (c.format == "json") os << arr.dump(2) << '\n';
  if (mismatches) std::cerr << "compare: " << mismatches << " method mismatch(es)\n";
  return mismatches ? kVerifyFail : kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& os) {
  std::vector<Check> checks;
  auto want = [&](const char* s) { return c.suite == "all" || c.suite == s; };
  auto add = [&](std::vector<Check> v) { checks.insert(checks.end(), v.begin(), v.end()); };
  if (want("identities")) add(suite_identities());
  if (want("fp")) add(suite_fp());
  if (want("volume")) add(suite_volume(c.samples, c.seed, c.threads));
  if (want("densities")) add(suite_densities(c.samples, c.seed, c.threads));
  int failed = 0;
  ojson arr = ojson::array();
  if (c.format == "csv") os << "suite,check,result,detail\n";
  for (const auto& k : checks) {
    failed += !k.pass;
    if (c.format == "csv")
      os << k.suite << ',' << k.name << ',' << (k.pass ? "pass" : "FAIL") << ',' << k.detail << '\n';
    else
      arr.push_back({{"suite", k.suite}, {"check", k.name}, {"pass", k.pass}, {"detail", k.detail}});
  }
  if (c.format == "json") os << arr.dump(2) << '\n';
  std::cerr << "verify: " << checks.size() - failed << "/" << checks.size() << " passed\n";
  return failed ? kVerifyFail : kOk;
}

int cmd_constant(const RunConfig& c, std::ostream& os) {
  auto K = make_field(c.field);
  MCBudget b;
  b.samples = c.samples;
  b.seed = c.seed;
  b.threads = c.threads;
  ConstantBundle cb = assemble_c(K, c.primes_up_to, DensityMethod::Adelic2dQuad, b, c.precision_bits);
  ojson j = to_json(cb);
  if (c.format == "json") {
    os << j.dump(2) << '\n';
  } else {
    os << "key,value\n";
    os << "alpha," << j["alpha"].get<std::string>() << '\n';
    os << "euler.P," << cb.euler.P << '\n';
    os << "euler.value," << csv_double(cb.euler.value) << '\n';
    os << "euler.tail_lo," << csv_double(cb.euler.tail_lo) << '\n';
    os << "euler.tail_hi," << csv_double(cb.euler.tail_hi) << '\n';
    for (const auto& pd : cb.omega) {
      os << "omega." << pd.place << ".value," << csv_double(pd.d.value) << '\n';
      os << "omega." << pd.place << ".err," << csv_double(pd.d.err) << '\n';
    }
    os << "c.lo," << csv_double(cb.c_lo) << '\n';
    os << "c.hi," << csv_double(cb.c_hi) << '\n';
  }
  return kOk;
}

int dispatch(const RunConfig& c) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw ConfigError("cannot open output file: " + c.out);
    os = &file;
  }
  if (c.command == "count") return cmd_count(c, *os);
  if (c.command == "compare") return cmd_compare(c, *os);
  if (c.command == "verify") return cmd_verify(c, *os);
  return cmd_constant(c, *os);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point counts and leading constant for the A3+A1 quartic del Pezzo surface"};
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.threads = default_threads();
  std::string B, ladder, samples = "1e7", primes = "1e6", config_file;
  bool no_timing = false, dump_config = false;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--field", cfg.field, "field tag: q qi qm2 qm3 qm7 qm11 qr2 qr5");
    s->add_option("--method", cfg.method, "direct | torsor | both");
    s->add_option("--B", B, "height bound");
    s->add_option("--B-ladder", ladder, "comma separated bounds");
    s->add_option("--primes-up-to", primes, "Euler product truncation P");
    s->add_option("--samples", samples, "Monte Carlo samples");
    s->add_option("--seed", cfg.seed, "Monte Carlo seed");
    s->add_option("--precision-bits", cfg.precision_bits, "starting MPFR precision");
    s->add_option("--threads", cfg.threads, "worker threads (default MANIN_DP4_THREADS or 1)");
    s->add_option("--out", cfg.out, "output file (default stdout)");
    s->add_option("--format", cfg.format, "csv | json");
    s->add_flag("--no-timing", no_timing, "write elapsed_s = 0 for reproducible output");
    s->add_option("--config", config_file, "read a RunConfig text file; command-line flags are ignored");
    s->add_flag("--dump-config", dump_config, "print the resolved RunConfig text and exit");
  };
  for (const char* name : {"count", "compare", "verify", "constant"}) {
    auto* s = app.add_subcommand(name);
    add_common(s);
    if (std::string(name) == "verify")
      s->add_option("--suite", cfg.suite, "identities | fp | volume | densities | all");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw ConfigError("cannot read config: " + config_file);
      std::stringstream ss;
      ss << in.rdbuf();
      cfg = from_text(ss.str());
    } else {
      auto* sub = app.get_subcommands().front();
      cfg.command = sub->get_name();
      if (cfg.command == "constant" && sub->count("--format") == 0) cfg.format = "json";
      if (!B.empty() && !ladder.empty()) throw ConfigError("give --B or --B-ladder, not both");
      cfg.ladder = parse_ladder(B.empty() ? ladder : B);
      cfg.samples = parse_count(samples);
      cfg.primes_up_to = parse_count(primes);
      cfg.timing = !no_timing;
    }
    validate(cfg);
    if (dump_config) {
      std::cout << to_text(cfg);
      return kOk;
    }
    return dispatch(cfg);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return kBudget;
  } catch (const CertificationError& e) {
    std::cerr << "precision exhausted: " << e.what() << '\n';
    return kBudget;
  } catch (const ArithmeticOverflow& e) {
    std::cerr << "overflow: " << e.what() << '\n';
    return kBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFail;
  }
}
