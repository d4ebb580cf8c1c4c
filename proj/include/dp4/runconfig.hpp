#pragma once

// Batch run configuration and its line-oriented text form ("key=value", one per line).

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bound.hpp"
#include "numberfield.hpp"
#include "parallel.hpp"

namespace dp4 {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command = "count";  // count | compare | verify | constant
  std::string field = "q";
  std::vector<Bound> ladder;
  std::string method = "torsor";  // direct | torsor | both
  std::string suite = "all";
  int precision_bits = 128;
  std::int64_t primes_up_to = 1000000;
  std::int64_t samples = 10000000;
  std::uint64_t seed = 42;
  std::string out;  // empty: stdout
  std::string format = "csv";
  int threads = 1;
  bool timing = true;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// "1e7", "250000", "2.5e5"; must be a positive integer.
inline std::int64_t parse_count(const std::string& s) {
  Bound b;
  try {
    b = Bound::parse(s);
  } catch (const std::exception&) {
    throw ConfigError("not a count: '" + s + "'");
  }
  if (b.den != 1 || b.num <= 0) throw ConfigError("count must be a positive integer: '" + s + "'");
  return b.num;
}

inline std::vector<Bound> parse_ladder(const std::string& s) {
  std::vector<Bound> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out.push_back(Bound::parse(item));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("bad B value: ") + e.what());
    }
  }
  return out;
}

inline std::string ladder_str(const std::vector<Bound>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s;
}

inline void validate(const RunConfig& c) {
  static const std::vector<std::string> cmds{"count", "compare", "verify", "constant"},
      methods{"direct", "torsor", "both"}, suites{"identities", "fp", "volume", "densities", "all"},
      formats{"csv", "json"};
  auto one_of = [](const std::string& v, const std::vector<std::string>& allowed, const char* what) {
    for (const auto& a : allowed)
      if (a == v) return;
    throw ConfigError(std::string("invalid ") + what + ": '" + v + "'");
  };
  one_of(c.command, cmds, "command");
  one_of(c.method, methods, "method");
  one_of(c.suite, suites, "suite");
  one_of(c.format, formats, "format");
  try {
    parse_field_tag(c.field);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (c.precision_bits < 53 || c.precision_bits > 1 << 16) throw ConfigError("precision bits out of range [53, 65536]");
  if (c.threads < 1) throw ConfigError("threads must be >= 1");
  if (c.samples < 2) throw ConfigError("samples must be >= 2");
  if (c.primes_up_to < 11) throw ConfigError("primes-up-to must be >= 11");
  for (const auto& b : c.ladder)
    if (b.num < 0) throw ConfigError("B must be nonnegative");
  if (c.command == "compare")
    for (const auto& b : c.ladder)
      if (!b.ge_int(3)) throw ConfigError("compare needs every B >= 3, got " + b.str());
}

inline std::string to_text(const RunConfig& c) {
  std::ostringstream os;
  os << "command=" << c.command << "\n"
     << "field=" << c.field << "\n"
     << "B=" << ladder_str(c.ladder) << "\n"
     << "method=" << c.method << "\n"
     << "suite=" << c.suite << "\n"
     << "precision_bits=" << c.precision_bits << "\n"
     << "primes_up_to=" << c.primes_up_to << "\n"
     << "samples=" << c.samples << "\n"
     << "seed=" << c.seed << "\n"
     << "out=" << c.out << "\n"
     << "format=" << c.format << "\n"
     << "threads=" << c.threads << "\n"
     << "timing=" << (c.timing ? 1 : 0) << "\n";
  return os.str();
}

inline RunConfig from_text(const std::string& text) {
  RunConfig c;
  std::istringstream is(text);
  std::string line;
  auto to_int = [](const std::string& k, const std::string& v) {
    try {
      std::size_t pos = 0;
      long long x = std::stoll(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw ConfigError("bad integer for " + k + ": '" + v + "'");
    }
  };
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value: '" + line + "'");
    std::string k = line.substr(0, eq), v = line.substr(eq + 1);
    if (k == "command") c.command = v;
    else if (k == "field") c.field = v;
    else if (k == "B") c.ladder = parse_ladder(v);
    else if (k == "method") c.method = v;
    else if (k == "suite") c.suite = v;
    else if (k == "precision_bits") c.precision_bits = static_cast<int>(to_int(k, v));
    else if (k == "primes_up_to") c.primes_up_to = to_int(k, v);
    else if (k == "samples") c.samples = to_int(k, v);
    else if (k == "seed") c.seed = std::stoull(v);
    else if (k == "out") c.out = v;
    else if (k == "format") c.format = v;
    else if (k == "threads") c.threads = static_cast<int>(to_int(k, v));
    else if (k == "timing") c.timing = to_int(k, v) != 0;
    else throw ConfigError("unknown key: '" + k + "'");
  }
  return c;
}

}  // namespace dp4
