#pragma once

// Verification suites shared by the CLI and the acceptance binary.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "density.hpp"
#include "euler.hpp"
#include "geometry.hpp"
#include "polytope.hpp"
#include "theta.hpp"

namespace dp4 {

struct Check {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Tolerances for the numerical suites.
inline constexpr double kDensityRelTol = 0.01;
inline constexpr double kDensitySigmas = 4.0;
inline constexpr double kVolumeRelTol = 0.02;
inline constexpr double kVolumeMaxZ = 3.0;

inline std::string fmt_g(double x, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

inline std::vector<Check> suite_identities() {
  std::vector<Check> out;
  for (long p : {2L, 3L, 5L})
    for (Subset J = 0; J < 32; ++J) {
      auto r = mobius_local_check(p, J);
      out.push_back({"identities", "mobius p=" + std::to_string(p) + " J=" + subset_str(J), r.ok(),
                     r.lhs.get_str() + " vs " + r.rhs.get_str()});
    }
  mpq_class a = alpha();
  out.push_back({"identities", "alpha", a == mpq_class(1, 8640), a.get_str()});
  mpq_class s = volume(standard_simplex(5));
  out.push_back({"identities", "simplex volume", s == mpq_class(1, 120), s.get_str()});
  return out;
}

inline std::vector<Check> suite_fp() {
  std::vector<Check> out;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
    std::int64_t lhs = count_Fp(p) + 4 * p, rhs = p * p + 6 * p + 1;
    out.push_back({"fp", "p=" + std::to_string(p), lhs == rhs, std::to_string(lhs) + " vs " + std::to_string(rhs)});
  }
  return out;
}

inline std::vector<Check> suite_volume(std::int64_t samples, std::uint64_t seed, int threads) {
  std::vector<Check> out;
  auto Q = make_field(FieldTag::Q);
  std::array<AlgInt, 5> one{AlgInt{1}, AlgInt{1}, AlgInt{1}, AlgInt{1}, AlgInt{1}};
  std::array<AlgInt, 5> two{AlgInt{1}, AlgInt{2}, AlgInt{1}, AlgInt{1}, AlgInt{1}};
  for (const auto& [tag, ap] : {std::pair{"(1,1,1,1,1)", one}, std::pair{"(1,2,1,1,1)", two}})
    for (double B : {1.0, 8.0}) {
      auto r = volume_SF_check(Q, ap, B, samples, seed, threads);
      // a 2% comparison is meaningless once the standard error alone is that large
      if (!(r.se <= kVolumeRelTol * r.predicted))
        throw BudgetExceeded("volume: standard error above 2% at " + std::to_string(samples) + " samples", r.se);
      bool ok = r.rel_diff < kVolumeRelTol && r.z < kVolumeMaxZ;
      out.push_back({"volume", std::string("a'=") + tag + " B=" + fmt_g(B), ok,
                     "est=" + fmt_g(r.estimate) + " se=" + fmt_g(r.se, 4) + " pred=" + fmt_g(r.predicted) +
                         " rel=" + fmt_g(r.rel_diff, 4) + " z=" + fmt_g(r.z, 4)});
    }
  return out;
}

inline Check density_check(bool complex_place, std::int64_t samples, std::uint64_t seed, int threads) {
  MCBudget b;
  b.samples = samples;
  b.seed = seed;
  b.threads = threads;
  b.max_rel_err = kDensityRelTol;  // error bar must resolve the 1% comparison
  Density ad = omega_arch(complex_place, DensityMethod::Adelic2dQuad, b);
  Density mc = omega_arch(complex_place, DensityMethod::Region3dMC, b);
  double rel = std::fabs(ad.value - mc.value) / ad.value;
  double sig = std::hypot(ad.err, mc.err);
  bool ok = rel < kDensityRelTol && std::fabs(ad.value - mc.value) <= kDensitySigmas * sig;
  return {"densities", complex_place ? "complex place" : "real place", ok,
          "adelic=" + fmt_g(ad.value) + "+-" + fmt_g(ad.err, 3) + " region=" + fmt_g(mc.value) + "+-" +
              fmt_g(mc.err, 3) + " rel=" + fmt_g(rel, 4)};
}

inline std::vector<Check> suite_densities(std::int64_t samples, std::uint64_t seed, int threads,
                                          bool include_complex = true) {
  std::vector<Check> out{density_check(false, samples, seed, threads)};
  if (include_complex) out.push_back(density_check(true, samples, seed, threads));
  return out;
}

}  // namespace dp4
