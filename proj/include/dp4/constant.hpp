#pragma once

// c = alpha * (2^r1 (2 pi)^r2 R h / |mu|)^6 * |disc|^-4 * (finite Euler product) * prod_v omega_v
// with beta = 1.

#include <gmpxx.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>
#include <string>
#include <vector>

#include "density.hpp"
#include "euler.hpp"
#include "numberfield.hpp"
#include "polytope.hpp"

namespace dp4 {

struct PlaceDensity {
  int place = 0;
  Density d;
};

struct ConstantBundle {
  FieldTag field = FieldTag::Q;
  mpq_class alpha;
  int beta = 1;
  double field_factor = 0;  // (2^r1 (2 pi)^r2 R h / |mu|)^6 |disc|^-4
  EulerProduct euler;
  std::vector<PlaceDensity> omega;
  double c_lo = 0, c_hi = 0;
  double c() const { return 0.5 * (c_lo + c_hi); }
};

inline double field_factor(const FieldDescriptor& K) {
  constexpr double pi = std::numbers::pi;
  double f = std::pow(2.0, K.r1) * std::pow(2 * pi, K.r2) * static_cast<double>(K.regulator) * K.class_number /
             K.mu_order;
  return std::pow(f, 6) / std::pow(static_cast<double>(std::llabs(K.disc)), 4);
}

inline ConstantBundle assemble_c(const FieldDescriptor& K, std::int64_t P,
                                 DensityMethod method = DensityMethod::Adelic2dQuad, const MCBudget& bud = {},
                                 mpfr_prec_t prec = kStartPrecision) {
  ConstantBundle cb;
  cb.field = K.tag;
  cb.alpha = alpha();
  cb.field_factor = field_factor(K);
  cb.euler = finite_product(K, P, prec);
  double lo = cb.alpha.get_d() * cb.field_factor * cb.euler.tail_lo;
  double hi = cb.alpha.get_d() * cb.field_factor * cb.euler.tail_hi;
  for (int v = 0; v < K.places(); ++v) {
    PlaceDensity pd{v, omega_arch(K, v, method, bud)};
    lo *= pd.d.value - pd.d.err;
    hi *= pd.d.value + pd.d.err;
    cb.omega.push_back(pd);
  }
  // relative slack for double rounding in the products above
  cb.c_lo = lo * (1 - 1e-12);
  cb.c_hi = hi * (1 + 1e-12);
  return cb;
}

inline std::string mpq_str(const mpq_class& q) { return q.get_str(); }

inline nlohmann::ordered_json to_json(const ConstantBundle& cb) {
  nlohmann::ordered_json j;
  j["alpha"] = mpq_str(cb.alpha);
  j["euler"] = {{"P", cb.euler.P}, {"value", cb.euler.value}, {"tail_lo", cb.euler.tail_lo}, {"tail_hi", cb.euler.tail_hi}};
  j["omega"] = nlohmann::ordered_json::array();
  for (const auto& pd : cb.omega) j["omega"].push_back({{"place", pd.place}, {"value", pd.d.value}, {"err", pd.d.err}});
  j["c"] = {{"lo", cb.c_lo}, {"hi", cb.c_hi}};
  return j;
}

}  // namespace dp4
