#pragma once

// The quartic surface x0 x3 - x2 x4 = x0 x1 + x1 x3 + x2^2 = 0 in P^4, its height, its lines,
// the configuration of curves on the minimal desingularization, and point counts over F_p.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "certify.hpp"
#include "numberfield.hpp"

namespace dp4 {

struct ProjPoint {
  std::array<AlgInt, 5> x{};
  bool canonical = false;
  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.x == b.x; }
  friend auto operator<=>(const ProjPoint& a, const ProjPoint& b) { return a.x <=> b.x; }
};

inline std::string to_string(const ProjPoint& p) {
  std::string s = "(";
  for (int i = 0; i < 5; ++i) s += (i ? ":" : "") + to_string(p.x[i]);
  return s + ")";
}

// Remove the content, then scale by the unit making the first nonzero coordinate canonical.
inline ProjPoint canonicalize(const FieldDescriptor& K, const std::array<AlgInt, 5>& coords, AssociateWindow w = {}) {
  AlgInt g{0};
  bool any = false;
  for (const AlgInt& c : coords) {
    if (c.is_zero()) continue;
    g = any ? gcd(K, g, c) : canonical_associate(K, c);
    any = true;
  }
  if (!any) throw std::domain_error("canonicalize: zero vector");
  ProjPoint p;
  for (int i = 0; i < 5; ++i) p.x[i] = *K.exact_divide(coords[i], g);
  const AlgInt& lead = *std::find_if(p.x.begin(), p.x.end(), [](const AlgInt& a) { return !a.is_zero(); });
  AlgInt u = *K.exact_divide(canonical_associate(K, lead, w), lead);
  if (u != AlgInt{1})
    for (auto& c : p.x) c = K.mul(u, c);
  p.canonical = true;
  return p;
}

inline bool is_content_free(const FieldDescriptor& K, const std::array<AlgInt, 5>& coords) {
  AlgInt g{0};
  bool any = false;
  for (const AlgInt& c : coords) {
    if (c.is_zero()) continue;
    g = any ? gcd(K, g, c) : c;
    any = true;
  }
  return any && K.is_unit(g);
}

inline std::pair<Wide, Wide> surface_forms(const FieldDescriptor& K, const std::array<AlgInt, 5>& x) {
  auto W = [](const AlgInt& a) { return Wide{a.x, a.y}; };
  Wide q1 = K.mul(W(x[0]), W(x[3]));
  Wide t = K.mul(W(x[2]), W(x[4]));
  q1 = {q1.x - t.x, q1.y - t.y};
  Wide a = K.mul(W(x[0]), W(x[1])), b = K.mul(W(x[1]), W(x[3])), c = K.mul(W(x[2]), W(x[2]));
  Wide q2{a.x + b.x + c.x, a.y + b.y + c.y};
  return {q1, q2};
}

inline bool on_surface(const FieldDescriptor& K, const ProjPoint& P) {
  auto [q1, q2] = surface_forms(K, P.x);
  return q1.x == 0 && q1.y == 0 && q2.x == 0 && q2.y == 0;
}

inline bool on_lines(const FieldDescriptor& K, const ProjPoint& P) {
  const auto& x = P.x;
  return x[2].is_zero() && K.mul(x[0], x[1]).is_zero() && K.mul(x[0], x[3]).is_zero() &&
         K.mul(x[1], x[3]).is_zero();
}

struct HeightComparison {
  bool le = false;                       // H(P) <= B
  std::optional<std::int64_t> exact;     // H(P) when it is an integer (Q, imaginary fields)
  double approx = 0.0;                   // H(P) to double precision
};

// Certified comparison of H(P) with B for a content-free P.
inline HeightComparison height(const FieldDescriptor& K, const ProjPoint& P, const Bound& B,
                               CertPolicy policy = CertPolicy::IntervalThenExact, CertStats* stats = nullptr) {
  if (!P.canonical && !is_content_free(K, P.x)) throw std::invalid_argument("height: point is not content-free");
  std::array<Wide, 5> w;
  for (int i = 0; i < 5; ++i) w[i] = Wide{P.x[i].x, P.x[i].y};
  HeightComparison r;
  if (!K.is_real_quadratic()) {
    i128 h = place_max_exact(K, w);
    r.exact = narrow(h);
    r.approx = static_cast<double>(h);
    r.le = B.ge_int(h);
    return r;
  }
  Interval h = place_max_interval(K, w, 0, 128) * place_max_interval(K, w, 1, 128);
  r.approx = h.mid_d();
  r.le = product_of_maxima_le(K, w, B, policy, stats);
  return r;
}

// ---- divisor classes on the minimal desingularization --------------------------------

struct DivisorClass {
  std::array<int, 6> c{};  // coefficients of l0, ..., l5
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

// l0^2 = 1, li^2 = -1, distinct basis elements orthogonal.
inline int intersection_number(const DivisorClass& a, const DivisorClass& b) {
  int s = a.c[0] * b.c[0];
  for (int i = 1; i < 6; ++i) s -= a.c[i] * b.c[i];
  return s;
}

struct DynkinData {
  std::array<DivisorClass, 9> classes;         // [E1], ..., [E9]
  std::array<std::array<int, 9>, 9> matrix{};  // intersection numbers
  std::vector<std::pair<int, int>> edges;      // 1-based, i < j, intersection >= 1
  std::vector<std::pair<int, int>> nonadjacent;  // 1-based, i < j, intersection 0
};

inline DynkinData dynkin_data() {
  DynkinData D;
  D.classes = {{
      {{0, 0, 0, 0, 0, 1}},    // E1 = l5
      {{0, 0, 0, 0, 1, 0}},    // E2 = l4
      {{0, 1, -1, 0, 0, 0}},   // E3 = l1 - l2
      {{0, 0, 1, -1, 0, 0}},   // E4 = l2 - l3
      {{0, 0, 0, 1, 0, 0}},    // E5 = l3
      {{1, -1, 0, 0, -1, -1}}, // E6 = l0 - l1 - l4 - l5
      {{1, -1, -1, -1, 0, 0}}, // E7 = l0 - l1 - l2 - l3
      {{1, 0, 0, 0, -1, 0}},   // E8 = l0 - l4
      {{1, 0, 0, 0, 0, -1}},   // E9 = l0 - l5
  }};
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) D.matrix[i][j] = intersection_number(D.classes[i], D.classes[j]);
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j) {
      if (D.matrix[i][j] >= 1) D.edges.emplace_back(i + 1, j + 1);
      if (D.matrix[i][j] == 0) D.nonadjacent.emplace_back(i + 1, j + 1);
    }
  return D;
}

// The configuration graph as drawn for this surface.
inline const std::set<std::pair<int, int>>& figure_edges() {
  static const std::set<std::pair<int, int>> e{{1, 6}, {2, 6}, {3, 6}, {3, 4}, {4, 5}, {5, 7},
                                               {7, 8}, {7, 9}, {8, 9}, {1, 9}, {2, 8}};
  return e;
}

// ---- points over F_p --------------------------------------------------------------------

// |S(F_p)|: affine cone count with x4 and x1 solved from the two (linear in them) equations.
inline std::int64_t count_Fp(std::int64_t p) {
  if (p < 2 || p > 1000) throw std::invalid_argument("count_Fp: p must be a prime <= 1000");
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("count_Fp: p must be prime");
  std::int64_t affine = 0;
  for (std::int64_t x2 = 0; x2 < p; ++x2)
    for (std::int64_t x0 = 0; x0 < p; ++x0)
      for (std::int64_t x3 = 0; x3 < p; ++x3) {
        // x2 x4 = x0 x3
        std::int64_t n4 = x2 != 0 ? 1 : ((x0 * x3) % p == 0 ? p : 0);
        if (n4 == 0) continue;
        // x1 (x0 + x3) = -x2^2
        std::int64_t s = (x0 + x3) % p;
        std::int64_t n1 = s != 0 ? 1 : ((x2 * x2) % p == 0 ? p : 0);
        affine += n4 * n1;
      }
  return (affine - 1) / (p - 1);
}

}  // namespace dp4
