#pragma once

// Exact volume of a bounded H-polytope {x : A x <= b} with rational data.
// Vertices come from every d-subset of the facet hyperplanes; the volume from a pulling
// triangulation over the face lattice (faces = vertex sets tight at a common constraint).

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace dp4 {

using QVec = std::vector<mpq_class>;

struct HalfSpace {
  QVec a;  // a . x <= b
  mpq_class b;
};

struct PolytopeH {
  int dim = 0;
  std::vector<HalfSpace> h;
};

namespace detail {

// Row echelon form in place; returns the rank.
inline int row_reduce(std::vector<QVec>& m, int cols) {
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(m.size()); ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

inline int rank_of(std::vector<QVec> m, int cols) { return row_reduce(m, cols); }

// Unique solution of the square system, or nothing if singular.
inline std::optional<QVec> solve(std::vector<QVec> aug, int n) {
  if (row_reduce(aug, n) < n) return std::nullopt;
  QVec x(n);
  for (int i = 0; i < n; ++i) x[i] = aug[i][n] / aug[i][i];
  return x;
}

inline mpq_class dot(const QVec& a, const QVec& x) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

inline mpq_class det(std::vector<QVec> m) {
  const int n = static_cast<int>(m.size());
  mpq_class d = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(m[c], m[piv]);
      d = -d;
    }
    d *= m[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[c][c];
      for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

template <class F>
void for_each_subset(int n, int k, F&& f) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

inline void check_shape(const PolytopeH& P) {
  if (P.dim <= 0) throw std::invalid_argument("polytope: dimension must be positive");
  for (const auto& hs : P.h)
    if (static_cast<int>(hs.a.size()) != P.dim) throw std::invalid_argument("polytope: coefficient length mismatch");
}

inline std::vector<QVec> vertices(const PolytopeH& P) {
  check_shape(P);
  const int d = P.dim, m = static_cast<int>(P.h.size());
  std::set<QVec> out;
  detail::for_each_subset(m, d, [&](const std::vector<int>& idx) {
    std::vector<QVec> aug;
    for (int i : idx) {
      QVec row = P.h[i].a;
      row.push_back(P.h[i].b);
      aug.push_back(std::move(row));
    }
    auto x = detail::solve(std::move(aug), d);
    if (!x) return;
    for (const auto& hs : P.h)
      if (detail::dot(hs.a, *x) > hs.b) return;
    out.insert(*x);
  });
  return {out.begin(), out.end()};
}

// Nonempty, full-rank constraint matrix and no ray d != 0 with A d <= 0. With rank d the
// recession cone is pointed, so it is trivial iff no extreme ray exists; an extreme ray is
// cut out by d - 1 independent tight rows.
inline bool is_bounded(const PolytopeH& P) {
  check_shape(P);
  const int d = P.dim, m = static_cast<int>(P.h.size());
  std::vector<QVec> A;
  for (const auto& hs : P.h) A.push_back(hs.a);
  if (detail::rank_of(A, d) < d) return false;
  bool ray = false;
  detail::for_each_subset(m, d - 1, [&](const std::vector<int>& idx) {
    if (ray) return;
    std::vector<QVec> sub;
    for (int i : idx) sub.push_back(P.h[i].a);
    if (detail::rank_of(sub, d) < d - 1) return;
    // null vector: the generalized cross product of the d - 1 rows
    QVec r(d);
    for (int j = 0; j < d; ++j) {
      std::vector<QVec> minor;
      for (const auto& row : sub) {
        QVec mr;
        for (int k = 0; k < d; ++k)
          if (k != j) mr.push_back(row[k]);
        minor.push_back(std::move(mr));
      }
      r[j] = detail::det(std::move(minor)) * ((j % 2) ? -1 : 1);
    }
    for (int s : {1, -1}) {
      bool ok = true;
      for (const auto& row : A)
        if (detail::dot(row, r) * s > 0) {
          ok = false;
          break;
        }
      if (ok) ray = true;
    }
  });
  return !ray;
}

namespace detail {

struct Triangulator {
  const PolytopeH& P;
  const std::vector<QVec>& V;
  std::vector<std::vector<bool>> tight;  // tight[i][v]

  int face_dim(const std::vector<int>& F) const {
    if (F.size() <= 1) return static_cast<int>(F.size()) - 1;
    std::vector<QVec> diffs;
    for (std::size_t k = 1; k < F.size(); ++k) {
      QVec r(P.dim);
      for (int j = 0; j < P.dim; ++j) r[j] = V[F[k]][j] - V[F[0]][j];
      diffs.push_back(std::move(r));
    }
    return rank_of(std::move(diffs), P.dim);
  }

  void run(const std::vector<int>& F, int dimF, std::vector<std::vector<int>>& out) const {
    if (dimF == 0) {
      out.push_back({F[0]});
      return;
    }
    const int apex = F[0];
    std::set<std::vector<int>> seen;
    for (std::size_t i = 0; i < P.h.size(); ++i) {
      if (tight[i][apex]) continue;
      std::vector<int> G;
      for (int v : F)
        if (tight[i][v]) G.push_back(v);
      if (G.empty() || G.size() == F.size() || !seen.insert(G).second) continue;
      if (face_dim(G) != dimF - 1) continue;
      std::vector<std::vector<int>> sub;
      run(G, dimF - 1, sub);
      for (auto& s : sub) {
        s.push_back(apex);
        out.push_back(std::move(s));
      }
    }
  }
};

}  // namespace detail

inline std::vector<std::vector<int>> triangulate(const PolytopeH& P, const std::vector<QVec>& V) {
  detail::Triangulator t{P, V, {}};
  for (const auto& hs : P.h) {
    std::vector<bool> row;
    for (const auto& v : V) row.push_back(detail::dot(hs.a, v) == hs.b);
    t.tight.push_back(std::move(row));
  }
  std::vector<int> all(V.size());
  for (std::size_t i = 0; i < V.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<std::vector<int>> out;
  if (t.face_dim(all) < P.dim) return out;  // lower-dimensional: volume zero
  t.run(all, P.dim, out);
  return out;
}

inline mpq_class volume(const PolytopeH& P) {
  if (!is_bounded(P)) throw std::logic_error("volume: polytope is unbounded");
  auto V = vertices(P);
  if (V.empty()) return 0;
  mpq_class fact = 1;
  for (int k = 2; k <= P.dim; ++k) fact *= k;
  mpq_class vol = 0;
  for (const auto& s : triangulate(P, V)) {
    std::vector<QVec> m;
    for (int k = 0; k < P.dim; ++k) {
      QVec r(P.dim);
      for (int j = 0; j < P.dim; ++j) r[j] = V[s[k]][j] - V[s[P.dim]][j];
      m.push_back(std::move(r));
    }
    vol += abs(detail::det(std::move(m)));
  }
  return vol / fact;
}

// {x >= 0, 2x1 + 2x2 + 2x3 + x4 <= 1, -x1 - x2 + 2x3 + 4x4 + 6x5 <= 1} in R^5.
inline PolytopeH effective_cone_polytope() {
  PolytopeH P;
  P.dim = 5;
  for (int i = 0; i < 5; ++i) {
    QVec a(5, 0);
    a[i] = -1;
    P.h.push_back({a, 0});
  }
  P.h.push_back({{2, 2, 2, 1, 0}, 1});
  P.h.push_back({{-1, -1, 2, 4, 6}, 1});
  return P;
}

inline PolytopeH standard_simplex(int d) {
  PolytopeH P;
  P.dim = d;
  for (int i = 0; i < d; ++i) {
    QVec a(d, 0);
    a[i] = -1;
    P.h.push_back({a, 0});
  }
  P.h.push_back({QVec(d, 1), 1});
  return P;
}

inline mpq_class alpha_of(const PolytopeH& P) { return volume(P) / 3; }

inline mpq_class alpha() {
  static const mpq_class a = alpha_of(effective_cone_polytope());
  return a;
}

// Order of the Weyl group of the singularity type A3 + A1.
inline constexpr int kWeylOrder = 48;

}  // namespace dp4
