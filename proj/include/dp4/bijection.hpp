#pragma once

// Cross-check of Psi on the canonical torsor points against the direct point set.

#include <map>
#include <string>
#include <vector>

#include "direct.hpp"
#include "torsor.hpp"

namespace dp4 {

struct BijectionReport {
  std::int64_t direct_count = 0;
  std::int64_t torsor_count = 0;
  std::vector<ProjPoint> missing;                 // direct points not hit by Psi
  std::vector<ProjPoint> extra;                   // Psi images the direct method did not find
  std::vector<std::pair<ProjPoint, int>> repeated;  // images hit more than once
  std::size_t mismatches() const { return missing.size() + extra.size() + repeated.size(); }
};

inline BijectionReport bijection_check(const FieldDescriptor& K, const Bound& B, int threads = 1) {
  BijectionReport r;
  DirectOptions dopt;
  dopt.collect_points = true;
  dopt.threads = threads;
  CountResult d = direct_count(K, B, dopt);
  EnumerateOptions eopt;
  eopt.B = B;
  eopt.collect_points = true;
  eopt.threads = threads;
  TorsorCount t = enumerate_M(K, eopt);
  r.direct_count = d.count;
  r.torsor_count = t.canonical;
  std::map<ProjPoint, int> hits;
  for (const auto& T : t.points) ++hits[psi(K, T)];
  std::set<ProjPoint> dset(d.points.begin(), d.points.end());
  for (const auto& p : dset)
    if (!hits.count(p)) r.missing.push_back(p);
  for (const auto& [p, n] : hits) {
    if (!dset.count(p)) r.extra.push_back(p);
    if (n > 1) r.repeated.emplace_back(p, n);
  }
  return r;
}

}  // namespace dp4
