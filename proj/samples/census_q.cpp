// Counts points over Q by both methods on a small ladder and prints N(B) / (B log^5 B).

#include <cmath>
#include <cstdio>

#include "dp4/direct.hpp"
#include "dp4/torsor.hpp"

int main() {
  using namespace dp4;
  auto Q = make_field(FieldTag::Q);
  std::printf("%8s %10s %10s %14s\n", "B", "direct", "torsor", "N/(B log^5 B)");
  for (std::int64_t b : {10, 100, 1000, 10000}) {
    Bound B(b);
    EnumerateOptions o;
    o.B = B;
    auto t = enumerate_M(Q, o);
    auto d = direct_count(Q, B);
    double r = t.canonical / (b * std::pow(std::log(static_cast<double>(b)), 5));
    std::printf("%8lld %10lld %10lld %14.6e\n", static_cast<long long>(b), static_cast<long long>(d.count),
                static_cast<long long>(t.canonical), r);
  }
}
