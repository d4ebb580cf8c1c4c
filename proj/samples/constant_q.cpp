// Predicted leading constant over Q and the real quadratic fields, one JSON line each.
// Usage: sample_constant_q [P]

#include <iostream>

#include "dp4/constant.hpp"

int main(int argc, char** argv) {
  using namespace dp4;
  std::int64_t P = argc > 1 ? std::stoll(argv[1]) : 100000;
  for (FieldTag tag : {FieldTag::Q, FieldTag::Qr2, FieldTag::Qr5}) {
    auto K = make_field(tag);
    auto cb = assemble_c(K, P);
    auto j = to_json(cb);
    j["field"] = K.name;
    std::cout << j.dump() << '\n';
  }
}
