// Builds a few Weyl blocks of (4,2,-2) at q = 13/10 in exact arithmetic,
// checks one entry against its Racah form and runs the verification suite.

#include <iostream>

#include "qu21/qu21.hpp"

int main() {
  using namespace qu21;
  const Signature sig{4, 2, -2};
  const auto ctx = exact_context("13/10");

  std::cout << "series: " << to_string(classify(sig)) << "\n";
  std::cout << "N^2(0,1) = " << rational_string(norm_u_sq(sig, 0, 1, ctx)) << "\n";

  const Truncation trunc{2, 2, 2};
  for (const Weight& w : weights_within(sig, trunc)) {
    const auto b = weyl_block(sig, w, ctx);
    std::cout << "weight " << w << ", block " << b.size() << "x" << b.size() << "\n";
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::cout << "  " << b.rows[i];
      for (const auto& e : b.entries[i]) std::cout << "  " << real_string(to_float(e, ctx), 8);
      std::cout << "\n";
    }
  }

  const auto u = make_u_label(sig, 1, 1, 1);
  for (const auto& t : match_labels(sig, u)) {
    const auto direct = weyl_coefficient(sig, u, t, ctx);
    const auto racah = weyl_via_racah(sig, u, t, ctx);
    std::cout << u << " | " << t << ": " << (same_value(direct, racah, ctx) ? "equal" : "DIFFERENT")
              << "\n";
  }

  const auto reports = verify_all(sig, Truncation{4, 4, 4}, ctx);
  for (const auto& r : reports)
    std::cout << (r.passed ? "pass " : "FAIL ") << r.name << "  "
              << real_string(r.max_residual, 3) << "\n";
  return all_passed(reports) ? 0 : 1;
}
