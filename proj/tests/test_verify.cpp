#include <gtest/gtest.h>

#include "qu21/qu21.hpp"

using namespace qu21;

namespace {

const CheckReport& find_report(const std::vector<CheckReport>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return r;
  throw std::runtime_error("no report " + name);
}

ActionTable with_flipped_sign(const ActionTable& t, std::size_t entry) {
  ActionTable out = t;
  out.at(entry).sign = -out.at(entry).sign;
  return out;
}

}  // namespace

TEST(TruncatedRep, InteriorMask) {
  const Signature sig{4, 2, -2};
  const auto ctx = exact_context("13/10");
  const auto rep = build_truncated_rep<TBasisLabel>(sig, {3, 3, 3}, ctx);
  EXPECT_EQ(rep.size(), 4 * 3 * 4);
  EXPECT_TRUE(rep.interior[*rep.find(lowest_t_label(sig))]);
  EXPECT_FALSE(rep.interior[*rep.find(make_t_label(sig, 3, 0, 0))]);
  EXPECT_FALSE(rep.interior[*rep.find(make_t_label(sig, 0, 0, 3))]);
  EXPECT_FALSE(rep.interior[*rep.find(make_t_label(sig, 0, 0, 2))]);
}

TEST(VerifyAll, ExactModeAcceptanceSignature) {
  const auto reports = verify_all(Signature{4, 2, -2}, {4, 4, 4}, exact_context("13/10"));
  for (const auto& r : reports) {
    EXPECT_TRUE(r.passed) << r.name << " " << r.location;
    EXPECT_TRUE(r.covered) << r.name;
    EXPECT_LT(r.max_residual, 1e-40) << r.name;
  }
  EXPECT_TRUE(all_passed(reports));
  EXPECT_NE(find_report(reports, "norm_recursions").details.find("exact equality"), std::string::npos);
}

TEST(VerifyAll, FloatModeEdgeSeries) {
  const auto reports = verify_all(Signature{3, 1, -1}, {4, 4, 4}, float_context("0.9"));
  for (const auto& r : reports) EXPECT_TRUE(r.passed) << r.name << " " << r.location;
}

TEST(VerifyAll, EqualSeries) {
  const auto reports = verify_all(Signature{2, 2, -1}, {3, 3, 3}, exact_context("2"));
  for (const auto& r : reports) EXPECT_TRUE(r.passed) << r.name << " " << r.location;
}

TEST(Intertwiner, CorruptedEntryIsNamed) {
  const Signature sig{4, 2, -2};
  const auto ctx = exact_context("13/10");
  for (std::size_t e : {0u, 2u, 5u}) {
    const ActionTable bad = with_flipped_sign(t_action_table(), e);
    const auto r = check_intertwiner(sig, {3, 3, 3}, ctx, kDefaultTolerance, nullptr, &bad);
    EXPECT_FALSE(r.passed);
    EXPECT_NE(r.location.find("entry=" + bad[e].name), std::string::npos) << r.location;
  }
}

TEST(Intertwiner, CorruptedUTableFails) {
  const ActionTable bad = with_flipped_sign(u_action_table(), 3);
  const auto r = check_intertwiner(Signature{4, 2, -2}, {3, 3, 3}, exact_context("2"),
                                   kDefaultTolerance, &bad, nullptr);
  EXPECT_FALSE(r.passed);
}

// The projector built from the T-basis ladder operators, evaluated in the
// U basis, is the rank-one map onto the Weyl column of |T, T+1>.
TEST(Projector, MatchesWeylColumnInUBasis) {
  const Signature sig{4, 2, -2};
  const auto ctx = exact_context("13/10");
  const auto rep = build_truncated_rep<UBasisLabel>(sig, {5, 5, 5}, ctx);
  for (int two_t = 2; two_t <= 6; ++two_t) {
    const auto r = check_projector_u(rep, HalfInt::from_twice(two_t), ctx);
    EXPECT_TRUE(r.covered) << r.name;
    EXPECT_TRUE(r.passed) << r.name << " " << r.location;
  }
}

TEST(Projector, UncoveredSpinIsReported) {
  const auto ctx = exact_context("13/10");
  const auto rep = build_truncated_rep<TBasisLabel>(Signature{4, 2, -2}, {1, 1, 1}, ctx);
  const auto r = check_projector(rep, HalfInt(6));
  EXPECT_FALSE(r.covered);
  EXPECT_NE(r.details.find("no coverage"), std::string::npos);
}

TEST(Casimir, ClassicalPoint) {
  const auto rep = build_truncated_rep<TBasisLabel>(Signature{4, 2, -2}, {3, 3, 3}, exact_context("1"));
  const auto r = check_casimir(rep);
  EXPECT_TRUE(r.passed);
}

TEST(Relations, FalseRelationFails) {
  const auto rep = build_truncated_rep<UBasisLabel>(Signature{4, 2, -2}, {3, 3, 3}, exact_context("2"));
  const Relation commute{"[A12,A21]=0",
                         {{Rational(1), 0, {{1, 2}, {2, 1}}}, {Rational(-1), 0, {{2, 1}, {1, 2}}}}};
  EXPECT_FALSE(check_relation(rep, commute).passed);
  const Relation serre{"A13=A12A23-qA23A12",
                       {{Rational(1), 0, {{1, 3}}},
                        {Rational(-1), 0, {{1, 2}, {2, 3}}},
                        {Rational(1), 1, {{2, 3}, {1, 2}}}}};
  EXPECT_TRUE(check_relation(rep, serre).passed);
  const Relation too_long{"x", {{Rational(1), 0, {{1, 2}, {1, 2}, {1, 2}}}}};
  EXPECT_THROW(check_relation(rep, too_long), std::invalid_argument);
}

TEST(NormRecursions, ExactGrid) {
  for (const char* q : {"1/2", "9/10", "1", "13/10", "2"}) {
    const auto r = check_norm_recursions(Signature{5, 2, -1}, 8, exact_context(q));
    EXPECT_TRUE(r.passed) << q;
    EXPECT_EQ(r.details, "exact equality");
  }
}

TEST(Tracker, RelativeResidual) {
  const Real a = make_real(1000, 50), b = make_real(1001, 50);
  EXPECT_NEAR(detail::relative_residual(a, b).convert_to<double>(), 1.0 / 1001, 1e-15);
  EXPECT_NEAR(detail::relative_residual(make_real(0, 50), make_real(Rational(1, 4), 50)).convert_to<double>(),
              0.25, 1e-15);
}
