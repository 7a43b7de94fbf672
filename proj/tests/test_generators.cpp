#include <gtest/gtest.h>

#include "qu21/qu21.hpp"

using namespace qu21;

namespace {

Real rel(const Real& a, const Real& b) { return detail::relative_residual(a, b); }

SparseVector<Real> unit(int i) { return {{i, make_real(1, kDefaultDigits)}}; }

Real component(const SparseVector<Real>& v, int i) {
  auto it = v.find(i);
  return it == v.end() ? make_real(0, kDefaultDigits) : it->second;
}

}  // namespace

TEST(GeneratorLabel, Parsing) {
  EXPECT_EQ(GeneratorLabel::parse("A13"), (GeneratorLabel{1, 3}));
  EXPECT_EQ(GeneratorLabel::parse("a32"), (GeneratorLabel{3, 2}));
  EXPECT_EQ(GeneratorLabel::parse("21"), (GeneratorLabel{2, 1}));
  EXPECT_THROW(GeneratorLabel::parse("A14"), std::exception);
  EXPECT_THROW(GeneratorLabel::parse("B12"), std::exception);
  EXPECT_EQ(all_generators().size(), 9u);
  EXPECT_EQ((GeneratorLabel{2, 3}).name(), "A23");
}

TEST(Norms, FrozenValues) {
  const Signature sig{4, 2, -2};
  const auto ctx = exact_context("13/10");
  EXPECT_EQ(norm_u_sq(sig, 0, 0, ctx), Rational(1));
  EXPECT_EQ(norm_u_sq(sig, 0, 1, ctx), qnum(6, ctx));
  EXPECT_EQ(norm_u_sq(sig, 1, 0, ctx), qnum(2, ctx));
  EXPECT_EQ(norm_t_sq(sig, 0, 0, ctx), Rational(1));
  EXPECT_EQ(norm_t_sq(sig, 1, 0, exact_context("2")), Rational(1365, 32));
  EXPECT_EQ(norm_su2_sq(HalfInt(2), HalfInt(2), ctx), Rational(1));
  EXPECT_EQ(norm_su11_sq(HalfInt(2), HalfInt(3), ctx), Rational(1));
}

TEST(Norms, OutOfRangeLabels) {
  const Signature sig{4, 2, -2};
  const auto ctx = exact_context("13/10");
  try {
    norm_t_sq(sig, 0, 3, ctx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConstraintViolation);
  }
  EXPECT_THROW(norm_u_sq(sig, 3, 0, ctx), Error);
  EXPECT_THROW(norm_su2_sq(HalfInt(1), HalfInt(2), ctx), Error);
  EXPECT_THROW(norm_su11_sq(HalfInt(1), HalfInt(1), ctx), Error);
}

// su_q(1,1) norm from its ladder form [x][2T+x+1] N^2(T, M-1).
TEST(Norms, Su11Ladder) {
  const auto ctx = exact_context("9/10");
  for (int two_t = -1; two_t <= 8; ++two_t) {
    const HalfInt T = HalfInt::from_twice(two_t);
    Rational n = 1;
    for (int x = 1; x <= 8; ++x) {
      n *= qnum(x, ctx) * qnum(two_t + x + 1, ctx);
      EXPECT_EQ(norm_su11_sq(T, T + HalfInt(1 + x), ctx), n);
    }
  }
}

// N^2(k l) as the squared component of P^U A23^k A13^l |L> along |k l U U>,
// built from the U-basis action table alone.
TEST(Norms, ULadderFromTableOne) {
  for (const Signature sig : {Signature{4, 2, -2}, Signature{3, 1, -1}, Signature{5, 2, -1}}) {
    const auto ctx = exact_context("13/10");
    const auto rep = build_truncated_rep<UBasisLabel>(sig, {5, 0, 0}, ctx);
    for (int k = 0; k <= sig.span(); ++k)
      for (int l = 0; l <= 4; ++l) {
        auto v = unit(*rep.find(lowest_u_label(sig)));
        for (int i = 0; i < l; ++i) v = rep.at({1, 3}).apply(v);
        for (int i = 0; i < k; ++i) v = rep.at({2, 3}).apply(v);
        const HalfInt U = u_spin(sig, k, l);
        SparseVector<Real> pv;
        for (int r = 0; r <= U.twice(); ++r) {
          auto w = v;
          for (int i = 0; i < r; ++i) w = rep.at({1, 2}).apply(w);
          for (int i = 0; i < r; ++i) w = rep.at({2, 1}).apply(w);
          const Real c = make_real(projector_u_coeff(U, r, ctx), kDefaultDigits);
          for (const auto& [i, x] : w) SparseMatrix<Real>::accumulate(pv, i, Real(c * x));
        }
        const Real a = component(pv, *rep.find(make_u_label(sig, k, l, 0)));
        const Real expect = make_real(norm_u_sq(sig, k, l, ctx), kDefaultDigits);
        EXPECT_LT(rel(Real(a * a), expect), 1e-40) << sig << " k=" << k << " l=" << l;
      }
  }
}

// N^2(s p) as the squared component of P^T A13^s A21^p |L> along |s p T T+1>,
// built from the T-basis action table alone.
TEST(Norms, TLadderFromTableTwo) {
  for (const Signature sig : {Signature{4, 2, -2}, Signature{3, 1, -1}, Signature{5, 2, -1}}) {
    const auto ctx = exact_context("2");
    const auto rep = build_truncated_rep<TBasisLabel>(sig, {0, 5, 6}, ctx);
    for (int p = 0; p <= sig.span(); ++p)
      for (int s = 0; s <= 4; ++s) {
        auto v = unit(*rep.find(lowest_t_label(sig)));
        for (int i = 0; i < p; ++i) v = rep.at({2, 1}).apply(v);
        for (int i = 0; i < s; ++i) v = rep.at({1, 3}).apply(v);
        const auto pv = detail::apply_projector_t(rep, t_spin(sig, s, p), v);
        const Real a = component(pv, *rep.find(make_t_label(sig, s, p, 0)));
        const Real expect = make_real(norm_t_sq(sig, s, p, ctx), kDefaultDigits);
        EXPECT_LT(rel(Real(a * a), expect), 1e-40) << sig << " s=" << s << " p=" << p;
      }
  }
}

TEST(Action, SuOneOneMatrixElements) {
  const Signature sig{4, 2, -2};
  const auto ctx = exact_context("13/10");
  for (const auto& t : enumerate_t_basis(sig, 2, 3)) {
    const auto up = t_basis_action(sig, {2, 3}, t, ctx);
    ASSERT_EQ(up.size(), 1u);
    EXPECT_EQ(up[0].target, (TBasisLabel{t.s, t.p, t.T, t.M + HalfInt(1)}));
    const Rational a23 = qnum((t.M - t.T).to_int(), ctx) * qnum((t.T + t.M).to_int() + 1, ctx);
    EXPECT_TRUE(same_value(up[0].coeff, SignedRadical<Rational>(1, 0, a23), ctx)) << t;
    const auto down = t_basis_action(sig, {3, 2}, t, ctx);
    if (t.depth() == 0) {
      EXPECT_TRUE(down.empty());
      continue;
    }
    ASSERT_EQ(down.size(), 1u);
    const Rational a32 = qnum((t.T + t.M).to_int(), ctx) * qnum((t.M - t.T).to_int() - 1, ctx);
    EXPECT_TRUE(same_value(down[0].coeff, SignedRadical<Rational>(-1, 0, a32), ctx)) << t;
  }
}

TEST(Action, SuTwoMatrixElements) {
  const Signature sig{5, 2, -1};
  const auto ctx = exact_context("9/10");
  for (const auto& u : enumerate_u_basis(sig, 3)) {
    const auto up = u_basis_action(sig, {1, 2}, u, ctx);
    if (u.M == u.U) {
      EXPECT_TRUE(up.empty());
      continue;
    }
    ASSERT_EQ(up.size(), 1u);
    const Rational c = qnum((u.U - u.M).to_int(), ctx) * qnum((u.U + u.M).to_int() + 1, ctx);
    EXPECT_TRUE(same_value(up[0].coeff, SignedRadical<Rational>(1, 0, c), ctx)) << u;
  }
}

TEST(Action, DiagonalGenerators) {
  const Signature sig{4, 2, -2};
  const auto ctx = exact_context("2");
  for (const auto& u : enumerate_u_basis(sig, 2)) {
    const Weight w = weight_of(sig, u);
    const int m[3] = {w.m1, w.m2, w.m3};
    for (int i = 1; i <= 3; ++i) {
      const auto terms = u_basis_action(sig, {i, i}, u, ctx);
      if (m[i - 1] == 0) {
        EXPECT_TRUE(terms.empty());
        continue;
      }
      ASSERT_EQ(terms.size(), 1u);
      EXPECT_EQ(terms[0].target, u);
      EXPECT_EQ(terms[0].entry, -1);
      EXPECT_TRUE(same_value(terms[0].coeff, SignedRadical<Rational>::from_value(m[i - 1]), ctx));
    }
  }
}

// Every off-diagonal term shifts the weight by the generator's root.
TEST(Action, TargetsCarryTheRightWeight) {
  const Signature sig{4, 2, -2};
  const auto ctx = exact_context("13/10");
  for (const auto g : all_generators()) {
    if (g.diagonal()) continue;
    Weight shift{};
    int* c[3] = {&shift.m1, &shift.m2, &shift.m3};
    *c[g.i - 1] += 1;
    *c[g.j - 1] -= 1;
    auto add = [](Weight a, Weight b) { return Weight{a.m1 + b.m1, a.m2 + b.m2, a.m3 + b.m3}; };
    for (const auto& u : enumerate_u_basis(sig, 3))
      for (const auto& term : u_basis_action(sig, g, u, ctx))
        EXPECT_EQ(weight_of(sig, term.target), add(weight_of(sig, u), shift)) << g.name() << " " << u;
    for (const auto& t : enumerate_t_basis(sig, 3, 3))
      for (const auto& term : t_basis_action(sig, g, t, ctx))
        EXPECT_EQ(weight_of(sig, term.target), add(weight_of(sig, t), shift)) << g.name() << " " << t;
  }
}

TEST(Action, TablesHaveTenEntries) {
  EXPECT_EQ(u_action_table().size(), 10u);
  EXPECT_EQ(t_action_table().size(), 10u);
}

TEST(Action, InvalidLabelIsRejected) {
  const Signature sig{4, 2, -2};
  const auto ctx = exact_context("2");
  try {
    u_basis_action(sig, {1, 3}, UBasisLabel{3, 0, HalfInt::from_twice(-1), HalfInt::from_twice(-1)}, ctx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LabelOutOfDomain);
  }
}

TEST(Projector, Coefficients) {
  const auto one = exact_context("1");
  EXPECT_EQ(projector_t_coeff(HalfInt(1), 1, one), Rational(1, 2));
  EXPECT_EQ(projector_t_coeff(HalfInt(1), 0, one), Rational(1));
  EXPECT_EQ(projector_t_coeff(HalfInt(1), 3, one), Rational(0));
  // C_{r-1} + [r][r-2T-1] C_r = 0.
  const auto ctx = exact_context("13/10");
  for (int two_t = 0; two_t <= 8; ++two_t) {
    const HalfInt T = HalfInt::from_twice(two_t);
    for (int r = 1; r <= two_t; ++r)
      EXPECT_EQ(projector_t_coeff(T, r - 1, ctx) +
                    qnum(r, ctx) * qnum(r - two_t - 1, ctx) * projector_t_coeff(T, r, ctx),
                Rational(0));
  }
  EXPECT_EQ(projector_u_coeff(HalfInt(1), 1, one), Rational(-1, 4));
}

TEST(Casimir, Eigenvalue) {
  const auto ctx = exact_context("2");
  EXPECT_EQ(casimir_su11_eigenvalue(HalfInt::from_twice(1), ctx), Rational(1));
  EXPECT_EQ(casimir_su11_eigenvalue(HalfInt(1), ctx), qnum_squared(HalfInt::from_twice(3), ctx));
}
