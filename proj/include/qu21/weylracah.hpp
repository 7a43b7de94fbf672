#pragma once

// Transformation brackets <U|T>_q between the U-spin and T-spin bases and
// the su_q(2) Racah coefficients they reduce to.

#include <string>
#include <vector>

#include "qu21/errors.hpp"
#include "qu21/qarith.hpp"
#include "qu21/repspace.hpp"

namespace qu21 {

// ---------------------------------------------------------------------------
// Racah coefficients

/// Arguments of U_q(a b e d; c f); all half-integers.
struct RacahArgs {
  HalfInt a, b, c, d, e, f;

  friend bool operator==(const RacahArgs&, const RacahArgs&) = default;

  std::string str() const {
    return "U(" + a.str() + " " + b.str() + " " + e.str() + " " + d.str() + "; " + c.str() + " " +
           f.str() + ")";
  }
};

namespace detail {

/// (x + y + z)/2 style integer combination of doubled values; nullopt when odd.
inline std::optional<int> half_sum(std::initializer_list<int> twice) {
  int s = 0;
  for (int t : twice) s += t;
  if (s % 2 != 0) return std::nullopt;
  return s / 2;
}

}  // namespace detail

/// su_q(2) Racah coefficient U_q(abed; cf). Arguments violating a triangle
/// or parity condition on (abc), (aef), (bdf), (cde) give zero.
template <Field F>
SignedRadical<F> qracah(const RacahArgs& r, const EvalContext<F>& ctx) {
  const int a = r.a.twice(), b = r.b.twice(), c = r.c.twice();
  const int d = r.d.twice(), e = r.e.twice(), f = r.f.twice();
  if (a < 0 || b < 0 || c < 0 || d < 0 || e < 0 || f < 0) return {};

  auto h = [](std::initializer_list<int> xs) { return detail::half_sum(xs); };
  const std::vector<std::optional<int>> num_o{
      h({a, b, c, 2}), h({b, d, f, 2}), h({a, -b, c}), h({-a, b, c}),
      h({a, e, -f}),   h({b, -d, f}),   h({-b, d, f}), h({-c, d, e})};
  const std::vector<std::optional<int>> den_o{
      h({a, e, f, 2}), h({c, d, e, 2}), h({a, b, -c}), h({a, -e, f}),
      h({b, d, -f}),   h({c, d, -e}),   h({c, -d, e}), h({-a, e, f})};
  std::vector<int> num, den;
  for (const auto& x : num_o) {
    if (!x || *x < 0) return {};
    num.push_back(*x);
  }
  for (const auto& x : den_o) {
    if (!x || *x < 0) return {};
    den.push_back(*x);
  }
  F pre = qnum(c + 1, ctx) * qnum(f + 1, ctx) * FactorialRatio<F>{num, den}.eval(ctx);

  const int bcef = *h({b, c, -e, f});
  const int bcef1 = *h({b, c, e, f, 2});
  const int abc = *h({-a, b, c});
  const int bdf = *h({b, -d, f});
  const int abc1 = *h({a, b, c, 2});
  const int bdf1 = *h({b, d, f, 2});
  F sum = ctx.value(0);
  for (int n = 0; n <= b; ++n) {
    if (bcef - n < 0 || abc - n < 0 || bdf - n < 0) break;
    F t = qfact(b - n, ctx) * qfact(bcef - n, ctx) * qfact(bcef1 - n, ctx) * qfact_inv(n, ctx) *
          qfact_inv(abc - n, ctx) * qfact_inv(bdf - n, ctx) * qfact_inv(abc1 - n, ctx) *
          qfact_inv(bdf1 - n, ctx);
    if (n % 2 == 0)
      sum += t;
    else
      sum -= t;
  }
  const int phase = parity_sign(*h({a, d, -c, -f}));
  return SignedRadical<F>(phase * sign_of(sum), 0, F(pre * sum * sum));
}

// ---------------------------------------------------------------------------
// Weyl coefficients

enum class SumForm { OverN, OverR };

namespace detail {

struct WeylLabels {
  int k, l, s, p, x;
  int two_u, two_t;
  int u_minus_m, u_plus_m, t_plus_m;
};

inline WeylLabels weyl_labels(const Signature& sig, const UBasisLabel& u, const TBasisLabel& t) {
  require_valid(sig);
  require_valid(sig, u);
  require_valid(sig, t);
  if (weight_of_u(sig, u) != weight_of_t(sig, t))
    throw Error(ErrorKind::WeightMismatch, u.str() + " and " + t.str() + " have different weights");
  WeylLabels w{u.k, u.l, t.s, t.p, t.depth(), u.U.twice(), t.T.twice(),
               (u.U - u.M).to_int(), (u.U + u.M).to_int(), (t.T + t.M).to_int()};
  if (w.u_minus_m != w.p - w.s + w.l || w.x != w.l + w.k - w.s)
    throw Error(ErrorKind::InconsistentLabels, u.str() + " / " + t.str());
  return w;
}

}  // namespace detail

/// <U|T>_q for a U-label and a T-label of the same weight. The value is a
/// single radical: sqrt(prefactor) times a rational sum.
template <Field F>
SignedRadical<F> weyl_coefficient(const Signature& sig, const UBasisLabel& u, const TBasisLabel& t,
                                  const EvalContext<F>& ctx, SumForm form = SumForm::OverN) {
  const auto w = detail::weyl_labels(sig, u, t);
  const int d12 = sig.f1 - sig.f2, d13 = sig.f1 - sig.f3, d23 = sig.f2 - sig.f3;
  FactorialRatio<F> ratio{
      {w.k, w.x, w.u_plus_m, w.t_plus_m, d12 - w.k, d12 + w.l + 1, d23 + w.s - 2, d23 + w.p - 2},
      {w.s, w.p, w.l, w.u_minus_m, d13 + w.s - 1, d12 - w.p, d23 + w.k - 2, d13 + w.l - 1}};
  F pre = qnum(w.two_u + 1, ctx) * qnum(w.two_t + 1, ctx) * ratio.eval_strict(ctx);

  // Summand indexed by r = k - n.
  auto term = [&](int r) -> F {
    return qfact(w.u_minus_m + r, ctx) * qfact(w.l + r, ctx) * qfact(d13 + w.l + r - 1, ctx) *
           qfact_inv(r, ctx) * qfact_inv(w.two_u + r + 1, ctx) * qfact_inv(w.k - r, ctx) *
           qfact_inv(w.l - w.s + r, ctx) * qfact_inv(d23 + w.p + w.l + r - 1, ctx);
  };
  F sum = ctx.value(0);
  if (form == SumForm::OverN) {
    for (int n = 0; n <= w.k; ++n) {
      F t_n = term(w.k - n);
      if ((w.k + n) % 2 == 0)
        sum += t_n;
      else
        sum -= t_n;
    }
  } else {
    for (int r = 0; r <= w.k; ++r) {
      F t_r = term(r);
      if (r % 2 == 0)
        sum += t_r;
      else
        sum -= t_r;
    }
  }
  return SignedRadical<F>(sign_of(sum), 0, F(pre * sum * sum));
}

/// Racah arguments a = T, b = j3, c = j2, d = U, e = j1, f = j.
inline RacahArgs racah_args_from_rep(const Signature& sig, int k, int l, int s, int p) {
  require_valid(sig);
  if (k < 0 || k > sig.span() || p < 0 || p > sig.span() || l < 0 || s < 0)
    throw Error(ErrorKind::InconsistentLabels, "label out of range");
  const int x = l + k - s;
  const int u_minus_m = p - s + l;
  const int two_u = sig.f1 - sig.f2 - k + l;
  if (x < 0 || u_minus_m < 0 || u_minus_m > two_u)
    throw Error(ErrorKind::InconsistentLabels,
                "(k,l)=(" + std::to_string(k) + "," + std::to_string(l) + ") and (s,p)=(" +
                    std::to_string(s) + "," + std::to_string(p) + ") do not share a weight");
  RacahArgs r;
  r.a = t_spin(sig, s, p);
  r.b = HalfInt::from_twice(l + k);
  r.c = HalfInt::from_twice(sig.f2 - sig.f3 + p - s + l + k - 2);
  r.d = u_spin(sig, k, l);
  r.e = HalfInt::from_twice(sig.f1 - sig.f3 - p + s - 2);
  r.f = HalfInt::from_twice(sig.f1 - sig.f2);
  return r;
}

enum class RacahForm { PhaseK, PhaseS };

/// The Weyl coefficient rebuilt from a Racah coefficient.
///   PhaseK: (-1)^k U(j1 j2 j j3; U T)
///   PhaseS: (-1)^s sqrt([2U+1][2T+1]/([2j2+1][2j+1])) U(T j3 j1 U; j2 j)
template <Field F>
SignedRadical<F> weyl_via_racah(const Signature& sig, const UBasisLabel& u, const TBasisLabel& t,
                                const EvalContext<F>& ctx, RacahForm form = RacahForm::PhaseK) {
  const auto w = detail::weyl_labels(sig, u, t);
  const RacahArgs r = racah_args_from_rep(sig, w.k, w.l, w.s, w.p);
  if (form == RacahForm::PhaseK) {
    // U(a b e d; c f) with a = j1, b = j2, e = j, d = j3, c = U, f = T.
    RacahArgs swapped{r.e, r.c, r.d, r.b, r.f, r.a};
    auto v = qracah(swapped, ctx);
    return w.k % 2 == 0 ? v : -v;
  }
  auto v = qracah(r, ctx);
  F scale = qnum(w.two_u + 1, ctx) * qnum(w.two_t + 1, ctx) /
            (qnum(r.c.twice() + 1, ctx) * qnum(r.f.twice() + 1, ctx));
  auto out = v * SignedRadical<F>(1, 0, scale);
  return w.s % 2 == 0 ? out : -out;
}

// ---------------------------------------------------------------------------
// Blocks

/// Square transformation matrix of one weight space: rows are U-labels in
/// canonical order, columns T-labels ordered by T.
template <Field F>
struct WeylBlock {
  Signature sig;
  Weight weight;
  std::vector<UBasisLabel> rows;
  std::vector<TBasisLabel> cols;
  std::vector<std::vector<SignedRadical<F>>> entries;  // entries[row][col]

  std::size_t size() const { return rows.size(); }
};

template <Field F>
WeylBlock<F> weyl_block(const Signature& sig, const Weight& weight, const EvalContext<F>& ctx) {
  WeylBlock<F> b{sig, weight, u_labels_of_weight(sig, weight), t_labels_of_weight(sig, weight), {}};
  if (b.rows.empty() || b.cols.empty())
    throw Error(ErrorKind::EmptyWeightSpace, "no basis vectors of weight " + weight.str());
  if (b.rows.size() != b.cols.size())
    throw Error(ErrorKind::InconsistentLabels, "unequal label counts at weight " + weight.str());
  b.entries.resize(b.rows.size());
  for (std::size_t i = 0; i < b.rows.size(); ++i)
    for (const auto& t : b.cols) b.entries[i].push_back(weyl_coefficient(sig, b.rows[i], t, ctx));
  return b;
}

/// Block of a weight that must lie inside the truncation window.
template <Field F>
WeylBlock<F> weyl_block(const Signature& sig, const Weight& weight, const Truncation& trunc,
                        const EvalContext<F>& ctx) {
  require_valid(sig);
  const int level = weight_level(sig, weight);
  if (weight.sum() != sig.f1 + sig.f2 + sig.f3 || level < 0 || level > trunc.complete_level())
    throw Error(ErrorKind::EmptyWeightSpace,
                "weight " + weight.str() + " is not reachable within the truncation");
  return weyl_block(sig, weight, ctx);
}

/// Every weight with a complete block inside the truncation, in ascending order.
inline std::vector<Weight> weights_within(const Signature& sig, const Truncation& trunc) {
  std::vector<Weight> out;
  for (const auto& u : enumerate_u_basis(sig, trunc.complete_level())) {
    if (u.k + u.l > trunc.complete_level()) continue;
    out.push_back(weight_of_u(sig, u));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace qu21
