#pragma once

// Norms, projector coefficients, Casimir eigenvalue and the action of the
// nine generators A_ij on U-basis and T-basis vectors.
//
// The off-diagonal matrix elements are stored as data (ActionTable): each
// entry is a label shift plus sign * q^w * sqrt(prod [num] / prod [den]),
// where w and every bracket argument are affine in the label quantum numbers.

#include <array>
#include <initializer_list>
#include <string>
#include <vector>

#include "qu21/errors.hpp"
#include "qu21/qarith.hpp"
#include "qu21/repspace.hpp"

namespace qu21 {

// ---------------------------------------------------------------------------
// Generator labels

struct GeneratorLabel {
  int i = 1;
  int j = 1;

  friend bool operator==(const GeneratorLabel&, const GeneratorLabel&) = default;
  friend auto operator<=>(const GeneratorLabel&, const GeneratorLabel&) = default;

  bool diagonal() const { return i == j; }
  std::string name() const { return "A" + std::to_string(i) + std::to_string(j); }

  /// Weight shift e_i - e_j.
  Weight shift() const {
    std::array<int, 3> d{0, 0, 0};
    d[i - 1] += 1;
    d[j - 1] -= 1;
    return {d[0], d[1], d[2]};
  }

  /// Parses "A13", "a13" or "13".
  static GeneratorLabel parse(const std::string& text) {
    std::string t = text;
    if (!t.empty() && (t[0] == 'A' || t[0] == 'a')) t = t.substr(1);
    if (t.size() != 2 || t[0] < '1' || t[0] > '3' || t[1] < '1' || t[1] > '3')
      throw std::invalid_argument("bad generator name '" + text + "'");
    return {t[0] - '0', t[1] - '0'};
  }
};

inline const std::array<GeneratorLabel, 9>& all_generators() {
  static const std::array<GeneratorLabel, 9> gens{{{1, 1}, {2, 2}, {3, 3}, {1, 2}, {2, 1},
                                                   {1, 3}, {3, 1}, {2, 3}, {3, 2}}};
  return gens;
}

// ---------------------------------------------------------------------------
// Affine forms over label quantum numbers

/// Slots: first integer label (k or s), second (l or p), 2*spin, 2*M, f1, f2, f3.
inline constexpr int kLabelSlots = 7;

/// Affine form stored with doubled coefficients so half-integral variables
/// stay integral.
struct Lin {
  std::array<int, kLabelSlots> c{};
  int c0 = 0;

  Lin() = default;
  Lin(int constant) : c0(2 * constant) {}

  static Lin slot(int index, int coeff) {
    Lin l;
    l.c[index] = coeff;
    return l;
  }

  /// Evaluates at the slot values; throws if the result is not integral.
  int eval(const std::array<int, kLabelSlots>& v) const {
    long twice = c0;
    for (int i = 0; i < kLabelSlots; ++i) twice += static_cast<long>(c[i]) * v[i];
    if (twice % 2 != 0) throw std::logic_error("affine form evaluated to a half-integer");
    return static_cast<int>(twice / 2);
  }

  friend Lin operator+(Lin a, const Lin& b) {
    for (int i = 0; i < kLabelSlots; ++i) a.c[i] += b.c[i];
    a.c0 += b.c0;
    return a;
  }
  friend Lin operator-(Lin a, const Lin& b) {
    for (int i = 0; i < kLabelSlots; ++i) a.c[i] -= b.c[i];
    a.c0 -= b.c0;
    return a;
  }
  friend Lin operator+(Lin a, int n) { return a + Lin(n); }
  friend Lin operator-(Lin a, int n) { return a - Lin(n); }
  friend Lin operator*(int n, Lin a) {
    for (auto& x : a.c) x *= n;
    a.c0 *= n;
    return a;
  }
  Lin operator-() const { return -1 * *this; }
};

namespace vars {
// Integer slots carry coefficient 2, the doubled spin/projection slots 1.
inline Lin first() { return Lin::slot(0, 2); }
inline Lin second() { return Lin::slot(1, 2); }
inline Lin spin() { return Lin::slot(2, 1); }
inline Lin proj() { return Lin::slot(3, 1); }
inline Lin f1() { return Lin::slot(4, 2); }
inline Lin f2() { return Lin::slot(5, 2); }
inline Lin f3() { return Lin::slot(6, 2); }
}  // namespace vars

struct TableEntry {
  std::string name;
  GeneratorLabel gen;
  int d_first = 0;   // shift of k (U-basis) or s (T-basis)
  int d_second = 0;  // shift of l (U-basis) or p (T-basis)
  int d_twice_m = 0; // shift of 2M
  int sign = 1;
  Lin qpower;
  std::vector<Lin> num;
  std::vector<Lin> den;
};

using ActionTable = std::vector<TableEntry>;

/// U-basis matrix elements: the eight noncompact entries plus U_+ and U_-.
inline const ActionTable& u_action_table() {
  static const ActionTable table = [] {
    using namespace vars;
    const Lin k = first(), l = second(), U = spin(), M = proj();
    const Lin F1 = f1(), F2 = f2(), F3 = f3();
    ActionTable t;
    t.push_back({"T1.1 a13(U+1/2,M+1/2)", {1, 3}, 0, +1, +1, +1, M - U,
                 {l + 1, F1 - F3 + l, 2 * U + k + 2, U + M + 1}, {2 * U + 1, 2 * U + 2}});
    t.push_back({"T1.2 a23(U+1/2,M-1/2)", {2, 3}, 0, +1, -1, +1, Lin(0),
                 {l + 1, F1 - F3 + l, 2 * U + k + 2, U - M + 1}, {2 * U + 1, 2 * U + 2}});
    t.push_back({"T1.3 a13(U-1/2,M+1/2)", {1, 3}, +1, 0, +1, -1, U + M + 1,
                 {k + 1, F2 - F3 + k - 1, 2 * U - l, U - M}, {2 * U, 2 * U + 1}});
    t.push_back({"T1.4 a23(U-1/2,M-1/2)", {2, 3}, +1, 0, -1, +1, Lin(0),
                 {k + 1, F2 - F3 + k - 1, 2 * U - l, U + M}, {2 * U, 2 * U + 1}});
    t.push_back({"T1.5 a31(U-1/2,M-1/2)", {3, 1}, 0, -1, -1, -1, U - M,
                 {l, F1 - F3 + l - 1, 2 * U + k + 1, U + M}, {2 * U, 2 * U + 1}});
    t.push_back({"T1.6 a32(U-1/2,M+1/2)", {3, 2}, 0, -1, +1, -1, Lin(0),
                 {l, F1 - F3 + l - 1, 2 * U + k + 1, U - M}, {2 * U, 2 * U + 1}});
    t.push_back({"T1.7 a31(U+1/2,M-1/2)", {3, 1}, -1, 0, -1, +1, -U - M - 1,
                 {k, F2 - F3 + k - 2, 2 * U - l + 1, U - M + 1}, {2 * U + 1, 2 * U + 2}});
    t.push_back({"T1.8 a32(U+1/2,M+1/2)", {3, 2}, -1, 0, +1, -1, Lin(0),
                 {k, F2 - F3 + k - 2, 2 * U - l + 1, U + M + 1}, {2 * U + 1, 2 * U + 2}});
    t.push_back({"U+ a12(M+1)", {1, 2}, 0, 0, +2, +1, Lin(0), {U - M, U + M + 1}, {}});
    t.push_back({"U- a21(M-1)", {2, 1}, 0, 0, -2, +1, Lin(0), {U + M, U - M + 1}, {}});
    return t;
  }();
  return table;
}

/// T-basis matrix elements: the eight compact/noncompact entries plus T_+ and T_-.
inline const ActionTable& t_action_table() {
  static const ActionTable table = [] {
    using namespace vars;
    const Lin s = first(), p = second(), T = spin(), M = proj();
    const Lin F1 = f1(), F2 = f2(), F3 = f3();
    ActionTable t;
    t.push_back({"T2.1 a12(T+1/2,M-1/2)", {1, 2}, +1, 0, -1, +1, Lin(0),
                 {s + 1, F1 - F3 + s, 2 * T - p + 1, M - T - 1}, {2 * T + 1, 2 * T + 2}});
    t.push_back({"T2.2 a13(T+1/2,M+1/2)", {1, 3}, +1, 0, +1, +1, T - M + 1,
                 {s + 1, F1 - F3 + s, 2 * T - p + 1, T + M + 1}, {2 * T + 1, 2 * T + 2}});
    t.push_back({"T2.3 a12(T-1/2,M-1/2)", {1, 2}, 0, -1, -1, +1, Lin(0),
                 {p, F1 - F2 - p + 1, 2 * T - s, T + M}, {2 * T, 2 * T + 1}});
    t.push_back({"T2.4 a13(T-1/2,M+1/2)", {1, 3}, 0, -1, +1, +1, -T - M,
                 {p, F1 - F2 - p + 1, 2 * T - s, M - T}, {2 * T, 2 * T + 1}});
    t.push_back({"T2.5 a21(T-1/2,M+1/2)", {2, 1}, -1, 0, +1, +1, Lin(0),
                 {s, F1 - F3 + s - 1, 2 * T - p, M - T}, {2 * T, 2 * T + 1}});
    t.push_back({"T2.6 a31(T-1/2,M-1/2)", {3, 1}, -1, 0, -1, -1, M - T - 1,
                 {s, F1 - F3 + s - 1, 2 * T - p, T + M}, {2 * T, 2 * T + 1}});
    t.push_back({"T2.7 a21(T+1/2,M+1/2)", {2, 1}, 0, +1, +1, +1, Lin(0),
                 {p + 1, F1 - F2 - p, 2 * T - s + 1, T + M + 1}, {2 * T + 1, 2 * T + 2}});
    t.push_back({"T2.8 a31(T+1/2,M-1/2)", {3, 1}, 0, +1, -1, -1, T + M,
                 {p + 1, F1 - F2 - p, 2 * T - s + 1, M - T - 1}, {2 * T + 1, 2 * T + 2}});
    t.push_back({"T+ a23(M+1)", {2, 3}, 0, 0, +2, +1, Lin(0), {M - T, T + M + 1}, {}});
    t.push_back({"T- a32(M-1)", {3, 2}, 0, 0, -2, -1, Lin(0), {T + M, M - T - 1}, {}});
    return t;
  }();
  return table;
}

// ---------------------------------------------------------------------------
// Actions

template <class Label, Field F>
struct ActionTerm {
  Label target;
  SignedRadical<F> coeff;
  int entry = -1;  // index into the ActionTable; -1 for diagonal generators
};

namespace detail {

inline std::array<int, kLabelSlots> slots(const Signature& sig, const UBasisLabel& u) {
  return {u.k, u.l, u.U.twice(), u.M.twice(), sig.f1, sig.f2, sig.f3};
}

inline std::array<int, kLabelSlots> slots(const Signature& sig, const TBasisLabel& t) {
  return {t.s, t.p, t.T.twice(), t.M.twice(), sig.f1, sig.f2, sig.f3};
}

inline UBasisLabel shifted(const Signature& sig, const UBasisLabel& u, const TableEntry& e) {
  const int k = u.k + e.d_first, l = u.l + e.d_second;
  return {k, l, u_spin(sig, k, l), u.M + HalfInt::from_twice(e.d_twice_m)};
}

inline TBasisLabel shifted(const Signature& sig, const TBasisLabel& t, const TableEntry& e) {
  const int s = t.s + e.d_first, p = t.p + e.d_second;
  return {s, p, t_spin(sig, s, p), t.M + HalfInt::from_twice(e.d_twice_m)};
}

template <class Label, Field F>
std::vector<ActionTerm<Label, F>> act(const Signature& sig, GeneratorLabel gen, const Label& label,
                                      const EvalContext<F>& ctx, const ActionTable& table) {
  require_valid(sig);
  require_valid(sig, label);
  std::vector<ActionTerm<Label, F>> out;
  if (gen.diagonal()) {
    Weight w = weight_of(sig, label);
    const int m = gen.i == 1 ? w.m1 : gen.i == 2 ? w.m2 : w.m3;
    auto c = SignedRadical<F>::from_value(ctx.value(m));
    if (!c.is_zero()) out.push_back({label, c, -1});
    return out;
  }
  const auto v = slots(sig, label);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    const TableEntry& e = table[idx];
    if (e.gen != gen) continue;
    F numerator = ctx.value(1);
    bool zero = false;
    for (const Lin& f : e.num) {
      const int a = f.eval(v);
      if (a == 0) {
        zero = true;
        break;
      }
      numerator *= qnum(a, ctx);
    }
    if (zero) continue;
    F denominator = ctx.value(1);
    for (const Lin& f : e.den) {
      const int a = f.eval(v);
      if (a == 0)
        throw Error(ErrorKind::ConstraintViolation,
                    e.name + ": vanishing denominator at " + label.str());
      denominator *= qnum(a, ctx);
    }
    F radicand = numerator / denominator;
    if (sign_of(radicand) < 0)
      throw Error(ErrorKind::ConstraintViolation, e.name + ": negative radicand at " + label.str());
    Label target = shifted(sig, label, e);
    if (!is_valid(sig, target))
      throw Error(ErrorKind::LabelOutOfDomain,
                  e.name + " maps " + label.str() + " outside the representation");
    out.push_back({target, SignedRadical<F>(e.sign, e.qpower.eval(v), radicand),
                   static_cast<int>(idx)});
  }
  return out;
}

}  // namespace detail

/// Nonzero terms of A_ij acting on a U-basis vector.
template <Field F>
std::vector<ActionTerm<UBasisLabel, F>> u_basis_action(const Signature& sig, GeneratorLabel gen,
                                                        const UBasisLabel& label,
                                                        const EvalContext<F>& ctx,
                                                        const ActionTable& table = u_action_table()) {
  return detail::act(sig, gen, label, ctx, table);
}

/// Nonzero terms of A_ij acting on a T-basis vector.
template <Field F>
std::vector<ActionTerm<TBasisLabel, F>> t_basis_action(const Signature& sig, GeneratorLabel gen,
                                                        const TBasisLabel& label,
                                                        const EvalContext<F>& ctx,
                                                        const ActionTable& table = t_action_table()) {
  return detail::act(sig, gen, label, ctx, table);
}

template <Field F>
auto basis_action(const Signature& sig, GeneratorLabel gen, const UBasisLabel& label,
                  const EvalContext<F>& ctx, const ActionTable& table) {
  return u_basis_action(sig, gen, label, ctx, table);
}

template <Field F>
auto basis_action(const Signature& sig, GeneratorLabel gen, const TBasisLabel& label,
                  const EvalContext<F>& ctx, const ActionTable& table) {
  return t_basis_action(sig, gen, label, ctx, table);
}

// ---------------------------------------------------------------------------
// Norms

/// N^2(k l) of the U-basis vectors.
template <Field F>
F norm_u_sq(const Signature& sig, int k, int l, const EvalContext<F>& ctx) {
  require_valid(sig);
  const int d = sig.f1 - sig.f2, a = sig.f1 - sig.f3, b = sig.f2 - sig.f3;
  FactorialRatio<F> r{{k, l, d - k + l + 1, d, b + k - 2, a + l - 1},
                      {d - k, d + l + 1, a - 1, b - 2}};
  return r.eval_strict(ctx);
}

/// N^2(s p) of the T-basis vectors.
template <Field F>
F norm_t_sq(const Signature& sig, int s, int p, const EvalContext<F>& ctx) {
  require_valid(sig);
  const int d = sig.f1 - sig.f2, a = sig.f1 - sig.f3, b = sig.f2 - sig.f3;
  FactorialRatio<F> r{{s, p, d, a + s - 1, b + s - 2, b + p - 2},
                      {d - p, a - 1, b - 2, b + p + s - 2}};
  return r.eval_strict(ctx);
}

/// Squared norm of U_-^{U-M} applied to the top of a U-multiplet.
template <Field F>
F norm_su2_sq(HalfInt U, HalfInt M, const EvalContext<F>& ctx) {
  if (!(U - M).is_integer() || M > U || M < -U)
    throw Error(ErrorKind::ConstraintViolation, "need -U <= M <= U with U - M integral");
  FactorialRatio<F> r{{U.twice(), (U - M).to_int()}, {(U + M).to_int()}};
  return r.eval_strict(ctx);
}

/// Squared norm of T_+^{M-T-1} applied to the bottom of an su_q(1,1) multiplet.
template <Field F>
F norm_su11_sq(HalfInt T, HalfInt M, const EvalContext<F>& ctx) {
  if (!(M - T).is_integer() || M < T + HalfInt(1) || T.twice() < -1)
    throw Error(ErrorKind::ConstraintViolation, "need M >= T + 1 with M - T integral, T >= -1/2");
  FactorialRatio<F> r{{(M - T).to_int() - 1, (T + M).to_int()}, {T.twice() + 1}};
  return r.eval_strict(ctx);
}

// ---------------------------------------------------------------------------
// Projection operators and Casimir

/// Coefficient of A21^r A12^r in the extremal su_q(2) projector P^U.
template <Field F>
F projector_u_coeff(HalfInt U, int r, const EvalContext<F>& ctx) {
  if (r < 0) return ctx.value(0);
  F c = qfact(U.twice() + 1, ctx) * qfact_inv(r, ctx) * qfact_inv(U.twice() + r + 1, ctx);
  return r % 2 == 0 ? c : F(-c);
}

/// Coefficient C_r of T_+^r T_-^r in the extremal su_q(1,1) projector P^T;
/// C_0 = 1 and C_r = 0 beyond r = 2T.
template <Field F>
F projector_t_coeff(HalfInt T, int r, const EvalContext<F>& ctx) {
  if (r == 0) return ctx.value(1);
  if (r < 0 || r > T.twice()) return ctx.value(0);
  return qfact(T.twice() - r, ctx) * qfact_inv(r, ctx) * qfact_inv(T.twice(), ctx);
}

/// Eigenvalue [T + 1/2]^2 of T_- T_+ + [T_0 + 1/2]^2 on a T-multiplet.
template <Field F>
F casimir_su11_eigenvalue(HalfInt T, const EvalContext<F>& ctx) {
  return qnum_squared(T + HalfInt::from_twice(1), ctx);
}

}  // namespace qu21
