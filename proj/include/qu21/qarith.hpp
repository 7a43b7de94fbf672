#pragma once

// q-numbers, q-factorials and the signed-radical value class.
//
// Two backends share one templated code path:
//   Rational  exact GMP rationals (q rational)
//   Real      MPFR floats at a runtime precision (q real)

#include <gmpxx.h>
#include <mpfr.h>

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "qu21/errors.hpp"
#include "qu21/halfint.hpp"

namespace qu21 {

using Rational = mpq_class;
using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultDigits = 50;

enum class Mode { ExactRational, Float };

template <class F>
concept Field = std::is_same_v<F, Rational> || std::is_same_v<F, Real>;

// ---------------------------------------------------------------------------
// Backend helpers

inline Real make_real(long n, unsigned digits) { return Real(n, digits); }

inline Real make_real(const Rational& r, unsigned digits) {
  Real x(0, digits);
  mpfr_set_q(x.backend().data(), r.get_mpq_t(), MPFR_RNDN);
  return x;
}

/// Parses a decimal or "a/b" literal into a Real at the requested precision.
inline Real parse_real(const std::string& text, unsigned digits) {
  if (text.find('/') != std::string::npos) {
    Rational r(text);
    r.canonicalize();
    return make_real(r, digits);
  }
  Real x(0, digits);
  if (mpfr_set_str(x.backend().data(), text.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("not a real number: '" + text + "'");
  return x;
}

template <Field F>
int sign_of(const F& x) {
  if constexpr (std::is_same_v<F, Rational>) {
    return sgn(x);
  } else {
    return (x > 0) - (x < 0);
  }
}

template <Field F>
F abs_of(const F& x) {
  return sign_of(x) < 0 ? F(-x) : x;
}

// ---------------------------------------------------------------------------
// Evaluation context

/// Deformation parameter q plus the working precision used whenever a value
/// has to be turned into a float. Immutable; copies share the q-number table.
template <Field F>
class EvalContext {
public:
  static constexpr Mode mode = std::is_same_v<F, Rational> ? Mode::ExactRational : Mode::Float;

  explicit EvalContext(F q, unsigned digits = kDefaultDigits) : digits_(digits) {
    if constexpr (std::is_same_v<F, Rational>) {
      q.canonicalize();
    }
    if (!(q > 0)) throw std::invalid_argument("deformation parameter q must be positive");
    auto t = std::make_shared<Tables>();
    t->q = std::move(q);
    t->one = value(1);
    t->classical = (t->q == t->one);
    t->q_inv = t->one / t->q;
    build_tables(*t);
    tables_ = std::move(t);
  }

  const F& q() const { return tables_->q; }
  const F& q_inv() const { return tables_->q_inv; }
  unsigned digits() const { return digits_; }
  bool classical() const { return tables_->classical; }

  /// Field element for a small integer at the context precision.
  F value(long n) const {
    if constexpr (std::is_same_v<F, Rational>) {
      return Rational(n);
    } else {
      return make_real(n, digits_);
    }
  }

  /// q^w for integer w.
  F qpow(int w) const {
    F base = w >= 0 ? q() : q_inv();
    F r = value(1);
    for (int i = 0; i < (w >= 0 ? w : -w); ++i) r *= base;
    return r;
  }

  /// [n] for n >= 0 from the cached table or by extending the recurrence.
  F qnum_nonneg(int n) const {
    const Tables& t = *tables_;
    if (n < static_cast<int>(t.qnum.size())) return t.qnum[n];
    F cur = t.qnum.back();
    for (int m = static_cast<int>(t.qnum.size()) - 1; m < n; ++m) cur = next_qnum(cur, m);
    return cur;
  }

  F qfact_nonneg(int n) const {
    const Tables& t = *tables_;
    if (n < static_cast<int>(t.qfact.size())) return t.qfact[n];
    F r = t.qfact.back();
    for (int m = static_cast<int>(t.qfact.size()); m <= n; ++m) r *= qnum_nonneg(m);
    return r;
  }

private:
  static constexpr int kTableSize = 96;

  struct Tables {
    F q, q_inv, one;
    bool classical = false;
    std::vector<F> qnum;   // [0] .. [kTableSize-1]
    std::vector<F> qfact;  // [0]! .. [kTableSize-1]!
  };

  // [m+1] = q [m] + q^{-m}; every term of the expansion is positive.
  F next_qnum(const F& cur, int m) const {
    if (classical()) return value(m + 1);
    return q() * cur + qpow(-m);
  }

  void build_tables(Tables& t) const {
    t.qnum.reserve(kTableSize);
    t.qfact.reserve(kTableSize);
    t.qnum.push_back(value(0));
    t.qfact.push_back(value(1));
    F qinv_pow = value(1);  // q^{-m}
    for (int m = 0; m + 1 < kTableSize; ++m) {
      F next = t.classical ? value(m + 1) : F(t.q * t.qnum.back() + qinv_pow);
      qinv_pow *= t.q_inv;
      t.qnum.push_back(next);
      t.qfact.push_back(t.qfact.back() * next);
    }
  }

  unsigned digits_;
  std::shared_ptr<const Tables> tables_;
};

using ExactContext = EvalContext<Rational>;
using FloatContext = EvalContext<Real>;

inline ExactContext exact_context(const std::string& q, unsigned digits = kDefaultDigits) {
  Rational r(q);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in q");
  r.canonicalize();
  return ExactContext(r, digits);
}

inline FloatContext float_context(const std::string& q, unsigned digits = kDefaultDigits) {
  return FloatContext(parse_real(q, digits), digits);
}

/// Float context at the same q (exactly representable rationals are rounded once).
inline FloatContext to_float_context(const ExactContext& ctx) {
  return FloatContext(make_real(ctx.q(), ctx.digits()), ctx.digits());
}

inline FloatContext to_float_context(const FloatContext& ctx) { return ctx; }

template <Field F>
Real to_real(const F& x, unsigned digits) {
  if constexpr (std::is_same_v<F, Rational>) {
    return make_real(x, digits);
  } else {
    return x;
  }
}

// ---------------------------------------------------------------------------
// q-numbers and q-factorials

/// [n] = (q^n - q^-n)/(q - q^-1); equals n at q = 1 and is odd in n.
template <Field F>
F qnum(int n, const EvalContext<F>& ctx) {
  if (n < 0) return -ctx.qnum_nonneg(-n);
  return ctx.qnum_nonneg(n);
}

/// [n]! = [n][n-1]...[1], [0]! = 1. Throws NegativeFactorial for n < 0.
template <Field F>
F qfact(int n, const EvalContext<F>& ctx) {
  if (n < 0) throw Error(ErrorKind::NegativeFactorial, "[" + std::to_string(n) + "]!");
  return ctx.qfact_nonneg(n);
}

/// 1/[n]! with the convention 1/[n]! = 0 for n < 0. This is what bounds every
/// hypergeometric-type sum in the library.
template <Field F>
F qfact_inv(int n, const EvalContext<F>& ctx) {
  if (n < 0) return ctx.value(0);
  return ctx.value(1) / ctx.qfact_nonneg(n);
}

/// [h]^2 for half-integral h; rational in q even when [h] itself is not.
template <Field F>
F qnum_squared(HalfInt h, const EvalContext<F>& ctx) {
  if (h.is_integer()) {
    F v = qnum(h.to_int(), ctx);
    return v * v;
  }
  if (ctx.classical()) {
    F v = ctx.value(h.twice());
    return v * v / ctx.value(4);
  }
  // (q^{2h} + q^{-2h} - 2) / (q - q^{-1})^2
  int n = h.twice();
  F d = ctx.q() - ctx.q_inv();
  return (ctx.qpow(n) + ctx.qpow(-n) - ctx.value(2)) / (d * d);
}

/// Product of [a_i]! over the listed arguments divided by the product of
/// [b_j]!. Returns nullopt-like zero flag when a denominator argument is
/// negative (the term is pruned) and throws when a numerator one is.
template <Field F>
struct FactorialRatio {
  std::vector<int> num;
  std::vector<int> den;

  /// Value with the qfact_inv convention applied to the denominator; a
  /// negative numerator argument is a ConstraintViolation.
  F eval(const EvalContext<F>& ctx) const {
    F r = ctx.value(1);
    for (int a : num) {
      if (a < 0)
        throw Error(ErrorKind::ConstraintViolation,
                    "negative q-factorial argument " + std::to_string(a));
      r *= ctx.qfact_nonneg(a);
    }
    for (int b : den) {
      if (b < 0) return ctx.value(0);
      r /= ctx.qfact_nonneg(b);
    }
    return r;
  }

  /// Value that requires every argument to be nonnegative.
  F eval_strict(const EvalContext<F>& ctx) const {
    for (int b : den)
      if (b < 0)
        throw Error(ErrorKind::ConstraintViolation,
                    "negative q-factorial argument " + std::to_string(b));
    return eval(ctx);
  }
};

// ---------------------------------------------------------------------------
// Signed radicals

/// sign * q^qpower * sqrt(radicand). Closed under * and /, not under +.
template <Field F>
class SignedRadical {
public:
  SignedRadical() = default;

  SignedRadical(int sign, int qpower, F radicand)
      : sign_(sign), qpower_(qpower), radicand_(std::move(radicand)) {
    if (sign_ < -1 || sign_ > 1) throw std::invalid_argument("sign must be -1, 0 or +1");
    int rs = sign_of(radicand_);
    if (rs < 0) throw Error(ErrorKind::ConstraintViolation, "negative radicand");
    if (rs == 0 || sign_ == 0) {
      sign_ = 0;
      qpower_ = 0;
      radicand_ = F(0);
    }
  }

  /// The radical representing a field value v (sign(v) * sqrt(v^2)).
  static SignedRadical from_value(const F& v) { return SignedRadical(sign_of(v), 0, F(v * v)); }

  int sign() const { return sign_; }
  int qpower() const { return qpower_; }
  const F& radicand() const { return radicand_; }
  bool is_zero() const { return sign_ == 0; }

  /// Value squared, with the q-power folded in: q^{2w} * radicand.
  F squared(const EvalContext<F>& ctx) const { return ctx.qpow(2 * qpower_) * radicand_; }

  friend SignedRadical operator*(const SignedRadical& a, const SignedRadical& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return SignedRadical(a.sign_ * b.sign_, a.qpower_ + b.qpower_, F(a.radicand_ * b.radicand_));
  }

  friend SignedRadical operator/(const SignedRadical& a, const SignedRadical& b) {
    if (b.is_zero()) throw std::domain_error("division by a zero radical");
    if (a.is_zero()) return {};
    return SignedRadical(a.sign_ * b.sign_, a.qpower_ - b.qpower_, F(a.radicand_ / b.radicand_));
  }

  SignedRadical operator-() const {
    SignedRadical r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

private:
  int sign_ = 0;
  int qpower_ = 0;
  F radicand_ = F(0);
};

/// sign * q^w * sqrt(radicand) as a Real at the context precision.
template <Field F>
Real to_float(const SignedRadical<F>& r, const EvalContext<F>& ctx) {
  unsigned d = ctx.digits();
  if (r.is_zero()) return make_real(0, d);
  Real q = to_real(ctx.q(), d);
  Real v = boost::multiprecision::sqrt(to_real(r.radicand(), d));
  if (r.qpower() != 0) v *= boost::multiprecision::pow(q, make_real(r.qpower(), d));
  return r.sign() < 0 ? Real(-v) : v;
}

/// Exact comparison: equal signs and equal squared values.
template <Field F>
bool same_value(const SignedRadical<F>& a, const SignedRadical<F>& b, const EvalContext<F>& ctx) {
  return a.sign() == b.sign() && a.squared(ctx) == b.squared(ctx);
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string rational_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Scientific notation with `digits` significant digits, round-half-even.
inline std::string real_string(const Real& x, unsigned digits) {
  if (digits == 0) digits = 1;
  char* out = nullptr;
  int n = mpfr_asprintf(&out, "%.*RNe", static_cast<int>(digits) - 1, x.backend().data());
  if (n < 0 || out == nullptr) throw std::runtime_error("mpfr_asprintf failed");
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

template <Field F>
std::string field_string(const F& x, unsigned digits) {
  if constexpr (std::is_same_v<F, Rational>) {
    (void)digits;
    return rational_string(x);
  } else {
    return real_string(x, digits);
  }
}

}  // namespace qu21
