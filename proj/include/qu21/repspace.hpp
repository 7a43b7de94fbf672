#pragma once

// Signatures, series classification, basis labels for the U-spin and T-spin
// reductions, weights and Gel'fand-Graev patterns.

#include <algorithm>
#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "qu21/errors.hpp"
#include "qu21/halfint.hpp"

namespace qu21 {

/// Lowest weight (f1, f2, f3) of a positive-discrete-series representation.
struct Signature {
  int f1 = 0;
  int f2 = 0;
  int f3 = 0;

  friend bool operator==(const Signature&, const Signature&) = default;

  std::string str() const {
    return "(" + std::to_string(f1) + "," + std::to_string(f2) + "," + std::to_string(f3) + ")";
  }

  /// f1 - f2, the range of k (U-basis) and p (T-basis).
  int span() const { return f1 - f2; }
};

/// Name of the first violated existence inequality, or nullopt when valid.
inline std::optional<std::string> signature_violation(const Signature& s) {
  if (!(s.f1 >= s.f2)) return "f1 >= f2";
  if (!(s.f1 - s.f3 >= 1)) return "f1 - f3 >= 1";
  if (!(s.f2 - s.f3 >= 2)) return "f2 - f3 >= 2";
  return std::nullopt;
}

inline void require_valid(const Signature& s) {
  if (auto v = signature_violation(s))
    throw Error(ErrorKind::InvalidSignature, s.str() + " violates " + *v);
}

enum class SeriesClass { Standard, NonstandardEdge, NonstandardEqual };

inline const char* to_string(SeriesClass c) {
  switch (c) {
    case SeriesClass::Standard: return "Standard";
    case SeriesClass::NonstandardEdge: return "NonstandardEdge";
    case SeriesClass::NonstandardEqual: return "NonstandardEqual";
  }
  return "?";
}

struct Weight {
  int m1 = 0;
  int m2 = 0;
  int m3 = 0;

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;

  int sum() const { return m1 + m2 + m3; }

  std::string str() const {
    return "(" + std::to_string(m1) + "," + std::to_string(m2) + "," + std::to_string(m3) + ")";
  }
};

/// U-spin basis label. U is fixed by (k, l); M_U runs over -U..U.
struct UBasisLabel {
  int k = 0;
  int l = 0;
  HalfInt U;
  HalfInt M;

  friend bool operator==(const UBasisLabel&, const UBasisLabel&) = default;

  /// Canonical order (l, k, M_U).
  friend auto operator<=>(const UBasisLabel& a, const UBasisLabel& b) {
    return std::tie(a.l, a.k, a.M) <=> std::tie(b.l, b.k, b.M);
  }

  std::string str() const {
    return "u[k=" + std::to_string(k) + ",l=" + std::to_string(l) + ",U=" + U.str() +
           ",M=" + M.str() + "]";
  }
};

/// T-spin basis label. T is fixed by (s, p); M runs over T+1, T+2, ...
struct TBasisLabel {
  int s = 0;
  int p = 0;
  HalfInt T;
  HalfInt M;

  /// M - T - 1, the position inside the su_q(1,1) multiplet.
  int depth() const { return (M - T).to_int() - 1; }

  friend bool operator==(const TBasisLabel&, const TBasisLabel&) = default;

  /// Canonical order (s, p, M).
  friend auto operator<=>(const TBasisLabel& a, const TBasisLabel& b) {
    return std::tie(a.s, a.p, a.M) <=> std::tie(b.s, b.p, b.M);
  }

  std::string str() const {
    return "t[s=" + std::to_string(s) + ",p=" + std::to_string(p) + ",T=" + T.str() +
           ",M=" + M.str() + "]";
  }
};

inline std::ostream& operator<<(std::ostream& os, const UBasisLabel& l) { return os << l.str(); }
inline std::ostream& operator<<(std::ostream& os, const TBasisLabel& l) { return os << l.str(); }
inline std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << w.str(); }
inline std::ostream& operator<<(std::ostream& os, const Signature& s) { return os << s.str(); }

/// Triangular Gel'fand-Graev scheme (m13 m23 m33 / m12 m22 / m11).
struct GGPattern {
  int m13 = 0, m23 = 0, m33 = 0;
  int m12 = 0, m22 = 0;
  int m11 = 0;

  friend bool operator==(const GGPattern&, const GGPattern&) = default;
};

// ---------------------------------------------------------------------------
// Classification

/// Series of a valid signature. The GG top row is (f1-1, f2-1, f3+2); the
/// f1 = f2 family is tested first, then the m23 = m33 - 1 edge.
inline SeriesClass classify(const Signature& sig) {
  require_valid(sig);
  if (sig.f1 == sig.f2) return SeriesClass::NonstandardEqual;
  const int m23 = sig.f2 - 1;
  const int m33 = sig.f3 + 2;
  if (m23 == m33 - 1) return SeriesClass::NonstandardEdge;
  return SeriesClass::Standard;
}

// ---------------------------------------------------------------------------
// Label construction and validation

inline HalfInt u_spin(const Signature& sig, int k, int l) {
  return HalfInt::from_twice(sig.f1 - sig.f2 - k + l);
}

inline HalfInt t_spin(const Signature& sig, int s, int p) {
  return HalfInt::from_twice(sig.f2 - sig.f3 + p + s - 2);
}

inline std::optional<std::string> u_label_violation(const Signature& sig, const UBasisLabel& u) {
  if (u.k < 0 || u.k > sig.span()) return "0 <= k <= f1 - f2";
  if (u.l < 0) return "l >= 0";
  if (u.U != u_spin(sig, u.k, u.l)) return "U = (f1 - f2 - k + l)/2";
  if (u.M < -u.U || u.M > u.U) return "-U <= M_U <= U";
  if (!(u.U - u.M).is_integer()) return "U - M_U integral";
  return std::nullopt;
}

inline std::optional<std::string> t_label_violation(const Signature& sig, const TBasisLabel& t) {
  if (t.p < 0 || t.p > sig.span()) return "0 <= p <= f1 - f2";
  if (t.s < 0) return "s >= 0";
  if (t.T != t_spin(sig, t.s, t.p)) return "T = (f2 - f3 + p + s - 2)/2";
  if (!(t.M - t.T).is_integer()) return "M - T integral";
  if (t.M < t.T + HalfInt(1)) return "M >= T + 1";
  return std::nullopt;
}

inline bool is_valid(const Signature& sig, const UBasisLabel& u) { return !u_label_violation(sig, u); }
inline bool is_valid(const Signature& sig, const TBasisLabel& t) { return !t_label_violation(sig, t); }

inline void require_valid(const Signature& sig, const UBasisLabel& u) {
  if (auto v = u_label_violation(sig, u))
    throw Error(ErrorKind::LabelOutOfDomain, u.str() + " violates " + *v);
}

inline void require_valid(const Signature& sig, const TBasisLabel& t) {
  if (auto v = t_label_violation(sig, t))
    throw Error(ErrorKind::LabelOutOfDomain, t.str() + " violates " + *v);
}

/// U-label from (k, l, U - M_U).
inline UBasisLabel make_u_label(const Signature& sig, int k, int l, int u_minus_m) {
  HalfInt U = u_spin(sig, k, l);
  return {k, l, U, U - HalfInt(u_minus_m)};
}

/// T-label from (s, p, M - T - 1).
inline TBasisLabel make_t_label(const Signature& sig, int s, int p, int depth) {
  HalfInt T = t_spin(sig, s, p);
  return {s, p, T, T + HalfInt(depth + 1)};
}

inline UBasisLabel lowest_u_label(const Signature& sig) { return make_u_label(sig, 0, 0, 0); }
inline TBasisLabel lowest_t_label(const Signature& sig) { return make_t_label(sig, 0, 0, 0); }

// ---------------------------------------------------------------------------
// Enumeration

/// Finite window onto the module: l <= l_max (U-basis), s <= s_max and
/// M - T - 1 <= depth (T-basis).
struct Truncation {
  int l_max = 6;
  int s_max = 6;
  int depth = 6;

  /// Highest level whose weight spaces lie entirely inside both windows.
  int complete_level() const { return std::min({l_max, s_max, depth}); }
};

/// Every U-label with l <= l_max in canonical (l, k, M_U) order.
inline std::vector<UBasisLabel> enumerate_u_basis(const Signature& sig, int l_max) {
  require_valid(sig);
  std::vector<UBasisLabel> out;
  for (int l = 0; l <= l_max; ++l)
    for (int k = 0; k <= sig.span(); ++k) {
      HalfInt U = u_spin(sig, k, l);
      for (HalfInt M = -U; M <= U; M += HalfInt(1)) out.push_back({k, l, U, M});
    }
  return out;
}

/// Every T-label with s <= s_max and M - T - 1 <= depth in canonical (s, p, M) order.
inline std::vector<TBasisLabel> enumerate_t_basis(const Signature& sig, int s_max, int depth) {
  require_valid(sig);
  std::vector<TBasisLabel> out;
  for (int s = 0; s <= s_max; ++s)
    for (int p = 0; p <= sig.span(); ++p)
      for (int x = 0; x <= depth; ++x) out.push_back(make_t_label(sig, s, p, x));
  return out;
}

// ---------------------------------------------------------------------------
// Weights

inline Weight weight_of_u(const Signature& sig, const UBasisLabel& u) {
  require_valid(sig, u);
  const int a = (u.U - u.M).to_int();
  return {sig.f1 + u.l - a, sig.f2 + u.k + a, sig.f3 - u.k - u.l};
}

inline Weight weight_of_t(const Signature& sig, const TBasisLabel& t) {
  require_valid(sig, t);
  const int x = t.depth();
  return {sig.f1 - t.p + t.s, sig.f2 + t.p + x, sig.f3 - t.s - x};
}

inline Weight weight_of(const Signature& sig, const UBasisLabel& u) { return weight_of_u(sig, u); }
inline Weight weight_of(const Signature& sig, const TBasisLabel& t) { return weight_of_t(sig, t); }

/// Level of a weight: number of raising steps above the lowest vector.
inline int weight_level(const Signature& sig, const Weight& w) { return sig.f3 - w.m3; }

/// All U-labels of a weight, in canonical order (finite for every weight).
inline std::vector<UBasisLabel> u_labels_of_weight(const Signature& sig, const Weight& w) {
  require_valid(sig);
  std::vector<UBasisLabel> out;
  if (w.sum() != sig.f1 + sig.f2 + sig.f3) return out;
  const int n = weight_level(sig, w);
  for (int l = 0; l <= n; ++l) {
    const int k = n - l;
    if (k < 0 || k > sig.span()) continue;
    const int a = sig.f1 + l - w.m1;  // U - M_U
    if (a < 0 || a > sig.f1 - sig.f2 - k + l) continue;
    out.push_back(make_u_label(sig, k, l, a));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All T-labels of a weight, ordered by T (equivalently canonical order).
inline std::vector<TBasisLabel> t_labels_of_weight(const Signature& sig, const Weight& w) {
  require_valid(sig);
  std::vector<TBasisLabel> out;
  if (w.sum() != sig.f1 + sig.f2 + sig.f3) return out;
  const int n = weight_level(sig, w);
  for (int s = 0; s <= n; ++s) {
    const int p = sig.f1 + s - w.m1;
    if (p < 0 || p > sig.span()) continue;
    out.push_back(make_t_label(sig, s, p, n - s));
  }
  std::sort(out.begin(), out.end(), [](const TBasisLabel& a, const TBasisLabel& b) {
    return std::tie(a.T, a.s, a.p) < std::tie(b.T, b.s, b.p);
  });
  return out;
}

/// T-labels sharing the weight of u, ordered by T.
inline std::vector<TBasisLabel> match_labels(const Signature& sig, const UBasisLabel& u) {
  return t_labels_of_weight(sig, weight_of_u(sig, u));
}

// ---------------------------------------------------------------------------
// Gel'fand-Graev patterns

inline std::optional<std::string> pattern_violation(const GGPattern& g) {
  if (!(g.m13 >= g.m23)) return "m13 >= m23";
  if (!(g.m23 >= g.m33 - 1)) return "m23 >= m33 - 1";
  if (!(g.m13 + 1 >= g.m22)) return "m13 + 1 >= m22";
  if (!(g.m22 >= g.m23 + 1)) return "m22 >= m23 + 1";
  if (!(g.m12 >= g.m13 + 1)) return "m12 >= m13 + 1";
  if (!(g.m12 >= g.m11)) return "m12 >= m11";
  if (!(g.m11 >= g.m22)) return "m11 >= m22";
  return std::nullopt;
}

inline GGPattern gg_from_label(const Signature& sig, const UBasisLabel& u) {
  require_valid(sig, u);
  GGPattern g;
  g.m13 = sig.f1 - 1;
  g.m23 = sig.f2 - 1;
  g.m33 = sig.f3 + 2;
  g.m12 = sig.f1 + u.l;
  g.m22 = sig.f2 + u.k;
  g.m11 = (u.U + u.M).to_int() + g.m22;
  if (auto v = pattern_violation(g)) throw Error(ErrorKind::PatternViolation, *v);
  return g;
}

/// Inverse of gg_from_label; the pattern's top row fixes the signature.
inline std::pair<Signature, UBasisLabel> label_from_gg(const GGPattern& g) {
  if (auto v = pattern_violation(g)) throw Error(ErrorKind::PatternViolation, *v);
  Signature sig{g.m13 + 1, g.m23 + 1, g.m33 - 2};
  require_valid(sig);
  const int l = g.m12 - sig.f1;
  const int k = g.m22 - sig.f2;
  HalfInt U = u_spin(sig, k, l);
  HalfInt M = HalfInt(g.m11 - g.m22) - U;
  UBasisLabel u{k, l, U, M};
  if (auto v = u_label_violation(sig, u)) throw Error(ErrorKind::PatternViolation, *v);
  return {sig, u};
}

}  // namespace qu21
