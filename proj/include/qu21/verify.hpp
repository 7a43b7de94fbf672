#pragma once

// Truncated generator matrices and executable checks of the algebraic
// identities satisfied by the representation.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qu21/generators.hpp"
#include "qu21/qarith.hpp"
#include "qu21/repspace.hpp"
#include "qu21/sparse.hpp"
#include "qu21/weylracah.hpp"

namespace qu21 {

inline constexpr double kDefaultTolerance = 1e-10;

inline int generator_index(GeneratorLabel g) {
  const auto& all = all_generators();
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] == g) return static_cast<int>(i);
  throw std::invalid_argument("unknown generator " + g.name());
}

// ---------------------------------------------------------------------------
// Truncated representation

template <class Label>
struct TruncatedRep {
  Signature sig;
  Truncation trunc;
  FloatContext ctx;
  std::vector<Label> labels;
  std::map<Label, int> index;
  std::vector<Weight> weights;
  std::array<SparseMatrix<Real>, 9> mats;
  std::vector<bool> interior;  // images under any two generators stay inside

  int size() const { return static_cast<int>(labels.size()); }
  const SparseMatrix<Real>& at(GeneratorLabel g) const { return mats[generator_index(g)]; }

  std::optional<int> find(const Label& l) const {
    auto it = index.find(l);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  std::vector<int> interior_columns() const {
    std::vector<int> out;
    for (int j = 0; j < size(); ++j)
      if (interior[j]) out.push_back(j);
    return out;
  }

  int level(int i) const { return weight_level(sig, weights[i]); }
};

using URep = TruncatedRep<UBasisLabel>;
using TRep = TruncatedRep<TBasisLabel>;

/// Builds the nine generator matrices on the truncated basis. Coefficients
/// are evaluated in the field of `ctx` and rounded once to Real.
template <class Label, Field F>
TruncatedRep<Label> build_truncated_rep(const Signature& sig, const Truncation& trunc,
                                        const EvalContext<F>& ctx,
                                        const ActionTable* table = nullptr) {
  require_valid(sig);
  const ActionTable& tab =
      table ? *table
            : (std::is_same_v<Label, UBasisLabel> ? u_action_table() : t_action_table());
  TruncatedRep<Label> rep{sig, trunc, to_float_context(ctx), {}, {}, {}, {}, {}};
  if constexpr (std::is_same_v<Label, UBasisLabel>) {
    rep.labels = enumerate_u_basis(sig, trunc.l_max);
  } else {
    rep.labels = enumerate_t_basis(sig, trunc.s_max, trunc.depth);
  }
  const int n = rep.size();
  for (int i = 0; i < n; ++i) {
    rep.index.emplace(rep.labels[i], i);
    rep.weights.push_back(weight_of(sig, rep.labels[i]));
  }
  for (auto& m : rep.mats) m = SparseMatrix<Real>(n, n);

  std::vector<bool> closed(n, true);  // every one-step image is in the basis
  std::vector<std::vector<int>> images(n);
  for (const GeneratorLabel g : all_generators()) {
    auto& m = rep.mats[generator_index(g)];
    for (int j = 0; j < n; ++j) {
      for (const auto& term : basis_action(sig, g, rep.labels[j], ctx, tab)) {
        auto it = rep.index.find(term.target);
        if (it == rep.index.end()) {
          closed[j] = false;
          continue;
        }
        images[j].push_back(it->second);
        m.add(it->second, j, to_float(term.coeff, ctx));
      }
    }
  }
  rep.interior.assign(n, false);
  for (int j = 0; j < n; ++j) {
    if (!closed[j]) continue;
    bool ok = true;
    for (int t : images[j]) ok = ok && closed[t];
    rep.interior[j] = ok;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Reports

struct CheckReport {
  std::string name;
  Real max_residual;
  std::string location;  // worst entry
  bool passed = true;
  bool covered = true;
  std::string details;
  std::vector<std::pair<std::string, Real>> parts;
};

namespace detail {

inline Real relative_residual(const Real& a, const Real& b) {
  using boost::multiprecision::abs;
  Real scale = abs(a);
  if (abs(b) > scale) scale = abs(b);
  if (scale < 1) scale = 1;
  return Real(abs(a - b) / scale);
}

/// Tracks the worst residual of a check and of each named part.
class Tracker {
public:
  Tracker(std::string name, unsigned digits, double tolerance)
      : digits_(digits), tolerance_(tolerance) {
    report_.name = std::move(name);
    report_.max_residual = make_real(0, digits);
  }

  void part(const std::string& p) {
    current_ = p;
    if (parts_.find(p) == parts_.end()) {
      parts_.emplace(p, make_real(0, digits_));
      order_.push_back(p);
    }
  }

  void update(const Real& r, const std::function<std::string()>& where) {
    ++samples_;
    if (!current_.empty() && r > parts_.at(current_)) parts_.at(current_) = r;
    if (r > report_.max_residual || report_.location.empty()) {
      if (r > report_.max_residual) report_.max_residual = r;
      report_.location = (current_.empty() ? "" : current_ + " ") + where();
    }
  }

  void note(const std::string& d) {
    if (!report_.details.empty()) report_.details += "; ";
    report_.details += d;
  }

  CheckReport finish() {
    for (const auto& p : order_) report_.parts.emplace_back(p, parts_.at(p));
    report_.covered = samples_ > 0;
    report_.passed = report_.max_residual < tolerance_;
    if (!report_.covered) {
      report_.location.clear();
      note("no coverage");
    }
    return report_;
  }

private:
  unsigned digits_;
  double tolerance_;
  CheckReport report_;
  std::string current_;
  std::map<std::string, Real> parts_;
  std::vector<std::string> order_;
  long samples_ = 0;
};

template <class Label>
void compare_columns(const TruncatedRep<Label>& rep, const SparseMatrix<Real>& lhs,
                     const SparseMatrix<Real>& rhs, const std::vector<int>& cols, Tracker& tr) {
  const Real zero = make_real(0, rep.ctx.digits());
  for (int j : cols) {
    SparseVector<Real> a = lhs.column_vector(j);
    SparseVector<Real> b = rhs.column_vector(j);
    for (const auto& [i, x] : b) a.emplace(i, zero);
    for (const auto& [i, x] : a) {
      auto it = b.find(i);
      const Real& y = it == b.end() ? zero : it->second;
      tr.update(relative_residual(x, y), [&] {
        return "row=" + rep.labels[i].str() + " col=" + rep.labels[j].str();
      });
    }
  }
}

template <class Label>
SparseMatrix<Real> diagonal(const TruncatedRep<Label>& rep, const std::function<Real(int)>& f) {
  SparseMatrix<Real> d(rep.size(), rep.size());
  for (int i = 0; i < rep.size(); ++i) {
    Real v = f(i);
    if (v != 0) d.add(i, i, v);
  }
  return d;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// su_q(1,1) subalgebra

/// [T0,T+] = T+, [T0,T-] = -T-, [T+,T-] = [2T0] with T+ = A23, T- = A32,
/// T0 = (A22 - A33)/2, on interior columns.
template <class Label>
CheckReport check_su11_relations(const TruncatedRep<Label>& rep,
                                 double tolerance = kDefaultTolerance) {
  detail::Tracker tr("su11_relations", rep.ctx.digits(), tolerance);
  const auto cols = rep.interior_columns();
  const auto& tp = rep.at({2, 3});
  const auto& tm = rep.at({3, 2});
  const auto t0 = detail::diagonal(rep, [&](int i) {
    return Real(make_real(rep.weights[i].m2 - rep.weights[i].m3, rep.ctx.digits()) / 2);
  });
  const auto q2t0 = detail::diagonal(
      rep, [&](int i) { return qnum(rep.weights[i].m2 - rep.weights[i].m3, rep.ctx); });
  tr.part("[T0,T+]=T+");
  detail::compare_columns(rep, t0 * tp - tp * t0, tp, cols, tr);
  tr.part("[T0,T-]=-T-");
  detail::compare_columns(rep, t0 * tm - tm * t0, tm.scaled(make_real(-1, rep.ctx.digits())), cols,
                          tr);
  tr.part("[T+,T-]=[2T0]");
  detail::compare_columns(rep, tp * tm - tm * tp, q2t0, cols, tr);
  return tr.finish();
}

// ---------------------------------------------------------------------------
// Hermitian conjugation

/// Conjugation rules of the compact and noncompact generators in an
/// orthonormal basis (matrices are real, so + is the transpose):
///   A_ii^T = A_ii, A12^T = A21, A23^T = -A32,
///   A13^T = -A31 + (q - 1/q) A21 A32,
///   A13^T = -q^2 A31 + (q^2 - 1) A32 A21,
///   A13^T = -(A32 A21 - q A21 A32),
/// plus agreement of the two A13^T expressions.
template <class Label>
CheckReport check_hermiticity(const TruncatedRep<Label>& rep,
                              double tolerance = kDefaultTolerance) {
  detail::Tracker tr("hermiticity", rep.ctx.digits(), tolerance);
  const auto cols = rep.interior_columns();
  const unsigned dg = rep.ctx.digits();
  const Real q = rep.ctx.q();
  const Real one = make_real(1, dg);
  auto A = [&](int i, int j) -> const SparseMatrix<Real>& { return rep.at({i, j}); };

  for (int i = 1; i <= 3; ++i) {
    tr.part("A" + std::to_string(i) + std::to_string(i) + "^T=A" + std::to_string(i) +
            std::to_string(i));
    detail::compare_columns(rep, A(i, i).transpose(), A(i, i), cols, tr);
  }
  tr.part("A12^T=A21");
  detail::compare_columns(rep, A(1, 2).transpose(), A(2, 1), cols, tr);
  tr.part("A21^T=A12");
  detail::compare_columns(rep, A(2, 1).transpose(), A(1, 2), cols, tr);
  tr.part("A23^T=-A32");
  detail::compare_columns(rep, A(2, 3).transpose(), A(3, 2).scaled(Real(-one)), cols, tr);

  const auto a13t = A(1, 3).transpose();
  const auto a21a32 = A(2, 1) * A(3, 2);
  const auto a32a21 = A(3, 2) * A(2, 1);
  const auto form1 = A(3, 1).scaled(Real(-one)) + a21a32.scaled(Real(q - one / q));
  const auto form2 = A(3, 1).scaled(Real(-q * q)) + a32a21.scaled(Real(q * q - one));
  const auto conj = (a32a21 - a21a32.scaled(q)).scaled(Real(-one));
  tr.part("A13^T=-A31+(q-1/q)A21A32");
  detail::compare_columns(rep, a13t, form1, cols, tr);
  tr.part("A13^T=-q^2A31+(q^2-1)A32A21");
  detail::compare_columns(rep, a13t, form2, cols, tr);
  tr.part("A13^T=-(A32A21-qA21A32)");
  detail::compare_columns(rep, a13t, conj, cols, tr);
  tr.part("forms agree");
  detail::compare_columns(rep, form1, form2, cols, tr);
  return tr.finish();
}

// ---------------------------------------------------------------------------
// Casimir operator

/// C2 = T- T+ + [T0 + 1/2]^2 is diagonal with entry [T + 1/2]^2 on every
/// interior column; also reports whether distinct T sharing a weight space
/// have distinct eigenvalues.
inline CheckReport check_casimir(const TRep& rep, double tolerance = kDefaultTolerance) {
  detail::Tracker tr("casimir", rep.ctx.digits(), tolerance);
  const auto cols = rep.interior_columns();
  const auto shift = detail::diagonal(rep, [&](int i) {
    return qnum_squared(HalfInt::from_twice(rep.weights[i].m2 - rep.weights[i].m3 + 1), rep.ctx);
  });
  const auto c2 = rep.at({3, 2}) * rep.at({2, 3}) + shift;
  const auto expected = detail::diagonal(
      rep, [&](int i) { return casimir_su11_eigenvalue(rep.labels[i].T, rep.ctx); });
  tr.part("C2=[T+1/2]^2");
  detail::compare_columns(rep, c2, expected, cols, tr);

  int degenerate = 0;
  for (int i = 0; i < rep.size(); ++i)
    for (int j = i + 1; j < rep.size(); ++j) {
      if (rep.weights[i] != rep.weights[j] || rep.labels[i].T == rep.labels[j].T) continue;
      Real gap = detail::relative_residual(casimir_su11_eigenvalue(rep.labels[i].T, rep.ctx),
                                           casimir_su11_eigenvalue(rep.labels[j].T, rep.ctx));
      if (gap < tolerance) ++degenerate;
    }
  if (degenerate > 0) tr.note(std::to_string(degenerate) + " degenerate eigenvalue pairs");
  return tr.finish();
}

// ---------------------------------------------------------------------------
// Extremal projector

namespace detail {

inline SparseVector<Real> power_apply(const SparseMatrix<Real>& m, int r, SparseVector<Real> v) {
  for (int i = 0; i < r && !v.empty(); ++i) v = m.apply(v);
  return v;
}

/// P^T v = sum_r C_r T+^r T-^r v.
template <class Label>
SparseVector<Real> apply_projector_t(const TruncatedRep<Label>& rep, HalfInt T,
                                     const SparseVector<Real>& v) {
  const auto& tp = rep.at({2, 3});
  const auto& tm = rep.at({3, 2});
  SparseVector<Real> out;
  for (int r = 0; r <= T.twice(); ++r) {
    SparseVector<Real> w = power_apply(tp, r, power_apply(tm, r, v));
    const Real c = projector_t_coeff(T, r, rep.ctx);
    for (const auto& [i, x] : w) SparseMatrix<Real>::accumulate(out, i, Real(c * x));
  }
  return out;
}

inline void compare_vectors(const SparseVector<Real>& a, const SparseVector<Real>& b,
                            const std::function<std::string(int)>& name, Tracker& tr,
                            unsigned digits) {
  const Real zero = make_real(0, digits);
  std::map<int, std::pair<Real, Real>> u;
  for (const auto& [i, x] : a) u.emplace(i, std::make_pair(x, zero));
  for (const auto& [i, y] : b) {
    auto it = u.find(i);
    if (it == u.end())
      u.emplace(i, std::make_pair(zero, y));
    else
      it->second.second = y;
  }
  if (u.empty()) tr.update(zero, [] { return std::string(); });
  for (const auto& [i, xy] : u)
    tr.update(relative_residual(xy.first, xy.second), [&] { return name(i); });
}

}  // namespace detail

/// Projector identities on every weight space with M = T + 1 that lies
/// completely inside the T-basis window:
///   T- P = 0, P|T,T+1> = |T,T+1>, P^2 = P, C_0 = 1,
///   C_{r-1} + [r][r-1-2T] C_r = 0,
///   P T-^x T+^x P = (-1)^x N^2(T, T+1+x) P,
///   P equals the spectral projector of C2 onto [T + 1/2]^2.
inline CheckReport check_projector(const TRep& rep, HalfInt T, double tolerance = kDefaultTolerance) {
  detail::Tracker tr("projector T=" + T.str(), rep.ctx.digits(), tolerance);
  const auto& ctx = rep.ctx;
  const unsigned dg = ctx.digits();

  tr.part("C0=1");
  tr.update(detail::relative_residual(projector_t_coeff(T, 0, ctx), make_real(1, dg)),
            [] { return std::string("r=0"); });
  tr.part("C recursion");
  for (int r = 1; r <= T.twice(); ++r) {
    Real lhs = projector_t_coeff(T, r - 1, ctx) +
               qnum(r, ctx) * qnum(r - 1 - T.twice(), ctx) * projector_t_coeff(T, r, ctx);
    tr.update(detail::relative_residual(lhs, make_real(0, dg)),
              [&] { return "r=" + std::to_string(r); });
  }

  const auto& tp = rep.at({2, 3});
  const auto& tm = rep.at({3, 2});
  int spaces = 0, skipped = 0;
  for (int s = 0; s <= rep.trunc.s_max; ++s)
    for (int p = 0; p <= rep.sig.span(); ++p) {
      if (t_spin(rep.sig, s, p) != T) continue;
      const TBasisLabel top = make_t_label(rep.sig, s, p, 0);
      const Weight w = weight_of_t(rep.sig, top);
      std::vector<int> space;
      bool inside = true;
      for (const auto& l : t_labels_of_weight(rep.sig, w)) {
        auto idx = rep.find(l);
        if (!idx) inside = false;
        else space.push_back(*idx);
      }
      if (!inside) {
        ++skipped;
        continue;
      }
      ++spaces;
      int max_depth = 0;
      for (int i : space) max_depth = std::max(max_depth, rep.labels[i].depth());
      const int top_index = *rep.find(top);
      auto name = [&](int i) { return "weight=" + w.str() + " row=" + rep.labels[i].str(); };

      std::map<int, SparseVector<Real>> P;  // column j of P on the weight space
      for (int j : space) P[j] = detail::apply_projector_t(rep, T, {{j, make_real(1, dg)}});

      tr.part("T-P=0");
      for (int j : space) detail::compare_vectors(tm.apply(P[j]), {}, name, tr, dg);

      tr.part("P|T,T+1>=|T,T+1>");
      detail::compare_vectors(P[top_index], {{top_index, make_real(1, dg)}}, name, tr, dg);

      tr.part("P^2=P");
      for (int j : space)
        detail::compare_vectors(detail::apply_projector_t(rep, T, P[j]), P[j], name, tr, dg);

      tr.part("PT-^xT+^xP=(-1)^xN^2P");
      for (int x = 0; x + max_depth <= rep.trunc.depth; ++x) {
        Real n2 = norm_su11_sq(T, T + HalfInt(1 + x), ctx);
        if (x % 2 == 1) n2 = -n2;
        for (int j : space) {
          // Compared after division by N^2, on the scale of P itself.
          auto lhs = detail::apply_projector_t(
              rep, T, detail::power_apply(tm, x, detail::power_apply(tp, x, P[j])));
          for (auto& [i, v] : lhs) v /= n2;
          detail::compare_vectors(lhs, P[j], name, tr, dg);
        }
      }

      if (max_depth + 1 > rep.trunc.depth) continue;
      tr.part("spectral");
      const Real target = casimir_su11_eigenvalue(T, ctx);
      for (int j : space) {
        SparseVector<Real> v{{j, make_real(1, dg)}};
        // C2 e_j, whose diagonal entry decides membership in the eigenspace.
        SparseVector<Real> c2 = tm.apply(tp.apply(v));
        Real diag = qnum_squared(HalfInt::from_twice(rep.weights[j].m2 - rep.weights[j].m3 + 1), ctx);
        if (auto it = c2.find(j); it != c2.end()) diag += it->second;
        SparseVector<Real> expected;
        if (detail::relative_residual(diag, target) < tolerance) expected.emplace(j, make_real(1, dg));
        detail::compare_vectors(P[j], expected, name, tr, dg);
      }
    }
  tr.note(std::to_string(spaces) + " weight spaces");
  if (skipped > 0) tr.note(std::to_string(skipped) + " outside the window");
  if (spaces == 0) {
    auto r = tr.finish();
    r.covered = false;
    if (r.details.find("no coverage") == std::string::npos) r.details += "; no coverage";
    return r;
  }
  return tr.finish();
}

/// P^T applied through the U-basis matrices equals w w^T with w the Weyl
/// column of |T, T+1>.
template <Field F>
CheckReport check_projector_u(const URep& rep, HalfInt T, const EvalContext<F>& ctx,
                              double tolerance = kDefaultTolerance) {
  detail::Tracker tr("projector(U) T=" + T.str(), rep.ctx.digits(), tolerance);
  const unsigned dg = rep.ctx.digits();
  int spaces = 0;
  for (int s = 0; s <= rep.trunc.complete_level(); ++s)
    for (int p = 0; p <= rep.sig.span(); ++p) {
      if (t_spin(rep.sig, s, p) != T) continue;
      const TBasisLabel top = make_t_label(rep.sig, s, p, 0);
      const Weight w = weight_of_t(rep.sig, top);
      if (weight_level(rep.sig, w) > rep.trunc.l_max) continue;
      std::vector<int> space;
      SparseVector<Real> col;
      for (const auto& u : u_labels_of_weight(rep.sig, w)) {
        const int i = *rep.find(u);
        space.push_back(i);
        col.emplace(i, to_float(weyl_coefficient(rep.sig, u, top, ctx), ctx));
      }
      ++spaces;
      tr.part("P=ww^T");
      for (int j : space) {
        auto pj = detail::apply_projector_t(rep, T, {{j, make_real(1, dg)}});
        SparseVector<Real> expected;
        for (const auto& [i, v] : col) expected.emplace(i, Real(v * col.at(j)));
        detail::compare_vectors(pj, expected,
                                [&](int i) { return "weight=" + w.str() + " row=" + rep.labels[i].str(); },
                                tr, dg);
      }
    }
  auto r = tr.finish();
  if (spaces == 0) r.covered = false;
  return r;
}

// ---------------------------------------------------------------------------
// Weyl blocks

namespace detail {

template <Field F>
std::vector<std::vector<Real>> float_block(const WeylBlock<F>& b, const EvalContext<F>& ctx) {
  std::vector<std::vector<Real>> m(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (const auto& e : b.entries[i]) m[i].push_back(to_float(e, ctx));
  return m;
}

}  // namespace detail

/// max |B^T B - I| and |B B^T - I| over every complete block in the window.
template <Field F>
CheckReport check_weyl_orthogonality(const Signature& sig, const Truncation& trunc,
                                     const EvalContext<F>& ctx,
                                     double tolerance = kDefaultTolerance) {
  detail::Tracker tr("weyl_orthogonality", ctx.digits(), tolerance);
  const unsigned dg = ctx.digits();
  int blocks = 0;
  std::size_t largest = 0;
  for (const Weight& w : weights_within(sig, trunc)) {
    const auto b = weyl_block(sig, w, ctx);
    const auto m = detail::float_block(b, ctx);
    const std::size_t n = b.size();
    ++blocks;
    largest = std::max(largest, n);
    for (int pass = 0; pass < 2; ++pass) {
      tr.part(pass == 0 ? "B^TB=I" : "BB^T=I");
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Real s = make_real(0, dg);
          for (std::size_t r = 0; r < n; ++r)
            s += pass == 0 ? Real(m[r][i] * m[r][j]) : Real(m[i][r] * m[j][r]);
          tr.update(detail::relative_residual(s, make_real(i == j ? 1 : 0, dg)), [&] {
            return "weight=" + w.str() + " i=" + std::to_string(i) + " j=" + std::to_string(j);
          });
        }
    }
  }
  tr.note(std::to_string(blocks) + " blocks, largest " + std::to_string(largest));
  return tr.finish();
}

/// W(target)^T M_U(g) W(source) = M_T(g) for every generator, on T-basis
/// columns one level below the highest complete level.
template <Field F>
CheckReport check_intertwiner(const Signature& sig, const Truncation& trunc,
                              const EvalContext<F>& ctx, double tolerance = kDefaultTolerance,
                              const ActionTable* u_table = nullptr,
                              const ActionTable* t_table = nullptr) {
  detail::Tracker tr("intertwiner", ctx.digits(), tolerance);
  const URep ur = build_truncated_rep<UBasisLabel>(sig, trunc, ctx, u_table);
  const TRep trp = build_truncated_rep<TBasisLabel>(sig, trunc, ctx, t_table);
  const ActionTable& ttab = t_table ? *t_table : t_action_table();
  const int top = trunc.complete_level();

  SparseMatrix<Real> W(ur.size(), trp.size());
  for (const Weight& w : weights_within(sig, trunc)) {
    const auto b = weyl_block(sig, w, ctx);
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        if (!b.entries[i][j].is_zero())
          W.add(*ur.find(b.rows[i]), *trp.find(b.cols[j]), to_float(b.entries[i][j], ctx));
  }
  const auto Wt = W.transpose();
  std::vector<int> cols;
  for (int j = 0; j < trp.size(); ++j)
    if (trp.level(j) <= top - 1) cols.push_back(j);

  for (const GeneratorLabel g : all_generators()) {
    tr.part(g.name());
    const auto lhs = Wt * (ur.at(g) * W);
    const auto& rhs = trp.at(g);
    const Real zero = make_real(0, ctx.digits());
    for (int j : cols) {
      auto a = lhs.column_vector(j);
      auto b = rhs.column_vector(j);
      for (const auto& [i, x] : b) a.emplace(i, zero);
      for (const auto& [i, x] : a) {
        if (trp.level(i) > top) continue;
        auto it = b.find(i);
        const Real& y = it == b.end() ? zero : it->second;
        tr.update(detail::relative_residual(x, y), [&] {
          std::string entry;
          for (const auto& term : t_basis_action(sig, g, trp.labels[j], ctx, ttab))
            if (term.target == trp.labels[i] && term.entry >= 0) entry = " entry=" + ttab[term.entry].name;
          return "weight=" + trp.weights[j].str() + " row=" + trp.labels[i].str() +
                 " col=" + trp.labels[j].str() + entry;
        });
      }
    }
  }
  tr.note(std::to_string(cols.size()) + " columns");
  return tr.finish();
}

// ---------------------------------------------------------------------------
// Norms

/// Closed-form N^2(k l) against the recursions
///   N^2(0 l) = [l][f1-f3+l-1] N^2(0 l-1),
///   N^2(k l) = [k][f1-f2-k+1][f2-f3+k-2] / [f1-f2-k+l+2] N^2(k-1 l),
/// from N^2(0 0) = 1 over 0 <= k <= f1-f2, 0 <= l <= l_max. In exact mode
/// the comparison is exact equality.
template <Field F>
CheckReport check_norm_recursions(const Signature& sig, int l_max, const EvalContext<F>& ctx,
                                  double tolerance = kDefaultTolerance) {
  require_valid(sig);
  detail::Tracker tr("norm_recursions", ctx.digits(), tolerance);
  const int d12 = sig.f1 - sig.f2, d13 = sig.f1 - sig.f3, d23 = sig.f2 - sig.f3;
  int mismatches = 0;
  F column = ctx.value(1);  // N^2(0 l)
  for (int l = 0; l <= l_max; ++l) {
    if (l > 0) column *= qnum(l, ctx) * qnum(d13 + l - 1, ctx);
    F v = column;
    for (int k = 0; k <= d12; ++k) {
      if (k > 0)
        v = v * qnum(k, ctx) * qnum(d12 - k + 1, ctx) * qnum(d23 + k - 2, ctx) /
            qnum(d12 - k + l + 2, ctx);
      const F closed = norm_u_sq(sig, k, l, ctx);
      if (closed != v) ++mismatches;
      tr.update(detail::relative_residual(to_real(closed, ctx.digits()), to_real(v, ctx.digits())),
                [&] { return "k=" + std::to_string(k) + " l=" + std::to_string(l); });
    }
  }
  if constexpr (std::is_same_v<F, Rational>) {
    tr.note(mismatches == 0 ? "exact equality" : std::to_string(mismatches) + " exact mismatches");
    auto r = tr.finish();
    r.passed = mismatches == 0;
    return r;
  } else {
    return tr.finish();
  }
}

// ---------------------------------------------------------------------------
// Configurable relations

/// c * q^w * (product of generators, leftmost acts last).
struct RelationTerm {
  Rational coeff;
  int qpower = 0;
  std::vector<GeneratorLabel> word;
};

/// Asserts sum of terms = 0.
struct Relation {
  std::string name;
  std::vector<RelationTerm> terms;
};

/// A31 = A32 A21 - q^-1 A21 A32.
inline std::vector<Relation> default_relations() {
  return {{"A31=A32A21-q^-1A21A32",
           {{Rational(1), 0, {{3, 1}}},
            {Rational(-1), 0, {{3, 2}, {2, 1}}},
            {Rational(1), -1, {{2, 1}, {3, 2}}}}}};
}

template <class Label>
CheckReport check_relation(const TruncatedRep<Label>& rep, const Relation& rel,
                           double tolerance = kDefaultTolerance) {
  detail::Tracker tr("relation " + rel.name, rep.ctx.digits(), tolerance);
  const unsigned dg = rep.ctx.digits();
  std::vector<SparseMatrix<Real>> parts;
  for (const auto& t : rel.terms) {
    if (t.word.empty() || t.word.size() > 2)
      throw std::invalid_argument("relation words must have length 1 or 2");
    SparseMatrix<Real> m = rep.at(t.word[0]);
    if (t.word.size() == 2) m = m * rep.at(t.word[1]);
    parts.push_back(m.scaled(Real(make_real(t.coeff, dg) * rep.ctx.qpow(t.qpower))));
  }
  const Real zero = make_real(0, dg);
  for (int j : rep.interior_columns()) {
    std::map<int, std::pair<Real, Real>> acc;  // sum, largest term
    for (const auto& m : parts)
      for (const auto& [i, x] : m.column(j)) {
        auto it = acc.try_emplace(i, zero, zero).first;
        it->second.first += x;
        Real ax = boost::multiprecision::abs(x);
        if (ax > it->second.second) it->second.second = ax;
      }
    for (const auto& [i, sv] : acc) {
      Real scale = sv.second < 1 ? make_real(1, dg) : sv.second;
      tr.update(Real(boost::multiprecision::abs(sv.first) / scale), [&] {
        return "row=" + rep.labels[i].str() + " col=" + rep.labels[j].str();
      });
    }
  }
  return tr.finish();
}

// ---------------------------------------------------------------------------
// Full suite

struct VerifyOptions {
  double tolerance = kDefaultTolerance;
  int norm_l_max = 8;
  int projector_two_t_max = 8;
  std::vector<Relation> relations = default_relations();
  const ActionTable* u_table = nullptr;
  const ActionTable* t_table = nullptr;
};

template <Field F>
std::vector<CheckReport> verify_all(const Signature& sig, const Truncation& trunc,
                                    const EvalContext<F>& ctx, const VerifyOptions& opt = {}) {
  require_valid(sig);
  std::vector<CheckReport> out;
  const URep ur = build_truncated_rep<UBasisLabel>(sig, trunc, ctx, opt.u_table);
  const TRep trp = build_truncated_rep<TBasisLabel>(sig, trunc, ctx, opt.t_table);
  auto tag = [](CheckReport r, const std::string& basis) {
    r.name += "(" + basis + ")";
    return r;
  };
  out.push_back(tag(check_su11_relations(trp, opt.tolerance), "t"));
  out.push_back(tag(check_su11_relations(ur, opt.tolerance), "u"));
  out.push_back(tag(check_hermiticity(trp, opt.tolerance), "t"));
  out.push_back(tag(check_hermiticity(ur, opt.tolerance), "u"));
  out.push_back(check_casimir(trp, opt.tolerance));
  out.push_back(check_norm_recursions(sig, opt.norm_l_max, ctx, opt.tolerance));
  out.push_back(check_weyl_orthogonality(sig, trunc, ctx, opt.tolerance));
  out.push_back(check_intertwiner(sig, trunc, ctx, opt.tolerance, opt.u_table, opt.t_table));
  for (int two_t = 0; two_t <= opt.projector_two_t_max; ++two_t) {
    const HalfInt T = HalfInt::from_twice(two_t);
    auto r = check_projector(trp, T, opt.tolerance);
    if (r.covered) out.push_back(r);
  }
  for (const auto& rel : opt.relations) {
    out.push_back(tag(check_relation(trp, rel, opt.tolerance), "t"));
    out.push_back(tag(check_relation(ur, rel, opt.tolerance), "u"));
  }
  return out;
}

inline bool all_passed(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.passed) return false;
  return true;
}

}  // namespace qu21
