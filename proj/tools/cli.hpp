#pragma once

// Command-line front end: basis | matrix | weyl | racah | verify.
// run() is separate from main() so tests can drive it in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qu21/qu21.hpp"

namespace qu21::cli {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string sig_text = "4,2,-2";
  Signature sig{4, 2, -2};
  std::string q_text;
  std::string mode;  // exact | float, resolved from q when empty
  unsigned precision = kDefaultDigits;
  Truncation trunc;
  std::string format = "json";
  double tolerance = kDefaultTolerance;
  std::string basis = "u";
  std::string gen;
  std::string out;
  std::string weight;
  bool via_racah = false;
  std::string racah_args;
  std::string relations_file;
  int corrupt_t_entry = 0;

  /// Working precision: ten guard digits above the printed precision, and
  /// never below 50 so that short output keeps the checks meaningful.
  unsigned digits() const { return std::max(precision + 10, 50u); }
};

// ---------------------------------------------------------------------------
// Tables and rendering

using Cell = std::variant<long long, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("row width mismatch");
    rows.push_back(std::move(row));
  }
};

inline std::string cell_text(const Cell& c) {
  if (auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

/// RFC 4180: CRLF line ends, fields with comma, quote or line break quoted.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

inline std::string render_csv(const Table& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += csv_field(fields[i]);
    }
    out += "\r\n";
  };
  line(t.columns);
  for (const auto& r : t.rows) {
    std::vector<std::string> f;
    for (const auto& c : r) f.push_back(cell_text(c));
    line(f);
  }
  return out;
}

inline nlohmann::ordered_json config_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  j["sig"] = {c.sig.f1, c.sig.f2, c.sig.f3};
  j["q"] = c.q_text;
  j["mode"] = c.mode;
  j["precision"] = c.precision;
  j["lmax"] = c.trunc.l_max;
  j["smax"] = c.trunc.s_max;
  j["depth"] = c.trunc.depth;
  j["tolerance"] = c.tolerance;
  j["basis"] = c.basis;
  if (!c.gen.empty()) j["gen"] = c.gen;
  if (!c.weight.empty()) j["weight"] = c.weight;
  if (c.via_racah) j["via_racah"] = true;
  if (!c.racah_args.empty()) j["args"] = c.racah_args;
  if (!c.relations_file.empty()) j["relations"] = c.relations_file;
  if (c.corrupt_t_entry) j["corrupt_t_entry"] = c.corrupt_t_entry;
  return j;
}

inline std::string render_json(const Table& t, const RunConfig& c) {
  nlohmann::ordered_json j;
  j["config"] = config_json(c);
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::visit([&](const auto& v) { row[t.columns[i]] = v; }, r[i]);
    }
    j["rows"].push_back(row);
  }
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Parsing helpers

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

inline std::vector<int> parse_ints(const std::string& s, std::size_t n, const std::string& what) {
  auto parts = split(s, ',');
  if (parts.size() != n)
    throw ConfigError(what + " needs " + std::to_string(n) + " comma-separated integers");
  std::vector<int> v;
  for (const auto& p : parts) {
    std::size_t pos = 0;
    int x = 0;
    try {
      x = std::stoi(p, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != p.size()) throw ConfigError(what + ": '" + p + "' is not an integer");
    v.push_back(x);
  }
  return v;
}

inline bool is_decimal(const std::string& q) { return q.find_first_of(".eE") != std::string::npos; }

inline const std::vector<std::string>& default_q_grid() {
  static const std::vector<std::string> grid{"1/2", "9/10", "1", "13/10", "2"};
  return grid;
}

/// Runs fn(ctx) with an exact or float context for q.
template <class Fn>
auto with_context(const RunConfig& c, const std::string& q, Fn&& fn) {
  try {
    if (c.mode == "exact") {
      if (is_decimal(q)) throw ConfigError("exact mode needs a rational q, got '" + q + "'");
      return fn(exact_context(q, c.digits()));
    }
    return fn(float_context(q, c.digits()));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad q '") + q + "': " + e.what());
  }
}

template <Field F>
std::string fstr(const F& x, const RunConfig& c) {
  return field_string(x, c.precision);
}

inline std::string rstr(const Real& x, const RunConfig& c) { return real_string(x, c.precision); }

// ---------------------------------------------------------------------------
// Commands

template <Field F>
Table cmd_basis(const RunConfig& c, const EvalContext<F>& ctx) {
  Table t;
  if (c.basis == "u") {
    t.columns = {"k", "l", "U", "M", "m1", "m2", "m3", "level", "norm_kl", "norm_um",
                 "m13", "m23", "m33", "m12", "m22", "m11"};
    for (const auto& u : enumerate_u_basis(c.sig, c.trunc.l_max)) {
      const Weight w = weight_of_u(c.sig, u);
      const GGPattern g = gg_from_label(c.sig, u);
      t.add({u.k, u.l, u.U.str(), u.M.str(), w.m1, w.m2, w.m3, weight_level(c.sig, w),
             fstr(norm_u_sq(c.sig, u.k, u.l, ctx), c), fstr(norm_su2_sq(u.U, u.M, ctx), c),
             g.m13, g.m23, g.m33, g.m12, g.m22, g.m11});
    }
  } else {
    t.columns = {"s", "p", "T", "M", "m1", "m2", "m3", "level", "norm_sp", "norm_tm"};
    for (const auto& l : enumerate_t_basis(c.sig, c.trunc.s_max, c.trunc.depth)) {
      const Weight w = weight_of_t(c.sig, l);
      t.add({l.s, l.p, l.T.str(), l.M.str(), w.m1, w.m2, w.m3, weight_level(c.sig, w),
             fstr(norm_t_sq(c.sig, l.s, l.p, ctx), c), fstr(norm_su11_sq(l.T, l.M, ctx), c)});
    }
  }
  return t;
}

inline std::vector<GeneratorLabel> selected_generators(const RunConfig& c) {
  if (c.gen.empty()) return {all_generators().begin(), all_generators().end()};
  try {
    return {GeneratorLabel::parse(c.gen)};
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

template <Field F>
Table cmd_matrix(const RunConfig& c, const EvalContext<F>& ctx) {
  Table t;
  t.columns = {"gen", "source", "target", "entry", "sign", "qpower", "radicand", "value"};
  const auto gens = selected_generators(c);
  auto emit = [&](GeneratorLabel g, const auto& label, const auto& terms, const ActionTable& tab) {
    for (const auto& term : terms)
      t.add({g.name(), label.str(), term.target.str(),
             term.entry < 0 ? std::string("diagonal") : tab[term.entry].name,
             static_cast<long long>(term.coeff.sign()), static_cast<long long>(term.coeff.qpower()),
             fstr(term.coeff.radicand(), c), rstr(to_float(term.coeff, ctx), c)});
  };
  for (const GeneratorLabel g : gens) {
    if (c.basis == "u") {
      for (const auto& u : enumerate_u_basis(c.sig, c.trunc.l_max))
        emit(g, u, u_basis_action(c.sig, g, u, ctx), u_action_table());
    } else {
      for (const auto& l : enumerate_t_basis(c.sig, c.trunc.s_max, c.trunc.depth))
        emit(g, l, t_basis_action(c.sig, g, l, ctx), t_action_table());
    }
  }
  return t;
}

template <Field F>
Table cmd_weyl(const RunConfig& c, const EvalContext<F>& ctx) {
  Table t;
  t.columns = {"weight", "u", "t", "sign", "radicand", "value"};
  if (c.via_racah)
    for (const char* col : {"racah_k", "racah_s", "diff"}) t.columns.push_back(col);
  std::vector<Weight> weights;
  if (!c.weight.empty()) {
    auto w = parse_ints(c.weight, 3, "--weight");
    weights.push_back({w[0], w[1], w[2]});
  } else {
    weights = weights_within(c.sig, c.trunc);
  }
  for (const Weight& w : weights) {
    const auto b = weyl_block(c.sig, w, ctx);
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) {
        const auto& e = b.entries[i][j];
        const Real v = to_float(e, ctx);
        std::vector<Cell> row{w.str(), b.rows[i].str(), b.cols[j].str(),
                              static_cast<long long>(e.sign()), fstr(e.radicand(), c), rstr(v, c)};
        if (c.via_racah) {
          const Real rk = to_float(weyl_via_racah(c.sig, b.rows[i], b.cols[j], ctx, RacahForm::PhaseK), ctx);
          const Real rs = to_float(weyl_via_racah(c.sig, b.rows[i], b.cols[j], ctx, RacahForm::PhaseS), ctx);
          Real diff = boost::multiprecision::abs(Real(v - rk));
          const Real d2 = boost::multiprecision::abs(Real(v - rs));
          if (d2 > diff) diff = d2;
          row.push_back(rstr(rk, c));
          row.push_back(rstr(rs, c));
          row.push_back(rstr(diff, c));
        }
        t.add(std::move(row));
      }
  }
  return t;
}

inline RacahArgs parse_racah_args(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 6) throw ConfigError("--args needs six half-integers a,b,c,d,e,f");
  std::vector<HalfInt> h;
  for (const auto& p : parts) {
    try {
      h.push_back(HalfInt::parse(p));
    } catch (const std::exception&) {
      throw ConfigError("--args: '" + p + "' is not a half-integer");
    }
  }
  return {h[0], h[1], h[2], h[3], h[4], h[5]};
}

template <Field F>
Table cmd_racah(const RunConfig& c, const EvalContext<F>& ctx) {
  Table t;
  t.columns = {"a", "b", "c", "d", "e", "f", "sign", "radicand", "value"};
  const RacahArgs a = parse_racah_args(c.racah_args);
  const auto v = qracah(a, ctx);
  t.add({a.a.str(), a.b.str(), a.c.str(), a.d.str(), a.e.str(), a.f.str(),
         static_cast<long long>(v.sign()), fstr(v.radicand(), c), rstr(to_float(v, ctx), c)});
  return t;
}

inline std::vector<Relation> load_relations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open relations file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
    std::vector<Relation> out;
    for (const auto& r : j.at("relations")) {
      Relation rel;
      rel.name = r.at("name").get<std::string>();
      for (const auto& term : r.at("terms")) {
        RelationTerm rt;
        const auto& cj = term.at("coeff");
        rt.coeff = Rational(cj.is_string() ? cj.get<std::string>() : std::to_string(cj.get<long>()));
        rt.coeff.canonicalize();
        rt.qpower = term.value("qpower", 0);
        for (const auto& g : term.at("word")) rt.word.push_back(GeneratorLabel::parse(g.get<std::string>()));
        if (rt.word.empty() || rt.word.size() > 2)
          throw ConfigError("relation '" + rel.name + "': words must have one or two generators");
        rel.terms.push_back(std::move(rt));
      }
      out.push_back(std::move(rel));
    }
    return out;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("relations file '" + path + "': " + e.what());
  }
}

/// Verification suite over one q or the default grid; returns the table and
/// whether every check passed.
inline std::pair<Table, bool> cmd_verify(const RunConfig& c) {
  Table t;
  t.columns = {"q", "check", "part", "max_residual", "passed", "covered", "location", "details"};
  VerifyOptions opt;
  opt.tolerance = c.tolerance;
  if (!c.relations_file.empty()) {
    for (auto& r : load_relations(c.relations_file)) opt.relations.push_back(std::move(r));
  }
  ActionTable corrupted;
  if (c.corrupt_t_entry != 0) {
    corrupted = t_action_table();
    const int n = c.corrupt_t_entry;
    if (n < 1 || n > static_cast<int>(corrupted.size()))
      throw ConfigError("--corrupt-t-entry must be in 1.." + std::to_string(corrupted.size()));
    corrupted[n - 1].sign = -corrupted[n - 1].sign;
    opt.t_table = &corrupted;
  }
  std::vector<std::string> qs;
  if (c.q_text.empty())
    qs = default_q_grid();
  else
    qs.push_back(c.q_text);
  bool ok = true;
  for (const auto& q : qs) {
    auto reports = with_context(c, q, [&](const auto& ctx) { return verify_all(c.sig, c.trunc, ctx, opt); });
    for (const auto& r : reports) {
      ok = ok && r.passed;
      t.add({q, r.name, std::string(), rstr(r.max_residual, c), r.passed, r.covered, r.location, r.details});
      for (const auto& [part, res] : r.parts)
        t.add({q, r.name, part, rstr(res, c), res < c.tolerance, true, std::string(), std::string()});
    }
  }
  return {t, ok};
}

// ---------------------------------------------------------------------------
// Entry point

inline void resolve(RunConfig& c) {
  auto v = parse_ints(c.sig_text, 3, "--sig");
  c.sig = {v[0], v[1], v[2]};
  require_valid(c.sig);
  if (c.format != "json" && c.format != "csv") throw ConfigError("--format must be json or csv");
  if (c.basis != "u" && c.basis != "t") throw ConfigError("--basis must be u or t");
  if (c.precision == 0) throw ConfigError("--precision must be positive");
  if (c.trunc.l_max < 0 || c.trunc.s_max < 0 || c.trunc.depth < 0)
    throw ConfigError("truncation bounds must be nonnegative");
  if (c.q_text.empty() && c.command != "verify") c.q_text = "13/10";
  if (c.mode.empty()) {
    bool dec = !c.q_text.empty() && is_decimal(c.q_text);
    c.mode = dec ? "float" : "exact";
  }
  if (c.mode != "exact" && c.mode != "float") throw ConfigError("--mode must be exact or float");
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  if (const char* env = std::getenv("QU21_PRECISION")) {
    try {
      c.precision = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      err << "error: QU21_PRECISION must be a positive integer\n";
      return 2;
    }
  }

  CLI::App app{"Positive discrete series of u_q(2,1): bases, matrix elements, Weyl and Racah coefficients"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* s) {
    s->add_option("--sig", c.sig_text, "lowest weight f1,f2,f3");
    s->add_option("--q", c.q_text, "deformation parameter, a/b or decimal");
    s->add_option("--mode", c.mode, "exact | float");
    s->add_option("--precision", c.precision, "significant digits");
    s->add_option("--lmax", c.trunc.l_max, "U-basis bound on l");
    s->add_option("--smax", c.trunc.s_max, "T-basis bound on s");
    s->add_option("--depth", c.trunc.depth, "T-basis bound on M - T - 1");
    s->add_option("--format", c.format, "json | csv");
    s->add_option("--tolerance", c.tolerance, "relative residual tolerance");
    s->add_option("--out", c.out, "write output to a file");
  };
  auto* basis = app.add_subcommand("basis", "enumerate basis labels with weights and norms");
  common(basis);
  basis->add_option("--basis", c.basis, "u | t");
  auto* matrix = app.add_subcommand("matrix", "matrix elements of the generators");
  common(matrix);
  matrix->add_option("--basis", c.basis, "u | t");
  matrix->add_option("--gen", c.gen, "generator Aij (default: all)");
  auto* weyl = app.add_subcommand("weyl", "transformation brackets <U|T>");
  common(weyl);
  weyl->add_option("--weight", c.weight, "m1,m2,m3 (default: every complete block)");
  weyl->add_flag("--via-racah", c.via_racah, "also evaluate through Racah coefficients");
  auto* racah = app.add_subcommand("racah", "Racah coefficient U(a b e d; c f)");
  common(racah);
  racah->add_option("--args", c.racah_args, "a,b,c,d,e,f")->required();
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  common(verify);
  verify->add_option("--relations", c.relations_file, "JSON file with extra relations");
  verify->add_option("--corrupt-t-entry", c.corrupt_t_entry,
                     "test hook: flip the sign of one T-basis table entry (1-based)");

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    resolve(c);
    Table table;
    bool ok = true;
    if (c.command == "verify") {
      std::tie(table, ok) = cmd_verify(c);
    } else {
      table = with_context(c, c.q_text, [&](const auto& ctx) {
        if (c.command == "basis") return cmd_basis(c, ctx);
        if (c.command == "matrix") return cmd_matrix(c, ctx);
        if (c.command == "weyl") return cmd_weyl(c, ctx);
        return cmd_racah(c, ctx);
      });
    }
    const std::string text = c.format == "csv" ? render_csv(table) : render_json(table, c);
    if (c.out.empty()) {
      out << text;
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!f) throw ConfigError("cannot write '" + c.out + "'");
      f << text;
    }
    if (!ok) {
      for (std::size_t i = 0; i < table.rows.size(); ++i)
        if (std::get<std::string>(table.rows[i][2]).empty() && !std::get<bool>(table.rows[i][4]))
          err << "FAILED " << cell_text(table.rows[i][1]) << " q=" << cell_text(table.rows[i][0])
              << " at " << cell_text(table.rows[i][6]) << "\n";
      return 1;
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace qu21::cli
