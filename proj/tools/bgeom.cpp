// Batch front end. Reports are TSV with a leading "# key=value" block that
// records every level parameter. Exit 0 on pass, 1 on a failing verdict,
// 2 on usage or parse errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bgeom/borel.hpp"
#include "bgeom/corpus.hpp"
#include "bgeom/errors.hpp"
#include "bgeom/geometry.hpp"
#include "bgeom/oracles.hpp"
#include "bgeom/spec_io.hpp"

using namespace bgeom;

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
  return s + ")";
}

std::string witness_str(const std::vector<Vec>& w) {
  if (w.empty()) return "-";
  std::string s;
  for (const auto& v : w) s += (s.empty() ? "" : ";") + vec_str(v);
  return s;
}

std::string or_dash(const std::string& s) { return s.empty() ? "-" : s; }

class Report {
 public:
  void param(const std::string& key, const std::string& value) { params_.emplace_back(key, value); }
  void param(const std::string& key, double value) { param(key, num(value)); }
  void columns(std::vector<std::string> names) { columns_ = std::move(names); }
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  void write(std::ostream& out) const {
    for (const auto& [k, v] : params_) out << "# " << k << '=' << v << '\n';
    line(out, columns_);
    for (const auto& r : rows_) line(out, r);
  }

 private:
  static void line(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "\t" : "") << cells[i];
    out << '\n';
  }
  std::vector<std::pair<std::string, std::string>> params_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

struct Globals {
  std::optional<double> tol;
  std::size_t budget = 8;
  std::optional<std::size_t> depth;
  std::string out;
};

std::vector<Vec> coordinate_basis(int n, int k) {
  std::vector<Vec> b;
  for (int i = 0; i < k; ++i) b.push_back(Vec::Unit(n, i));
  return b;
}

struct CheckOptions {
  std::string property;
  double eps = 0.5;
  std::optional<double> delta;
  int subspace = 0;  // 0: dim - 1
  int szlenk_k = 2;
  int m_max = 2;
};

const std::vector<std::string> kProperties = {"ld2p", "lddp", "dp", "dld2p", "sd2p", "dd2p", "oh", "woh", "loh", "szlenk"};

Verdict run_check(const SeminormCode& code, const CheckOptions& o, const Globals& g, Report& rep,
                  const std::vector<Vec>& grid = {}) {
  const Space& s = code.space();
  HullOptions hull;
  hull.hull_tol = g.tol.value_or(0.1);
  hull.budget = g.budget;
  hull.grid = grid;
  const auto& p = o.property;
  if (p == "ld2p" || p == "lddp") {
    if (p == "lddp" && !o.delta) throw std::invalid_argument("lddp needs --delta");
    const double delta = p == "ld2p" ? 2.0 : *o.delta;
    rep.param("delta", delta);
    rep.param("hull_tol", hull.hull_tol);
    rep.param("budget", std::to_string(g.budget));
    return ldp_check(s, delta, o.eps, hull);
  }
  if (p == "dp" || p == "dld2p") {
    rep.param("hull_tol", hull.hull_tol);
    rep.param("budget", std::to_string(g.budget));
    return p == "dp" ? dp_check(s, o.eps, hull) : dld2p_check(s, o.eps, hull);
  }
  if (p == "sd2p") {
    auto xs = unit_grid(s, 2);
    xs.resize(std::min<std::size_t>(xs.size(), 2));
    rep.param("m_max", std::to_string(o.m_max));
    rep.param("vectors", witness_str(xs));
    return sd2p_check(s, xs, o.eps, {o.m_max});
  }
  if (p == "dd2p") {
    const double delta = o.delta.value_or(0.5);
    rep.param("delta", delta);
    rep.param("budget", std::to_string(g.budget));
    return dd2p_check(s, o.eps, default_dd2p_instances(s, g.budget, delta, 2));
  }
  if (p == "oh" || p == "woh" || p == "loh") {
    const int k = o.subspace > 0 ? o.subspace : std::max(1, s.dim() - 1);
    if (k > s.dim()) throw std::invalid_argument("--subspace exceeds the dimension");
    rep.param("subspace", o.subspace > 0 ? "span(e1..e" + std::to_string(k) + ")" : "span(e1..e_{dim-1})");
    rep.param("y_budget", std::to_string(std::max<std::size_t>(g.budget, 64)));
    const auto grid_o = aligned_octa_grid(s, {coordinate_basis(s.dim(), k)}, 1, std::max<std::size_t>(g.budget, 64));
    if (p == "oh") return oh_check(s, o.eps, grid_o);
    if (p == "woh") return woh_direct_check(s, o.eps, grid_o);
    return loh_check(s, o.eps, grid_o);
  }
  if (p == "szlenk") {
    const double delta = o.delta.value_or(0.1);
    const double tol = g.tol.value_or(1e-6);
    rep.param("k", std::to_string(o.szlenk_k));
    rep.param("delta", delta);
    rep.param("tol", tol);
    return woh_szlenk_check(code, {o.szlenk_k, delta}, 4096, tol);
  }
  throw std::invalid_argument("unknown property '" + p + "'");
}

void verdict_columns(Report& rep, const std::string& lead) {
  rep.columns({lead, "verdict", "defect", "threshold", "exact", "witness", "detail"});
}

std::vector<std::string> verdict_cells(const std::string& lead, const Verdict& v) {
  return {lead, v.pass ? "pass" : "fail", num(v.defect), num(v.threshold), v.exact ? "yes" : "no", witness_str(v.witness),
          or_dash(v.detail)};
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw ParseError("bad range '" + text + "'");
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(parse_number(tok));
  if (out.empty()) throw ParseError("empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional diameter-two, Daugavet and octahedrality checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.tol, "Pass tolerance override (hull distance, band, monotonicity)")->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "Grid budget for checker test points")->check(CLI::PositiveNumber);
  app.add_option("--depth", g.depth, "Enumeration search depth")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Report path (default stdout)");

  CheckOptions co;
  std::string space_target;
  const auto add_check_options = [&](CLI::App* sub) {
    sub->add_option("--property", co.property, "Property id")->required()->check(CLI::IsMember(kProperties));
    sub->add_option("--space", space_target, "Space or code target")->required();
    sub->add_option("--delta", co.delta, "Diameter (lddp), neighborhood radius (dd2p) or box radius (szlenk)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--subspace", co.subspace, "Octahedral grid subspace span(e1..ek)")->check(CLI::PositiveNumber);
    sub->add_option("--szlenk-k", co.szlenk_k, "Szlenk box count")->check(CLI::PositiveNumber);
    sub->add_option("--m-max", co.m_max, "SD2P decomposition length bound")->check(CLI::PositiveNumber);
  };

  auto* check = app.add_subcommand("check", "Run one checker");
  add_check_options(check);
  check->add_option("--eps", co.eps, "Epsilon")->check(CLI::PositiveNumber);

  auto* table = app.add_subcommand("defect-table", "Defects of one checker over an epsilon list");
  add_check_options(table);
  std::string eps_list = "1,1/2,1/4,1/8";
  table->add_option("--eps-list", eps_list, "Comma separated epsilons");

  auto* borel = app.add_subcommand("borel", "Evaluate a formula over a level schedule");
  std::string formula, levels = "4";
  LevelSpec level;
  bool mirror = false;
  borel->add_option("--formula", formula, "Formula id")->required();
  borel->add_option("--space", space_target, "Space or code target")->required();
  borel->add_option("--levels", levels, "m_max = k_max schedule, a..b or one value");
  borel->add_option("--p-max", level.p_max, "Closeness bound (LDdP)")->check(CLI::PositiveNumber);
  borel->add_option("--universe", level.universe, "Universal prefix length (default: depth)");
  borel->add_option("--delta", level.delta, "Diameter in LDdP")->check(CLI::PositiveNumber);
  borel->add_flag("--mirror", mirror, "Decide through the geometry checkers");

  auto* knoc = app.add_subcommand("knocerrado", "Verify the K_mu counterexample sequence");
  int nmax = 20, klevels = 30;
  knoc->add_option("--nmax", nmax, "Sequence length")->check(CLI::PositiveNumber);
  knoc->add_option("--levels", klevels, "Membership level")->check(CLI::PositiveNumber);

  auto* asym = app.add_subcommand("asymptotics", "Defects along l_inf^n or l_1^n");
  std::string family, range = "2..8";
  asym->add_option("--family", family, "linf or l1")->required()->check(CLI::IsMember({"linf", "l1"}));
  asym->add_option("--range", range, "Dimension range a..b");
  asym->add_option("--property", co.property, "ld2p, oh or szlenk")->required()->check(CLI::IsMember({"ld2p", "oh", "szlenk"}));
  asym->add_option("--eps", co.eps, "Epsilon")->check(CLI::PositiveNumber);
  asym->add_option("--delta", co.delta, "Szlenk box radius")->check(CLI::PositiveNumber);

  auto* cross = app.add_subcommand("crossval", "Exact diameters against sampling oracles");
  std::size_t samples = 100000, corpus_count = 0;
  cross->add_option("--space", space_target, "Space target");
  cross->add_option("--corpus", corpus_count, "Use the first N corpus spaces instead");
  cross->add_option("--samples", samples, "Oracle samples")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Report rep;
  int status = 0;
  try {
    if (*check) {
      const auto code = resolve_code(space_target);
      rep.param("verb", "check");
      rep.param("property", co.property);
      rep.param("space", space_target);
      rep.param("eps", co.eps);
      const auto v = run_check(code, co, g, rep);
      verdict_columns(rep, "property");
      rep.row(verdict_cells(co.property, v));
      status = v.pass ? 0 : 1;
    } else if (*table) {
      const auto code = resolve_code(space_target);
      const auto eps = parse_list(eps_list);
      rep.param("verb", "defect-table");
      rep.param("property", co.property);
      rep.param("space", space_target);
      rep.param("eps_list", eps_list);
      std::vector<std::vector<std::string>> rows;
      for (double e : eps) {
        auto o = co;
        o.eps = e;
        Report scratch;
        rows.push_back(verdict_cells(num(e), run_check(code, o, g, rows.empty() ? rep : scratch)));
      }
      verdict_columns(rep, "eps");
      for (auto& r : rows) rep.row(std::move(r));
    } else if (*borel) {
      const auto id = formula_from_string(formula);
      const auto code = resolve_code(space_target);
      const auto [lo, hi] = parse_range(levels);
      if (lo < 1 || hi < lo) throw std::invalid_argument("--levels must be a positive increasing range");
      level.search_depth = g.depth.value_or(500);
      if (uses_g(id)) level.g_tuple = facet_g_tuple(code, level.search_depth);
      std::vector<LevelSpec> schedule;
      for (int mk = lo; mk <= hi; ++mk) {
        auto l = level;
        l.m_max = l.k_max = mk;
        schedule.push_back(l);
      }
      rep.param("verb", "borel");
      rep.param("formula", to_string(id));
      rep.param("space", space_target);
      rep.param("mode", mirror ? "mirror" : "formula");
      rep.param("levels", levels);
      rep.param("p_max", std::to_string(level.p_max));
      rep.param("search_depth", std::to_string(level.search_depth));
      rep.param("universe", std::to_string(level.universe_size()));
      rep.param("delta", level.delta);
      rep.param("g_tuple", std::to_string(level.g_tuple.size()) + " facet images");
      rep.columns({"m_max", "k_max", "p_max", "search_depth", "verdict", "defect", "witness_ref"});
      bool all = true;
      for (std::size_t i = 0; i < schedule.size(); ++i) {
        const auto v = mirror ? formula_mirror(code, id, schedule[i]) : formula_eval(code, id, schedule[i]);
        const auto& l = schedule[i];
        rep.row({std::to_string(l.m_max), std::to_string(l.k_max), std::to_string(l.p_max),
                 std::to_string(l.search_depth), v.pass ? "pass" : "fail", num(v.defect), or_dash(v.detail)});
        all = all && v.pass;
      }
      status = all ? 0 : 1;
    } else if (*knoc) {
      const double tol = g.tol.value_or(1e-8);
      const int depth = static_cast<int>(std::min<std::size_t>(g.depth.value_or(30), 62));
      const auto r = verify_k_counterexample(klevels, nmax, tol, depth);
      rep.param("verb", "knocerrado");
      rep.param("nmax", std::to_string(nmax));
      rep.param("levels", std::to_string(klevels));
      rep.param("distance_depth", std::to_string(depth));
      rep.param("tol", tol);
      rep.columns({"item", "pass", "value", "detail"});
      for (std::size_t i = 0; i < r.membership.size(); ++i) {
        const auto& m = r.membership[i];
        rep.row({"member n=" + std::to_string(i + 1), m.pass ? "pass" : "fail", num(m.defect), or_dash(m.detail)});
      }
      for (std::size_t i = 0; i < r.distance.size(); ++i)
        rep.row({"distance n=" + std::to_string(i + 1), "-", num(r.distance[i]), "-"});
      rep.row({"limit", r.limit.pass ? "pass" : "fail", num(r.limit.defect), or_dash(r.note)});
      rep.row({"clause-i", r.clause_i ? "pass" : "fail", "-", "every (mu_n, g_n) in K_mu"});
      rep.row({"clause-ii", r.clause_ii ? "pass" : "fail", num(r.worst_increase), "distance non-increasing"});
      rep.row({"clause-iii", r.clause_iii ? "pass" : "fail", "-", "limit outside K_mu"});
      status = r.pass() ? 0 : 1;
    } else if (*asym) {
      const auto [lo, hi] = parse_range(range);
      if (lo < 2 || hi < lo) throw std::invalid_argument("--range must be an increasing range starting at 2 or more");
      const double tol = g.tol.value_or(1e-9);
      rep.param("verb", "asymptotics");
      rep.param("family", family);
      rep.param("range", range);
      rep.param("property", co.property);
      rep.param("eps", co.eps);
      rep.param("monotone_tol", tol);
      std::vector<std::vector<std::string>> rows;
      double last = std::numeric_limits<double>::infinity();
      bool monotone = true;
      for (int n = lo; n <= hi; ++n) {
        const Space s = family == "linf" ? Space::linf(n) : Space::l1(n);
        // ld2p at the near-corner point, oh on span(e1..e_{n-1}).
        std::vector<Vec> grid;
        if (co.property == "ld2p") grid = {Vec::Constant(n, 0.9)};
        Report scratch;
        const auto v = run_check(encode_space(s, DenseRule::basis()), co, g, n == lo ? rep : scratch, grid);
        monotone = monotone && v.defect <= last + tol;
        last = v.defect;
        rows.push_back(verdict_cells(std::to_string(n), v));
      }
      rep.param("monotone", monotone ? "yes" : "no");
      verdict_columns(rep, "n");
      for (auto& r : rows) rep.row(std::move(r));
      status = monotone ? 0 : 1;
    } else if (*cross) {
      if (space_target.empty() == (corpus_count == 0)) throw std::invalid_argument("give exactly one of --space, --corpus");
      const double band = g.tol.value_or(0.02);
      std::vector<std::pair<std::string, Space>> spaces;
      if (corpus_count) {
        const auto corpus = facet_corpus(corpus_count);
        for (std::size_t k = 0; k < corpus.size(); ++k) spaces.emplace_back("corpus#" + std::to_string(k), corpus[k]);
      } else {
        spaces.emplace_back(space_target, resolve_space(space_target));
      }
      rep.param("verb", "crossval");
      rep.param("samples", std::to_string(samples));
      rep.param("band", band);
      rep.columns({"space", "region", "exact", "lp_exact", "estimate", "half_width", "samples", "agree"});
      bool all = true;
      for (const auto& [name, s] : spaces) {
        for (const auto& r : crossval_regions(s, samples, band)) {
          rep.row({name, r.region, num(r.exact.value), r.exact.exact ? "yes" : "no", num(r.oracle.estimate),
                   num(r.oracle.half_width), std::to_string(r.oracle.samples), r.agree ? "yes" : "no"});
          all = all && r.agree;
        }
      }
      status = all ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (g.out.empty()) {
    rep.write(std::cout);
  } else {
    std::ofstream out(g.out);
    if (!out) {
      std::cerr << "error: cannot write '" << g.out << "'\n";
      return 2;
    }
    rep.write(out);
  }
  return status;
}
