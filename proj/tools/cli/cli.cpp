#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "umbral/auxiliary_ops.hpp"
#include "umbral/combinatorics.hpp"
#include "umbral/error.hpp"
#include "umbral/identity_suite.hpp"
#include "umbral/inversion.hpp"
#include "umbral/parser.hpp"
#include "umbral/poisson_lab.hpp"
#include "umbral/workspace.hpp"

namespace umbral::cli {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::optional<int> order;
  std::optional<std::string> workspace;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> defines;
  std::vector<std::string> vars;
};

struct Result {
  ordered doc;
  int status = kExitOk;
};

json strings(const std::vector<Poly>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::vector<Poly> parse_moments(const std::vector<std::string>& items) {
  std::vector<Poly> out;
  for (const auto& item : items) {
    for (const auto& piece : split(item, ',')) {
      if (piece.find_first_not_of(" \t") == std::string::npos) continue;
      out.push_back(Poly::parse(piece));
    }
  }
  return out;
}

int resolve_order(const Globals& g, const std::optional<int>& file_order) {
  if (g.order) return *g.order;
  if (file_order) return *file_order;
  if (const char* env = std::getenv(kOrderEnv); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const int n = std::stoi(env, &used);
      if (used != std::string_view(env).size()) throw std::invalid_argument(env);
      return n;
    } catch (const std::exception&) {
      throw Usage(std::string(kOrderEnv) + " must be an integer, got '" + env + "'");
    }
  }
  return kDefaultOrder;
}

std::optional<json> read_workspace_file(const Globals& g) {
  if (!g.workspace) return std::nullopt;
  std::ifstream in(*g.workspace);
  if (!in) return std::nullopt;
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Usage("workspace file " + *g.workspace + ": " + e.what());
  }
}

Workspace load_workspace(const Globals& g) {
  auto file = read_workspace_file(g);
  std::optional<int> file_order;
  if (file && file->contains("order")) file_order = file->at("order").get<int>();
  const int order = resolve_order(g, file_order);
  if (order < 1) throw Usage("order must be at least 1");
  json doc = file.value_or(json::object());
  doc["order"] = order;
  Workspace ws = Workspace::from_json(doc);
  for (const auto& v : g.vars) {
    for (const auto& name : split(v, ',')) {
      if (!ws.is_declared(name)) ws.declare_indeterminate(name);
    }
  }
  for (const auto& d : g.defines) {
    const auto eq = d.find('=');
    if (eq == std::string::npos || eq == 0) throw Usage("--define expects name=m0,m1,..., got '" + d + "'");
    ws.define_umbra(d.substr(0, eq), parse_moments({d.substr(eq + 1)}));
  }
  return ws;
}

void save_workspace(const Globals& g, const Workspace& ws) {
  if (!g.workspace) return;
  std::ofstream out(*g.workspace);
  if (!out) throw Usage("cannot write workspace file " + *g.workspace);
  out << ws.to_json().dump(2) << '\n';
}

// eval ------------------------------------------------------------------

Result cmd_eval(const Globals& g, const std::string& text, std::optional<int> k) {
  Workspace ws = load_workspace(g);
  const Expr e = parse_expr(ws, text);
  ordered doc{{"input", text}, {"expr", render(ws, e)}};
  if (k) {
    doc["k"] = *k;
    doc["value"] = ws.eval(e, *k).to_string();
  } else if (e.is_scalar()) {
    doc["value"] = ws.eval(e, 1).to_string();
  } else {
    doc["moments"] = strings(ws.moments_of(e, ws.support_order(e)));
  }
  return {doc};
}

// gf --------------------------------------------------------------------

Result cmd_gf(const Globals& g, const std::string& text) {
  Workspace ws = load_workspace(g);
  const Expr e = parse_expr(ws, text);
  const Series s = ws.gf_of(e);
  json coeffs = json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(c.to_string());
  return {ordered{{"expr", render(ws, e)}, {"order", s.order()}, {"coefficients", coeffs},
                  {"moments", strings(s.moments())}}};
}

// define ----------------------------------------------------------------

Result cmd_define(const Globals& g, const std::string& name, const std::vector<std::string>& moments) {
  Workspace ws = load_workspace(g);
  const AtomId id = ws.define_umbra(name, parse_moments(moments));
  save_workspace(g, ws);
  const Atom& a = ws.atom(id);
  ordered doc{{"name", a.name}, {"order", a.order()}, {"moments", strings(a.moments)}};
  if (g.workspace) doc["workspace"] = *g.workspace;
  return {doc};
}

// check -----------------------------------------------------------------

struct CheckArgs {
  std::string id;
  std::optional<int> n;
  std::optional<int> trials;
  std::optional<int> k;
  unsigned threads = 0;
};

Result cmd_check(const Globals& g, const CheckArgs& a) {
  std::vector<IdentityCase> cases;
  if (a.id == "all") {
    if (a.n || a.trials || a.k) throw Usage("--n, --trials and --k apply to a single identity");
    cases = check_all(g.seed, a.threads);
  } else {
    // prop1_ii and friends run one statement of the grouped entry.
    std::string base = a.id;
    for (const char* group : {"prop1_", "cor1_"}) {
      if (a.id.starts_with(group)) base = std::string(group) + "i_to_v";
    }
    IdentityParams p;
    bool found = false;
    for (const auto& d : list_identities()) {
      if (d.id == base) {
        p = d.defaults;
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::UnknownIdentity, "no identity named '" + a.id + "'");
    if (a.n) p.n = *a.n;
    if (a.trials) p.trials = *a.trials;
    if (a.k) p.k = *a.k;
    if (g.seed) p.seed = *g.seed;
    cases.push_back(check(a.id, p));
  }
  Result r;
  r.doc = ordered::array();
  for (const auto& c : cases) {
    r.doc.push_back(ordered::parse(to_json(c).dump()));
    if (counts_as_failure(c)) r.status = kExitCheckFailed;
  }
  return r;
}

ordered check_text(const ordered& doc) {
  ordered rows = ordered::array();
  for (const auto& c : doc) {
    ordered row{{"id", c["id"]}, {"kind", c["kind"]}, {"result", c["result"]}, {"comparisons", c["comparisons"]}};
    if (c.contains("witness")) {
      const auto& w = c["witness"];
      row["witness"] = w["statement"].get<std::string>() + ": " + w["lhs"].get<std::string>() +
                       " != " + w["rhs"].get<std::string>();
    }
    rows.push_back(row);
  }
  return rows;
}

// invert ----------------------------------------------------------------

Result cmd_invert(const Globals& g, const std::optional<std::string>& name, const std::optional<std::string>& series,
                  const std::vector<std::string>& moments) {
  const int given = (name ? 1 : 0) + (series ? 1 : 0) + (moments.empty() ? 0 : 1);
  if (given != 1) throw Usage("invert needs exactly one of --name, --series, --moments");
  Workspace ws = load_workspace(g);
  AtomId alpha;
  std::string label;
  if (name) {
    const Expr e = parse_expr(ws, *name);
    alpha = e.kind() == Expr::Kind::Atom ? e.atom_id() : ws.materialize(e, render(ws, e));
    label = render(ws, e);
  } else if (series) {
    Series f = parse_series(*series, ws.order());
    if (f[0].is_zero()) {
      f += Series::constant(Poly(1), ws.order());
    } else if (!f[0].is_one()) {
      throw Error(ErrorCode::InvalidArgument, "series must be f(t) - 1 (constant 0) or f(t) (constant 1)");
    }
    alpha = ws.define_umbra("alpha", f.moments());
    label = "1 + (" + *series + ")";
  } else {
    alpha = ws.define_umbra("alpha", parse_moments(moments));
    label = "alpha";
  }
  const InversionReport report = cross_check(ws, alpha, ws.atom(alpha).order());
  Result r;
  r.doc = ordered{{"input", label},
                  {"alpha", strings(ws.atom(alpha).moments)},
                  {"gamma", strings(report.gamma_moments_umbral)},
                  {"report", ordered::parse(to_json(report).dump())},
                  {"ok", report.ok()}};
  if (!report.ok()) r.status = kExitCheckFailed;
  return r;
}

// bell, stirling, bellpoly ---------------------------------------------

Result cmd_bell(const Globals& g, int n, const std::optional<std::string>& x, bool all) {
  if (n < 0) throw Usage("-n must be nonnegative");
  Workspace ws(std::max(n, 1));
  std::optional<DotLeft> scale;
  if (x) {
    const Poly p = Poly::parse(*x);
    for (const auto& v : p.variables()) ws.declare_indeterminate(v);
    scale = DotLeft::scalar(p);
  }
  (void)g;
  const Atom& b = ws.atom(bell_umbra(ws, scale));
  ordered doc{{"n", n}};
  if (x) doc["x"] = *x;
  doc["value"] = b.moments[static_cast<std::size_t>(n)].to_string();
  if (all) {
    std::vector<Poly> head(b.moments.begin(), b.moments.begin() + n + 1);
    doc["moments"] = strings(head);
  }
  return {doc};
}

Result cmd_stirling(const std::string& kind, int n, int k) {
  combinatorics::StirlingKind which;
  if (kind == "first") {
    which = combinatorics::StirlingKind::FirstSigned;
  } else if (kind == "second") {
    which = combinatorics::StirlingKind::Second;
  } else {
    throw Usage("--kind must be first or second");
  }
  return {ordered{{"kind", kind}, {"n", n}, {"k", k}, {"value", to_string(combinatorics::stirling(which, n, k))}}};
}

Result cmd_bellpoly(int n, std::optional<int> k, const std::string& var) {
  if (n < 0) throw Usage("-n must be nonnegative");
  std::vector<Poly> a;
  for (int i = 1; i <= std::max(n, 1); ++i) a.push_back(Poly::variable(var + std::to_string(i)));
  ordered doc{{"n", n}};
  if (k) {
    doc["k"] = *k;
    doc["kind"] = "partial";
    doc["value"] = combinatorics::partial_bell(n, *k, a).to_string();
  } else {
    doc["kind"] = "complete";
    doc["value"] = combinatorics::complete_bell(n, a).to_string();
  }
  return {doc};
}

// mc --------------------------------------------------------------------

struct McArgs {
  std::string model = "poisson";
  std::optional<std::string> lambda;
  std::optional<std::string> jumps;
  std::optional<std::string> param;
  std::uint64_t n = 1000000;
  int max_order = 4;
  double tolerance = lab::kDefaultTolerance;
  unsigned threads = 0;
};

inline constexpr std::uint64_t kDefaultMcSeed = 42;

Result cmd_mc(const Globals& g, const McArgs& a) {
  const lab::Model model = lab::Model::parse(a.model, a.lambda, a.jumps, a.param);
  const auto c = lab::compare(model, a.n, g.seed.value_or(kDefaultMcSeed), a.max_order, a.tolerance, a.threads);
  Result r{ordered::parse(lab::to_json(c).dump())};
  if (!c.pass()) r.status = kExitCheckFailed;
  return r;
}

// output ----------------------------------------------------------------

std::string scalar_text(const ordered& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_scalar(const ordered& v) { return !v.is_object() && !v.is_array(); }

void write_ordered(const ordered& doc, std::ostream& out, const std::string& indent);

void write_table(const ordered& rows, std::ostream& out, const std::string& indent) {
  std::vector<std::string> columns;
  for (const auto& row : rows) {
    for (const auto& [key, value] : row.items()) {
      if (is_scalar(value) && std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
    }
  }
  std::vector<std::size_t> width;
  for (const auto& c : columns) {
    std::size_t w = c.size();
    for (const auto& row : rows) {
      if (row.contains(c)) w = std::max(w, scalar_text(row[c]).size());
    }
    width.push_back(w);
  }
  auto line = [&](auto cell) {
    std::string s = indent;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      std::string text = cell(i);
      if (i + 1 < columns.size()) text.resize(width[i] + 2, ' ');
      s += text;
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out << s << '\n';
  };
  line([&](std::size_t i) { return columns[i]; });
  for (const auto& row : rows) {
    line([&](std::size_t i) { return row.contains(columns[i]) ? scalar_text(row[columns[i]]) : std::string(); });
  }
}

void write_ordered(const ordered& doc, std::ostream& out, const std::string& indent) {
  if (is_scalar(doc)) {
    out << indent << scalar_text(doc) << '\n';
    return;
  }
  if (doc.is_array()) {
    if (!doc.empty() && std::all_of(doc.begin(), doc.end(), [](const ordered& v) { return v.is_object(); })) {
      write_table(doc, out, indent);
      return;
    }
    std::string s;
    for (const auto& v : doc) {
      if (!s.empty()) s += ", ";
      s += is_scalar(v) ? scalar_text(v) : v.dump();
    }
    out << indent << s << '\n';
    return;
  }
  std::size_t w = 0;
  for (const auto& [key, value] : doc.items()) {
    if (is_scalar(value) || (value.is_array() && std::none_of(value.begin(), value.end(), [](const ordered& v) {
                               return v.is_object();
                             }))) {
      w = std::max(w, key.size());
    }
  }
  for (const auto& [key, value] : doc.items()) {
    const bool inline_array =
        value.is_array() && std::none_of(value.begin(), value.end(), [](const ordered& v) { return v.is_object(); });
    if (is_scalar(value) || inline_array) {
      std::string k = key;
      k.resize(w + 2, ' ');
      std::ostringstream v;
      write_ordered(value, v, "");
      out << indent << k << v.str();
    } else {
      out << indent << key << '\n';
      write_ordered(value, out, indent + "  ");
    }
  }
}

void emit(const Globals& g, const ordered& doc, std::ostream& out, bool is_check = false) {
  if (g.format == "text") {
    write_ordered(is_check ? check_text(doc) : doc, out, "");
  } else {
    out << doc.dump(2) << '\n';
  }
}

void emit_error(const std::string& format, std::string_view code, const std::string& message,
                std::optional<std::size_t> offset, std::ostream& err) {
  std::string text = message;
  const std::string prefix = std::string(code) + ": ";
  if (text.starts_with(prefix)) text.erase(0, prefix.size());
  ordered e{{"code", code}, {"message", text}};
  if (offset) e["offset"] = *offset;
  if (format == "text") {
    err << "error: " << code << ": " << text;
    if (offset) err << " (at offset " << *offset << ")";
    err << '\n';
  } else {
    err << ordered{{"error", e}}.dump(2) << '\n';
  }
}

}  // namespace

void write_text(const json& doc, std::ostream& out) { write_ordered(ordered::parse(doc.dump()), out, ""); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Umbral calculus: evaluate umbral expressions, check identities, invert series, simulate Poisson models",
               "umbral"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--order", g.order, "Truncation order (default " + std::to_string(kDefaultOrder) + ", or $" +
                                         kOrderEnv + ")")
      ->check(CLI::Range(1, 64));
  app.add_option("--workspace", g.workspace, "Workspace JSON file: {order, indeterminates, umbrae}");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", g.seed, "Seed for random trials and sampling");
  app.add_option("--define", g.defines, "Define an umbra: name=m0,m1,...");
  app.add_option("--var", g.vars, "Declare indeterminates: x or x,y");

  std::string expr;
  std::optional<int> k;
  auto* eval = app.add_subcommand("eval", "Evaluate an umbral expression");
  eval->add_option("expr", expr, "Expression, e.g. 'E[(a + 2.b)^3]' or 'x.bell'")->required();
  eval->add_option("-k", k, "Power k: evaluate E[expr^k]")->check(CLI::NonNegativeNumber);

  auto* gf = app.add_subcommand("gf", "Exponential generating function of an expression");
  gf->add_option("expr", expr, "Expression")->required();

  std::string name;
  std::vector<std::string> moments;
  auto* define = app.add_subcommand("define", "Add an umbra to the workspace file");
  define->add_option("name", name, "Umbra name")->required();
  define->add_option("moments", moments, "Moments m0,m1,... (m0 = 1)")->required();

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Run identity checks");
  check_cmd->add_option("id", check_args.id, "Identity id or 'all'")->required();
  check_cmd->add_option("--n", check_args.n, "Order of the check")->check(CLI::Range(2, 30));
  check_cmd->add_option("--trials", check_args.trials, "Random trials")->check(CLI::Range(1, 10000));
  check_cmd->add_option("--k", check_args.k, "Single k (Stirling-Bernoulli entry)")->check(CLI::NonNegativeNumber);
  check_cmd->add_option("--threads", check_args.threads, "Worker threads for 'all' (0 = hardware)");
  auto* list_cmd = app.add_subcommand("list", "List identity ids");

  std::optional<std::string> inv_name;
  std::optional<std::string> inv_series;
  std::vector<std::string> inv_moments;
  auto* invert = app.add_subcommand("invert", "Compositional inverse by umbral Lagrange inversion");
  invert->add_option("--name", inv_name, "Umbra or expression to invert");
  invert->add_option("--series", inv_series, "f(t) - 1 in t, e.g. 't*exp(-t)'");
  invert->add_option("--moments", inv_moments, "Moments 1,a1,a2,...");

  int n = 0;
  std::optional<std::string> bell_x;
  bool bell_all = false;
  auto* bell = app.add_subcommand("bell", "Bell numbers, or exponential polynomials with --x");
  bell->add_option("-n", n, "Index")->required()->check(CLI::Range(0, 200));
  bell->add_option("--x", bell_x, "Polynomial argument of Phi_n");
  bell->add_flag("--all", bell_all, "Also list indices 0..n");

  std::string kind = "second";
  int sk = 0;
  auto* stirling = app.add_subcommand("stirling", "Stirling numbers");
  stirling->add_option("--kind", kind, "first (signed) or second")->check(CLI::IsMember({"first", "second"}));
  stirling->add_option("-n", n, "n")->required()->check(CLI::Range(0, 500));
  stirling->add_option("-k", sk, "k")->required()->check(CLI::Range(0, 500));

  std::optional<int> bp_k;
  std::string bp_var = "a";
  auto* bellpoly = app.add_subcommand("bellpoly", "Partial (with -k) or complete Bell polynomial");
  bellpoly->add_option("-n", n, "n")->required()->check(CLI::Range(0, 30));
  bellpoly->add_option("-k", bp_k, "k")->check(CLI::Range(0, 30));
  bellpoly->add_option("--var", bp_var, "Variable stem: a gives a1, a2, ...");

  McArgs mc_args;
  auto* mc = app.add_subcommand("mc", "Monte Carlo moments against umbral predictions");
  mc->add_option("--model", mc_args.model, "poisson, compound, randomized, randomized_compound")
      ->check(CLI::IsMember({"poisson", "compound", "randomized", "randomized_compound"}));
  mc->add_option("--lambda", mc_args.lambda, "Poisson parameter (rational)");
  mc->add_option("--jumps", mc_args.jumps, "Jump distribution v:p,v:p,...");
  mc->add_option("--param", mc_args.param, "Parameter distribution v:p,... (values >= 0)");
  mc->add_option("--n", mc_args.n, "Samples")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 34));
  mc->add_option("--max-order", mc_args.max_order, "Highest moment")->check(CLI::Range(1, lab::kMaxOrder));
  mc->add_option("--tolerance", mc_args.tolerance, "Allowed |z|")->check(CLI::PositiveNumber);
  mc->add_option("--threads", mc_args.threads, "Worker threads (0 = hardware)");

  std::vector<std::string> argv(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    emit_error(g.format == "text" ? "text" : "json", "UsageError", e.what(), std::nullopt, err);
    return kExitUsage;
  }

  try {
    Result r;
    bool is_check = false;
    if (*eval) {
      r = cmd_eval(g, expr, k);
    } else if (*gf) {
      r = cmd_gf(g, expr);
    } else if (*define) {
      r = cmd_define(g, name, moments);
    } else if (*check_cmd) {
      r = cmd_check(g, check_args);
      is_check = true;
    } else if (*list_cmd) {
      r.doc = ordered::array();
      for (const auto& d : list_identities()) {
        r.doc.push_back(ordered{{"id", d.id}, {"kind", d.counterexample ? "counterexample" : "identity"},
                                {"n", d.defaults.n}, {"trials", d.defaults.trials}, {"anchor", d.anchor}});
      }
    } else if (*invert) {
      r = cmd_invert(g, inv_name, inv_series, inv_moments);
    } else if (*bell) {
      r = cmd_bell(g, n, bell_x, bell_all);
    } else if (*stirling) {
      r = cmd_stirling(kind, n, sk);
    } else if (*bellpoly) {
      r = cmd_bellpoly(n, bp_k, bp_var);
    } else if (*mc) {
      r = cmd_mc(g, mc_args);
    }
    emit(g, r.doc, out, is_check);
    return r.status;
  } catch (const Usage& e) {
    emit_error(g.format, "UsageError", e.what(), std::nullopt, err);
  } catch (const Error& e) {
    emit_error(g.format, to_string(e.code()), e.what(), e.offset(), err);
  } catch (const std::exception& e) {
    emit_error(g.format, "InternalError", e.what(), std::nullopt, err);
  }
  return kExitUsage;
}

}  // namespace umbral::cli
