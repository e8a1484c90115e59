#include "gcm/cli.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <ostream>

#include <CLI11.hpp>

#include "gcm/complexity.hpp"
#include "gcm/diff_ops.hpp"
#include "gcm/error.hpp"
#include "gcm/factorization.hpp"
#include "gcm/generative.hpp"
#include "gcm/graph.hpp"
#include "gcm/io.hpp"
#include "gcm/ipf.hpp"

namespace gcm::cli {

namespace {

using io::Json;

struct Globals {
  std::optional<double> tol;
  std::string output;
  bool quiet = false;
};

Json subset_json(const VariableSubset& A) { return A.indices(); }

Json violations_json(const std::vector<PairViolation>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) {
    a.push_back({{"a", subset_json(v.a)}, {"b", subset_json(v.b)}, {"max_abs", v.max_abs}});
  }
  return a;
}

// Nested rows: first variable indexes the rows, the rest run along each row.
Json grid_json(const TabularFunction& f) {
  const std::size_t rows = f.domain().cardinality(0);
  const std::size_t cols = f.size() / rows;
  Json g = Json::array();
  for (std::size_t r = 0; r < rows; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < cols; ++c) row.push_back(f[r * cols + c] == 0.0 ? 0.0 : f[r * cols + c]);
    g.push_back(row);
  }
  return g;
}

BasePoint base_or_default(const CategoricalDomain& dom, const std::vector<std::size_t>& base) {
  if (base.empty()) return default_base(dom);
  BasePoint b(base);
  if (b.size() != dom.num_variables()) {
    throw InputError("--base needs " + std::to_string(dom.num_variables()) + " entries");
  }
  dom.validate(b);
  return b;
}

CategoricalDomain domain_from(const std::vector<std::size_t>& cards, const UndirectedGraph& g) {
  if (cards.size() != g.num_nodes()) {
    throw InputError("graph has " + std::to_string(g.num_nodes()) + " nodes but " +
                     std::to_string(cards.size()) + " cardinalities were given");
  }
  return CategoricalDomain(cards);
}

TabularFunction table1_function() {
  CategoricalDomain dom({2, 3}, {{"0", "1"}, {"1", "2", "3"}});
  return TabularFunction(dom, {-1, 5, 2, 3, -7, -4});
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrimination functions of generative classifiers over categorical predictors",
               "gcm"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--tol", globals.tol, "Absolute tolerance for zero tests");
  app.add_option("--output", globals.output, "Write the JSON payload to this file");
  app.add_flag("--quiet", globals.quiet, "Suppress diagnostics on stderr");

  // Shared option storage; each subcommand binds the ones it uses.
  std::string function_path, graph_path, dag_path, model_path, decision_path, g_path, data_path,
      labels_path, class_col = "class";
  std::vector<std::size_t> set_a, set_b, set_d, base, cards, x;
  bool exhaustive = false, no_prune = false, trace = false, zero_negative = false;
  std::size_t max_order = 0, max_sweeps = 10'000;
  std::string target;

  std::function<Json()> action;
  auto on = [&](CLI::App* sub, std::function<Json()> fn) {
    sub->callback([&action, fn = std::move(fn)] { action = fn; });
  };
  auto dir = [](CLI::Option* o) { return o->delimiter(','); };
  const double default_tol = kDefaultTolerance;
  auto tol = [&](double fallback) { return globals.tol.value_or(fallback); };

  auto* diff = app.add_subcommand("diff", "First or second difference of a function");
  diff->add_option("--function", function_path)->required();
  dir(diff->add_option("--a", set_a, "Variables of A (comma separated)"))->required();
  dir(diff->add_option("--b", set_b, "Variables of B; omit for a first difference"));
  dir(diff->add_option("--base", base, "Base point category indices"));
  on(diff, [&] {
    const auto f = io::load_function(function_path);
    const auto x0 = base_or_default(f.domain(), base);
    const VariableSubset A(set_a);
    const auto r = set_b.empty() ? first_difference(f, A, x0)
                                 : second_difference(f, A, VariableSubset(set_b), x0);
    if (!globals.quiet) err << io::format_grid(r);
    return io::encode(r);
  });

  auto* cliques = app.add_subcommand("cliques", "Maximal cliques of a graph");
  cliques->add_option("--graph", graph_path)->required();
  on(cliques, [&] {
    Json a = Json::array();
    for (const auto& c : maximal_cliques(io::load_graph(graph_path))) a.push_back(subset_json(c));
    return Json{{"cliques", a}};
  });

  auto* sep = app.add_subcommand("separates", "Does D separate A from B");
  sep->add_option("--graph", graph_path)->required();
  dir(sep->add_option("--a", set_a))->required();
  dir(sep->add_option("--b", set_b))->required();
  dir(sep->add_option("--d", set_d));
  on(sep, [&] {
    const auto g = io::load_graph(graph_path);
    return Json{{"separates", separates(g, VariableSubset(set_a), VariableSubset(set_b),
                                        VariableSubset(set_d))}};
  });

  auto* moral = app.add_subcommand("moralize", "Moral graph of a DAG");
  moral->add_option("--dag", dag_path)->required();
  on(moral, [&] { return io::encode(moralize(io::load_dag(dag_path))); });

  auto* decomp = app.add_subcommand("decompose", "Clique (Moebius) decomposition of a function");
  decomp->add_option("--function", function_path)->required();
  decomp->add_option("--graph", graph_path, "Keep only terms on complete subsets of this graph");
  dir(decomp->add_option("--base", base));
  decomp->add_flag("--no-prune", no_prune, "Keep all-zero terms");
  on(decomp, [&] {
    const auto f = io::load_function(function_path);
    const auto x0 = base_or_default(f.domain(), base);
    DecomposeOptions opts;
    opts.prune = !no_prune;
    if (graph_path.empty()) return io::encode(mobius_decompose(f, x0, opts));
    const auto g = io::load_graph(graph_path);
    const auto rep = check_markov(f, g, tol(default_tol));
    if (!rep.member) {
      throw MembershipError("function is not in F_G for this graph; run check-markov for details");
    }
    return io::encode(clique_decompose(f, g, x0, opts));
  });

  auto* cm = app.add_subcommand("check-markov", "Membership of a function in F_G");
  cm->add_option("--function", function_path)->required();
  cm->add_option("--graph", graph_path)->required();
  cm->add_flag("--exhaustive", exhaustive, "Also test every separated pair of sets");
  on(cm, [&] {
    const auto rep = check_markov(io::load_function(function_path), io::load_graph(graph_path),
                                  tol(default_tol),
                                  exhaustive ? MembershipMode::Exhaustive : MembershipMode::Pairwise);
    Json j = {{"member", rep.member}, {"violations", violations_json(rep.violations)}};
    if (exhaustive) {
      j["exhaustive_member"] = rep.exhaustive_member;
      j["separated_violations"] = violations_json(rep.separated_violations);
    }
    return j;
  });

  auto* dim = app.add_subcommand("dim", "Dimension of F_G");
  dim->add_option("--graph", graph_path)->required();
  dir(dim->add_option("--cardinalities", cards))->required();
  on(dim, [&] {
    const auto g = io::load_graph(graph_path);
    return Json{{"dim", dim_fg(g, domain_from(cards, g))}};
  });

  auto* bound = app.add_subcommand("bound", "Upper bound on the number of sign patterns of F_G");
  bound->add_option("--graph", graph_path)->required();
  dir(bound->add_option("--cardinalities", cards))->required();
  on(bound, [&] {
    const auto g = io::load_graph(graph_path);
    const auto dom = domain_from(cards, g);
    const std::size_t d = dim_fg(g, dom);
    return Json{{"dim", d}, {"bound", io::encode(sign_count_bound(d, dom.size()))}};
  });

  auto* xs = app.add_subcommand("xor-scan", "Variable sets on which a decision contains an XOR");
  auto* xs_f = xs->add_option("--function", function_path, "Scan sign(f)");
  auto* xs_d = xs->add_option("--decision", decision_path, "Scan a decision table");
  xs_f->excludes(xs_d);
  xs->add_option("--max-order", max_order, "Largest set size (default: all variables)");
  on(xs, [&] {
    if (function_path.empty() == decision_path.empty()) {
      throw CLI::ValidationError("exactly one of --function and --decision is required");
    }
    const DecisionFunction phi = function_path.empty() ? io::load_decision(decision_path)
                                                       : sign_of(io::load_function(function_path));
    const std::size_t k = max_order == 0 ? phi.domain().num_variables() : max_order;
    Json subsets = Json::array();
    Json witnesses = Json::array();
    for (const auto& w : xor_scan(phi, k)) {
      subsets.push_back(subset_json(w.vars));
      witnesses.push_back(io::encode(w));
    }
    return Json{{"subsets", subsets}, {"witnesses", witnesses}};
  });

  auto* cls = app.add_subcommand("classify", "Class and discrimination value at one cell");
  cls->add_option("--model", model_path)->required();
  dir(cls->add_option("--x", x, "Category index per predictor"))->required();
  on(cls, [&] {
    const auto P = io::load_model(model_path);
    const Assignment a(x);
    const std::size_t k = P.domain().flat_index(a);
    const double pp = P.p_plus()[k];
    const double pm = P.p_minus()[k];
    if (pp <= 0.0 || pm <= 0.0) {
      throw PositivityError("discrimination value undefined: a class has probability 0 at this cell");
    }
    return Json{{"class", decide(P, a)}, {"f", std::log(pp / pm)}};
  });

  auto* ci = app.add_subcommand("check-ci", "Conditional independence of X_A and X_B given the rest and C");
  ci->add_option("--model", model_path)->required();
  dir(ci->add_option("--a", set_a))->required();
  dir(ci->add_option("--b", set_b))->required();
  on(ci, [&] {
    const auto rep = check_ci_report(io::load_model(model_path), VariableSubset(set_a),
                                     VariableSubset(set_b), tol(default_tol));
    Json j = {{"independent", rep.independent},
              {"toric_residual", rep.toric_residual},
              {"toric_only", rep.toric_only}};
    j["differential_residual"] = rep.differential_residual ? Json(*rep.differential_residual) : Json();
    return j;
  });

  auto* vm = app.add_subcommand("verify-markov", "Pairwise Markov property of a classifier");
  vm->add_option("--model", model_path)->required();
  vm->add_option("--graph", graph_path)->required();
  on(vm, [&] {
    const auto rep = verify_g_markov(io::load_model(model_path), io::load_graph(graph_path),
                                     tol(default_tol));
    Json v = Json::array();
    for (const auto& [i, j] : rep.violations) v.push_back({i, j});
    return Json{{"markov", rep.markov}, {"violations", v}};
  });

  auto* build = app.add_subcommand("build", "G-Markov classifier with a given discrimination function");
  build->add_option("--function", function_path)->required();
  build->add_option("--graph", graph_path)->required();
  build->add_option("--g", g_path, "Log-density offset g (default 0)");
  on(build, [&] {
    const auto f = io::load_function(function_path);
    std::optional<TabularFunction> g;
    if (!g_path.empty()) g = io::load_function(g_path);
    return io::encode(build_from_discrimination(f, g, io::load_graph(graph_path)));
  });

  auto* fit = app.add_subcommand("fit-ipf", "Maximum-likelihood G-Markov classifier with fixed f");
  fit->add_option("--function", function_path)->required();
  fit->add_option("--graph", graph_path)->required();
  fit->add_option("--data", data_path, "CSV with a header row")->required();
  fit->add_option("--max-sweeps", max_sweeps);
  fit->add_flag("--trace", trace, "Include the per-sweep log-likelihood");
  fit->add_option("--class-col", class_col);
  fit->add_option("--labels", labels_path, "JSON sidecar mapping columns to category lists");
  fit->add_flag("--zero-negative", zero_negative, "Read class 1/0 as +1/-1");
  on(fit, [&] {
    const auto f = io::load_function(function_path);
    const auto g = io::load_graph(graph_path);
    io::DatasetOptions opts;
    opts.class_column = class_col;
    opts.zero_negative = zero_negative;
    opts.cardinalities = f.domain().cardinalities();
    if (!labels_path.empty()) opts.labels = io::load_labels(labels_path);
    if (f.domain().has_labels()) opts.positional_labels = f.domain().labels();
    const auto data = io::load_dataset(data_path, opts);
    IpfOptions ipf;
    ipf.tol = tol(ipf.tol);
    ipf.max_sweeps = max_sweeps;
    const auto result = fit_ipf(f, g, data, ipf);
    if (!result.report.converged && !globals.quiet) {
      err << "warning: no convergence after " << result.report.iterations << " sweeps (gap "
          << result.report.final_marginal_gap << ")\n";
    }
    return Json{{"model", io::encode(result.model)}, {"report", io::encode(result.report, trace)}};
  });

  auto* repro = app.add_subcommand("reproduce", "Worked examples: table1, example2");
  repro->add_option("target", target)->required()->check(CLI::IsMember({"table1", "example2"}));
  on(repro, [&] {
    if (target == "table1") {
      const auto f = table1_function();
      const auto d = second_difference(f, {0}, {1}, default_base(f.domain()));
      if (!globals.quiet) err << io::format_grid(f) << '\n' << io::format_grid(d);
      return Json{{"f", grid_json(f)}, {"second_difference", grid_json(d)}};
    }
    const auto g = cycle_graph(4);
    const CategoricalDomain dom({2, 2, 2, 2});
    const std::size_t d = dim_fg(g, dom);
    return Json{{"dim", d}, {"bound", io::encode(sign_count_bound(d, dom.size()))}};
  });

  if (!args.empty() && !args.front().empty() && args.front().front() != '-') {
    const auto known = std::as_const(app).get_subcommands([&](const CLI::App* s) { return s->get_name() == args.front(); });
    if (known.empty()) {
      err << "error: unknown command \"" << args.front() << "\"\n";
      return kExitUsage;
    }
  }

  std::vector<const char*> argv{"gcm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const std::string payload = io::canonical_dump(action());
    if (globals.output.empty()) {
      out << payload;
    } else {
      io::write_text(globals.output, payload);
    }
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const MathError& e) {
    err << "math error: " << e.what() << '\n';
    return kExitMath;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace gcm::cli
