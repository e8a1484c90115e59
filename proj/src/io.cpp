#include "gcm/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "gcm/error.hpp"

namespace gcm::io {

namespace {

void dump_to(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::null:
      out += "null";
      break;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      break;
    }
    case Json::value_t::string:
      out += j.dump();
      break;
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        dump_to(e, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::object: {
      std::vector<std::string> keys;
      for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
      std::sort(keys.begin(), keys.end());
      out += '{';
      for (std::size_t k = 0; k < keys.size(); ++k) {
        if (k) out += ',';
        out += Json(keys[k]).dump();
        out += ':';
        dump_to(j.at(keys[k]), out);
      }
      out += '}';
      break;
    }
    default:
      throw InputError("cannot serialize binary or discarded JSON values");
  }
}

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw InputError(where + ": " + msg);
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing key \"") + key + "\"");
  return *it;
}

std::size_t as_index(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    fail(where, "expected a nonnegative integer, got " + j.dump());
  }
  return j.get<std::size_t>();
}

std::vector<std::size_t> as_index_list(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of nonnegative integers");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(as_index(j[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

std::vector<double> as_real_list(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) fail(where + "[" + std::to_string(k) + "]", "expected a number");
    out.push_back(j[k].get<double>());
  }
  return out;
}

CategoricalDomain decode_domain(const Json& j, const std::string& where) {
  const auto cards = as_index_list(require(j, "cardinalities", where), where + ".cardinalities");
  std::vector<std::vector<std::string>> labels;
  if (auto it = j.find("labels"); it != j.end() && !it->is_null()) {
    try {
      labels = it->get<std::vector<std::vector<std::string>>>();
    } catch (const nlohmann::json::exception&) {
      fail(where + ".labels", "expected an array of string arrays");
    }
  }
  try {
    return CategoricalDomain(cards, std::move(labels));
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

Json encode_domain(const CategoricalDomain& dom) {
  Json j = Json::object();
  j["cardinalities"] = dom.cardinalities();
  if (dom.has_labels()) j["labels"] = dom.labels();
  return j;
}

Json real_array(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

template <typename F>
auto wrap(const std::string& where, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const MathError&) {
    throw;
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(where, 0) == 0) throw;
    fail(where, msg);
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cur += '"';
        ++k;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_to(j, out);
  out += '\n';
  return out;
}

Json encode(const TabularFunction& f) {
  Json j = encode_domain(f.domain());
  j["values"] = real_array(f.values());
  return j;
}

Json encode(const UndirectedGraph& g) {
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  return {{"n", g.num_nodes()}, {"edges", edges}};
}

Json encode(const Dag& dag) {
  Json parents = Json::array();
  for (std::size_t i = 0; i < dag.num_nodes(); ++i) parents.push_back(dag.parents(i));
  return {{"n", dag.num_nodes()}, {"parents", parents}};
}

Json encode(const GenerativeClassifier& P) {
  Json j = encode_domain(P.domain());
  j["p_plus"] = real_array(P.p_plus().values());
  j["p_minus"] = real_array(P.p_minus().values());
  return j;
}

Json encode(const DecisionFunction& phi) {
  Json j = encode_domain(phi.domain());
  j["signs"] = phi.signs();
  return j;
}

Json encode(const CliqueFactorization& fac) {
  Json terms = Json::array();
  for (const auto& [A, values] : fac.terms) {
    terms.push_back({{"vars", A.indices()}, {"values", real_array(values)}});
  }
  return {{"cardinalities", fac.domain.cardinalities()},
          {"basepoint", fac.basepoint.values()},
          {"terms", terms}};
}

Json encode(const XorWitness& w) {
  Json pairs = Json::array();
  for (const auto& [a, b] : w.pairs) pairs.push_back({a, b});
  return {{"vars", w.vars.indices()}, {"context", w.context}, {"pairs", pairs}};
}

Json encode(const IpfReport& report, bool with_trace) {
  Json j = {{"iterations", report.iterations},
            {"final_marginal_gap", report.final_marginal_gap},
            {"converged", report.converged},
            {"final_loglik", report.loglik_trace.empty() ? 0.0 : report.loglik_trace.back()}};
  if (with_trace) j["loglik_trace"] = report.loglik_trace;
  return j;
}

Json encode(const BigInt& value) {
  if (value >= 0 && value <= std::numeric_limits<std::uint64_t>::max()) {
    return value.convert_to<std::uint64_t>();
  }
  return value.str();
}

TabularFunction decode_function(const Json& j, const std::string& where) {
  return wrap(where, [&] {
    auto dom = decode_domain(j, where);
    return TabularFunction(std::move(dom), as_real_list(require(j, "values", where), where + ".values"));
  });
}

UndirectedGraph decode_graph(const Json& j, const std::string& where) {
  return wrap(where, [&] {
    const auto n = as_index(require(j, "n", where), where + ".n");
    const auto& edges = require(j, "edges", where);
    if (!edges.is_array()) fail(where + ".edges", "expected an array of [i, j] pairs");
    std::vector<Edge> e;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto pair = as_index_list(edges[k], where + ".edges[" + std::to_string(k) + "]");
      if (pair.size() != 2) fail(where + ".edges[" + std::to_string(k) + "]", "expected two endpoints");
      e.emplace_back(pair[0], pair[1]);
    }
    return UndirectedGraph(n, e);
  });
}

Dag decode_dag(const Json& j, const std::string& where) {
  return wrap(where, [&] {
    const auto n = as_index(require(j, "n", where), where + ".n");
    const auto& parents = require(j, "parents", where);
    if (!parents.is_array()) fail(where + ".parents", "expected an array of parent lists");
    std::vector<std::vector<std::size_t>> pa;
    for (std::size_t k = 0; k < parents.size(); ++k) {
      pa.push_back(as_index_list(parents[k], where + ".parents[" + std::to_string(k) + "]"));
    }
    return Dag(n, std::move(pa));
  });
}

GenerativeClassifier decode_model(const Json& j, const std::string& where) {
  return wrap(where, [&] {
    const auto dom = decode_domain(j, where);
    TabularFunction pp(dom, as_real_list(require(j, "p_plus", where), where + ".p_plus"));
    TabularFunction pm(dom, as_real_list(require(j, "p_minus", where), where + ".p_minus"));
    const bool has_zero =
        std::any_of(pp.values().begin(), pp.values().end(), [](double v) { return v == 0.0; }) ||
        std::any_of(pm.values().begin(), pm.values().end(), [](double v) { return v == 0.0; });
    return GenerativeClassifier(std::move(pp), std::move(pm),
                                has_zero ? Support::Extended : Support::Strict);
  });
}

DecisionFunction decode_decision(const Json& j, const std::string& where) {
  return wrap(where, [&] {
    auto dom = decode_domain(j, where);
    const auto& s = require(j, "signs", where);
    if (!s.is_array()) fail(where + ".signs", "expected an array of +1/-1");
    std::vector<int> signs;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (!s[k].is_number_integer()) fail(where + ".signs[" + std::to_string(k) + "]", "expected +1 or -1");
      signs.push_back(s[k].get<int>());
    }
    return DecisionFunction(std::move(dom), std::move(signs));
  });
}

CliqueFactorization decode_factorization(const Json& j, const std::string& where) {
  return wrap(where, [&] {
    CategoricalDomain dom(as_index_list(require(j, "cardinalities", where), where + ".cardinalities"));
    BasePoint base(as_index_list(require(j, "basepoint", where), where + ".basepoint"));
    dom.validate(base);
    CliqueFactorization fac{dom, base, {}};
    const auto& terms = require(j, "terms", where);
    if (!terms.is_array()) fail(where + ".terms", "expected an array of terms");
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const std::string w = where + ".terms[" + std::to_string(k) + "]";
      VariableSubset A(as_index_list(require(terms[k], "vars", w), w + ".vars"));
      A.validate(dom.num_variables());
      auto values = as_real_list(require(terms[k], "values", w), w + ".values");
      if (values.size() != dom.subset_size(A)) fail(w, "wrong number of values for its variables");
      if (!fac.terms.emplace(A, std::move(values)).second) fail(w, "duplicate term");
    }
    return fac;
  });
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": invalid JSON");
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path.string() + ": cannot open file for writing");
  out << text;
}

TabularFunction load_function(const std::filesystem::path& path) {
  return decode_function(read_json(path), path.string());
}

UndirectedGraph load_graph(const std::filesystem::path& path) {
  return decode_graph(read_json(path), path.string());
}

Dag load_dag(const std::filesystem::path& path) { return decode_dag(read_json(path), path.string()); }

GenerativeClassifier load_model(const std::filesystem::path& path) {
  return decode_model(read_json(path), path.string());
}

DecisionFunction load_decision(const std::filesystem::path& path) {
  return decode_decision(read_json(path), path.string());
}

void save_function(const std::filesystem::path& path, const TabularFunction& f) {
  write_text(path, canonical_dump(encode(f)));
}

void save_graph(const std::filesystem::path& path, const UndirectedGraph& g) {
  write_text(path, canonical_dump(encode(g)));
}

void save_model(const std::filesystem::path& path, const GenerativeClassifier& P) {
  write_text(path, canonical_dump(encode(P)));
}

std::map<std::string, std::vector<std::string>> load_labels(const std::filesystem::path& path) {
  const Json j = read_json(path);
  try {
    return j.get<std::map<std::string, std::vector<std::string>>>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(path.string() + ": expected an object mapping column names to category lists");
  }
}

Dataset load_dataset(const std::filesystem::path& path, const DatasetOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_dataset(ss.str(), options, path.string());
}

Dataset parse_dataset(const std::string& csv_text, const DatasetOptions& options,
                      const std::string& where) {
  std::istringstream in(csv_text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) header = split_csv_line(line);
  }
  if (header.empty()) throw InputError(where + ": missing header row");
  const auto class_it = std::find(header.begin(), header.end(), options.class_column);
  if (class_it == header.end()) {
    throw InputError(where + ":" + std::to_string(line_no) + ": no class column \"" +
                     options.class_column + "\"");
  }
  const std::size_t class_pos = static_cast<std::size_t>(class_it - header.begin());
  std::vector<std::size_t> predictor_cols;
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k != class_pos) predictor_cols.push_back(k);
  }
  const std::size_t n = predictor_cols.size();
  if (n == 0) throw InputError(where + ": no predictor columns");
  if (options.cardinalities && options.cardinalities->size() != n) {
    throw InputError(where + ": " + std::to_string(n) + " predictor columns, expected " +
                     std::to_string(options.cardinalities->size()));
  }

  // Category names per predictor: fixed by labels, or grown by first appearance.
  std::vector<std::vector<std::string>> cats(n);
  std::vector<bool> fixed(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (auto it = options.labels.find(header[predictor_cols[v]]); it != options.labels.end()) {
      cats[v] = it->second;
      fixed[v] = true;
    } else if (v < options.positional_labels.size() && !options.positional_labels[v].empty()) {
      cats[v] = options.positional_labels[v];
      fixed[v] = true;
    }
  }

  std::vector<std::vector<std::size_t>> rows;
  std::vector<int> classes;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    const std::string loc = where + ":" + std::to_string(line_no);
    if (fields.size() != header.size()) {
      throw InputError(loc + ": expected " + std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    const std::string& cls = fields[class_pos];
    int c = 0;
    if (options.zero_negative) {
      if (cls == "1" || cls == "+1") c = 1;
      else if (cls == "0") c = -1;
    } else {
      if (cls == "+1" || cls == "1") c = 1;
      else if (cls == "-1") c = -1;
    }
    if (c == 0) throw InputError(loc + ": unrecognized class value \"" + cls + "\"");
    std::vector<std::size_t> x(n);
    for (std::size_t v = 0; v < n; ++v) {
      const std::string& val = fields[predictor_cols[v]];
      auto it = std::find(cats[v].begin(), cats[v].end(), val);
      if (it == cats[v].end()) {
        if (fixed[v]) {
          throw InputError(loc + ": unknown category \"" + val + "\" in column \"" +
                           header[predictor_cols[v]] + "\"");
        }
        cats[v].push_back(val);
        it = cats[v].end() - 1;
      }
      x[v] = static_cast<std::size_t>(it - cats[v].begin());
    }
    rows.push_back(std::move(x));
    classes.push_back(c);
  }
  if (rows.empty()) throw InputError(where + ": no data rows");

  std::vector<std::size_t> cards(n);
  for (std::size_t v = 0; v < n; ++v) {
    cards[v] = std::max<std::size_t>(cats[v].size(), 1);
    if (options.cardinalities) {
      const std::size_t want = (*options.cardinalities)[v];
      if (cats[v].size() > want) {
        throw InputError(where + ": column \"" + header[predictor_cols[v]] + "\" has " +
                         std::to_string(cats[v].size()) + " categories, cardinality is " +
                         std::to_string(want));
      }
      cards[v] = want;
    }
  }
  std::vector<std::vector<std::string>> labels;
  bool complete_labels = true;
  for (std::size_t v = 0; v < n; ++v) complete_labels = complete_labels && cats[v].size() == cards[v];
  if (complete_labels) labels = cats;

  CategoricalDomain dom(cards, std::move(labels));
  std::vector<Record> records;
  records.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) records.push_back({Assignment(std::move(rows[r])), classes[r]});
  return Dataset(std::move(dom), std::move(records));
}

std::string format_grid(const TabularFunction& f) {
  const auto& dom = f.domain();
  const std::size_t rows = dom.cardinality(0);
  const std::size_t cols = dom.size() / rows;
  std::vector<std::string> cells(dom.size());
  std::size_t width = 1;
  for (std::size_t k = 0; k < dom.size(); ++k) {
    std::ostringstream os;
    os << std::setprecision(10) << (f[k] == 0.0 ? 0.0 : f[k]);
    cells[k] = os.str();
    width = std::max(width, cells[k].size());
  }
  auto row_label = [&](std::size_t r) {
    return dom.has_labels() ? dom.labels()[0][r] : std::to_string(r);
  };
  std::size_t label_width = 2;
  for (std::size_t r = 0; r < rows; ++r) label_width = std::max(label_width, row_label(r).size());

  std::ostringstream os;
  os << std::setw(static_cast<int>(label_width)) << "x0" << " |";
  for (std::size_t c = 0; c < cols; ++c) {
    std::string head;
    for (std::size_t i = 1; i < dom.num_variables(); ++i) {
      const std::size_t v = dom.coordinate(c, i);
      if (i > 1) head += ",";
      head += dom.has_labels() ? dom.labels()[i][v] : std::to_string(v);
    }
    width = std::max(width, head.size());
    os << ' ' << std::setw(static_cast<int>(width)) << head;
  }
  os << '\n' << std::string(label_width + 2 + cols * (width + 1), '-') << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    os << std::setw(static_cast<int>(label_width)) << row_label(r) << " |";
    for (std::size_t c = 0; c < cols; ++c) {
      os << ' ' << std::setw(static_cast<int>(width)) << cells[r * cols + c];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace gcm::io
