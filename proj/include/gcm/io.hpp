#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcm/complexity.hpp"
#include "gcm/factorization.hpp"
#include "gcm/generative.hpp"
#include "gcm/graph.hpp"
#include "gcm/ipf.hpp"
#include "gcm/tabular.hpp"

namespace gcm::io {

using Json = nlohmann::json;

/// Compact JSON with sorted keys, reals as %.17g, integers verbatim and a
/// trailing newline. Non-finite reals become null.
std::string canonical_dump(const Json& j);

// Encoders. Every format is an object; see README for the schemas.
Json encode(const TabularFunction& f);
Json encode(const UndirectedGraph& g);
Json encode(const Dag& dag);
Json encode(const GenerativeClassifier& P);
Json encode(const DecisionFunction& phi);
Json encode(const CliqueFactorization& fac);
Json encode(const XorWitness& w);
Json encode(const IpfReport& report, bool with_trace);
/// Number when it fits in 64 bits, decimal string otherwise.
Json encode(const BigInt& value);

// Decoders throw InputError naming `where` (usually the file path).
TabularFunction decode_function(const Json& j, const std::string& where = "function");
UndirectedGraph decode_graph(const Json& j, const std::string& where = "graph");
Dag decode_dag(const Json& j, const std::string& where = "dag");
GenerativeClassifier decode_model(const Json& j, const std::string& where = "model");
DecisionFunction decode_decision(const Json& j, const std::string& where = "decision");
CliqueFactorization decode_factorization(const Json& j, const std::string& where = "factorization");

/// Parses a JSON file; syntax errors report line and column.
Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

TabularFunction load_function(const std::filesystem::path& path);
UndirectedGraph load_graph(const std::filesystem::path& path);
Dag load_dag(const std::filesystem::path& path);
GenerativeClassifier load_model(const std::filesystem::path& path);
DecisionFunction load_decision(const std::filesystem::path& path);

void save_function(const std::filesystem::path& path, const TabularFunction& f);
void save_graph(const std::filesystem::path& path, const UndirectedGraph& g);
void save_model(const std::filesystem::path& path, const GenerativeClassifier& P);

struct DatasetOptions {
  std::string class_column = "class";
  /// Read class "1" as +1 and "0" as -1 instead of "+1"/"1" and "-1".
  bool zero_negative = false;
  /// Ordered category names per predictor column. Values outside a
  /// column's list are rejected. Unlisted columns use first-appearance order.
  std::map<std::string, std::vector<std::string>> labels;
  /// Category names by predictor position, for columns absent from `labels`.
  std::vector<std::vector<std::string>> positional_labels;
  /// Domain to use instead of the one inferred from the data.
  std::optional<std::vector<std::size_t>> cardinalities;
};

/// Labels sidecar: {"<column>": ["<category>", ...], ...}.
std::map<std::string, std::vector<std::string>> load_labels(const std::filesystem::path& path);

/// CSV with a header row. Predictor columns are all columns except the
/// class column, in header order.
Dataset load_dataset(const std::filesystem::path& path, const DatasetOptions& options = {});
Dataset parse_dataset(const std::string& csv_text, const DatasetOptions& options,
                      const std::string& where = "dataset");

/// Two-way grid: rows indexed by the first variable, columns by the
/// remaining variables in flat order.
std::string format_grid(const TabularFunction& f);

}  // namespace gcm::io
