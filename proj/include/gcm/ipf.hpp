#pragma once

#include <functional>
#include <vector>

#include "gcm/generative.hpp"
#include "gcm/graph.hpp"
#include "gcm/tabular.hpp"

namespace gcm {

struct Record {
  Assignment x;
  int c = 1;  ///< -1 or +1
};

/// Labelled observations over a categorical domain.
class Dataset {
 public:
  /// Throws InputError on an empty record list, invalid assignments, or
  /// class values other than -1/+1.
  Dataset(CategoricalDomain domain, std::vector<Record> records);

  const CategoricalDomain& domain() const { return domain_; }
  const std::vector<Record>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  /// Flat cell index of record r.
  std::size_t cell(std::size_t r) const { return cells_[r]; }

 private:
  CategoricalDomain domain_;
  std::vector<Record> records_;
  std::vector<std::size_t> cells_;
};

/// N(x_A) / N over X_A (the class column is ignored). A must be nonempty.
TabularFunction empirical_marginal(const Dataset& data, const VariableSubset& A);

/// P(X_A = x_A) over X_A.
std::vector<double> model_marginal(const GenerativeClassifier& P, const VariableSubset& A);

/// T_A P(x, c) = P(x, c) * (N(x_A)/N) / P(X_A = x_A), with 0/0 := 0.
/// Throws InconsistencyError when the model marginal is 0 but the empirical
/// one is not. Both class slices are scaled by the same factor, so the
/// discrimination function is untouched on cells that keep positive mass.
GenerativeClassifier marginal_fit(const GenerativeClassifier& P, const VariableSubset& A,
                                  const Dataset& data);

/// Sum over records of ln p(x, c); -infinity if any record has probability 0.
double log_likelihood(const GenerativeClassifier& P, const Dataset& data);

struct IpfOptions {
  std::size_t max_sweeps = 10'000;
  /// Stop once every clique marginal is within tol (max norm) of the data.
  double tol = 1e-8;
  /// Called after each sweep with the sweep number (1-based) and the model.
  std::function<void(std::size_t, const GenerativeClassifier&)> on_sweep;
};

struct IpfReport {
  std::size_t iterations = 0;
  double final_marginal_gap = 0.0;
  /// loglik_trace[0] is the starting model, then one entry per sweep.
  std::vector<double> loglik_trace;
  bool converged = false;
};

struct IpfResult {
  GenerativeClassifier model;
  IpfReport report;
};

/// exp((c/2) f(x)), normalized: the starting point of the fit.
GenerativeClassifier ipf_initial_model(const TabularFunction& f);

/// Maximum-likelihood classifier with fixed discrimination f among the
/// (marginally extended) G-Markov classifiers. Sweeps the maximal cliques
/// of G in lexicographic order. Non-convergence is reported in the report,
/// not thrown. Throws MembershipError if f is not in F_G within 1e-9.
IpfResult fit_ipf(const TabularFunction& f, const UndirectedGraph& g, const Dataset& data,
                  const IpfOptions& options = {});

}  // namespace gcm
