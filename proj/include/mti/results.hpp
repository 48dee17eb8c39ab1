#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mti/ensemble.hpp"

namespace mti {

/// One line of the results CSV:
/// model,n,n1,n2,param_name,param_value,index,policy,replicas,degenerate,
/// mean_k_theory,mean_k_empirical,mean_ln,sem,mean_ln_over_n,master_seed
struct ResultRow {
  ModelKind model = ModelKind::ER;
  std::size_t n = 0;
  std::optional<std::size_t> n1;  // BR only
  std::optional<std::size_t> n2;
  std::string param_name;
  double param_value = 0.0;
  IndexKind index = IndexKind::NK;
  IsolatedPolicy policy = IsolatedPolicy::Exclude;
  std::size_t replicas = 0;
  std::size_t degenerate = 0;
  double mean_k_theory = 0.0;
  double mean_k_empirical = 0.0;
  double mean_ln = 0.0;
  double sem = 0.0;
  double mean_ln_over_n = 0.0;
  std::uint64_t master_seed = 0;
};

ResultRow to_row(const EnsembleStats& stats);
std::vector<ResultRow> to_rows(const std::vector<EnsembleStats>& stats);

extern const char* const kResultsHeader;

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite.
std::string format_real(double x);

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::string results_csv(const std::vector<ResultRow>& rows);
/// Throws ParseError on a wrong header or malformed row.
std::vector<ResultRow> read_results_csv(std::istream& in);
std::vector<ResultRow> read_results_csv_file(const std::string& path);

}  // namespace mti
