#include "mti/results.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mti/graph.hpp"

namespace mti {

const char* const kResultsHeader =
    "model,n,n1,n2,param_name,param_value,index,policy,replicas,degenerate,mean_k_theory,"
    "mean_k_empirical,mean_ln,sem,mean_ln_over_n,master_seed";

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  std::string out(buf, res.ptr);
  // Keep reals recognizable as reals: 0 -> 0.0, 45 -> 45.0.
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

ResultRow to_row(const EnsembleStats& s) {
  ResultRow row;
  row.model = model_kind(s.point);
  row.n = total_vertices(s.point);
  if (const auto* br = std::get_if<BipartiteRandom>(&s.point)) {
    row.n1 = br->n1;
    row.n2 = br->n2;
  }
  row.param_name = parameter_name(s.point);
  row.param_value = parameter_value(s.point);
  row.index = s.index;
  row.policy = s.policy;
  row.replicas = s.replicas;
  row.degenerate = s.degenerate;
  row.mean_k_theory = s.mean_k_theoretical;
  row.mean_k_empirical = s.mean_k_empirical();
  row.mean_ln = s.mean_ln();
  row.sem = s.sem();
  row.mean_ln_over_n = s.mean_ln_over_n();
  row.master_seed = s.master_seed;
  return row;
}

std::vector<ResultRow> to_rows(const std::vector<EnsembleStats>& stats) {
  std::vector<ResultRow> rows;
  rows.reserve(stats.size());
  for (const auto& s : stats) rows.push_back(to_row(s));
  return rows;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kResultsHeader << '\n';
  for (const auto& r : rows) {
    out << model_name(r.model) << ',' << r.n << ',';
    if (r.n1) out << *r.n1;
    out << ',';
    if (r.n2) out << *r.n2;
    out << ',' << r.param_name << ',' << format_real(r.param_value) << ',' << index_name(r.index)
        << ',' << policy_name(r.policy) << ',' << r.replicas << ',' << r.degenerate << ','
        << format_real(r.mean_k_theory) << ',' << format_real(r.mean_k_empirical) << ','
        << format_real(r.mean_ln) << ',' << format_real(r.sem) << ','
        << format_real(r.mean_ln_over_n) << ',' << r.master_seed << '\n';
  }
}

std::string results_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  write_results_csv(os, rows);
  return os.str();
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <class T>
T parse_integer(const std::string& text, std::size_t lineno, const char* column) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ParseError(lineno, std::string("bad integer in column ") + column + ": '" + text + "'");
  return value;
}

double parse_real(const std::string& text, std::size_t lineno, const char* column) {
  if (text == "nan") return std::nan("");
  if (text == "inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ParseError(lineno, std::string("bad number in column ") + column + ": '" + text + "'");
  return value;
}

}  // namespace

std::vector<ResultRow> read_results_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError(1, "empty results file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultsHeader) throw ParseError(1, "unexpected results header");

  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 16) throw ParseError(lineno, "expected 16 columns");
    ResultRow r;
    try {
      r.model = parse_model_kind(f[0]);
      r.index = parse_index_kind(f[6]);
      r.policy = parse_policy(f[7]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
    r.n = parse_integer<std::size_t>(f[1], lineno, "n");
    if (!f[2].empty()) r.n1 = parse_integer<std::size_t>(f[2], lineno, "n1");
    if (!f[3].empty()) r.n2 = parse_integer<std::size_t>(f[3], lineno, "n2");
    r.param_name = f[4];
    r.param_value = parse_real(f[5], lineno, "param_value");
    r.replicas = parse_integer<std::size_t>(f[8], lineno, "replicas");
    r.degenerate = parse_integer<std::size_t>(f[9], lineno, "degenerate");
    r.mean_k_theory = parse_real(f[10], lineno, "mean_k_theory");
    r.mean_k_empirical = parse_real(f[11], lineno, "mean_k_empirical");
    r.mean_ln = parse_real(f[12], lineno, "mean_ln");
    r.sem = parse_real(f[13], lineno, "sem");
    r.mean_ln_over_n = parse_real(f[14], lineno, "mean_ln_over_n");
    r.master_seed = parse_integer<std::uint64_t>(f[15], lineno, "master_seed");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ResultRow> read_results_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_results_csv(in);
}

}  // namespace mti
