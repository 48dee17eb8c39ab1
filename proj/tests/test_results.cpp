#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mti/results.hpp"

using namespace mti;

TEST_CASE("real formatting") {
  CHECK(format_real(0.0) == "0.0");
  CHECK(format_real(45.0) == "45.0");
  CHECK(format_real(-0.5) == "-0.5");
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(1e300) == "1e+300");
  CHECK(format_real(std::nan("")) == "nan");
  CHECK(format_real(-INFINITY) == "-inf");
}

TEST_CASE("results CSV header and BR columns") {
  EnsembleSpec spec;
  spec.grid = {BipartiteRandom{20, 30, 0.1}};
  spec.indices = {IndexKind::Pi2};
  spec.budget = 100;
  spec.master_seed = 4;
  const auto text = results_csv(to_rows(sweep(spec)));
  CHECK(text.rfind(std::string(kResultsHeader) + "\n", 0) == 0);
  CHECK(text.find("\nbr,50,20,30,p,0.1,pi2,exclude,2,") != std::string::npos);

  spec.grid = {ErdosRenyi{20, 0.1}};
  const auto er = results_csv(to_rows(sweep(spec)));
  CHECK(er.find("\ner,20,,,p,0.1,pi2,exclude,5,") != std::string::npos);
}

TEST_CASE("results CSV round trip") {
  EnsembleSpec spec;
  spec.grid = {ErdosRenyi{30, 0.2}, BipartiteRandom{10, 12, 0.3}};
  spec.indices = {IndexKind::NK, IndexKind::HPi};
  spec.budget = 300;
  spec.master_seed = 8;
  spec.policy = IsolatedPolicy::LogZero;
  const auto rows = to_rows(sweep(spec));
  std::stringstream ss(results_csv(rows));
  const auto back = read_results_csv(ss);
  REQUIRE(back.size() == rows.size());
  CHECK(results_csv(back) == results_csv(rows));
  CHECK(back[2].n1 == 10u);
  CHECK_FALSE(back[0].n1.has_value());
}

TEST_CASE("results CSV reader errors") {
  std::stringstream bad_header("model,n\n");
  CHECK_THROWS_AS(read_results_csv(bad_header), ParseError);
  std::stringstream short_row(std::string(kResultsHeader) + "\ner,10,,\n");
  CHECK_THROWS_AS(read_results_csv(short_row), ParseError);
  std::stringstream bad_index(std::string(kResultsHeader) +
                              "\ner,10,,,p,0.1,wiener,exclude,1,0,0.9,1.0,1.0,0.0,0.1,1\n");
  CHECK_THROWS_AS(read_results_csv(bad_index), ParseError);
}
