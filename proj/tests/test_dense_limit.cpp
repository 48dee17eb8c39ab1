#include <doctest.h>

#include <cmath>

#include "mti/dense_limit.hpp"

using namespace mti;

namespace {
const double ln2 = std::log(2.0);
}

TEST_CASE("hand-evaluated ER predictions") {
  CHECK(predict(ModelKind::ER, IndexKind::NK, 10.0) == doctest::Approx(std::log(10.0)).epsilon(1e-15));
  CHECK(predict(ModelKind::ER, IndexKind::ChiPi, 4.0) ==
        doctest::Approx(-3 * ln2).epsilon(1e-15));
  CHECK(predict(ModelKind::ER, IndexKind::Pi1, 3.0) == doctest::Approx(2 * std::log(3.0)));
  CHECK(predict(ModelKind::ER, IndexKind::Pi2, 6.0) == doctest::Approx(6 * std::log(6.0)));
  CHECK(predict(ModelKind::ER, IndexKind::Pi1Star, 4.0) == doctest::Approx(2 * std::log(8.0)));
  CHECK(predict(ModelKind::ER, IndexKind::RPi, 4.0) == doctest::Approx(-2 * std::log(4.0)));
  CHECK(predict(ModelKind::ER, IndexKind::HPi, 4.0) == doctest::Approx(-2 * std::log(4.0)));
  CHECK(predict(ModelKind::ER, IndexKind::IDPi, 2.0) == doctest::Approx(ln2 - 2 * ln2));
}

TEST_CASE("RG ID at <d> = 10") {
  const double expect = ln2 / 2 * 10 - 10 * std::log(10.0);
  CHECK(predict(ModelKind::RG, IndexKind::IDPi, 10.0) == doctest::Approx(expect).epsilon(1e-15));
  CHECK(predict(ModelKind::RG, IndexKind::IDPi, 10.0) == doctest::Approx(-19.560).epsilon(1e-4));
}

TEST_CASE("BR Pi2 with equal set degrees") {
  const MeanDegrees d{6.0, 6.0};
  CHECK(predict(ModelKind::BR, IndexKind::Pi2, d) == doctest::Approx(12 * std::log(6.0)).epsilon(1e-15));
  CHECK(predict_per_vertex(ModelKind::BR, IndexKind::Pi2, d) ==
        doctest::Approx(predict(ModelKind::ER, IndexKind::Pi2, 6.0)).epsilon(1e-15));
}

TEST_CASE("BR with unequal set degrees") {
  const MeanDegrees d{4.0, 2.0};
  CHECK(predict(ModelKind::BR, IndexKind::Pi2, d) == doctest::Approx(4 * std::log(8.0)));
  CHECK(predict(ModelKind::BR, IndexKind::Pi1Star, d) == doctest::Approx(4 * std::log(6.0)));
  CHECK(predict(ModelKind::BR, IndexKind::HPi, d) == doctest::Approx(4 * (ln2 - std::log(6.0))));
  CHECK(predict(ModelKind::BR, IndexKind::IDPi, d) ==
        doctest::Approx(4 * std::log(1.0 / 16 + 1.0 / 4)));
  // Per-total: ln X / (n1 + n2) with n1/(n1+n2) = d2/(d1+d2).
  CHECK(bipartite_per_total(12.0, d) == doctest::Approx(4.0));
  CHECK_THROWS_AS(predict(ModelKind::BR, IndexKind::NK, d), UnsupportedPrediction);
  CHECK_FALSE(has_prediction(ModelKind::BR, IndexKind::Pi1, d));
  CHECK(has_prediction(ModelKind::BR, IndexKind::NK, MeanDegrees{5.0, 5.0}));
}

TEST_CASE("BR degrees for a network mean degree") {
  const auto d = bipartite_degrees_for(10.0, 100, 300);
  CHECK(d.set1 == doctest::Approx(20.0));
  CHECK(d.set2 == doctest::Approx(20.0 / 3));
  const auto eq = bipartite_degrees_for(7.0, 250, 250);
  CHECK(eq.set1 == 7.0);
  CHECK(eq.set2 == 7.0);
}

TEST_CASE("unsupported inputs") {
  CHECK_THROWS_AS(predict(ModelKind::ER, IndexKind::GAPi, 10.0), UnsupportedPrediction);
  CHECK_THROWS_AS(predict(ModelKind::ER, IndexKind::NK, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(predict(ModelKind::BR, IndexKind::Pi2, MeanDegrees{-1.0, 2.0}), std::invalid_argument);
  CHECK_FALSE(has_prediction(ModelKind::RG, IndexKind::GAPi, 10.0));
}

TEST_CASE("ER and RG formulas coincide; BR reduces to ER") {
  for (int d = 1; d <= 50; ++d) {
    for (auto kind : studied_index_kinds()) {
      CHECK(predict(ModelKind::ER, kind, d) == predict(ModelKind::RG, kind, d));
      const double br = predict_per_vertex(ModelKind::BR, kind, MeanDegrees(d, d));
      CHECK(std::abs(br - predict(ModelKind::ER, kind, d)) <= 1e-12 * std::max(1.0, std::abs(br)));
    }
  }
}

TEST_CASE("sign structure on [1, 100]") {
  for (int i = 0; i <= 990; ++i) {
    const double d = 1.0 + i * 0.1;
    for (auto kind : {IndexKind::NK, IndexKind::Pi1, IndexKind::Pi2, IndexKind::Pi1Star})
      CHECK(predict(ModelKind::ER, kind, d) >= 0.0);
    for (auto kind : {IndexKind::RPi, IndexKind::HPi, IndexKind::ChiPi})
      CHECK(predict(ModelKind::ER, kind, d) <= 0.0);
  }
}

TEST_CASE("dense regime marker") { CHECK(kDenseLimitMeanDegree == 10.0); }
