#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ahfsr/ahf_dictionary.hpp"
#include "ahfsr/errors.hpp"

using namespace ahfsr;

TEST_SUITE("ahf_dictionary") {

TEST_CASE("eval_ahf reference values") {
  CHECK(eval_ahf(0.0, 0.1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eval_ahf(1e-4, 1e-4) == doctest::Approx(0.75).epsilon(1e-15));
  // 40-digit values from tools/oracles.py
  CHECK(std::abs(eval_ahf(1.0, 0.1) - 0.96827448256944643049) < 1e-14);
  CHECK(std::abs(eval_ahf(-0.05, 0.1) - 0.35241638234956672582) < 1e-14);
  CHECK(std::abs(eval_ahf(-1.0, 1e-4) - 0.000031830988512275772396) < 1e-15);
}

TEST_CASE("eval_ahf is monotone and point symmetric") {
  double prev = -1.0;
  for (int i = -200; i <= 200; ++i) {
    const double x = i * 0.01;
    const double v = eval_ahf(x, 0.1);
    CHECK(v > prev);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    CHECK(v + eval_ahf(-x, 0.1) == doctest::Approx(1.0).epsilon(1e-15));
    prev = v;
  }
}

TEST_CASE("eval_ahf rejects non-positive width") {
  CHECK_THROWS_AS(eval_ahf(0.3, 0.0), InvalidParameter);
  CHECK_THROWS_AS(eval_ahf(0.3, -1.0), InvalidParameter);
}

TEST_CASE("basis spec validation") {
  AhfBasisSpec spec = AhfBasisSpec::uniform(0.1, 12, 36);
  CHECK(spec.size() == 432);
  CHECK(spec.angles[3] == doctest::Approx(std::numbers::pi / 2));
  CHECK(spec.offset(0) == doctest::Approx(1.0 / 36));
  CHECK(spec.offset(35) == doctest::Approx(1.0));
  CHECK_NOTHROW(spec.validate());

  AhfBasisSpec dup = spec;
  dup.angles[1] = dup.angles[0];
  CHECK_THROWS_AS(dup.validate(), InvalidParameter);

  AhfBasisSpec out_of_range = spec;
  out_of_range.angles[0] = 2 * std::numbers::pi;
  CHECK_THROWS_AS(out_of_range.validate(), InvalidParameter);

  AhfBasisSpec bad_xi = spec;
  bad_xi.xi = 0.0;
  CHECK_THROWS_AS(bad_xi.validate(), InvalidParameter);
}

TEST_CASE("dictionary shapes and spot entries") {
  const AhfBasisSpec s1 = AhfBasisSpec::uniform(0.1, 12, 36);
  const AhfBasisSpec s2 = AhfBasisSpec::uniform(1e-4, 12, 36);

  const Dictionary coarse = build_dictionary(s1, 6, 6);
  CHECK(coarse.pixels() == 36);
  CHECK(coarse.atoms() == 432);
  CHECK(std::abs(coarse.values(2 * 6 + 4, coarse.column(5, 10)) -
                 0.89403414202548545502) < 1e-13);

  const Dictionary fine = build_fine_dictionary(s2, 6, 6, 2, GridAlignment::kOneBased);
  CHECK(fine.pixels() == 144);
  CHECK(fine.atoms() == 432);
  CHECK(std::abs(fine.values(7 * 12 + 3, fine.column(8, 20)) -
                 0.00082303314562158556131) < 1e-12);

  const Dictionary direct = build_dictionary(s2, 12, 12);
  CHECK(fine.values.isApprox(direct.values, 0.0));
}

TEST_CASE("angle zero atoms depend on the row coordinate only") {
  const Dictionary d = build_dictionary(AhfBasisSpec::uniform(0.1, 12, 36), 6, 6);
  for (int r = 0; r < 6; ++r) {
    for (int c = 1; c < 6; ++c) {
      CHECK(d.values(r * 6 + c, d.column(0, 7)) == d.values(r * 6, d.column(0, 7)));
    }
  }
}

TEST_CASE("center-aligned fine grid brackets the coarse samples") {
  const AhfBasisSpec spec = AhfBasisSpec::uniform(0.1, 12, 36);
  const Dictionary coarse = build_dictionary(spec, 6, 6);
  const Dictionary fine = build_fine_dictionary(spec, 6, 6, 3, GridAlignment::kCenterAligned);
  // With s = 3 the middle fine pixel of each 3x3 block sits on the coarse sample.
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) {
      const Eigen::Index fr = 3 * r + 1, fc = 3 * c + 1;
      CHECK((fine.values.row(fr * 18 + fc) - coarse.values.row(r * 6 + c)).cwiseAbs().maxCoeff() <
            1e-14);
    }
  }
}

TEST_CASE("construction is deterministic") {
  const AhfBasisSpec spec = AhfBasisSpec::uniform(1e-4, 12, 36);
  const Dictionary a = build_dictionary(spec, 6, 6);
  const Dictionary b = build_dictionary(spec, 6, 6);
  CHECK(a.values == b.values);
}

TEST_CASE("synthesize matches an explicit double sum and is linear") {
  const AhfBasisSpec s1 = AhfBasisSpec::uniform(0.1, 12, 36);
  const AhfBasisSpec s2 = AhfBasisSpec::uniform(1e-4, 12, 36);
  const Dictionary p1 = build_dictionary(s1, 6, 6);
  const Dictionary p2 = build_dictionary(s2, 6, 6);

  Eigen::VectorXd b1(432), b2(432);
  for (int i = 0; i < 432; ++i) {
    b1[i] = std::sin(0.37 * i) * 1e-2;
    b2[i] = std::cos(0.11 * i) * 1e-2;
  }
  const ImagePlane out = synthesize(p1, b1, p2, b2);
  REQUIRE(out.rows() == 6);
  REQUIRE(out.cols() == 6);
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) {
      double acc = 0.0;
      for (int t = 0; t < 12; ++t) {
        const double th = 2 * std::numbers::pi * t / 12;
        for (int j = 0; j < 36; ++j) {
          const double z = std::cos(th) * (r + 1) / 6.0 + std::sin(th) * (c + 1) / 6.0 +
                           (j + 1) / 36.0;
          acc += b1[t * 36 + j] * (0.5 + std::atan(z / 0.1) / std::numbers::pi);
          acc += b2[t * 36 + j] * (0.5 + std::atan(z / 1e-4) / std::numbers::pi);
        }
      }
      CHECK(out(r, c) == doctest::Approx(acc).epsilon(1e-12));
    }
  }

  const ImagePlane twice = synthesize(p1, 2.0 * b1, p2, 2.0 * b2);
  for (int i = 0; i < 36; ++i) CHECK(twice.data()[i] == doctest::Approx(2 * out.data()[i]));
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(432);
  const ImagePlane sum = synthesize(p1, b1, p2, zero) + synthesize(p1, zero, p2, b2);
  for (int i = 0; i < 36; ++i) CHECK(sum.data()[i] == doctest::Approx(out.data()[i]));
}

TEST_CASE("synthesize rejects mismatched coefficient lengths") {
  const AhfBasisSpec spec = AhfBasisSpec::uniform(0.1, 12, 36);
  const Dictionary p = build_dictionary(spec, 6, 6);
  CHECK_THROWS_AS(synthesize(p, Eigen::VectorXd::Zero(431), p, Eigen::VectorXd::Zero(432)),
                  ShapeError);
}

}
