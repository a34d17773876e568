// tests/test_prosody.cpp

// Copyright 2026  CLVC Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <doctest.h>

#include "clvc/errors.hpp"
#include "clvc/prosody.hpp"
#include "clvc/rng.hpp"

using namespace clvc;

TEST_SUITE_BEGIN("prosody");

TEST_CASE("mean_voiced_f0 ignores unvoiced frames") {
  CHECK(mean_voiced_f0({F0Track{{100.0, 0.0, 300.0}}}) == doctest::Approx(200.0));
  CHECK(mean_voiced_f0({F0Track{{150.0, 150.0, 150.0}}}) == doctest::Approx(150.0));
}

TEST_CASE("mean_voiced_f0 over multiple tracks equals the pooled loop mean") {
  Rng rng(70);
  std::vector<F0Track> tracks;
  double sum = 0.0;
  std::size_t voiced = 0;
  for (int t = 0; t < 5; ++t) {
    F0Track track;
    for (int i = 0; i < 40; ++i) {
      const bool v = rng.uniform() > 0.3;
      const double hz = v ? 80.0 + 160.0 * rng.uniform() : 0.0;
      track.values.push_back(hz);
      if (v) {
        sum += hz;
        ++voiced;
      }
    }
    tracks.push_back(track);
  }
  REQUIRE(voiced > 0);
  CHECK(mean_voiced_f0(tracks) ==
        doctest::Approx(sum / static_cast<double>(voiced)).epsilon(1e-14));
}

TEST_CASE("mean_voiced_f0 with no voiced frames is an error") {
  CHECK_THROWS_AS(mean_voiced_f0({F0Track{{0.0, 0.0}}}), ProsodyError);
  CHECK_THROWS_AS(mean_voiced_f0({}), ProsodyError);
}

TEST_CASE("transform_f0 applies the ratio of averages") {
  F0Track src{{80.0, 0.0, 120.0}};  // voiced mean 100
  const F0Track out = transform_f0(src, 200.0);
  CHECK(out.values[0] == doctest::Approx(160.0));
  CHECK(out.values[1] == 0.0);
  CHECK(out.values[2] == doctest::Approx(240.0));
}

TEST_CASE("transform_f0 with matching target mean is the identity") {
  F0Track src{{90.0, 110.0, 0.0}};
  const F0Track out = transform_f0(src, 100.0);
  for (std::size_t i = 0; i < src.values.size(); ++i) {
    CHECK(out.values[i] == doctest::Approx(src.values[i]).epsilon(1e-15));
  }
}

TEST_CASE("transform_f0 properties: exact mean, preserved mask, idempotence") {
  Rng rng(71);
  for (int rep = 0; rep < 25; ++rep) {
    F0Track src;
    src.frame_shift = 0.005;
    for (int i = 0; i < 60; ++i) {
      src.values.push_back(rng.uniform() < 0.25 ? 0.0 : 70.0 + 200.0 * rng.uniform());
    }
    if (mean_voiced_f0({src}) <= 0.0) continue;
    const double target = 120.0 + 140.0 * rng.uniform();
    const F0Track out = transform_f0(src, target);

    CHECK(mean_voiced_f0({out}) == doctest::Approx(target).epsilon(1e-9));
    for (std::size_t i = 0; i < src.values.size(); ++i) {
      CHECK((src.values[i] > 0.0) == (out.values[i] > 0.0));
    }
    const F0Track again = transform_f0(out, target);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      CHECK(again.values[i] == doctest::Approx(out.values[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("transform_f0 error paths") {
  CHECK_THROWS_AS(transform_f0(F0Track{{0.0, 0.0}}, 200.0), ProsodyError);
  CHECK_THROWS_AS(transform_f0(F0Track{{100.0}}, 0.0), ProsodyError);
}

TEST_CASE("pass_aperiodicity is the identity") {
  Matrix ap(3, 2);
  ap(0, 0) = 0.25;
  ap(2, 1) = 0.75;
  CHECK(pass_aperiodicity(ap) == ap);
  CHECK(pass_aperiodicity(Matrix{}) == Matrix{});
}

TEST_SUITE_END();
