#include "doctest.h"

#include <cmath>

#include "mimohi/channel.hpp"

using namespace mimohi;

TEST_SUITE("channel") {

TEST_CASE("snr_to_sigma2") {
  CHECK(snr_to_sigma2(0.0, 2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(snr_to_sigma2(10.0, 2) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(snr_to_sigma2(3.0, 1) == doctest::Approx(std::pow(10.0, -0.3)).epsilon(1e-15));
  CHECK(snr_to_sigma2(3.0, 1) == doctest::Approx(0.501187).epsilon(1e-6));
}

TEST_CASE("zeta = 1 freezes the channel") {
  RngStream rng(1, 1);
  const ChannelTrace tr = generate_trace(rng, 2, 8, 50, 1.0);
  REQUIRE(tr.size() == 50);
  for (std::size_t n = 1; n < tr.size(); ++n) CHECK(tr[n] == tr[0]);
  CHECK(tr[0].rows() == 8);
  CHECK(tr[0].cols() == 2);
}

TEST_CASE("zeta outside [0, 1] is rejected") {
  RngStream rng(1, 1);
  CHECK_THROWS_AS(generate_trace(rng, 1, 1, 3, 1.01), std::invalid_argument);
  CHECK_THROWS_AS(generate_trace(rng, 1, 1, 3, -0.1), std::invalid_argument);
}

double lag_one_correlation(const ChannelTrace& tr) {
  Complex num = 0.0;
  double den = 0.0;
  for (std::size_t n = 1; n < tr.size(); ++n) {
    num += std::conj(tr[n - 1](0, 0)) * tr[n](0, 0);
    den += std::norm(tr[n](0, 0));
  }
  return std::abs(num) / den;
}

TEST_CASE("zeta = 0 decorrelates consecutive slots") {
  RngStream rng(2, 7);
  CHECK(lag_one_correlation(generate_trace(rng, 1, 1, 10000, 0.0)) < 0.05);
}

TEST_CASE("zeta = 0.98 is stationary with the AR(1) correlation") {
  RngStream rng(3, 7);
  const ChannelTrace tr = generate_trace(rng, 2, 2, 10000, 0.98);
  double var = 0.0, frob = 0.0;
  for (std::size_t n = 0; n < tr.size(); ++n) {
    var += std::norm(tr[n](1, 0));
    frob += tr[n].squaredNorm();
  }
  var /= double(tr.size());
  frob /= double(tr.size());
  CHECK(var > 0.95);
  CHECK(var < 1.05);
  CHECK(frob == doctest::Approx(4.0).epsilon(0.05));
  CHECK(lag_one_correlation(tr) == doctest::Approx(0.98).epsilon(0.02));
}

TEST_CASE("trace is a pure function of the stream") {
  RngStream a(9, 9), b(9, 9);
  const ChannelTrace ta = generate_trace(a, 2, 4, 20, 0.9);
  const ChannelTrace tb = generate_trace(b, 2, 4, 20, 0.9);
  for (std::size_t n = 0; n < ta.size(); ++n) CHECK(ta[n] == tb[n]);
}

}
