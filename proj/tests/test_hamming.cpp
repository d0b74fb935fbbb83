#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qham/encoding.hpp"
#include "qham/hamming.hpp"
#include "testutil.hpp"

TEST_CASE("bit distance counts differing positions") {
  REQUIRE(qham::hamming_bits("010", "101") == 3);
  REQUIRE(qham::hamming_bits("000000", "111100") == 4);
  REQUIRE(qham::hamming_bits("10110", "10110") == 0);
  REQUIRE_THROWS_AS(qham::hamming_bits("01", "011"), qham::ValidationError);
}

TEST_CASE("symbol distance counts differing blocks") {
  REQUIRE(qham::hamming_symbols("000000", "010101", 2) == 3);
  REQUIRE(qham::hamming_symbols("000000", "111100", 2) == 2);
  // two flipped bits inside one block still count once
  REQUIRE(qham::hamming_symbols("0000", "1100", 2) == 1);
  REQUIRE(qham::hamming_symbols("0000", "0000", 4) == 0);
  REQUIRE_THROWS_AS(qham::hamming_symbols("000", "000", 2), qham::ValidationError);
  REQUIRE_THROWS_AS(qham::hamming_symbols("00", "00", 0), qham::ValidationError);
}

TEST_CASE("symbol distance at width one matches bit distance") {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + testutil::rng_below(rng, 12);
    const std::string a = testutil::random_bits(rng, n);
    const std::string b = testutil::random_bits(rng, n);
    REQUIRE(qham::hamming_symbols(a, b, 1) == qham::hamming_bits(a, b));
  }
}

TEST_CASE("symbol distance is a metric") {
  std::mt19937_64 rng(555);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t d = 1 + testutil::rng_below(rng, 3);
    const std::size_t z = 1 + testutil::rng_below(rng, 5);
    const std::size_t n = d * z;
    const std::string a = testutil::random_bits(rng, n);
    const std::string b = testutil::random_bits(rng, n);
    const std::string c = testutil::random_bits(rng, n);
    const std::size_t ab = qham::hamming_symbols(a, b, d);
    const std::size_t ba = qham::hamming_symbols(b, a, d);
    const std::size_t ac = qham::hamming_symbols(a, c, d);
    const std::size_t cb = qham::hamming_symbols(c, b, d);
    REQUIRE(ab == ba);
    REQUIRE(ab <= z);
    REQUIRE((a == b ? ab == 0 : ab > 0));
    REQUIRE(ab <= ac + cb);
  }
}

TEST_CASE("classical comparison answers per input row") {
  const auto problem = qham::validate_and_encode_binary(
      "10110", {"10110", "11010", "01110", "01001", "11010"}, 1);
  const auto distances = qham::compare_classical(problem);
  REQUIRE(distances == std::vector<std::size_t>{0, 2, 2, 5, 2});
}
