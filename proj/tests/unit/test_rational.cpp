#include "pgcl/rational.hpp"

#include "doctest.h"

using namespace pgcl;

TEST_CASE("parse and print rationals") {
  CHECK(rat_to_string(*parse_rational("3/4")) == "3/4");
  CHECK(rat_to_string(*parse_rational("2")) == "2");
  CHECK(*parse_rational("0.25") == Rat(1, 4));
  CHECK(*parse_rational("0.5") == Rat(1, 2));
  CHECK(*parse_rational("1.0") == Rat(1));
  CHECK(*parse_rational("-3/6") == Rat(-1, 2));
  CHECK(!parse_rational(""));
  CHECK(!parse_rational("1/0"));
  CHECK(!parse_rational("1.2.3"));
  CHECK(!parse_rational("a/b"));
}

TEST_CASE("normalization") {
  CHECK(*parse_rational("2/4") == *parse_rational("1/2"));
  CHECK(rat_to_string(*parse_rational("2/4")) == "1/2");
}

TEST_CASE("rationalize snaps dyadic doubles exactly") {
  CHECK(rationalize(0.5, Int(1) << 20) == Rat(1, 2));
  CHECK(rationalize(0.25, Int(1) << 20) == Rat(1, 4));
  CHECK(rationalize(0.4999999999999999, Int(1) << 20) == Rat(1, 2));
  CHECK(rationalize(1.0 / 3.0, Int(1) << 20) == Rat(1, 3));
  CHECK(rationalize(0.0, Int(1) << 20) == Rat(0));
  CHECK(rationalize(1.0, Int(1) << 20) == Rat(1));
}

TEST_CASE("rat_from_double is exact on binary values") {
  CHECK(rat_from_double(0.5) == Rat(1, 2));
  CHECK(rat_from_double(0.375) == Rat(3, 8));
  CHECK(rat_to_double(rat_from_double(0.1)) == 0.1);
}
