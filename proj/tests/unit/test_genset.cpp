#include "doctest.h"
TEST_CASE("placeholder test_genset") { CHECK(true); }
