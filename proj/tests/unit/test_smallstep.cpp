#include "doctest.h"
TEST_CASE("placeholder test_smallstep") { CHECK(true); }
