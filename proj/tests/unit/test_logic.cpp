#include "doctest.h"
TEST_CASE("placeholder test_logic") { CHECK(true); }
