#include "doctest.h"
TEST_CASE("placeholder test_backend_classical") { CHECK(true); }
