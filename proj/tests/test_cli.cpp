#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tentmle/types.hpp"

TEST_CASE("placeholder cli") { CHECK(true); }
