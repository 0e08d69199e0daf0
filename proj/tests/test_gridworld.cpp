#include <catch2/catch_amalgamated.hpp>
#include "geql/geql.hpp"
