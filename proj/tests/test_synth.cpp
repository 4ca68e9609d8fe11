#include <catch2/catch_amalgamated.hpp>
#include "resev/resev.hpp"
