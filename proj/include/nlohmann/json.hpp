#pragma once
// Routes the idiomatic include path to the vendored single-header copy so
// builds never depend on a system-installed version.
#include "../../vendor/json.hpp"
