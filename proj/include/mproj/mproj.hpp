#pragma once

#include "mproj/check.hpp"
#include "mproj/error.hpp"
#include "mproj/idempotents.hpp"
#include "mproj/linalg.hpp"
#include "mproj/matched.hpp"
#include "mproj/norms.hpp"
#include "mproj/two_by_two.hpp"
