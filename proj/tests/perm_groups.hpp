#pragma once

// Small nonabelian sample groups for tests, re-exported from the library's
// permutation-closure builder.

#include <h3nr/groups.hpp>

namespace testutil {

using h3nr::groups::dihedral4;
using h3nr::groups::symmetric3;

}  // namespace testutil
