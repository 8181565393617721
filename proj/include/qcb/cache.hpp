#pragma once

#include <cstdint>
#include <string>

#include "qcb/free_algebra.hpp"

namespace qcb {

/// Directory resolution: the explicit path when nonempty, else the
/// QCB_CACHE_DIR environment variable, else empty (caching off).
std::string resolve_cache_dir(const std::string& explicit_dir);

/// Store file for this algebra's datum under dir.
std::string cache_path(const std::string& dir, const FAlgebra& alg);

/// Persist the memoized form values; creates dir when missing.  Returns the
/// number of stored entries.
size_t cache_store(const std::string& dir, const FAlgebra& alg);

/// Adopt a previously stored memo.  One seed-chosen entry is recomputed from
/// scratch and compared before anything is trusted; corrupt files, schema or
/// version changes, datum mismatches, and failed validation warn on stderr
/// and leave alg untouched.  Returns the number of adopted entries.
size_t cache_load(const std::string& dir, FAlgebra& alg, uint64_t seed);

}  // namespace qcb
