#pragma once

#include <stdexcept>
#include <string>

namespace currimap {

// Base class for all errors raised by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input violates a documented invariant or precondition.
struct validation_error : error {
    using error::error;
};

// Malformed input file; message carries line/record position where known.
struct parse_error : error {
    using error::error;
};

// Filesystem failure (missing file, unwritable path, ...).
struct io_error : error {
    using error::error;
};

}  // namespace currimap
