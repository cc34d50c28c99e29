#pragma once

#include <stdexcept>

namespace maskbox {

/// File could not be read or has an unsupported/broken format.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mask has no foreground to work with.
class no_target_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Degenerate point configuration or a conic that is not a real ellipse.
class fit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Singular transform, empty box intersection and similar geometric failures.
class geometry_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace maskbox
