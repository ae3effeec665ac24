#pragma once

#include <stdexcept>
#include <string>

namespace sketchmatch {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File could not be opened/read/written.
struct IoError : Error {
    using Error::Error;
};

/// Malformed file content (image header, gallery file, manifest).
struct FormatError : Error {
    using Error::Error;
};

/// Invalid argument value (even median window, bad Canny ratios, ...).
struct ParameterError : Error {
    using Error::Error;
};

/// Bad configuration file content or unknown key.
struct ConfigError : Error {
    using Error::Error;
};

/// A predicted rectangle or row search degenerated (empty after clamping,
/// empty search band, inverted interval).
struct GeometryError : Error {
    using Error::Error;
};

/// The face-region pipeline produced an empty mask.
struct NoFaceError : Error {
    using Error::Error;
};

/// A component measurement could not be taken (no foreground, no edges,
/// zero denominator).
struct MeasureError : Error {
    using Error::Error;
};

/// Extraction of a named component failed; wraps the underlying cause.
struct ExtractionError : Error {
    std::string component;
    ExtractionError(std::string comp, const std::string& cause)
        : Error(comp + ": " + cause), component(std::move(comp)) {}
};

/// Operation called in an invalid state (empty gallery, missing mean).
struct StateError : Error {
    using Error::Error;
};

/// Interface contract violated (vector dimension mismatch).
struct ContractError : Error {
    using Error::Error;
};

/// Gallery was built with different model/filter parameters.
struct IncompatibleGalleryError : Error {
    using Error::Error;
};

/// An aggregate was requested over zero inputs.
struct EmptyInputError : Error {
    using Error::Error;
};

}  // namespace sketchmatch
