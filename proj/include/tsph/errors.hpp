#pragma once

#include <stdexcept>
#include <string>

namespace tsph {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input series has too few samples for the requested operation.
struct SeriesTooShort : Error {
    explicit SeriesTooShort(const std::string& msg) : Error(msg) {}
};

struct EmptyDataset : Error {
    explicit EmptyDataset(const std::string& msg) : Error(msg) {}
};

/// k-NN graph requested with k >= number of embedded points.
struct KTooLarge : Error {
    explicit KTooLarge(const std::string& msg) : Error(msg) {}
};

/// A weight-based distance was requested on a graph without weights.
struct UnweightedGraph : Error {
    explicit UnweightedGraph(const std::string& msg) : Error(msg) {}
};

struct Disconnected : Error {
    explicit Disconnected(const std::string& msg) : Error(msg) {}
};

struct SizeMismatch : Error {
    explicit SizeMismatch(const std::string& msg) : Error(msg) {}
};

/// Brute-force oracle invoked beyond its intended instance size.
struct TooLarge : Error {
    explicit TooLarge(const std::string& msg) : Error(msg) {}
};

struct CapNotFinite : Error {
    explicit CapNotFinite(const std::string& msg) : Error(msg) {}
};

/// Invalid (graph, distance) combination or other configuration problem.
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// Base for data/file problems (maps to CLI exit code 2).
struct DataError : Error {
    explicit DataError(const std::string& msg) : Error(msg) {}
};

struct ParseError : DataError {
    explicit ParseError(const std::string& msg) : DataError(msg) {}
};

struct EmptyFile : DataError {
    explicit EmptyFile(const std::string& msg) : DataError(msg) {}
};

struct ClassTooSmall : Error {
    explicit ClassTooSmall(const std::string& msg) : Error(msg) {}
};

struct ZeroPowerSignal : Error {
    explicit ZeroPowerSignal(const std::string& msg) : Error(msg) {}
};

/// Per-series failure inside a dataset run; message names the series.
struct PipelineError : Error {
    explicit PipelineError(const std::string& msg) : Error(msg) {}
};

} // namespace tsph
