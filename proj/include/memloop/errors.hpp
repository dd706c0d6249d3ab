#pragma once

#include <stdexcept>
#include <string>

namespace memloop {

// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class EmptyDocumentError : public Error {
public:
    explicit EmptyDocumentError(const std::string& doc_id)
        : Error("document has empty text: " + doc_id) {}
};

class TripleParseError : public Error {
public:
    explicit TripleParseError(const std::string& msg) : Error("triple parse: " + msg) {}
};

class ProbeParseError : public Error {
public:
    explicit ProbeParseError(const std::string& msg) : Error("probe parse: " + msg) {}
};

class MissingBindingError : public Error {
public:
    explicit MissingBindingError(const std::string& placeholder)
        : Error("missing binding: " + placeholder), placeholder_(placeholder) {}
    const std::string& placeholder() const { return placeholder_; }

private:
    std::string placeholder_;
};

class BackendUnavailableError : public Error {
public:
    explicit BackendUnavailableError(const std::string& msg)
        : Error("backend unavailable: " + msg) {}
};

class QuotaExceededError : public Error {
public:
    explicit QuotaExceededError(const std::string& msg) : Error("quota exceeded: " + msg) {}
};

class EmbeddingBackendError : public Error {
public:
    explicit EmbeddingBackendError(const std::string& msg)
        : Error("embedding backend: " + msg) {}
};

class EmptyLayerError : public Error {
public:
    explicit EmptyLayerError(const std::string& layer) : Error("empty layer: " + layer) {}
};

class LengthMismatchError : public Error {
public:
    LengthMismatchError(size_t a, size_t b)
        : Error("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class MissingIndexError : public Error {
public:
    explicit MissingIndexError(const std::string& what_ids)
        : Error("missing index: " + what_ids) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error("config: " + msg) {}
};

class TraceError : public Error {
public:
    explicit TraceError(const std::string& msg) : Error("trace: " + msg) {}
};

class LayerBuildError : public Error {
public:
    LayerBuildError(const std::string& layer, const std::string& detail)
        : Error("building " + layer + " layer: " + detail) {}
};

} // namespace memloop
