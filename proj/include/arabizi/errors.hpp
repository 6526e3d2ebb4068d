// errors.hpp -- exception types shared across the transliteration toolkit.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arabizi {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mapping-file validation.
struct MalformedEntry : Error {
    using Error::Error;
};
struct DuplicateEntry : Error {
    using Error::Error;
};
struct MissingPosition : Error {
    using Error::Error;
};

// A symbol with no entry in the mapping table. Signals a foreign or noise
// token to the caller; carries the offending symbol and its character index.
struct UnknownSymbol : Error {
    UnknownSymbol(std::string sym, std::size_t idx)
        : Error("unknown symbol '" + sym + "' at index " + std::to_string(idx)),
          symbol(std::move(sym)),
          index(idx) {}

    std::string symbol;
    std::size_t index;
};

// Candidate generation.
struct EmptyResult : Error {
    using Error::Error;
};

// Model building and persistence.
struct EmptyCorpus : Error {
    using Error::Error;
};
struct BadOrder : Error {
    using Error::Error;
};
struct IoFailure : Error {
    using Error::Error;
};
struct CorruptModel : Error {
    using Error::Error;
};
struct VersionMismatch : Error {
    using Error::Error;
};

// Selection and evaluation.
struct EmptyCandidates : Error {
    using Error::Error;
};
struct EmptyTestSet : Error {
    using Error::Error;
};
struct MalformedGold : Error {
    using Error::Error;
};

}  // namespace arabizi
