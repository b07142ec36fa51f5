#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace syngauntlet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problems reading a suite, report, or config document.
class DocumentError : public Error {
 public:
  enum class Kind { MalformedDocument, MissingField, TypeMismatch, UnknownField, InvalidValue };

  DocumentError(Kind kind, const std::string& message)
      : Error(std::string(kind_name(kind)) + ": " + message), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

  static std::string_view kind_name(Kind kind) noexcept {
    switch (kind) {
      case Kind::MalformedDocument: return "MalformedDocument";
      case Kind::MissingField: return "MissingField";
      case Kind::TypeMismatch: return "TypeMismatch";
      case Kind::UnknownField: return "UnknownField";
      case Kind::InvalidValue: return "InvalidValue";
    }
    return "DocumentError";
  }

 private:
  Kind kind_;
};

class EmptySentenceError : public Error {
 public:
  EmptySentenceError() : Error("EmptySentence: every region of the sentence is empty") {}
};

/// Syntax or typing error in a prediction formula. `column` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t column, const std::string& message)
      : Error("ParseError at column " + std::to_string(column) + ": " + message), column_(column) {}

  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

class MissingTargetError : public Error {
 public:
  MissingTargetError(int region, const std::string& condition)
      : Error("MissingTarget: no surprisal for region " + std::to_string(region) + " of condition '" +
              condition + "'"),
        region_(region),
        condition_(condition) {}

  int region() const noexcept { return region_; }
  const std::string& condition() const noexcept { return condition_; }

 private:
  int region_;
  std::string condition_;
};

/// Failures while obtaining token surprisals from a scorer.
class ScorerError : public Error {
 public:
  enum class Kind {
    EmptyText,
    ScorerUnavailable,
    ProtocolViolation,
    TokenizationMismatch,
    Timeout,
    RequestRejected,
  };

  ScorerError(Kind kind, const std::string& message)
      : Error(std::string(kind_name(kind)) + ": " + message), kind_(kind), detail_(message) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

  /// Same kind, message prefixed with location context.
  ScorerError with_context(const std::string& context) const {
    return ScorerError(kind_, context + ": " + detail_);
  }

  static std::string_view kind_name(Kind kind) noexcept {
    switch (kind) {
      case Kind::EmptyText: return "EmptyText";
      case Kind::ScorerUnavailable: return "ScorerUnavailable";
      case Kind::ProtocolViolation: return "ProtocolViolation";
      case Kind::TokenizationMismatch: return "TokenizationMismatch";
      case Kind::Timeout: return "Timeout";
      case Kind::RequestRejected: return "RequestRejected";
    }
    return "ScorerError";
  }

 private:
  Kind kind_;
  std::string detail_;
};

class NgramError : public Error {
 public:
  enum class Kind { EmptyCorpus, BadWeights };

  NgramError(Kind kind, const std::string& message)
      : Error(std::string(kind == Kind::EmptyCorpus ? "EmptyCorpus" : "BadWeights") + ": " + message),
        kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class UnalignableTokenError : public Error {
 public:
  UnalignableTokenError(std::size_t token_index, std::size_t char_start)
      : Error("UnalignableToken: token " + std::to_string(token_index) + " starts at character " +
              std::to_string(char_start) + ", past every region"),
        token_index_(token_index) {}

  std::size_t token_index() const noexcept { return token_index_; }

 private:
  std::size_t token_index_;
};

class InconsistentLexiconError : public Error {
 public:
  explicit InconsistentLexiconError(const std::string& message)
      : Error("InconsistentLexicon: " + message) {}
};

class DuplicateSuiteNameError : public Error {
 public:
  explicit DuplicateSuiteNameError(const std::string& name)
      : Error("DuplicateSuiteName: '" + name + "' appears more than once in the run") {}
};

class SuiteSetMismatchError : public Error {
 public:
  explicit SuiteSetMismatchError(const std::string& message) : Error("SuiteSetMismatch: " + message) {}
};

}  // namespace syngauntlet
