#pragma once

#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace inflate_kit {

enum class ErrorKind {
  ParseError,
  InvariantViolation,
  CycleDetected,
  UnknownElement,
  TooLarge,
  NotFunctorial,
  MissingStalk,
  PartialMap,
  EmptyOpenSet,
  NotSubset,
  NotOpen,
  BaseMismatch,
  BadPartition,
  MinimalityViolated,
  EmptySimplex,
  MissingCount,
  NonPositiveCount,
  DegenerateMap,
  NotSurjective,
  NotSimplicial,
  NotConnected,
  HypothesisViolated,
  CertificateFailed,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotFunctorial: return "NotFunctorial";
    case ErrorKind::MissingStalk: return "MissingStalk";
    case ErrorKind::PartialMap: return "PartialMap";
    case ErrorKind::EmptyOpenSet: return "EmptyOpenSet";
    case ErrorKind::NotSubset: return "NotSubset";
    case ErrorKind::NotOpen: return "NotOpen";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::BadPartition: return "BadPartition";
    case ErrorKind::MinimalityViolated: return "MinimalityViolated";
    case ErrorKind::EmptySimplex: return "EmptySimplex";
    case ErrorKind::MissingCount: return "MissingCount";
    case ErrorKind::NonPositiveCount: return "NonPositiveCount";
    case ErrorKind::DegenerateMap: return "DegenerateMap";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::CertificateFailed: return "CertificateFailed";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it onto a stable exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Size bounds for the exponential enumerations.
struct Limits {
  std::size_t max_open_elements = 20;
  std::size_t max_faces = 50000;

  /// Number of open sets (or generated topology members) tolerated when a
  /// family is enumerated without a per-element bound.
  std::size_t max_family() const {
    return max_open_elements >= 63 ? static_cast<std::size_t>(-1)
                                   : (std::size_t{1} << max_open_elements);
  }

  /// Reads `INFLATE_KIT_LIMITS`, e.g. "opens=24,faces=200000". Unknown keys are
  /// rejected so typos do not silently fall back to the defaults.
  static Limits from_env() {
    Limits limits;
    const char* raw = std::getenv("INFLATE_KIT_LIMITS");
    if (raw == nullptr) return limits;
    std::string_view text(raw);
    while (!text.empty()) {
      auto comma = text.find(',');
      auto item = text.substr(0, comma);
      text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string_view::npos)
        throw Error(ErrorKind::ParseError, "INFLATE_KIT_LIMITS entry without '=': " + std::string(item));
      auto key = item.substr(0, eq);
      std::size_t value = 0;
      try {
        value = std::stoull(std::string(item.substr(eq + 1)));
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "INFLATE_KIT_LIMITS value is not a number: " + std::string(item));
      }
      if (key == "opens")
        limits.max_open_elements = value;
      else if (key == "faces")
        limits.max_faces = value;
      else
        throw Error(ErrorKind::ParseError, "unknown INFLATE_KIT_LIMITS key: " + std::string(key));
    }
    return limits;
  }
};

}  // namespace inflate_kit
