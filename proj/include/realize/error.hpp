#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace realize {

enum class ErrorCode {
  MissingPrice,
  NegativeBase,
  InvalidQuantity,
  InsufficientOwnedShares,
  UnknownLotId,
  NoOpenBorrow,
  OverCover,
  NothingToTransmit,
  ReservationMismatch,
  UnknownScenario,
  SyntaxError,
  UnknownDirective,
  NonMonotonicTick,
  UndefinedPrice,
  DuplicatePrice,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingPrice: return "MissingPrice";
    case ErrorCode::NegativeBase: return "NegativeBase";
    case ErrorCode::InvalidQuantity: return "InvalidQuantity";
    case ErrorCode::InsufficientOwnedShares: return "InsufficientOwnedShares";
    case ErrorCode::UnknownLotId: return "UnknownLotId";
    case ErrorCode::NoOpenBorrow: return "NoOpenBorrow";
    case ErrorCode::OverCover: return "OverCover";
    case ErrorCode::NothingToTransmit: return "NothingToTransmit";
    case ErrorCode::ReservationMismatch: return "ReservationMismatch";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownDirective: return "UnknownDirective";
    case ErrorCode::NonMonotonicTick: return "NonMonotonicTick";
    case ErrorCode::UndefinedPrice: return "UndefinedPrice";
    case ErrorCode::DuplicatePrice: return "DuplicatePrice";
  }
  return "Unknown";
}

/// Source position of a DSL diagnostic, 1-based.
struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
};

/// Every engine and parser failure. `what()` is the fully rendered diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail)
      : std::runtime_error(render(code, detail, std::nullopt, std::nullopt)),
        code_(code),
        detail_(std::move(detail)) {}

  Error(ErrorCode code, std::string detail, SourcePos pos)
      : std::runtime_error(render(code, detail, pos, std::nullopt)),
        code_(code),
        detail_(std::move(detail)),
        pos_(pos) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::optional<SourcePos>& position() const noexcept { return pos_; }
  const std::optional<std::size_t>& event_index() const noexcept {
    return event_index_;
  }

  /// Copy of this error annotated with the index of the offending event.
  Error at_event(std::size_t index) const {
    Error e = *this;
    e.event_index_ = index;
    static_cast<std::runtime_error&>(e) =
        std::runtime_error(render(code_, detail_, pos_, index));
    return e;
  }

 private:
  static std::string render(ErrorCode code, const std::string& detail,
                            std::optional<SourcePos> pos,
                            std::optional<std::size_t> event) {
    std::string out;
    if (pos) {
      out += std::to_string(pos->line) + ":" + std::to_string(pos->column) + ": ";
    }
    if (event) out += "event #" + std::to_string(*event) + ": ";
    out += to_string(code);
    if (!detail.empty()) out += ": " + detail;
    return out;
  }

  ErrorCode code_;
  std::string detail_;
  std::optional<SourcePos> pos_;
  std::optional<std::size_t> event_index_;
};

}  // namespace realize
