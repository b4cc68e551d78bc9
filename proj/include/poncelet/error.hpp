#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace poncelet {

enum class ErrorKind {
  ModulusOutOfRange,
  NotAnEllipse,
  PointNotOutside,
  DegenerateSpectrum,
  NotNested,
  InvalidParameter,
  LimitingPoint,
  HomographySingularity,
  OutOfAnnulus,
  NoIntersection,
  NotInUPlus,
  NotInDelta,
  InvalidRotation,
  OffCircle,
  OffOuterConic,
  BadSignature,
  InvalidPeriod,
  UnknownSet,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ModulusOutOfRange: return "modulus out of range";
    case ErrorKind::NotAnEllipse: return "not an ellipse";
    case ErrorKind::PointNotOutside: return "point not outside";
    case ErrorKind::DegenerateSpectrum: return "degenerate spectrum";
    case ErrorKind::NotNested: return "not nested";
    case ErrorKind::InvalidParameter: return "invalid parameter";
    case ErrorKind::LimitingPoint: return "limiting point";
    case ErrorKind::HomographySingularity: return "homography singularity";
    case ErrorKind::OutOfAnnulus: return "out of annulus";
    case ErrorKind::NoIntersection: return "no intersection";
    case ErrorKind::NotInUPlus: return "not in U+";
    case ErrorKind::NotInDelta: return "not in Delta";
    case ErrorKind::InvalidRotation: return "invalid rotation";
    case ErrorKind::OffCircle: return "off circle";
    case ErrorKind::OffOuterConic: return "off outer conic";
    case ErrorKind::BadSignature: return "bad signature";
    case ErrorKind::InvalidPeriod: return "invalid period";
    case ErrorKind::UnknownSet: return "unknown set";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + (detail.empty() ? "" : ": " + detail)),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

// Raised when a pencil parameter sits on the limiting boundary; carries the point.
class LimitingPointError : public Error {
 public:
  LimitingPointError(double x, double y)
      : Error(ErrorKind::LimitingPoint, "member degenerates to the limiting point"), x(x), y(y) {}
  double x, y;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail = {}) { throw Error(kind, detail); }

}  // namespace poncelet
