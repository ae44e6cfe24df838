#pragma once

#include <stdexcept>
#include <string>

namespace moebius {

enum class Errc {
  InvalidSize,
  CrossingArcs,
  NotMaximal,
  DuplicateArc,
  ArcNotInTriangulation,
  NotFlippable,
  NotABoundaryArc,
  SizeTooSmall,
  NotNonSeparating,
  EqualPoints,
  TriangleNotInT,
  NoCentralTriangle,
  VertexIsCutCopy,
  NoReductionVertex,
  InvalidHub,
  HubMismatch,
  EmptyGraph,
  VertexNotInGraph,
  BudgetExceeded,
  ParseError,
  SizeMismatch,
  InvalidArgument,
  Internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidSize: return "InvalidSize";
    case Errc::CrossingArcs: return "CrossingArcs";
    case Errc::NotMaximal: return "NotMaximal";
    case Errc::DuplicateArc: return "DuplicateArc";
    case Errc::ArcNotInTriangulation: return "ArcNotInTriangulation";
    case Errc::NotFlippable: return "NotFlippable";
    case Errc::NotABoundaryArc: return "NotABoundaryArc";
    case Errc::SizeTooSmall: return "SizeTooSmall";
    case Errc::NotNonSeparating: return "NotNonSeparating";
    case Errc::EqualPoints: return "EqualPoints";
    case Errc::TriangleNotInT: return "TriangleNotInT";
    case Errc::NoCentralTriangle: return "NoCentralTriangle";
    case Errc::VertexIsCutCopy: return "VertexIsCutCopy";
    case Errc::NoReductionVertex: return "NoReductionVertex";
    case Errc::InvalidHub: return "InvalidHub";
    case Errc::HubMismatch: return "HubMismatch";
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::VertexNotInGraph: return "VertexNotInGraph";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ParseError: return "ParseError";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool ok, Errc c, const std::string& msg) {
  if (!ok) fail(c, msg);
}

// Internal consistency check; failures indicate a bug, not bad input.
inline void check(bool ok, const std::string& msg) {
  if (!ok) fail(Errc::Internal, msg);
}

}  // namespace moebius
