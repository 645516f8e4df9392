#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arbor {

enum class ErrorKind {
  // tree_core
  kEmptyVertexSet,
  kDuplicateVertex,
  kDisconnected,
  kCycleDetected,
  kBadEdge,
  kUnknownVertex,
  kTooLarge,
  kEmptyS,
  kDisconnectedS,
  kEdgeNotInS,
  // arboreal_poset
  kMismatchedTree,
  // link_complex
  kDimensionTooHigh,
  // hypersurface_model
  kBadIndexSet,
  kNotInChart,
  kNonpositiveScale,
  kNotOnHypersurface,
  kAxisNotZero,
  // sheaf_model
  kRootHasNoParent,
  kNotAChainMap,
  kNotComparable,
  kNotUpClosed,
  kNotInSpan,
  kNotFunctorial,
  // quiver_cat
  kShapeMismatch,
  kBrokenDifferential,
  kTableMismatch,
  // linear algebra / io
  kBadField,
  kParse,
};

std::string_view to_string(ErrorKind kind);

// Every recoverable failure in the library is reported with one of these.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace arbor
