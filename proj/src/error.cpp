#include "arbor/error.hpp"

namespace arbor {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptyVertexSet: return "EmptyVertexSet";
    case ErrorKind::kDuplicateVertex: return "DuplicateVertex";
    case ErrorKind::kDisconnected: return "Disconnected";
    case ErrorKind::kCycleDetected: return "CycleDetected";
    case ErrorKind::kBadEdge: return "BadEdge";
    case ErrorKind::kUnknownVertex: return "UnknownVertex";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kEmptyS: return "EmptyS";
    case ErrorKind::kDisconnectedS: return "DisconnectedS";
    case ErrorKind::kEdgeNotInS: return "EdgeNotInS";
    case ErrorKind::kMismatchedTree: return "MismatchedTree";
    case ErrorKind::kDimensionTooHigh: return "DimensionTooHigh";
    case ErrorKind::kBadIndexSet: return "BadIndexSet";
    case ErrorKind::kNotInChart: return "NotInChart";
    case ErrorKind::kNonpositiveScale: return "NonpositiveScale";
    case ErrorKind::kNotOnHypersurface: return "NotOnHypersurface";
    case ErrorKind::kAxisNotZero: return "AxisNotZero";
    case ErrorKind::kRootHasNoParent: return "RootHasNoParent";
    case ErrorKind::kNotAChainMap: return "NotAChainMap";
    case ErrorKind::kNotComparable: return "NotComparable";
    case ErrorKind::kNotUpClosed: return "NotUpClosed";
    case ErrorKind::kNotInSpan: return "NotInSpan";
    case ErrorKind::kNotFunctorial: return "NotFunctorial";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kBrokenDifferential: return "BrokenDifferential";
    case ErrorKind::kTableMismatch: return "TableMismatch";
    case ErrorKind::kBadField: return "BadField";
    case ErrorKind::kParse: return "Parse";
  }
  return "Unknown";
}

}  // namespace arbor
