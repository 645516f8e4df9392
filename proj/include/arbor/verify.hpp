#pragma once

// Batch checks of the library's invariants over every tree isomorphism class
// up to a size bound.

#include <string>
#include <vector>

#include "arbor/io.hpp"
#include "arbor/linalg.hpp"

namespace arbor {

// Largest tree size accepted by run_verify.
constexpr int kMaxVerifySize = 6;
// The sheaf and quiver suites stop at this size; larger bounds only widen the
// combinatorial suites.
constexpr int kMaxCategorySize = 4;

struct VerifyOptions {
  int max_size = 3;
  std::vector<std::string> suites;  // empty = all
  Field field = Field::rationals();
  unsigned workers = 1;
};

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> failures;  // sorted
  bool ok() const { return failures.empty(); }
};

struct VerifyReport {
  int max_size = 0;
  std::string field;
  std::vector<SuiteResult> suites;  // in suite_names() order
  bool ok() const;
  io::Json to_json() const;
};

// enumeration, poset, homology, cells, hypersurface, sheaf, quiver
const std::vector<std::string>& suite_names();

// Throws TooLarge when max_size exceeds kMaxVerifySize and Parse for an
// unknown suite name. The report does not depend on the worker count.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace arbor
