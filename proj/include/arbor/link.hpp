#pragma once

// The arboreal link as the order complex of the poset minus its minimum, with
// exact homology and combinatorial regularity checks.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arbor/linalg.hpp"
#include "arbor/poset.hpp"

namespace arbor {

class SimplicialComplex {
 public:
  using Simplex = std::vector<int>;  // sorted vertex indices

  SimplicialComplex() = default;
  // Adds the given simplices and all their faces.
  SimplicialComplex(std::vector<std::string> labels, const std::vector<Simplex>& simplices);
  // Trusts the caller: layers[d] holds every d-simplex, sorted, and the family
  // is closed under taking faces.
  static SimplicialComplex FromLayers(std::vector<std::string> labels,
                                      std::vector<std::vector<Simplex>> layers);

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t num_vertices() const { return labels_.size(); }
  // -1 for the empty complex.
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  // Simplices of dimension d in lexicographic order.
  const std::vector<Simplex>& simplices(int d) const { return by_dim_[d]; }
  // Simplex counts by dimension.
  std::vector<std::size_t> face_counts() const;
  long euler_characteristic() const;
  // Position of s within simplices(s.size() - 1), or -1.
  long index_of(const Simplex& s) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Simplex>> by_dim_;
};

// Strict chains of a finite poset given by its strict order relation.
SimplicialComplex order_complex(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& less,
                                std::vector<std::string> labels);
SimplicialComplex order_complex(const ArborealPoset& poset, bool drop_minimum);

// Cell counts of the link: entry d counts non-minimum elements of rank d + 1.
std::vector<std::size_t> f_vector(const ArborealPoset& poset);
long euler_characteristic(const std::vector<std::size_t>& counts);

// Reduced Betti numbers in degrees -1 .. dimension.
struct BettiNumbers {
  std::vector<std::size_t> values;  // values[d + 1] is the degree-d number
  std::size_t at(int degree) const;
  int max_degree() const { return static_cast<int>(values.size()) - 2; }
  // The reduced homology of a sphere of the given dimension (-1 = empty).
  bool is_sphere(int dim) const;
  // Nonzero only in `degree`, where it equals `count`.
  bool is_bouquet(int degree, std::size_t count) const;
  std::string to_string() const;
};

BettiNumbers betti(const SimplicialComplex& sc, const Field& field);

// Boundary matrix from d-simplices to (d-1)-simplices; d = 0 gives the
// augmentation row.
SparseMatrix boundary_matrix(const SimplicialComplex& sc, int d);

struct RegularityReport {
  std::size_t checked = 0;
  std::vector<int> violators;  // poset indices
  bool ok() const { return violators.empty(); }
};

// For every non-minimum p of rank r, the open interval (minimum, p) must have
// the reduced homology of a sphere of dimension r - 2 (empty for r = 1).
RegularityReport check_cell_regularity(const ArborealPoset& poset, const Field& field);

// Any two non-minimum elements have no common lower bound besides the minimum,
// or a greatest one.
bool check_intersection_property(const ArborealPoset& poset);

enum class ExportFormat { kJson, kOff };

// JSON: {"vertices": [...], "simplices": [[...], ...]} listing every simplex.
// OFF: vertices with force-layout coordinates and one facet per simplex of
// dimension 1 or 2. Throws DimensionTooHigh for OFF above dimension 3.
std::string export_complex(const SimplicialComplex& sc, ExportFormat format);

// OFF mesh of the regular cell structure: one vertex per 0-cell, a 2-vertex
// facet per 1-cell and a polygon per 2-cell with its boundary in cyclic order.
// Throws DimensionTooHigh when the link has dimension above 3.
std::string export_cell_mesh(const ArborealPoset& poset);

}  // namespace arbor
