#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sseq/cochain_complex.hpp"

namespace sseq {

/// Finite abstract simplicial complex with labeled vertices, closed under
/// faces by construction. Simplices are stored as sorted vertex-id tuples,
/// ordered by (dimension, lexicographic ids), so all derived bases are
/// deterministic.
class SimplicialComplex {
 public:
  /// Closes the given simplices under faces and dedupes.
  static SimplicialComplex from_simplices(
      const std::vector<std::vector<std::string>>& given);

  std::size_t simplex_count() const { return simplices_.size(); }
  int dimension() const;  // -1 when empty

  const std::vector<std::string>& vertex_labels() const { return vertices_; }
  const std::vector<int>& simplex(std::size_t id) const { return simplices_[id]; }
  int simplex_dim(std::size_t id) const {
    return static_cast<int>(simplices_[id].size()) - 1;
  }
  std::string simplex_label(std::size_t id) const;
  std::optional<std::size_t> find(const std::vector<int>& sorted_vertex_ids) const;
  std::optional<std::size_t> find_by_labels(
      const std::vector<std::string>& verts) const;
  const std::vector<std::size_t>& simplices_of_dim(int d) const;

  /// Facets of a simplex with the index of the omitted vertex (the sign of
  /// the incidence is (-1)^index).
  std::vector<std::pair<std::size_t, int>> facets(std::size_t id) const;

  /// Subcomplexes are represented as membership masks over simplex ids.
  using Mask = std::vector<char>;
  Mask empty_mask() const { return Mask(simplices_.size(), 0); }
  Mask full_mask() const { return Mask(simplices_.size(), 1); }
  bool mask_closed(const Mask& m) const;
  /// Adds all faces of the marked simplices.
  Mask close_mask(Mask m) const;
  Mask skeleton_mask(int k) const;
  bool mask_subset(const Mask& inner, const Mask& outer) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<std::vector<int>> simplices_;  // sorted ids; sorted by (dim, lex)
  std::vector<std::vector<std::size_t>> by_dim_;
  std::map<std::vector<int>, std::size_t> index_;
  static const std::vector<std::size_t> kNoSimplices;
};

using SimplicialComplexPtr = std::shared_ptr<const SimplicialComplex>;

/// Flag of closed subcomplexes Y_0 = X >= Y_{-1} >= ... >= Y_{-n}; the step
/// Y_{-n-1} is the empty complex. steps[k] holds Y_{-k-1}.
struct ClosedSubcomplexFlag {
  SimplicialComplexPtr ambient;
  std::vector<SimplicialComplex::Mask> steps;

  int depth() const { return static_cast<int>(steps.size()); }
  /// Y_p for any p <= 0 (full at 0, empty at or below -depth-1).
  SimplicialComplex::Mask step(int p) const;
  std::vector<std::string> validate() const;  // closure and nesting
  void ensure_valid() const;
};

/// Cellular sheaf: a stalk per simplex and a restriction map per
/// codimension-one incidence, commuting along two-step face chains.
class CellularSheaf {
 public:
  static CellularSheaf constant(SimplicialComplexPtr x, std::size_t rank);
  CellularSheaf(SimplicialComplexPtr x, std::vector<std::size_t> stalk_ranks,
                std::map<std::pair<std::size_t, std::size_t>, IntMatrix>
                    restrictions);

  const SimplicialComplex& space() const { return *space_; }
  const SimplicialComplexPtr& space_ptr() const { return space_; }
  std::size_t stalk_rank(std::size_t id) const { return stalks_[id]; }
  /// Restriction along a codimension-one face relation face < coface.
  const IntMatrix& restriction(std::size_t face, std::size_t coface) const;

  std::vector<std::string> validate() const;
  void ensure_valid() const;

 private:
  SimplicialComplexPtr space_;
  std::vector<std::size_t> stalks_;
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> restr_;
};

using CellularSheafPtr = std::shared_ptr<const CellularSheaf>;

/// Vertex map carrying simplices to simplices (collapses allowed).
struct SimplicialMap {
  SimplicialComplexPtr source;
  SimplicialComplexPtr target;
  std::vector<int> vertex_image;  // source vertex id -> target vertex id

  std::vector<std::string> validate() const;
  void ensure_valid() const;
  /// Target simplex id of the image of a source simplex.
  std::size_t image_simplex(std::size_t source_id) const;
};

/// Barycentric subdivision: vertices of the subdivision are the simplices of
/// the original complex, simplices are strict face chains. Sheaves pull back
/// along the last-vertex map (stalk at a chain = stalk at its top simplex).
struct Subdivision {
  SimplicialComplexPtr complex;                 // the subdivided complex
  std::vector<std::size_t> vertex_to_original;  // subdivision vertex -> simplex
  std::vector<std::vector<std::size_t>> chains; // per simplex: original ids, ascending dim

  /// Chains lying entirely inside a closed subcomplex (its subdivided copy).
  SimplicialComplex::Mask subdivided_mask(const SimplicialComplex::Mask& m) const;
  /// Chains avoiding the subcomplex entirely: the closed complement of the
  /// open star of the subdivided copy.
  SimplicialComplex::Mask star_complement_mask(
      const SimplicialComplex::Mask& m) const;

  CellularSheaf pullback(const CellularSheaf& s) const;
};

Subdivision barycentric_subdivision(const SimplicialComplexPtr& x);

}  // namespace sseq
