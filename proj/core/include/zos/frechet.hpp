#pragma once
// Partial weak Fréchet similarity of polygonal curves via a minimum-exposure
// reduction: the free-space diagram of the two curves becomes a scene whose
// nonempty cells are convex 0-regions, and the weighted shortest path between
// the diagram corners measures the least forbidden-space length any
// (not necessarily monotone) matching must traverse.

#include <memory>
#include <vector>

#include "zos/engine.hpp"
#include "zos/geom.hpp"
#include "zos/scene.hpp"

namespace zos {

// Polygonal curve addressed by arc length.
class PolyCurve {
 public:
  // Needs at least two vertices with distinct consecutive ones.
  explicit PolyCurve(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return verts_; }
  int segment_count() const { return static_cast<int>(verts_.size()) - 1; }
  double length() const { return breaks_.back(); }
  // Arc-length positions of the vertices; segment i spans
  // [breaks()[i], breaks()[i+1]].
  const std::vector<double>& breaks() const { return breaks_; }
  Point eval(double s) const;  // clamped to [0, length()]

 private:
  std::vector<Point> verts_;
  std::vector<double> breaks_;
};

struct FreeSpaceCell {
  Rect rect;                                 // diagram coordinates
  std::shared_ptr<const ConvexShape> shape;  // null when the cell is empty
};

// Free-space diagram at leash length d: the rectangle
// [0, |pi|] x [0, |sigma|] cut into one cell per segment pair, each holding
// the convex sub-threshold set {(x, y) : ||pi(x) - sigma(y)|| <= d} — an
// ellipse with axes along the diagonals, degenerating to a slab for parallel
// segments, clipped to the cell rectangle.
class FreeSpaceDiagram {
 public:
  FreeSpaceDiagram(PolyCurve pi, PolyCurve sigma, double d);  // d >= 0

  const PolyCurve& pi() const { return pi_; }
  const PolyCurve& sigma() const { return sigma_; }
  double threshold() const { return d_; }
  Rect bounds() const;  // the diagram rectangle

  int cols() const { return pi_.segment_count(); }     // x axis, pi
  int rows() const { return sigma_.segment_count(); }  // y axis, sigma
  const FreeSpaceCell& cell(int i, int j) const;       // column i, row j
  int nonempty_cells() const { return nonempty_; }

  // Scene with every nonempty cell as a 0-region in the unit-weight plane.
  Scene scene() const;

 private:
  PolyCurve pi_;
  PolyCurve sigma_;
  double d_;
  std::vector<FreeSpaceCell> cells_;  // row-major, j * cols() + i
  int nonempty_ = 0;
};

struct MinExResult {
  double minex_value = 0.0;      // length traversed outside free space
  WeightedPath path;             // realized corner-to-corner diagram path
  double matched_measure = 0.0;  // length traversed inside free space
  int cells_total = 0;
  int cells_nonempty = 0;
};

// Minimum exposure between the curves at leash d: the cheapest diagram path
// from (0, 0) to (|pi|, |sigma|) where free space costs nothing and the rest
// costs its length.  The returned value is within (1 + epsilon) of optimal
// and never exceeds the diagram diagonal (the straight corner-to-corner
// segment is always a fallback candidate).  Requires d >= 0, 0 < epsilon < 1.
MinExResult minex(const PolyCurve& pi, const PolyCurve& sigma, double d,
                  double epsilon);

// True when the curves match within leash d, i.e. the minimum exposure is
// zero up to `tol`.  Decision-only wrapper over minex with a fixed internal
// accuracy: any multiplicative factor preserves the zero/nonzero sign.
bool weak_frechet_decide(const PolyCurve& pi, const PolyCurve& sigma, double d,
                         double tol);

}  // namespace zos
