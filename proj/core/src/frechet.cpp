#include "zos/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

namespace zos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Above this, 1 - c^2 (c = cosine between the two segment directions) is too
// close to zero for the ellipse center arithmetic and the cell is treated as
// the parallel-limit slab; the in-cell boundary error of either branch stays
// below ~1e-8 of the cell size at the crossover.
constexpr double kParallelEps = 1e-8;

Point lerp(Point a, Point b, double t) { return a + t * (b - a); }

// Free-space set of one segment pair in cell-local coordinates: with xi along
// pi's segment and psi along sigma's, the squared distance
//   D(xi, psi) = ||w + xi*u - psi*v||^2,    w = pi0 - sigma0,
// has quadratic part (1-c)*s^2 + (1+c)*t^2 in the rotated frame
// s = (xi + psi)/sqrt(2), t = (xi - psi)/sqrt(2), c = dot(u, v).  The
// sublevel set D <= d^2 is therefore an ellipse with axes along the two cell
// diagonals; for parallel segments one eigenvalue vanishes and it becomes a
// slab (possibly of zero width) normal to the remaining one.  Returns null
// when the set misses the cell rectangle.
std::shared_ptr<const ConvexShape> cell_shape(Point a0, Point a1, Point b0,
                                              Point b1, Rect rect, double d) {
  const Point u = normalized(a1 - a0);
  const Point v = normalized(b1 - b0);
  const Point w = a0 - b0;
  const double c = std::clamp(dot(u, v), -1.0, 1.0);
  const double wu = dot(w, u);
  const double wv = dot(w, v);
  const double denom = 1.0 - c * c;

  std::shared_ptr<const ConvexShape> shape;
  if (denom <= kParallelEps) {
    // Parallel limit: D depends only on s = xi - sign(c)*psi, with minimum
    // ||w||^2 - wu^2 (the inter-line distance squared) at s = -wu.
    const double csign = c >= 0.0 ? 1.0 : -1.0;
    const double fmin = dot(w, w) - wu * wu;
    if (d * d < fmin) return nullptr;
    const double h = std::sqrt(std::max(0.0, d * d - fmin));
    // s changes by sqrt(2) per unit along the in-cell normal (1, -sign)/√2,
    // so the slab has half-width h/sqrt(2) about the line s = -wu.
    const Point n = normalized(Point{1.0, -csign});
    const Point cc{0.5 * (rect.xmin + rect.xmax),
                   0.5 * (rect.ymin + rect.ymax)};
    const Point local{cc.x - rect.xmin, cc.y - rect.ymin};
    const double shift = -wu / std::sqrt(2.0) - dot(local, n);
    const Point center = cc + shift * n;
    const double angle = std::atan2(1.0, csign);  // slab axis direction
    shape = std::make_shared<EllipseRectShape>(center, kInf,
                                               h / std::sqrt(2.0), angle, rect);
  } else {
    const double xi0 = (c * wv - wu) / denom;
    const double psi0 = (wv - c * wu) / denom;
    const Point at_min = w + xi0 * u - psi0 * v;
    const double fmin = dot(at_min, at_min);
    if (d * d < fmin) return nullptr;
    const double lead = std::max(0.0, d * d - fmin);
    const Point center{rect.xmin + xi0, rect.ymin + psi0};
    shape = std::make_shared<EllipseRectShape>(
        center, std::sqrt(lead / (1.0 - c)), std::sqrt(lead / (1.0 + c)),
        std::acos(-1.0) / 4.0, rect);
  }
  const auto* er = static_cast<const EllipseRectShape*>(shape.get());
  return er->empty() ? nullptr : shape;
}

double free_length(const WeightedPath& p) {
  double len = 0.0;
  for (const PathSegment& seg : p.segments) {
    if (seg.medium != Medium::ZeroRegion) continue;
    for (size_t i = 0; i + 1 < seg.geometry.size(); ++i)
      len += dist(seg.geometry[i], seg.geometry[i + 1]);
  }
  return len;
}

}  // namespace

PolyCurve::PolyCurve(std::vector<Point> vertices)
    : verts_(std::move(vertices)) {
  if (verts_.size() < 2)
    throw std::invalid_argument("curve needs at least two vertices");
  breaks_.reserve(verts_.size());
  breaks_.push_back(0.0);
  for (size_t i = 1; i < verts_.size(); ++i) {
    const double step = dist(verts_[i - 1], verts_[i]);
    if (step <= 0.0)
      throw std::invalid_argument("curve repeats consecutive vertices");
    breaks_.push_back(breaks_.back() + step);
  }
}

Point PolyCurve::eval(double s) const {
  s = std::clamp(s, 0.0, breaks_.back());
  const size_t hi = std::min(
      verts_.size() - 1,
      static_cast<size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), s) -
                          breaks_.begin()));
  const double span = breaks_[hi] - breaks_[hi - 1];
  return lerp(verts_[hi - 1], verts_[hi], (s - breaks_[hi - 1]) / span);
}

FreeSpaceDiagram::FreeSpaceDiagram(PolyCurve pi, PolyCurve sigma, double d)
    : pi_(std::move(pi)), sigma_(std::move(sigma)), d_(d) {
  if (d < 0.0) throw std::invalid_argument("negative leash length");
  const auto& bx = pi_.breaks();
  const auto& by = sigma_.breaks();
  cells_.resize(static_cast<size_t>(cols()) * rows());
  for (int j = 0; j < rows(); ++j)
    for (int i = 0; i < cols(); ++i) {
      FreeSpaceCell& cell = cells_[static_cast<size_t>(j) * cols() + i];
      cell.rect = {bx[i], by[j], bx[i + 1], by[j + 1]};
      cell.shape = cell_shape(pi_.vertices()[i], pi_.vertices()[i + 1],
                              sigma_.vertices()[j], sigma_.vertices()[j + 1],
                              cell.rect, d_);
      if (cell.shape) ++nonempty_;
    }
}

Rect FreeSpaceDiagram::bounds() const {
  return {0.0, 0.0, pi_.length(), sigma_.length()};
}

const FreeSpaceCell& FreeSpaceDiagram::cell(int i, int j) const {
  if (i < 0 || i >= cols() || j < 0 || j >= rows())
    throw std::out_of_range("free-space cell index");
  return cells_[static_cast<size_t>(j) * cols() + i];
}

Scene FreeSpaceDiagram::scene() const {
  Scene sc;
  for (int j = 0; j < rows(); ++j)
    for (int i = 0; i < cols(); ++i) {
      const FreeSpaceCell& cell = cells_[static_cast<size_t>(j) * cols() + i];
      if (!cell.shape) continue;
      sc.regions.push_back({RegionWeight::Zero, cell.shape,
                            "cell(" + std::to_string(i) + "," +
                                std::to_string(j) + ")"});
    }
  return sc;
}

MinExResult minex(const PolyCurve& pi, const PolyCurve& sigma, double d,
                  double epsilon) {
  const FreeSpaceDiagram diagram(pi, sigma, d);
  const Rect box = diagram.bounds();
  const Point s{box.xmin, box.ymin};
  const Point t{box.xmax, box.ymax};

  const StructureB structure = StructureB::build(diagram.scene(), epsilon);
  std::optional<WeightedPath> routed = structure.query(s, t);
  WeightedPath direct = structure.straight_path(s, t);
  // No obstacles, so the straight diagonal is always legal; keeping the
  // cheaper candidate caps the result at the diagram diagonal even when the
  // cone graph's (1+eps) overhead would exceed it.
  WeightedPath best =
      (!routed || direct.realized_weight < routed->realized_weight)
          ? std::move(direct)
          : std::move(*routed);

  MinExResult res;
  res.minex_value = best.realized_weight;
  res.matched_measure = free_length(best);
  res.path = std::move(best);
  res.cells_total = diagram.cols() * diagram.rows();
  res.cells_nonempty = diagram.nonempty_cells();
  return res;
}

bool weak_frechet_decide(const PolyCurve& pi, const PolyCurve& sigma, double d,
                         double tol) {
  // The decision only needs zero versus nonzero exposure, which any build
  // accuracy preserves; 0.25 keeps the cone count small.
  return minex(pi, sigma, d, 0.25).minex_value <= tol;
}

}  // namespace zos
