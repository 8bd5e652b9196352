#pragma once
// Trapezoidal decomposition of the free space around the simplified regions,
// built once per sweep direction.  The map is constructed in a rotated frame
// where the chosen direction points straight up, so the classic vertical
// wall machinery yields the directional walls the routing graph needs.
//
// Structure notes:
//  - Only non-vertical boundary segments are inserted; vertical edges of a
//    convex ring occur at its lexicographic extremes and are covered by the
//    stations (trap corners) of the incident edges.
//  - Shared x-coordinates are resolved by lexicographic (x, y) comparison,
//    which behaves like an infinitesimal shear; zero-width faces are valid.
//  - Point location runs on a history DAG; leaves are morphed in place when
//    a trapezoid is split, so no parent or neighbor pointers are needed.

#include <optional>
#include <vector>

#include "zos/sampling.hpp"

namespace zos {

struct TrapSeg {
  Point left, right;        // frame coordinates, lexicographically ordered
  int region = -1;          // owning region index; -1 for the frame
  bool upper_chain = false; // region interior lies below this segment
};

struct TrapFace {
  Point leftp, rightp;      // bounding stations (frame coordinates)
  int top_seg = -1;
  int bottom_seg = -1;
  bool interior = false;    // lies inside a region
  int interior_region = -1;
};

// A vertical attachment from a boundary sample point to the next region
// boundary, reported in world coordinates.  `dir` is this map's up (or down)
// direction; `foot` is where the wall meets the simplified boundary.
struct WallRecord {
  Point station;
  Point dir;
  Point foot;
  int station_region = -1;
  int target_region = -1;
  double length = 0.0;
};

// A free face whose floor and ceiling belong to two regions: those regions
// see each other vertically across this face.
struct FaceAdjacency {
  int below_region = -1;
  int above_region = -1;
  int face = -1;
};

class TrapMap {
 public:
  // `up` must be a unit vector.  The frame rect (world coordinates) is
  // enlarged as needed to contain every ring.
  TrapMap(const std::vector<SimplifiedRegion>& regions, Point up,
          Rect world_frame, double tol);

  Point to_frame(Point world) const;
  Point to_world(Point frame) const;
  Point up() const { return up_; }

  int face_count() const { return static_cast<int>(faces_.size()); }
  const std::vector<TrapFace>& faces() const { return faces_; }
  const std::vector<TrapSeg>& segments() const { return segs_; }

  // Closed containment of a world point in a face (boundaries inclusive).
  bool face_contains(int face, Point world) const;
  bool face_positive_width(int face) const;

  // Face containing the point; boundary points resolve to the smallest
  // containing face id.  Throws std::out_of_range outside the frame.
  int locate(Point world) const;

  const std::vector<WallRecord>& walls() const { return walls_; }
  const std::vector<FaceAdjacency>& adjacencies() const { return adjs_; }

 private:
  struct Node {
    enum class Kind { X, Y, Leaf } kind = Kind::Leaf;
    Point pt;                  // X node split point
    int seg = -1;              // Y node segment
    int left = -1, right = -1; // X: lex-left/right; Y: above/below
    int trap = -1;             // Leaf payload
  };

  struct TrapRec {
    Point leftp, rightp;
    int top = -1, bottom = -1;  // segment indices
    int leaf = -1;              // node holding this trap
    bool alive = true;
  };

  // Signed vertical-ish distance of p from segment s (positive above).
  double side_of(int seg, Point p) const;
  double seg_y_at(int seg, double x) const;
  int descend(Point p, Point dir) const;        // leaf node index
  void collect_faces(int node, Point p, int& best) const;
  void insert_segment(int seg);
  void build_walls_and_adjacency(
      const std::vector<SimplifiedRegion>& regions);
  bool trap_contains(const TrapRec& t, Point p) const;

  double tol_ = 0.0;
  Point up_{0, 1};
  double rot_angle_ = 0.0;     // world -> frame rotation
  std::vector<TrapSeg> segs_;
  std::vector<Node> nodes_;
  std::vector<TrapRec> traps_;
  std::vector<TrapFace> faces_;        // dense, sorted deterministically
  std::vector<int> face_of_trap_;      // trap index -> face id (-1 dead)
  std::vector<int> face_trap_;         // face id -> trap index
  std::vector<WallRecord> walls_;
  std::vector<FaceAdjacency> adjs_;
};

}  // namespace zos
