#pragma once

#include <algorithm>

namespace urbanmot {

// Axis-aligned box, top-left anchored. Coordinates are real-valued pixels;
// w and h must stay positive.
struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  double right() const { return x + w; }
  double bottom() const { return y + h; }
  double center_x() const { return x + 0.5 * w; }
  double center_y() const { return y + 0.5 * h; }

  bool valid() const { return w > 0.0 && h > 0.0; }

  bool operator==(const BoundingBox&) const = default;
};

inline double intersection_area(const BoundingBox& a, const BoundingBox& b) {
  const double iw = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  return std::max(0.0, iw) * std::max(0.0, ih);
}

// Jaccard overlap of two boxes, in [0,1]. Identical boxes compare as 1
// exactly; the edge arithmetic alone can drift by an ulp when x + w is not
// representable.
inline double iou(const BoundingBox& a, const BoundingBox& b) {
  if (a == b) return 1.0;
  const double inter = intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

}  // namespace urbanmot
