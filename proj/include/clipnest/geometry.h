// Copyright 2026 The Clipnest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLIPNEST_GEOMETRY_H_
#define CLIPNEST_GEOMETRY_H_

#include <algorithm>

namespace clipnest {

// Axis-aligned rectangle in CSS pixels; (x, y) is the top-left corner.
struct Rect {
  double x = 0;
  double y = 0;
  double width = 0;
  double height = 0;

  double right() const { return x + width; }
  double bottom() const { return y + height; }
  double area() const { return width * height; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

inline double IntersectionArea(const Rect& a, const Rect& b) {
  const double w = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const double h = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  return (w > 0 && h > 0) ? w * h : 0.0;
}

// Intersection over union, in [0, 1] and symmetric. Two empty rects have no
// meaningful union; they score 1 when identical and 0 otherwise, so that
// IoU == 1 exactly when the rects are equal.
inline double IntersectionOverUnion(const Rect& a, const Rect& b) {
  const double inter = IntersectionArea(a, b);
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0) return a == b ? 1.0 : 0.0;
  return inter / uni;
}

}  // namespace clipnest

#endif  // CLIPNEST_GEOMETRY_H_
