#pragma once

#include <array>

#include "augkit/image/raster.hpp"

namespace augkit::image {

// Row-major 3x3 matrix for planar projective maps.
using Mat3 = std::array<double, 9>;

// Solves the homography H with H * (src_i, 1) ~ (dst_i, 1) for four point
// correspondences, via the standard 8x8 linear system with h22 = 1.
// Points are packed x0,y0,x1,y1,... Throws ValidationError when the system
// is singular (degenerate quadrilateral).
Mat3 solve_homography(const std::array<double, 8>& src,
                      const std::array<double, 8>& dst);

Mat3 invert3(const Mat3& m);

// (x, y) -> H * (x, y, 1), perspective-divided.
std::pair<double, double> project(const Mat3& h, double x, double y);

// Renders out_w x out_h by mapping each destination pixel through dst_to_src
// and sampling the source bilinearly; unmapped pixels get `fill`.
Raster warp_perspective(const Raster& img, const Mat3& dst_to_src, int out_w,
                        int out_h, Rgba fill);

}  // namespace augkit::image
