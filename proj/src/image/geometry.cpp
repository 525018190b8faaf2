#include "augkit/image/geometry.hpp"

#include <cmath>

namespace augkit::image {

Mat3 solve_homography(const std::array<double, 8>& src,
                      const std::array<double, 8>& dst) {
  // Unknowns h0..h7 with h8 fixed to 1. For each correspondence:
  //   h0 x + h1 y + h2 - h6 x X - h7 y X = X
  //   h3 x + h4 y + h5 - h6 x Y - h7 y Y = Y
  double a[8][9] = {};
  for (int i = 0; i < 4; ++i) {
    const double x = src[2 * i], y = src[2 * i + 1];
    const double X = dst[2 * i], Y = dst[2 * i + 1];
    double* r0 = a[2 * i];
    double* r1 = a[2 * i + 1];
    r0[0] = x;  r0[1] = y;  r0[2] = 1;
    r0[6] = -x * X;  r0[7] = -y * X;  r0[8] = X;
    r1[3] = x;  r1[4] = y;  r1[5] = 1;
    r1[6] = -x * Y;  r1[7] = -y * Y;  r1[8] = Y;
  }

  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < 8; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 8; ++row)
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    if (std::abs(a[pivot][col]) < 1e-10)
      throw ValidationError("perspective points are degenerate");
    if (pivot != col)
      for (int k = 0; k < 9; ++k) std::swap(a[col][k], a[pivot][k]);
    for (int row = 0; row < 8; ++row) {
      if (row == col) continue;
      const double f = a[row][col] / a[col][col];
      if (f == 0.0) continue;
      for (int k = col; k < 9; ++k) a[row][k] -= f * a[col][k];
    }
  }

  Mat3 h;
  for (int i = 0; i < 8; ++i) h[static_cast<std::size_t>(i)] = a[i][8] / a[i][i];
  h[8] = 1.0;
  return h;
}

Mat3 invert3(const Mat3& m) {
  const double det = m[0] * (m[4] * m[8] - m[5] * m[7]) -
                     m[1] * (m[3] * m[8] - m[5] * m[6]) +
                     m[2] * (m[3] * m[7] - m[4] * m[6]);
  if (std::abs(det) < 1e-12)
    throw ValidationError("projective matrix is singular");
  const double d = 1.0 / det;
  return {(m[4] * m[8] - m[5] * m[7]) * d, (m[2] * m[7] - m[1] * m[8]) * d,
          (m[1] * m[5] - m[2] * m[4]) * d, (m[5] * m[6] - m[3] * m[8]) * d,
          (m[0] * m[8] - m[2] * m[6]) * d, (m[2] * m[3] - m[0] * m[5]) * d,
          (m[3] * m[7] - m[4] * m[6]) * d, (m[1] * m[6] - m[0] * m[7]) * d,
          (m[0] * m[4] - m[1] * m[3]) * d};
}

std::pair<double, double> project(const Mat3& h, double x, double y) {
  const double w = h[6] * x + h[7] * y + h[8];
  if (std::abs(w) < 1e-12)
    throw ValidationError("projective point maps to infinity");
  return {(h[0] * x + h[1] * y + h[2]) / w, (h[3] * x + h[4] * y + h[5]) / w};
}

Raster warp_perspective(const Raster& img, const Mat3& dst_to_src, int out_w,
                        int out_h, Rgba fill) {
  Raster out(out_w, out_h, img.channels);
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      const auto [sx, sy] = project(dst_to_src, x, y);
      put_pixel(out, x, y, sample_bilinear(img, sx, sy, fill));
    }
  }
  return out;
}

}  // namespace augkit::image
