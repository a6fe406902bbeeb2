#pragma once

// Reference-element shape functions for bilinear quads and trilinear hexes
// (VTK node ordering) plus the 2-point Gauss rule, shared by the mesh
// validators and the assembler.

#include <array>

namespace wgband::detail {

inline constexpr double gauss2[2] = {-0.577350269189625765, 0.577350269189625765};

// Hex local nodes: 0:(-,-,-) 1:(+,-,-) 2:(+,+,-) 3:(-,+,-) 4..7 same with +zeta.
inline constexpr int hex_sign[8][3] = {{-1, -1, -1}, {1, -1, -1}, {1, 1, -1},
                                       {-1, 1, -1},  {-1, -1, 1}, {1, -1, 1},
                                       {1, 1, 1},    {-1, 1, 1}};

inline std::array<double, 8> hex_shape(double x, double y, double z) {
  std::array<double, 8> N;
  for (int a = 0; a < 8; ++a)
    N[a] = 0.125 * (1 + hex_sign[a][0] * x) * (1 + hex_sign[a][1] * y) *
           (1 + hex_sign[a][2] * z);
  return N;
}

inline void hex_dshape(double x, double y, double z, double dN[8][3]) {
  for (int a = 0; a < 8; ++a) {
    const double sx = hex_sign[a][0], sy = hex_sign[a][1], sz = hex_sign[a][2];
    dN[a][0] = 0.125 * sx * (1 + sy * y) * (1 + sz * z);
    dN[a][1] = 0.125 * (1 + sx * x) * sy * (1 + sz * z);
    dN[a][2] = 0.125 * (1 + sx * x) * (1 + sy * y) * sz;
  }
}

// Quad local nodes: 0:(-,-) 1:(+,-) 2:(+,+) 3:(-,+) (CCW).
inline constexpr int quad_sign[4][2] = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};

inline std::array<double, 4> quad_shape(double x, double y) {
  std::array<double, 4> N;
  for (int a = 0; a < 4; ++a)
    N[a] = 0.25 * (1 + quad_sign[a][0] * x) * (1 + quad_sign[a][1] * y);
  return N;
}

inline void quad_dshape(double x, double y, double dN[4][2]) {
  for (int a = 0; a < 4; ++a) {
    dN[a][0] = 0.25 * quad_sign[a][0] * (1 + quad_sign[a][1] * y);
    dN[a][1] = 0.25 * (1 + quad_sign[a][0] * x) * quad_sign[a][1];
  }
}

}  // namespace wgband::detail
