#include "qdiscord/cs_x.hpp"

#include <cstdio>

namespace qdiscord {

namespace {

constexpr std::array<std::pair<int, int>, 8> kXPositions{
    {{0, 0}, {0, 3}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 0}, {3, 3}}};

bool on_x(int i, int j) { return i == j || i + j == 3; }

}  // namespace

Matrix4c CSMatrix::to_matrix() const {
  Matrix4c m;
  for (int k = 0; k < 8; ++k) {
    const int i = k / 4, j = k % 4;
    m(i, j) = a[k];
    m(3 - i, 3 - j) = a[k];
  }
  return m;
}

CSMatrix CSMatrix::from_matrix(const Matrix4c &m, double tol) {
  const double dev = cs_deviation(m);
  if (dev > tol) throw Error(ErrorCode::not_cs, "matrix is not centrosymmetric", dev);
  CSMatrix out;
  for (int k = 0; k < 8; ++k) {
    const int i = k / 4, j = k % 4;
    out.a[k] = 0.5 * (m(i, j) + m(3 - i, 3 - j));
  }
  return out;
}

Matrix4c XMatrix::to_matrix() const {
  Matrix4c m = Matrix4c::Zero();
  for (int k = 0; k < 8; ++k) m(kXPositions[k].first, kXPositions[k].second) = b[k];
  return m;
}

XMatrix XMatrix::from_matrix(const Matrix4c &m, double tol) {
  const double dev = x_deviation(m);
  if (dev > tol) throw Error(ErrorCode::not_x, "matrix does not have X structure", dev);
  XMatrix out;
  for (int k = 0; k < 8; ++k) out.b[k] = m(kXPositions[k].first, kXPositions[k].second);
  return out;
}

double cs_deviation(const Matrix4c &m) {
  double dev = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) dev = std::max(dev, std::abs(m(i, j) - m(3 - i, 3 - j)));
  return dev;
}

double x_deviation(const Matrix4c &m) {
  double dev = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!on_x(i, j)) dev = std::max(dev, std::abs(m(i, j)));
  return dev;
}

Matrix4d hadamard2() {
  Matrix4d h;
  h << 1, 1, 1, 1,
       1, -1, 1, -1,
       1, 1, -1, -1,
       1, -1, -1, 1;
  return h * 0.5;
}

Matrix2c hadamard() {
  Matrix2c h;
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

const CoefficientTable &cs_to_x_table() {
  static const CoefficientTable table = [] {
    CoefficientTable t{};
    const Matrix4d h = hadamard2();
    for (int k = 0; k < 8; ++k) {
      CSMatrix basis;
      basis.a[k] = 1.0;
      const Matrix4d image = h * basis.to_matrix().real() * h;
      // Entries of H2 E H2 are sums of products of +-1/2, so twice the
      // value is an exact small integer.
      for (int m = 0; m < 8; ++m)
        t[m][k] = static_cast<int>(std::lround(2.0 * image(kXPositions[m].first, kXPositions[m].second)));
    }
    return t;
  }();
  return table;
}

std::string cs_to_x_table_hash() {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto &row : cs_to_x_table())
    for (int v : row) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint8_t>(static_cast<std::int8_t>(v)));
      h *= 1099511628211ULL;
    }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Matrix4c cs_to_x(const Matrix4c &m, double tol) {
  if (const double dev = cs_deviation(m); dev > tol)
    throw Error(ErrorCode::not_cs, "matrix is not centrosymmetric", dev);
  const Matrix4c h = hadamard2().cast<Complex>();
  return h * m * h;
}

Matrix4c x_to_cs(const Matrix4c &m, double tol) {
  if (const double dev = x_deviation(m); dev > tol)
    throw Error(ErrorCode::not_x, "matrix does not have X structure", dev);
  const Matrix4c h = hadamard2().cast<Complex>();
  return h * m * h;
}

namespace {

template <std::size_t N>
double rounding_tolerance(const std::array<Complex, N> &v) {
  double scale = 1.0;
  for (const auto &z : v) scale = std::max(scale, std::abs(z));
  return 1e-13 * scale;
}

}  // namespace

XMatrix cs_to_x(const CSMatrix &a) {
  return XMatrix::from_matrix(cs_to_x(a.to_matrix(), 0.0), rounding_tolerance(a.a));
}

CSMatrix x_to_cs(const XMatrix &b) {
  return CSMatrix::from_matrix(x_to_cs(b.to_matrix(), 0.0), rounding_tolerance(b.b));
}

DensityMatrix4 cs_to_x(const DensityMatrix4 &rho, double tol) {
  if (const double dev = cs_deviation(rho.matrix()); dev > tol)
    throw Error(ErrorCode::not_cs, "state is not centrosymmetric", dev);
  return conjugate_local(rho, hadamard(), hadamard());
}

DensityMatrix4 x_to_cs(const DensityMatrix4 &rho, double tol) {
  if (const double dev = x_deviation(rho.matrix()); dev > tol)
    throw Error(ErrorCode::not_x, "state does not have X structure", dev);
  return conjugate_local(rho, hadamard(), hadamard());
}

}  // namespace qdiscord
