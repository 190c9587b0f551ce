#include "qsdc/linalg.hpp"

#include <cmath>

namespace qsdc {

Mat2 Mat2::identity() {
  Mat2 m;
  m.at(0, 0) = 1.0;
  m.at(1, 1) = 1.0;
  return m;
}

Mat4 Mat4::identity() {
  Mat4 m;
  for (int i = 0; i < 4; ++i) m.at(i, i) = 1.0;
  return m;
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 4; ++i) r.e[i] = a.e[i] + b.e[i];
  return r;
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 4; ++i) r.e[i] = a.e[i] - b.e[i];
  return r;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r.at(i, j) = a.at(i, 0) * b.at(0, j) + a.at(i, 1) * b.at(1, j);
  return r;
}

Mat2 operator*(cplx s, const Mat2& a) {
  Mat2 r;
  for (int i = 0; i < 4; ++i) r.e[i] = s * a.e[i];
  return r;
}

Mat4 operator+(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int i = 0; i < 16; ++i) r.e[i] = a.e[i] + b.e[i];
  return r;
}

Mat4 operator-(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int i = 0; i < 16; ++i) r.e[i] = a.e[i] - b.e[i];
  return r;
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < 4; ++k) s += a.at(i, k) * b.at(k, j);
      r.at(i, j) = s;
    }
  }
  return r;
}

Mat4 operator*(cplx s, const Mat4& a) {
  Mat4 r;
  for (int i = 0; i < 16; ++i) r.e[i] = s * a.e[i];
  return r;
}

Mat2 dagger(const Mat2& a) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.at(i, j) = std::conj(a.at(j, i));
  return r;
}

Mat4 dagger(const Mat4& a) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.at(i, j) = std::conj(a.at(j, i));
  return r;
}

cplx trace(const Mat2& a) { return a.at(0, 0) + a.at(1, 1); }

cplx trace(const Mat4& a) {
  return a.at(0, 0) + a.at(1, 1) + a.at(2, 2) + a.at(3, 3);
}

Mat4 tensor(const Mat2& a, const Mat2& b) {
  Mat4 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          r.at(2 * i + k, 2 * j + l) = a.at(i, j) * b.at(k, l);
  return r;
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
  return m;
}

double max_abs_diff(const Mat4& a, const Mat4& b) {
  double m = 0.0;
  for (int i = 0; i < 16; ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
  return m;
}

double max_abs(const Mat4& a) {
  double m = 0.0;
  for (int i = 0; i < 16; ++i) m = std::max(m, std::abs(a.e[i]));
  return m;
}

double hermiticity_defect(const Mat2& a) {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j)
      m = std::max(m, std::abs(a.at(i, j) - std::conj(a.at(j, i))));
  return m;
}

double hermiticity_defect(const Mat4& a) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      m = std::max(m, std::abs(a.at(i, j) - std::conj(a.at(j, i))));
  return m;
}

double frobenius_norm(const Mat4& a) {
  double s = 0.0;
  for (int i = 0; i < 16; ++i) s += std::norm(a.e[i]);
  return std::sqrt(s);
}

bool all_finite(const Mat4& a) {
  for (int i = 0; i < 16; ++i)
    if (!std::isfinite(a.e[i].real()) || !std::isfinite(a.e[i].imag())) return false;
  return true;
}

void axpy(cplx s, const Mat4& a, Mat4& r) {
  for (int i = 0; i < 16; ++i) r.e[i] += s * a.e[i];
}

}  // namespace qsdc
