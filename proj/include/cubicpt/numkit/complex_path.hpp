// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace cubicpt {

using cplx = std::complex<double>;

// Piecewise-linear oriented path in the complex plane, parametrised by arc length.
class ComplexPath {
 public:
  ComplexPath() = default;
  // Throws DomainError for fewer than two vertices, non-finite or repeated consecutive vertices.
  explicit ComplexPath(std::vector<cplx> vertices);

  static ComplexPath segment(cplx a, cplx b);

  const std::vector<cplx>& vertices() const { return vertices_; }
  std::size_t segment_count() const { return vertices_.empty() ? 0 : vertices_.size() - 1; }
  cplx front() const { return vertices_.front(); }
  cplx back() const { return vertices_.back(); }
  double length() const { return arc_.empty() ? 0.0 : arc_.back(); }
  // Arc length at vertex i.
  double arc_at(std::size_t i) const { return arc_[i]; }

  // Segment containing arc length s (the earlier one at interior vertices).
  std::size_t segment_index(double s) const;
  cplx point_at(double s) const;
  // Unit tangent of segment i.
  cplx tangent(std::size_t i) const;

  ComplexPath reversed() const;
  // Joins `other` at the end of this path. A shared junction vertex is kept once.
  ComplexPath then(const ComplexPath& other) const;
  // Sub-path between arc lengths a < b.
  ComplexPath slice(double a, double b) const;

 private:
  std::vector<cplx> vertices_;
  std::vector<double> arc_;
};

}  // namespace cubicpt
