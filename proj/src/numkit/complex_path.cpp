// SPDX-License-Identifier: Apache-2.0
#include "cubicpt/numkit/complex_path.hpp"

#include <algorithm>
#include <cmath>

#include "cubicpt/errors.hpp"

namespace cubicpt {

ComplexPath::ComplexPath(std::vector<cplx> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw DomainError("ComplexPath: need at least two vertices");
  arc_.resize(vertices_.size());
  arc_[0] = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const cplx v = vertices_[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("ComplexPath: non-finite vertex");
    if (i > 0) {
      const double d = std::abs(v - vertices_[i - 1]);
      if (d == 0.0) throw DomainError("ComplexPath: repeated consecutive vertex");
      arc_[i] = arc_[i - 1] + d;
    }
  }
}

ComplexPath ComplexPath::segment(cplx a, cplx b) { return ComplexPath({a, b}); }

std::size_t ComplexPath::segment_index(double s) const {
  if (s <= 0.0) return 0;
  auto it = std::lower_bound(arc_.begin() + 1, arc_.end(), s);
  if (it == arc_.end()) return segment_count() - 1;
  return static_cast<std::size_t>(it - arc_.begin()) - 1;
}

cplx ComplexPath::point_at(double s) const {
  const std::size_t i = segment_index(s);
  const double local = std::clamp(s - arc_[i], 0.0, arc_[i + 1] - arc_[i]);
  if (s >= arc_.back()) return vertices_.back();
  return vertices_[i] + tangent(i) * local;
}

cplx ComplexPath::tangent(std::size_t i) const {
  const cplx d = vertices_[i + 1] - vertices_[i];
  return d / std::abs(d);
}

ComplexPath ComplexPath::reversed() const {
  std::vector<cplx> v(vertices_.rbegin(), vertices_.rend());
  return ComplexPath(std::move(v));
}

ComplexPath ComplexPath::then(const ComplexPath& other) const {
  std::vector<cplx> v = vertices_;
  auto start = other.vertices_.begin();
  if (std::abs(other.front() - back()) == 0.0) ++start;
  v.insert(v.end(), start, other.vertices_.end());
  return ComplexPath(std::move(v));
}

ComplexPath ComplexPath::slice(double a, double b) const {
  if (!(a < b)) throw DomainError("ComplexPath::slice: empty range");
  a = std::max(a, 0.0);
  b = std::min(b, length());
  std::vector<cplx> v{point_at(a)};
  for (std::size_t i = 1; i + 1 < vertices_.size(); ++i)
    if (arc_[i] > a && arc_[i] < b) v.push_back(vertices_[i]);
  const cplx e = point_at(b);
  if (std::abs(e - v.back()) > 0.0) v.push_back(e);
  if (v.size() < 2) throw DomainError("ComplexPath::slice: degenerate range");
  return ComplexPath(std::move(v));
}

}  // namespace cubicpt
