// Copyright 2026 The flsim Authors
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

#ifndef FLSIM_PARAM_VECTOR_HPP_
#define FLSIM_PARAM_VECTOR_HPP_

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace flsim {

/// Fixed-dimension real vector for model parameters, gradients and noise.
/// The dimension is fixed at construction and all entries must stay finite.
class ParamVector {
 public:
  ParamVector() = default;

  explicit ParamVector(std::size_t dim, double fill = 0.0)
      : values_(dim, fill) {}

  explicit ParamVector(std::vector<double> values)
      : values_(std::move(values)) {
    check_finite();
  }

  ParamVector(std::initializer_list<double> values) : values_(values) {
    check_finite();
  }

  std::size_t dim() const { return values_.size(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  const std::vector<double>& values() const { return values_; }

  ParamVector& operator+=(const ParamVector& other) {
    check_same_dim(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other[i];
    return *this;
  }

  ParamVector& operator-=(const ParamVector& other) {
    check_same_dim(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other[i];
    return *this;
  }

  ParamVector& operator*=(double c) {
    for (double& v : values_) v *= c;
    return *this;
  }

  friend ParamVector operator+(ParamVector a, const ParamVector& b) {
    a += b;
    return a;
  }

  friend ParamVector operator-(ParamVector a, const ParamVector& b) {
    a -= b;
    return a;
  }

  friend ParamVector operator*(double c, ParamVector a) {
    a *= c;
    return a;
  }

  double dot(const ParamVector& other) const {
    check_same_dim(other);
    double s = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) s += values_[i] * other[i];
    return s;
  }

  /// Euclidean norm.
  double norm() const { return std::sqrt(squared_norm()); }

  double squared_norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return s;
  }

  bool is_finite() const {
    for (double v : values_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  void check_same_dim(const ParamVector& other) const {
    if (values_.size() != other.values_.size()) {
      throw std::invalid_argument("ParamVector dimension mismatch");
    }
  }

 private:
  void check_finite() const {
    if (!is_finite()) {
      throw std::invalid_argument("ParamVector entries must be finite");
    }
  }

  std::vector<double> values_;
};

}  // namespace flsim

#endif  // FLSIM_PARAM_VECTOR_HPP_
