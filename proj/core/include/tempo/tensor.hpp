#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempo/errors.hpp"
#include "tempo/rng.hpp"

namespace tempo {

/// Dense real tensor of rank 1 (vector) or rank 2 (row-major matrix).
class Tensor {
 public:
  Tensor() = default;

  static Tensor vector(std::size_t len);
  static Tensor matrix(std::size_t rows, std::size_t cols);
  static Tensor scalar(double v);
  static Tensor from(std::vector<double> values);
  static Tensor from(std::initializer_list<double> values);
  /// Matrix filled with uniform values in +/- sqrt(6 / (fan_in + fan_out)).
  static Tensor glorot(std::size_t rows, std::size_t cols, Rng& rng);

  bool is_vector() const { return rank_ == 1; }
  bool is_matrix() const { return rank_ == 2; }
  bool is_scalar() const { return rank_ == 1 && rows_ == 1; }
  bool empty() const { return rank_ == 0; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool same_shape(const Tensor& other) const {
    return rank_ == other.rank_ && rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool all_finite() const;
  void fill(double v);

  bool operator==(const Tensor& other) const = default;

 private:
  std::vector<double> data_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int rank_ = 0;
};

/// Named collection of trainable tensors, each with a gradient buffer of the
/// same shape. Iteration follows registration order, which keeps optimizer
/// passes deterministic.
class ParameterSet {
 public:
  struct Entry {
    std::string name;
    Tensor value;
    Tensor grad;
  };

  /// Registers a parameter. Throws ArgumentError on duplicate names.
  Tensor& add(std::string name, Tensor init);

  bool contains(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws if absent

  Tensor& value(std::string_view name);
  const Tensor& value(std::string_view name) const;
  Tensor& grad(std::string_view name);

  Entry& entry(std::size_t idx) { return entries_[idx]; }
  const Entry& entry(std::size_t idx) const { return entries_[idx]; }
  std::size_t size() const { return entries_.size(); }

  std::vector<Entry>& entries() { return entries_; }
  const std::vector<Entry>& entries() const { return entries_; }

  void zero_grads();
  /// Total number of scalar coordinates across all parameters.
  std::size_t coordinate_count() const;

 private:
  std::vector<Entry> entries_;
};

}  // namespace tempo
