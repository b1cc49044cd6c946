#include "tempo/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace tempo {

Tensor Tensor::vector(std::size_t len) {
  Tensor t;
  t.data_.assign(len, 0.0);
  t.rows_ = len;
  t.cols_ = 0;
  t.rank_ = 1;
  return t;
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols) {
  Tensor t;
  t.data_.assign(rows * cols, 0.0);
  t.rows_ = rows;
  t.cols_ = cols;
  t.rank_ = 2;
  return t;
}

Tensor Tensor::scalar(double v) {
  Tensor t = vector(1);
  t.data_[0] = v;
  return t;
}

Tensor Tensor::from(std::vector<double> values) {
  Tensor t;
  t.rows_ = values.size();
  t.cols_ = 0;
  t.rank_ = 1;
  t.data_ = std::move(values);
  return t;
}

Tensor Tensor::from(std::initializer_list<double> values) {
  return from(std::vector<double>(values));
}

Tensor Tensor::glorot(std::size_t rows, std::size_t cols, Rng& rng) {
  Tensor t = matrix(rows, cols);
  const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
  for (double& v : t.data_) v = rng.next_uniform(-bound, bound);
  return t;
}

bool Tensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

void Tensor::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

Tensor& ParameterSet::add(std::string name, Tensor init) {
  if (contains(name)) throw ArgumentError("duplicate parameter: " + name);
  Tensor grad = init;
  grad.fill(0.0);
  entries_.push_back(Entry{std::move(name), std::move(init), std::move(grad)});
  return entries_.back().value;
}

bool ParameterSet::contains(std::string_view name) const {
  for (const Entry& e : entries_) {
    if (e.name == name) return true;
  }
  return false;
}

std::size_t ParameterSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name == name) return i;
  }
  throw ArgumentError("unknown parameter: " + std::string(name));
}

Tensor& ParameterSet::value(std::string_view name) {
  return entries_[index_of(name)].value;
}

const Tensor& ParameterSet::value(std::string_view name) const {
  return entries_[index_of(name)].value;
}

Tensor& ParameterSet::grad(std::string_view name) {
  return entries_[index_of(name)].grad;
}

void ParameterSet::zero_grads() {
  for (Entry& e : entries_) e.grad.fill(0.0);
}

std::size_t ParameterSet::coordinate_count() const {
  std::size_t n = 0;
  for (const Entry& e : entries_) n += e.value.size();
  return n;
}

}  // namespace tempo
