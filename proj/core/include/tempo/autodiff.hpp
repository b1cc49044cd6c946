#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "tempo/tensor.hpp"

namespace tempo {

class Tape;

/// Handle to a node on a Tape.
struct Var {
  std::uint32_t id = 0;
  const Tape* owner = nullptr;
};

/// Define-by-run trace of primitive operations. Forward values are computed
/// eagerly; backward() replays the trace in reverse and accumulates gradients
/// into the bound ParameterSet.
///
/// Parameter leaves reference the ParameterSet storage directly, so the set
/// must not be resized while a tape built on it is alive. Constant leaves are
/// copied, which keeps saved forward values valid even when their source (for
/// example an embedding store) is mutated before backward() runs.
class Tape {
 public:
  explicit Tape(ParameterSet* params = nullptr) : params_(params) {}

  Var constant(Tensor value);
  Var constant(std::span<const double> values);
  Var param(std::string_view name);

  /// y = W x for matrix W (m x n) and vector x (n).
  Var matvec(Var w, Var x);
  Var add(Var a, Var b);
  /// Elementwise product of same-shape vectors.
  Var mul(Var a, Var b);
  Var scale(Var a, double c);
  Var concat(Var a, Var b);
  Var tanh(Var a);
  Var sigmoid(Var a);
  /// Scalar sum of squared differences of two same-shape vectors.
  Var squared_l2_distance(Var a, Var b);
  /// Column c of a matrix, as a vector.
  Var column(Var w, std::size_t c);

  const Tensor& value(Var v) const;
  double scalar(Var v) const;

  /// Accumulates d(loss)/d(param) into the ParameterSet gradient buffers.
  /// Repeated calls without zero_grads() accumulate.
  void backward(Var loss);

  /// Drops all nodes; the ParameterSet binding is kept.
  void reset();

  std::size_t size() const { return nodes_.size(); }

 private:
  enum class Op : std::uint8_t {
    kConstant,
    kParam,
    kMatVec,
    kAdd,
    kMul,
    kScale,
    kConcat,
    kTanh,
    kSigmoid,
    kSquaredL2,
    kColumn,
  };

  struct Node {
    Op op;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    double c = 0.0;       // scale factor
    std::size_t col = 0;  // column index
    std::size_t param_index = 0;
    Tensor owned;  // forward value for every op except kParam
  };

  Var push(Node node);
  const Tensor& node_value(std::uint32_t id) const;
  std::uint32_t check(Var v) const;
  static void check_finite(const Tensor& t, const char* what);

  std::vector<Node> nodes_;
  ParameterSet* params_ = nullptr;
};

/// Central-difference gradient check. `build` must construct the scalar loss
/// for the current parameter values on the given tape. Returns
/// max over coordinates of |analytic - numeric| / max(1, |numeric|).
double finite_difference_check(ParameterSet& params,
                               const std::function<Var(Tape&)>& build,
                               double eps = 1e-5);

}  // namespace tempo
