#include "tempo/autodiff.hpp"

#include <cmath>

#include "tempo/errors.hpp"

namespace tempo {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw DimensionError(msg);
}

}  // namespace

Var Tape::push(Node node) {
  nodes_.push_back(std::move(node));
  return Var{static_cast<std::uint32_t>(nodes_.size() - 1), this};
}

std::uint32_t Tape::check(Var v) const {
  if (v.owner != this || v.id >= nodes_.size()) {
    throw TraceError("Var does not belong to this tape");
  }
  return v.id;
}

const Tensor& Tape::node_value(std::uint32_t id) const {
  const Node& n = nodes_[id];
  if (n.op == Op::kParam) return params_->entry(n.param_index).value;
  return n.owned;
}

const Tensor& Tape::value(Var v) const { return node_value(check(v)); }

double Tape::scalar(Var v) const {
  const Tensor& t = value(v);
  if (!(t.is_vector() && t.size() == 1)) {
    throw DimensionError("scalar() on a non-scalar node");
  }
  return t[0];
}

void Tape::check_finite(const Tensor& t, const char* what) {
  if (!t.all_finite()) {
    throw NumericError(std::string("non-finite result in ") + what);
  }
}

Var Tape::constant(Tensor value) {
  check_finite(value, "constant");
  Node n{};
  n.op = Op::kConstant;
  n.owned = std::move(value);
  return push(std::move(n));
}

Var Tape::constant(std::span<const double> values) {
  return constant(Tensor::from(std::vector<double>(values.begin(), values.end())));
}

Var Tape::param(std::string_view name) {
  if (params_ == nullptr) throw TraceError("tape has no bound ParameterSet");
  Node n{};
  n.op = Op::kParam;
  n.param_index = params_->index_of(name);
  return push(std::move(n));
}

Var Tape::matvec(Var w, Var x) {
  const Tensor& wv = node_value(check(w));
  const Tensor& xv = node_value(check(x));
  require(wv.is_matrix() && xv.is_vector() && wv.cols() == xv.size(),
          "matvec: need (m x n) matrix and length-n vector");
  Tensor y = Tensor::vector(wv.rows());
  for (std::size_t i = 0; i < wv.rows(); ++i) {
    double acc = 0.0;
    const double* row = &wv.data()[i * wv.cols()];
    for (std::size_t j = 0; j < wv.cols(); ++j) acc += row[j] * xv[j];
    y[i] = acc;
  }
  check_finite(y, "matvec");
  Node n{};
  n.op = Op::kMatVec;
  n.a = w.id;
  n.b = x.id;
  n.owned = std::move(y);
  return push(std::move(n));
}

Var Tape::add(Var a, Var b) {
  const Tensor& av = node_value(check(a));
  const Tensor& bv = node_value(check(b));
  require(av.same_shape(bv), "add: shape mismatch");
  Tensor y = av;
  for (std::size_t i = 0; i < y.size(); ++i) y.data()[i] += bv[i];
  check_finite(y, "add");
  Node n{};
  n.op = Op::kAdd;
  n.a = a.id;
  n.b = b.id;
  n.owned = std::move(y);
  return push(std::move(n));
}

Var Tape::mul(Var a, Var b) {
  const Tensor& av = node_value(check(a));
  const Tensor& bv = node_value(check(b));
  require(av.is_vector() && av.same_shape(bv), "mul: shape mismatch");
  Tensor y = av;
  for (std::size_t i = 0; i < y.size(); ++i) y.data()[i] *= bv[i];
  check_finite(y, "mul");
  Node n{};
  n.op = Op::kMul;
  n.a = a.id;
  n.b = b.id;
  n.owned = std::move(y);
  return push(std::move(n));
}

Var Tape::scale(Var a, double c) {
  const Tensor& av = node_value(check(a));
  Tensor y = av;
  for (double& v : y.data()) v *= c;
  check_finite(y, "scale");
  Node n{};
  n.op = Op::kScale;
  n.a = a.id;
  n.c = c;
  n.owned = std::move(y);
  return push(std::move(n));
}

Var Tape::concat(Var a, Var b) {
  const Tensor& av = node_value(check(a));
  const Tensor& bv = node_value(check(b));
  require(av.is_vector() && bv.is_vector(), "concat: vectors only");
  Tensor y = Tensor::vector(av.size() + bv.size());
  for (std::size_t i = 0; i < av.size(); ++i) y[i] = av[i];
  for (std::size_t i = 0; i < bv.size(); ++i) y[av.size() + i] = bv[i];
  Node n{};
  n.op = Op::kConcat;
  n.a = a.id;
  n.b = b.id;
  n.owned = std::move(y);
  return push(std::move(n));
}

Var Tape::tanh(Var a) {
  const Tensor& av = node_value(check(a));
  require(av.is_vector(), "tanh: vectors only");
  Tensor y = av;
  for (double& v : y.data()) v = std::tanh(v);
  check_finite(y, "tanh");
  Node n{};
  n.op = Op::kTanh;
  n.a = a.id;
  n.owned = std::move(y);
  return push(std::move(n));
}

Var Tape::sigmoid(Var a) {
  const Tensor& av = node_value(check(a));
  require(av.is_vector(), "sigmoid: vectors only");
  Tensor y = av;
  for (double& v : y.data()) v = 1.0 / (1.0 + std::exp(-v));
  check_finite(y, "sigmoid");
  Node n{};
  n.op = Op::kSigmoid;
  n.a = a.id;
  n.owned = std::move(y);
  return push(std::move(n));
}

Var Tape::squared_l2_distance(Var a, Var b) {
  const Tensor& av = node_value(check(a));
  const Tensor& bv = node_value(check(b));
  require(av.is_vector() && av.same_shape(bv),
          "squared_l2_distance: shape mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i) {
    const double d = av[i] - bv[i];
    acc += d * d;
  }
  Tensor y = Tensor::scalar(acc);
  check_finite(y, "squared_l2_distance");
  Node n{};
  n.op = Op::kSquaredL2;
  n.a = a.id;
  n.b = b.id;
  n.owned = std::move(y);
  return push(std::move(n));
}

Var Tape::column(Var w, std::size_t c) {
  const Tensor& wv = node_value(check(w));
  require(wv.is_matrix() && c < wv.cols(), "column: index out of range");
  Tensor y = Tensor::vector(wv.rows());
  for (std::size_t i = 0; i < wv.rows(); ++i) y[i] = wv.at(i, c);
  check_finite(y, "column");
  Node n{};
  n.op = Op::kColumn;
  n.a = w.id;
  n.col = c;
  n.owned = std::move(y);
  return push(std::move(n));
}

void Tape::backward(Var loss) {
  const std::uint32_t root = check(loss);
  const Tensor& root_value = node_value(root);
  if (!(root_value.is_vector() && root_value.size() == 1)) {
    throw DimensionError("backward: loss must be scalar");
  }

  // Lazily allocated adjoints; absent entry means zero adjoint so the node
  // does not influence the loss and can be skipped.
  std::vector<Tensor> adj(nodes_.size());
  std::vector<bool> touched(nodes_.size(), false);
  adj[root] = Tensor::scalar(1.0);
  touched[root] = true;

  auto reach = [&](std::uint32_t id) -> Tensor& {
    if (!touched[id]) {
      Tensor t = node_value(id);
      t.fill(0.0);
      adj[id] = std::move(t);
      touched[id] = true;
    }
    return adj[id];
  };

  for (std::uint32_t i = root + 1; i-- > 0;) {
    if (!touched[i]) continue;
    const Node& n = nodes_[i];
    const Tensor& g = adj[i];
    switch (n.op) {
      case Op::kConstant:
        break;
      case Op::kParam: {
        Tensor& pg = params_->entry(n.param_index).grad;
        for (std::size_t k = 0; k < pg.size(); ++k) pg.data()[k] += g[k];
        break;
      }
      case Op::kMatVec: {
        const Tensor& wv = node_value(n.a);
        const Tensor& xv = node_value(n.b);
        Tensor& gw = reach(n.a);
        Tensor& gx = reach(n.b);
        for (std::size_t r = 0; r < wv.rows(); ++r) {
          const double gr = g[r];
          if (gr == 0.0) continue;
          double* gw_row = &gw.data()[r * wv.cols()];
          const double* w_row = &wv.data()[r * wv.cols()];
          for (std::size_t c2 = 0; c2 < wv.cols(); ++c2) {
            gw_row[c2] += gr * xv[c2];
            gx[c2] += gr * w_row[c2];
          }
        }
        break;
      }
      case Op::kAdd: {
        Tensor& ga = reach(n.a);
        Tensor& gb = reach(n.b);
        for (std::size_t k = 0; k < g.size(); ++k) {
          ga.data()[k] += g[k];
          gb.data()[k] += g[k];
        }
        break;
      }
      case Op::kMul: {
        const Tensor& av = node_value(n.a);
        const Tensor& bv = node_value(n.b);
        Tensor& ga = reach(n.a);
        Tensor& gb = reach(n.b);
        for (std::size_t k = 0; k < g.size(); ++k) {
          ga.data()[k] += g[k] * bv[k];
          gb.data()[k] += g[k] * av[k];
        }
        break;
      }
      case Op::kScale: {
        Tensor& ga = reach(n.a);
        for (std::size_t k = 0; k < g.size(); ++k) ga.data()[k] += n.c * g[k];
        break;
      }
      case Op::kConcat: {
        Tensor& ga = reach(n.a);
        Tensor& gb = reach(n.b);
        for (std::size_t k = 0; k < ga.size(); ++k) ga.data()[k] += g[k];
        for (std::size_t k = 0; k < gb.size(); ++k) {
          gb.data()[k] += g[ga.size() + k];
        }
        break;
      }
      case Op::kTanh: {
        const Tensor& y = n.owned;
        Tensor& ga = reach(n.a);
        for (std::size_t k = 0; k < g.size(); ++k) {
          ga.data()[k] += g[k] * (1.0 - y[k] * y[k]);
        }
        break;
      }
      case Op::kSigmoid: {
        const Tensor& y = n.owned;
        Tensor& ga = reach(n.a);
        for (std::size_t k = 0; k < g.size(); ++k) {
          ga.data()[k] += g[k] * y[k] * (1.0 - y[k]);
        }
        break;
      }
      case Op::kSquaredL2: {
        const Tensor& av = node_value(n.a);
        const Tensor& bv = node_value(n.b);
        Tensor& ga = reach(n.a);
        Tensor& gb = reach(n.b);
        const double g0 = g[0];
        for (std::size_t k = 0; k < av.size(); ++k) {
          const double d = 2.0 * (av[k] - bv[k]) * g0;
          ga.data()[k] += d;
          gb.data()[k] -= d;
        }
        break;
      }
      case Op::kColumn: {
        Tensor& gw = reach(n.a);
        const std::size_t cols = node_value(n.a).cols();
        for (std::size_t r = 0; r < g.size(); ++r) {
          gw.data()[r * cols + n.col] += g[r];
        }
        break;
      }
    }
  }
}

void Tape::reset() { nodes_.clear(); }

double finite_difference_check(ParameterSet& params,
                               const std::function<Var(Tape&)>& build,
                               double eps) {
  if (!(eps > 0.0)) throw ArgumentError("finite_difference_check: eps must be positive");

  params.zero_grads();
  Tape tape(&params);
  Var loss = build(tape);
  tape.backward(loss);
  std::vector<Tensor> analytic;
  analytic.reserve(params.size());
  for (const auto& e : params.entries()) analytic.push_back(e.grad);

  auto eval = [&]() {
    Tape t(&params);
    return t.scalar(build(t));
  };

  double worst = 0.0;
  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    Tensor& v = params.entry(pi).value;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const double orig = v.data()[k];
      v.data()[k] = orig + eps;
      const double f_plus = eval();
      v.data()[k] = orig - eps;
      const double f_minus = eval();
      v.data()[k] = orig;
      if (!std::isfinite(f_plus) || !std::isfinite(f_minus)) {
        throw NumericError("finite_difference_check: non-finite objective");
      }
      const double numeric = (f_plus - f_minus) / (2.0 * eps);
      const double rel = std::abs(analytic[pi][k] - numeric) /
                         std::max(1.0, std::abs(numeric));
      worst = std::max(worst, rel);
    }
  }
  params.zero_grads();
  return worst;
}

}  // namespace tempo
