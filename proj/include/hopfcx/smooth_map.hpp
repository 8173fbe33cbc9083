#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hopfcx/dual.hpp"
#include "hopfcx/errors.hpp"

namespace hopfcx {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

template <class T>
struct DualOf;
template <>
struct DualOf<double> {
  using type = D1;
};
template <>
struct DualOf<D1> {
  using type = D2;
};

// Smooth map R^m -> R^k, type-erased over a generic callable
// f(span<const T>, span<T>). Evaluation is supported with double, D1 and D2
// scalars: the two dual levels supply exact first and second directional
// derivatives, so the tangent projector built on a constraint can itself be
// differentiated once more. All constraints and fields in this project are
// polynomial, hence derivatives carry no truncation error.
class ConstraintMap {
 public:
  ConstraintMap() = default;

  template <class F>
  ConstraintMap(int in_dim, int out_dim, F f)
      : in_(in_dim), out_(out_dim), impl_(std::make_shared<Model<F>>(std::move(f))) {}

  int in_dim() const { return in_; }
  int out_dim() const { return out_; }
  bool valid() const { return impl_ != nullptr; }

  void eval(std::span<const double> x, std::span<double> out) const { impl_->eval0(x, out); }
  void eval(std::span<const D1> x, std::span<D1> out) const { impl_->eval1(x, out); }
  void eval(std::span<const D2> x, std::span<D2> out) const { impl_->eval2(x, out); }

  Vec value(const Vec& x) const {
    Vec out(out_);
    impl_->eval0({x.data(), static_cast<size_t>(x.size())}, {out.data(), static_cast<size_t>(out_)});
    return out;
  }

  // d/dt F(x + t u) at t = 0
  Vec jvp(const Vec& x, const Vec& u) const {
    std::vector<D1> xd(in_), out(out_);
    for (int i = 0; i < in_; ++i) xd[i] = D1(x[i], u[i]);
    impl_->eval1(xd, out);
    Vec d(out_);
    for (int r = 0; r < out_; ++r) d[r] = out[r].d;
    return d;
  }

  Mat jacobian(const Vec& x) const {
    Mat J(out_, in_);
    std::vector<D1> xd(in_), out(out_);
    for (int i = 0; i < in_; ++i) xd[i] = D1(x[i], 0.0);
    for (int c = 0; c < in_; ++c) {
      xd[c].d = 1.0;
      impl_->eval1(xd, out);
      for (int r = 0; r < out_; ++r) J(r, c) = out[r].d;
      xd[c].d = 0.0;
    }
    return J;
  }

 private:
  struct Iface {
    virtual ~Iface() = default;
    virtual void eval0(std::span<const double>, std::span<double>) const = 0;
    virtual void eval1(std::span<const D1>, std::span<D1>) const = 0;
    virtual void eval2(std::span<const D2>, std::span<D2>) const = 0;
  };
  template <class F>
  struct Model final : Iface {
    F f;
    explicit Model(F f_) : f(std::move(f_)) {}
    void eval0(std::span<const double> x, std::span<double> o) const override { f(x, o); }
    void eval1(std::span<const D1> x, std::span<D1> o) const override { f(x, o); }
    void eval2(std::span<const D2> x, std::span<D2> o) const override { f(x, o); }
  };

  int in_ = 0, out_ = 0;
  std::shared_ptr<const Iface> impl_;
};

// Smooth ambient vector field R^M -> R^M; double and D1 evaluation (field
// values are differentiated at most once).
class AmbientField {
 public:
  AmbientField() = default;

  template <class F>
  AmbientField(std::string name, int dim, F f)
      : name_(std::move(name)), dim_(dim), impl_(std::make_shared<Model<F>>(std::move(f))) {}

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  bool valid() const { return impl_ != nullptr; }

  void eval(std::span<const double> x, std::span<double> out) const { impl_->eval0(x, out); }
  void eval(std::span<const D1> x, std::span<D1> out) const { impl_->eval1(x, out); }

  Vec operator()(const Vec& x) const {
    Vec out(dim_);
    impl_->eval0({x.data(), static_cast<size_t>(x.size())}, {out.data(), static_cast<size_t>(dim_)});
    return out;
  }

  // d/dt X(x + t u) at t = 0 (exact)
  Vec derivative(const Vec& x, const Vec& u) const {
    std::vector<D1> xd(dim_), out(dim_);
    for (int i = 0; i < dim_; ++i) xd[i] = D1(x[i], u[i]);
    impl_->eval1(xd, out);
    Vec d(dim_);
    for (int r = 0; r < dim_; ++r) d[r] = out[r].d;
    return d;
  }

 private:
  struct Iface {
    virtual ~Iface() = default;
    virtual void eval0(std::span<const double>, std::span<double>) const = 0;
    virtual void eval1(std::span<const D1>, std::span<D1>) const = 0;
  };
  template <class F>
  struct Model final : Iface {
    F f;
    explicit Model(F f_) : f(std::move(f_)) {}
    void eval0(std::span<const double> x, std::span<double> o) const override { f(x, o); }
    void eval1(std::span<const D1> x, std::span<D1> o) const override { f(x, o); }
  };

  std::string name_;
  int dim_ = 0;
  std::shared_ptr<const Iface> impl_;
};

// Pointwise endomorphism field (x, u) -> w, smooth in the point.
class EndoField {
 public:
  EndoField() = default;

  template <class F>
  EndoField(std::string name, int dim, F f)
      : name_(std::move(name)), dim_(dim), impl_(std::make_shared<Model<F>>(std::move(f))) {}

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  bool valid() const { return impl_ != nullptr; }

  void eval(std::span<const double> x, std::span<const double> u, std::span<double> out) const {
    impl_->eval0(x, u, out);
  }
  void eval(std::span<const D1> x, std::span<const D1> u, std::span<D1> out) const {
    impl_->eval1(x, u, out);
  }

  Vec apply(const Vec& x, const Vec& u) const {
    Vec out(dim_);
    impl_->eval0({x.data(), static_cast<size_t>(x.size())}, {u.data(), static_cast<size_t>(u.size())},
                 {out.data(), static_cast<size_t>(dim_)});
    return out;
  }

 private:
  struct Iface {
    virtual ~Iface() = default;
    virtual void eval0(std::span<const double>, std::span<const double>, std::span<double>) const = 0;
    virtual void eval1(std::span<const D1>, std::span<const D1>, std::span<D1>) const = 0;
  };
  template <class F>
  struct Model final : Iface {
    F f;
    explicit Model(F f_) : f(std::move(f_)) {}
    void eval0(std::span<const double> x, std::span<const double> u, std::span<double> o) const override {
      f(x, u, o);
    }
    void eval1(std::span<const D1> x, std::span<const D1> u, std::span<D1> o) const override {
      f(x, u, o);
    }
  };

  std::string name_;
  int dim_ = 0;
  std::shared_ptr<const Iface> impl_;
};

// Gaussian elimination with partial pivoting in T-arithmetic (pivot chosen
// by |underlying value|). A is n x n row-major, b is overwritten with the
// solution. Small n only.
template <class T>
void solve_linear_inplace(int n, std::vector<T>& A, T* b) {
  for (int c = 0; c < n; ++c) {
    int piv = c;
    double best = std::abs(scalar_value(A[c * n + c]));
    for (int r = c + 1; r < n; ++r) {
      double m = std::abs(scalar_value(A[r * n + c]));
      if (m > best) {
        best = m;
        piv = r;
      }
    }
    if (best < 1e-300) throw RankDeficient("singular system in tangent-space solve");
    if (piv != c) {
      for (int j = c; j < n; ++j) std::swap(A[c * n + j], A[piv * n + j]);
      std::swap(b[c], b[piv]);
    }
    for (int r = c + 1; r < n; ++r) {
      T m = A[r * n + c] / A[c * n + c];
      for (int j = c; j < n; ++j) A[r * n + j] -= m * A[c * n + j];
      b[r] -= m * b[c];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    T s = b[r];
    for (int j = r + 1; j < n; ++j) s -= A[r * n + j] * b[j];
    b[r] = s / A[r * n + r];
  }
}

// Jacobian of a constraint at scalar level T (entries of type T), computed
// by one dual level up. Row-major k x m output.
template <class T>
void jacobian_level(const ConstraintMap& F, std::span<const T> x, std::vector<T>& J) {
  using DT = typename DualOf<T>::type;
  const int m = F.in_dim(), k = F.out_dim();
  J.assign(static_cast<size_t>(k) * m, T(0.0));
  std::vector<DT> xd(m), out(k);
  for (int i = 0; i < m; ++i) xd[i] = DT(x[i], T(0.0));
  for (int c = 0; c < m; ++c) {
    xd[c].d = T(1.0);
    F.eval(std::span<const DT>(xd), std::span<DT>(out));
    for (int r = 0; r < k; ++r) J[static_cast<size_t>(r) * m + c] = out[r].d;
    xd[c].d = T(0.0);
  }
}

// Orthogonal projection of v onto ker JF(x), computed smoothly in x:
// out = v - J^T (J J^T)^{-1} J v. Requires the constraint to have full row
// rank at x, which holds at regular points of all catalog instances.
template <class T>
void project_tangent_level(const ConstraintMap& F, std::span<const T> x, std::span<const T> v,
                           std::span<T> out) {
  const int m = F.in_dim(), k = F.out_dim();
  for (int i = 0; i < m; ++i) out[i] = v[i];
  if (k == 0) return;
  std::vector<T> J;
  jacobian_level(F, x, J);
  std::vector<T> G(static_cast<size_t>(k) * k, T(0.0));
  std::vector<T> rhs(k, T(0.0));
  for (int r = 0; r < k; ++r) {
    for (int s = 0; s <= r; ++s) {
      T acc(0.0);
      for (int i = 0; i < m; ++i) acc += J[static_cast<size_t>(r) * m + i] * J[static_cast<size_t>(s) * m + i];
      G[static_cast<size_t>(r) * k + s] = acc;
      G[static_cast<size_t>(s) * k + r] = acc;
    }
    T acc(0.0);
    for (int i = 0; i < m; ++i) acc += J[static_cast<size_t>(r) * m + i] * v[i];
    rhs[r] = acc;
  }
  solve_linear_inplace(k, G, rhs.data());
  for (int r = 0; r < k; ++r)
    for (int i = 0; i < m; ++i) out[i] -= J[static_cast<size_t>(r) * m + i] * rhs[r];
}

}  // namespace hopfcx
