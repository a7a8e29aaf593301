#pragma once

#include <array>
#include <functional>

namespace glacier {

using Vec2 = std::array<double, 2>;

struct OdeOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  double initial_step = 0.0;  // 0 picks a step from the local derivative scale
  double max_step = 0.0;      // 0 means unbounded
  double fixed_step = 0.0;    // > 0 disables error control
  long max_steps = 50'000'000;
};

/// Accepted step with the data needed for continuous output.
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  Vec2 y0{};
  Vec2 y1{};
  std::array<Vec2, 5> rcont{};

  double t1() const { return t0 + h; }
  Vec2 operator()(double t) const;
};

/// Dormand-Prince 5(4) pair with PI step-size control and FSAL.
/// A right-hand side that returns non-finite values causes the step to be
/// rejected and retried with a smaller step.
class Dopri5 {
 public:
  using Rhs = std::function<Vec2(double, const Vec2&)>;

  Dopri5(Rhs rhs, OdeOptions opt);

  void reset(double t, const Vec2& y);

  /// Take one accepted step, never passing t_limit. Throws StiffnessError on
  /// step-size underflow.
  const DenseStep& advance(double t_limit);

  double t() const { return t_; }
  const Vec2& y() const { return y_; }
  const DenseStep& last() const { return last_; }
  long accepted() const { return accepted_; }
  long rejected() const { return rejected_; }

 private:
  double initial_step();
  double error_norm(const Vec2& y0, const Vec2& y1, const Vec2& err) const;

  Rhs rhs_;
  OdeOptions opt_;
  double t_ = 0.0;
  Vec2 y_{};
  Vec2 k1_{};
  double h_ = 0.0;
  double facold_ = 1e-4;
  DenseStep last_;
  long accepted_ = 0;
  long rejected_ = 0;
};

}  // namespace glacier
