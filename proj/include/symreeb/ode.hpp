#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "errors.hpp"

namespace symreeb::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct Options {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 1e-3;
  double min_step = 1e-13;
  std::size_t max_steps = 5'000'000;
};

namespace detail {
template <std::size_t N>
using Stepper = boost::numeric::odeint::runge_kutta_cash_karp54<State<N>>;

struct NoProjection {
  template <class X>
  void operator()(X&) const {}
};
}  // namespace detail

/// Adaptive embedded 5(4) integration from t0 to t1 (either direction).
///
/// `observer(t, x)` sees every accepted step, including the final one.
/// `project(x)` may modify the state after each accepted step.
template <std::size_t N, class Rhs, class Observer, class Projector = detail::NoProjection>
void integrate(Rhs&& rhs, State<N>& x, double t0, double t1, const Options& opt, Observer&& observer,
               Projector&& project = {}) {
  namespace odeint = boost::numeric::odeint;
  if (t0 == t1) {
    observer(t0, x);
    return;
  }
  auto system = [&rhs](const State<N>& s, State<N>& ds, double t) { rhs(s, ds, t); };
  auto controlled = odeint::make_controlled(opt.atol, opt.rtol, detail::Stepper<N>());

  const double dir = t1 > t0 ? 1.0 : -1.0;
  double t = t0;
  double dt = dir * std::min({opt.initial_step, opt.max_step, std::abs(t1 - t0)});
  observer(t, x);
  std::size_t steps = 0;
  while (dir * (t1 - t) > 0.0) {
    if (dir * (t + dt - t1) > 0.0) dt = t1 - t;
    if (std::abs(dt) > opt.max_step) dt = dir * opt.max_step;
    const double t_before = t;
    const auto result = controlled.try_step(system, x, t, dt);
    if (result == odeint::success) {
      // land exactly on t1 when the remaining gap is round-off
      if (std::abs(t1 - t) <= 1e-14 * std::max(1.0, std::abs(t1))) t = t1;
      project(x);
      observer(t, x);
      if (++steps > opt.max_steps) throw IntegratorFailure("step budget exhausted");
    } else if (std::abs(dt) < opt.min_step && std::abs(t1 - t_before) > opt.min_step) {
      throw IntegratorFailure("adaptive step underflow at t = " + std::to_string(t));
    }
    for (double v : x)
      if (!std::isfinite(v)) throw IntegratorFailure("non-finite state at t = " + std::to_string(t));
  }
}

template <std::size_t N, class Rhs>
State<N> solve(Rhs&& rhs, State<N> x, double t0, double t1, const Options& opt = {}) {
  integrate<N>(rhs, x, t0, t1, opt, [](double, const State<N>&) {});
  return x;
}

/// Solution stored at the accepted steps of one adaptive pass; evaluation at
/// an arbitrary time takes a single explicit step from the nearest checkpoint
/// at or before it, which is no longer than the accepted step there.
template <std::size_t N>
class DenseSolution {
 public:
  using Rhs = std::function<void(const State<N>&, State<N>&, double)>;

  DenseSolution() = default;
  DenseSolution(Rhs rhs, const State<N>& x0, double t0, double t1, const Options& opt = {})
      : rhs_(std::move(rhs)), t0_(t0), t1_(t1) {
    State<N> x = x0;
    integrate<N>(rhs_, x, t0, t1, opt, [this](double t, const State<N>& s) {
      ts_.push_back(t);
      xs_.push_back(s);
    });
  }

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  const std::vector<double>& times() const { return ts_; }
  const std::vector<State<N>>& states() const { return xs_; }
  const State<N>& final_state() const { return xs_.back(); }

  State<N> operator()(double t) const {
    // forward solutions only (t0 < t1)
    t = std::clamp(t, t0_, t1_);
    auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
    std::size_t k = it == ts_.begin() ? 0 : static_cast<std::size_t>(it - ts_.begin()) - 1;
    if (k + 1 >= ts_.size() && k > 0 && ts_[k] == t) return xs_[k];
    State<N> x = xs_[k];
    const double h = t - ts_[k];
    if (h == 0.0) return x;
    detail::Stepper<N> stepper;
    auto system = [this](const State<N>& s, State<N>& ds, double tt) { rhs_(s, ds, tt); };
    stepper.do_step(system, x, ts_[k], h);
    return x;
  }

 private:
  Rhs rhs_;
  double t0_ = 0.0, t1_ = 0.0;
  std::vector<double> ts_;
  std::vector<State<N>> xs_;
};

}  // namespace symreeb::ode
